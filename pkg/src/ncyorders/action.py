"""Cyclic isometries of lattices and their extension to the K3 lattice."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import exactla as la
from .exactla import Matrix, Vector
from .lattice import DegenerateSource, Embedding, Lattice, Sublattice, induced_lattice, orthogonal_complement


class ActionError(ValueError):
    module = "action"


class NotAnIsometry(ActionError):
    pass


class WrongOrder(ActionError):
    pass


class OddEntry(ActionError):
    pass


def check_isometry(L: Lattice, P: Matrix) -> bool:
    """True iff P^T G P = G."""
    if len(P) != L.rank or any(len(row) != L.rank for row in P):
        return False
    return la.mat_mul(la.mat_mul(la.transpose(P), L.gram), P) == L.gram


def matrix_order(P: Matrix, limit: int = 1000) -> Optional[int]:
    """Least n >= 1 with P^n = I, or None if none up to ``limit``."""
    I = la.identity(len(P))
    Q = la.copy_matrix(P)
    for n in range(1, limit + 1):
        if Q == I:
            return n
        Q = la.mat_mul(Q, P)
    return None


@dataclass(frozen=True)
class CyclicAction:
    lattice: Lattice
    matrix: Matrix
    order: int

    def __post_init__(self):
        if self.order < 1:
            raise WrongOrder(f"order must be >= 1, got {self.order}")
        if not check_isometry(self.lattice, self.matrix):
            raise NotAnIsometry("matrix does not preserve the lattice form")
        actual = matrix_order(self.matrix, limit=self.order)
        if actual != self.order:
            found = "greater than declared" if actual is None else str(actual)
            raise WrongOrder(f"declared order {self.order} but matrix has order {found}")

    @property
    def rank(self) -> int:
        return self.lattice.rank

    def apply(self, v: Sequence[int]) -> Vector:
        return la.mat_vec(self.matrix, v)

    def power(self, k: int) -> Matrix:
        return la.mat_pow(self.matrix, k % self.order)

    def orbit(self, v: Sequence[int]) -> list[Vector]:
        out, w = [], list(v)
        for _ in range(self.order):
            out.append(w)
            w = self.apply(w)
        return out


@dataclass(frozen=True)
class PartialIsometry:
    """An isometry of a sublattice, extended by -1 on its orthogonal complement."""

    pic_part: CyclicAction
    embedding: Embedding
    complement_scale: int = field(default=-1, init=False)


@dataclass
class ExtensionResult:
    extends: bool
    witness: Optional[Matrix] = None
    rational_matrix: Optional[list[list[Fraction]]] = None
    first_non_integral: Optional[tuple[int, int, Fraction]] = None
    complement: Optional[Sublattice] = None
    checks: dict = field(default_factory=dict)
    reason: str = ""

    def __bool__(self):
        return self.extends


def extends_to_ambient(p: PartialIsometry) -> ExtensionResult:
    """Glue the sublattice action with -1 on the complement and test integrality.

    The glued map is the unique Q-linear W with W*gamma = gamma*phi and
    W*t = -t on the complement.  It extends to the ambient lattice iff its
    matrix in the ambient basis is integral.  On success the witness is
    checked to be an isometry of finite order agreeing with both pieces.
    """
    e = p.embedding
    phi = p.pic_part.matrix
    target = e.target
    comp = orthogonal_complement(e)
    if comp.lattice.rank + e.source.rank != target.rank:
        raise DegenerateSource("sublattice and complement do not span the ambient space")

    gamma_cols = e.images
    new_basis = gamma_cols + comp.basis
    B = la.columns_to_matrix(new_basis, target.rank)
    images = [la.mat_vec(e.matrix, la.column(phi, j)) for j in range(e.source.rank)]
    images += [[p.complement_scale * x for x in t] for t in comp.basis]
    Y = la.columns_to_matrix(images, target.rank)
    try:
        Binv = la.rational_inverse(B)
    except ZeroDivisionError:
        raise DegenerateSource("sublattice meets its complement") from None
    W = [[sum(Fraction(a) * b for a, b in zip(row, col)) for col in la.transpose(Binv)] for row in Y]

    result = ExtensionResult(extends=False, rational_matrix=W, complement=comp)
    for i, row in enumerate(W):
        for j, x in enumerate(row):
            if x.denominator != 1:
                result.first_non_integral = (i, j, x)
                result.reason = f"entry ({i}, {j}) = {x} is not integral"
                return result

    Wi = [[int(x) for x in row] for row in W]
    n = p.pic_part.order
    checks = {
        "isometry": check_isometry(target, Wi),
        "order": la.mat_pow(Wi, n) == la.identity(target.rank),
        "restricts_to_action": la.mat_mul(Wi, e.matrix) == la.mat_mul(e.matrix, phi),
        "minus_one_on_complement": all(
            la.mat_vec(Wi, t) == [-x for x in t] for t in comp.basis
        ),
    }
    result.checks = checks
    result.witness = Wi
    result.extends = all(checks.values())
    if not result.extends:
        failed = ", ".join(k for k, v in checks.items() if not v)
        result.reason = f"integral but fails: {failed}"
    return result


def fixed_sublattice(a: CyclicAction) -> Sublattice:
    """Saturated sublattice of vectors fixed by the action, in HNF basis."""
    M = la.mat_sub(a.matrix, la.identity(a.rank))
    basis = la.integer_kernel(M, a.rank)
    return Sublattice(induced_lattice(a.lattice, basis), basis)


def halved_form(fixed: Lattice) -> Lattice:
    """Divide an even Gram matrix by two (pullback form of a double cover)."""
    for i, row in enumerate(fixed.gram):
        for j, x in enumerate(row):
            if x % 2:
                raise OddEntry(f"gram entry ({i}, {j}) = {x} is odd")
    return Lattice([[x // 2 for x in row] for row in fixed.gram], fixed.labels)


def partial_norm(a: CyclicAction, v: Sequence[int], k: int) -> Vector:
    """v + sigma v + ... + sigma^(k-1) v, exactly k terms."""
    if not 0 <= k <= a.order:
        raise ActionError(f"term count {k} outside 0..{a.order}")
    total = [0] * a.rank
    w = list(v)
    for _ in range(k):
        total = [x + y for x, y in zip(total, w)]
        w = a.apply(w)
    return total
