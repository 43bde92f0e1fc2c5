"""H^1 of a cyclic group acting on a lattice: ker(N) / im(1 - sigma)."""

from __future__ import annotations

from typing import Sequence

from . import exactla as la
from .action import CyclicAction
from .exactla import Matrix, Vector
from .lattice import FinAbGroup


class CohomologyError(ValueError):
    module = "cohomology"


class NotACocycle(CohomologyError):
    pass


def norm_matrix(a: CyclicAction) -> Matrix:
    """1 + sigma + ... + sigma^(n-1)."""
    n = a.rank
    total = la.zeros(n, n)
    P = la.identity(n)
    for _ in range(a.order):
        total = la.mat_add(total, P)
        P = la.mat_mul(P, a.matrix)
    return total


def difference_matrix(a: CyclicAction) -> Matrix:
    """1 - sigma."""
    return la.mat_sub(la.identity(a.rank), a.matrix)


class CocycleQuotient:
    """ker(N)/im(1 - sigma) with coordinates for testing classes.

    The image of 1 - sigma lies in ker(N), so its generators are written in
    the saturated kernel basis and the quotient is read off a Smith form.
    """

    def __init__(self, a: CyclicAction):
        self.action = a
        n = a.rank
        self.norm = norm_matrix(a)
        self.difference = difference_matrix(a)
        self.kernel_basis = la.integer_kernel(self.norm, n)
        self.image_basis = la.hnf_basis(la.transpose(self.difference), n)
        k = len(self.kernel_basis)
        self._K = la.columns_to_matrix(self.kernel_basis, n)

        coords = []
        for j in range(n):
            c = la.solve_integral(self._K, la.column(self.difference, j), k)
            if c is None:
                raise CohomologyError("image of 1 - sigma escapes ker(N)")
            coords.append(c)
        C = la.columns_to_matrix(coords, k)
        snf = la.smith_normal_form(C, n)
        diag = [snf.D[i][i] if i < n else 0 for i in range(k)]
        if any(d == 0 for d in diag):
            raise CohomologyError("free part in H^1; the kernel basis is not saturated")
        self._U = snf.U
        Uinv = la.integer_inverse(snf.U) if k else []
        self._torsion = [i for i, d in enumerate(diag) if d > 1]
        factors = [diag[i] for i in self._torsion]
        gens = [self.reduce(la.mat_vec(self._K, la.column(Uinv, i))) for i in self._torsion]
        self.group = FinAbGroup(factors, gens)

    def is_cocycle(self, v: Sequence[int]) -> bool:
        return not any(la.mat_vec(self.norm, v))

    def reduce(self, v: Sequence[int]) -> Vector:
        return la.reduce_modulo(v, self.image_basis)

    def coordinates(self, v: Sequence[int]) -> tuple[int, ...]:
        """Class of a cocycle as residues modulo the invariant factors."""
        if not self.is_cocycle(v):
            raise NotACocycle(f"N v != 0 for v = {list(v)}")
        x = la.solve_integral(self._K, list(v), len(self.kernel_basis))
        y = la.mat_vec(self._U, x)
        return tuple(y[i] % d for i, d in zip(self._torsion, self.group.invariant_factors))

    def same_class(self, v: Sequence[int], w: Sequence[int]) -> bool:
        for x in (v, w):
            if not self.is_cocycle(x):
                raise NotACocycle(f"N v != 0 for v = {list(x)}")
        diff = [p - q for p, q in zip(v, w)]
        return la.solve_integral(self.difference, diff, self.action.rank) is not None

    def generates(self, vectors: Sequence[Sequence[int]]) -> bool:
        """True iff the classes of ``vectors`` generate the whole group."""
        factors = self.group.invariant_factors
        t = len(factors)
        if t == 0:
            return True
        cols = [list(self.coordinates(v)) for v in vectors]
        cols += [[d * int(i == j) for i in range(t)] for j, d in enumerate(factors)]
        M = la.columns_to_matrix(cols, t)
        return all(d == 1 for d in la.smith_normal_form(M).diagonal)


def h1(a: CyclicAction) -> FinAbGroup:
    return CocycleQuotient(a).group


def same_class(a: CyclicAction, v: Sequence[int], w: Sequence[int]) -> bool:
    return CocycleQuotient(a).same_class(v, w)
