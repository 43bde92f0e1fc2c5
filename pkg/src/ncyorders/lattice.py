"""Integral lattices, the K3 lattice, embeddings and orthogonal complements."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import exactla as la
from .exactla import Matrix, Vector


class LatticeError(ValueError):
    module = "lattice"


class FormMismatch(LatticeError):
    def __init__(self, i: int, j: int, expected: int, got: int):
        self.pair = (i, j)
        self.expected = expected
        self.got = got
        super().__init__(
            f"embedding does not preserve the form at ({i}, {j}): "
            f"source has {expected}, images pair to {got}"
        )


class DegenerateSource(LatticeError):
    pass


class DegenerateLattice(LatticeError):
    pass


# The E block exactly as used for the K3 lattice coordinates below.  It is a
# negative definite E8 with lambda4 as the trivalent node.
E_BLOCK: Matrix = [
    [-2, 0, 0, 1, 0, 0, 0, 0],
    [0, -2, 1, 0, 0, 0, 0, 0],
    [0, 1, -2, 1, 0, 0, 0, 0],
    [1, 0, 1, -2, 1, 0, 0, 0],
    [0, 0, 0, 1, -2, 1, 0, 0],
    [0, 0, 0, 0, 1, -2, 1, 0],
    [0, 0, 0, 0, 0, 1, -2, 1],
    [0, 0, 0, 0, 0, 0, 1, -2],
]

HYPERBOLIC_PLANE: Matrix = [[0, 1], [1, 0]]

K3_LABELS: list[str] = (
    [f"lambda{i}" for i in range(1, 9)]
    + [f"lambda{i}'" for i in range(1, 9)]
    + ["mu1", "mu2", "mu1'", "mu2'", "mu1''", "mu2''"]
)


@dataclass(frozen=True)
class Lattice:
    gram: Matrix
    labels: Optional[list[str]] = None

    def __post_init__(self):
        if not la.is_symmetric(self.gram):
            raise LatticeError("gram matrix must be square and symmetric")
        if self.labels is not None and len(self.labels) != len(self.gram):
            raise LatticeError(
                f"{len(self.labels)} labels given for a rank {len(self.gram)} lattice"
            )

    @property
    def rank(self) -> int:
        return len(self.gram)

    def pair(self, v: Sequence[int], w: Sequence[int]) -> int:
        return pair(self, v, w)

    def square(self, v: Sequence[int]) -> int:
        return pair(self, v, v)

    def basis_vector(self, i: int) -> Vector:
        return [int(j == i) for j in range(self.rank)]

    def label_of(self, i: int) -> str:
        return self.labels[i] if self.labels else f"e{i + 1}"

    def vector(self, expr: str) -> Vector:
        """Parse a label expression such as ``"lambda1+3mu2-mu2'"``."""
        return parse_combination(expr, self.labels or [f"e{i + 1}" for i in range(self.rank)])

    def format(self, v: Sequence[int]) -> str:
        return format_combination(v, self.labels or [f"e{i + 1}" for i in range(self.rank)])

    def determinant(self) -> int:
        return la.det(self.gram)

    def signature(self) -> tuple[int, int, int]:
        return la.signature(self.gram)


def pair(L: Lattice, v: Sequence[int], w: Sequence[int]) -> int:
    if len(v) != L.rank or len(w) != L.rank:
        raise LatticeError(
            f"vectors of length {len(v)} and {len(w)} do not match rank {L.rank}"
        )
    return sum(a * x for a, x in zip(v, la.mat_vec(L.gram, w)))


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*([A-Za-z_][A-Za-z_0-9]*'*)")


def parse_combination(expr: str, labels: Sequence[str]) -> Vector:
    index = {name: i for i, name in enumerate(labels)}
    v = [0] * len(labels)
    text = expr.replace(" ", "")
    if text in ("", "0"):
        return v
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {expr!r} at position {pos}")
        sign, coeff, name = m.groups()
        if name not in index:
            raise ValueError(f"unknown basis label {name!r}")
        c = int(coeff) if coeff else 1
        v[index[name]] += -c if sign == "-" else c
        pos = m.end()
    return v


def format_combination(v: Sequence[int], labels: Sequence[str]) -> str:
    parts = []
    for c, name in zip(v, labels):
        if c == 0:
            continue
        mag = "" if abs(c) == 1 else str(abs(c))
        parts.append(("-" if c < 0 else "+") + mag + name)
    if not parts:
        return "0"
    s = "".join(parts)
    return s[1:] if s[0] == "+" else s


def orthogonal_sum(*blocks: Matrix) -> Matrix:
    n = sum(len(b) for b in blocks)
    G = la.zeros(n, n)
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                G[off + i][off + j] = x
        off += len(b)
    return G


def build_k3_lattice() -> Lattice:
    """E + E + H + H + H, rank 22, basis lambda1..8, lambda1'..8', mu1, mu2, ..."""
    gram = orthogonal_sum(E_BLOCK, E_BLOCK, HYPERBOLIC_PLANE, HYPERBOLIC_PLANE, HYPERBOLIC_PLANE)
    return Lattice(gram, list(K3_LABELS))


@dataclass(frozen=True)
class Embedding:
    """Map of ``source`` into ``target``; column j of ``matrix`` is the image of basis vector j."""

    source: Lattice
    target: Lattice
    matrix: Matrix
    form_preserving: bool = field(default=True)

    @property
    def images(self) -> list[Vector]:
        return [la.column(self.matrix, j) for j in range(self.source.rank)]

    def apply(self, v: Sequence[int]) -> Vector:
        return la.mat_vec(self.matrix, v)

    def describe(self) -> list[str]:
        return [
            f"{self.source.label_of(j)} -> {self.target.format(img)}"
            for j, img in enumerate(self.images)
        ]


def first_form_mismatch(source: Lattice, target: Lattice, images) -> Optional[tuple[int, int, int, int]]:
    for i in range(source.rank):
        for j in range(i, source.rank):
            got = pair(target, images[i], images[j])
            if got != source.gram[i][j]:
                return i, j, source.gram[i][j], got
    return None


def embedding_from_images(source: Lattice, target: Lattice, images, check: bool = True) -> Embedding:
    """Build the embedding sending basis vector j of ``source`` to ``images[j]``.

    Raises FormMismatch naming the first (i, j) whose pairing disagrees.  With
    ``check=False`` the map is returned anyway and flagged as not form preserving.
    """
    images = [list(v) for v in images]
    if len(images) != source.rank:
        raise LatticeError(f"{len(images)} images for a rank {source.rank} source")
    for v in images:
        if len(v) != target.rank:
            raise LatticeError(f"image of length {len(v)} in a rank {target.rank} target")
    bad = first_form_mismatch(source, target, images)
    if bad and check:
        raise FormMismatch(*bad)
    matrix = la.columns_to_matrix(images, target.rank)
    return Embedding(source, target, matrix, form_preserving=bad is None)


def is_primitive(e: Embedding) -> tuple[bool, list[int]]:
    """Primitive iff the embedding matrix has Smith diagonal all ones."""
    diag = la.smith_normal_form(e.matrix, e.source.rank).diagonal
    return all(d == 1 for d in diag), diag


@dataclass(frozen=True)
class Sublattice:
    """A sublattice given by basis vectors of an ambient lattice, with its induced form."""

    lattice: Lattice
    basis: list[Vector]

    @property
    def inclusion(self) -> Matrix:
        """Ambient-rank x rank matrix whose columns are the basis vectors."""
        return la.columns_to_matrix(self.basis, len(self.basis[0]) if self.basis else 0)


def induced_lattice(ambient: Lattice, basis: Sequence[Sequence[int]], labels=None) -> Lattice:
    gram = [[pair(ambient, v, w) for w in basis] for v in basis]
    return Lattice(gram, labels)


def orthogonal_complement(e: Embedding) -> Sublattice:
    if la.det(e.source.gram) == 0:
        raise DegenerateSource("source lattice is degenerate; complement is not a direct partner")
    # v . gamma(s_i) = 0  <=>  (gamma^T G) v = 0
    constraints = la.mat_mul(la.transpose(e.matrix), e.target.gram)
    basis = la.integer_kernel(constraints, e.target.rank)
    labels = [f"t{i + 1}" for i in range(len(basis))]
    return Sublattice(induced_lattice(e.target, basis, labels), basis)


@dataclass(frozen=True)
class FinAbGroup:
    """Finite abelian group as invariant factors with generator vectors."""

    invariant_factors: list[int]
    generators: list[Vector]

    def __post_init__(self):
        fs = self.invariant_factors
        if any(f < 2 for f in fs) or any(fs[i + 1] % fs[i] for i in range(len(fs) - 1)):
            raise ValueError(f"not a divisibility chain of factors >= 2: {fs}")
        if len(self.generators) != len(fs):
            raise ValueError("one generator per invariant factor")

    @property
    def order(self) -> int:
        n = 1
        for f in self.invariant_factors:
            n *= f
        return n

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def describe(self) -> str:
        if not self.invariant_factors:
            return "0"
        parts = []
        fs = self.invariant_factors
        i = 0
        while i < len(fs):
            j = i
            while j < len(fs) and fs[j] == fs[i]:
                j += 1
            k = j - i
            parts.append(f"(Z/{fs[i]})^{k}" if k > 1 else f"Z/{fs[i]}")
            i = j
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {"invariant_factors": list(self.invariant_factors),
                "generators": [list(g) for g in self.generators]}


def discriminant_group(L: Lattice) -> FinAbGroup:
    if la.det(L.gram) == 0:
        raise DegenerateLattice("discriminant group needs a nondegenerate gram matrix")
    snf = la.smith_normal_form(L.gram)
    # coker(G) = Z^n / G Z^n; columns of U^-1 give the cyclic summands
    factors, gens = [], []
    Uinv = la.integer_inverse(snf.U)
    for i, d in enumerate(snf.diagonal):
        if d > 1:
            factors.append(d)
            gens.append(la.column(Uinv, i))
    return FinAbGroup(factors, gens)
