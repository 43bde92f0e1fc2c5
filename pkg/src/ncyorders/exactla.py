"""Exact integer and rational linear algebra.

Matrices are plain lists of rows holding Python ints (or ``Fraction`` where
noted).  Every function copies its input; nothing is mutated in place.
Vectors are column vectors: the j-th column of an action matrix is the image
of the j-th basis vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

Matrix = list[list[int]]
Vector = list[int]


class NotSymmetric(ValueError):
    pass


# ---------------------------------------------------------------------------
# small helpers


def shape(M: Sequence[Sequence], ncols: Optional[int] = None) -> tuple[int, int]:
    rows = len(M)
    if rows:
        return rows, len(M[0])
    return 0, ncols or 0


def copy_matrix(M) -> Matrix:
    return [list(row) for row in M]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def transpose(M, ncols: Optional[int] = None):
    m, n = shape(M, ncols)
    return [[M[i][j] for i in range(m)] for j in range(n)]


def mat_mul(A, B):
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def mat_vec(A, v):
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def mat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(c, A):
    return [[c * a for a in row] for row in A]


def mat_pow(A, k: int):
    result = identity(len(A))
    for _ in range(k):
        result = mat_mul(result, A)
    return result


def columns_to_matrix(cols: Sequence[Sequence[int]], nrows: int) -> Matrix:
    """Stack vectors as the columns of an ``nrows x len(cols)`` matrix."""
    return [[c[i] for c in cols] for i in range(nrows)]


def column(M, j: int) -> list:
    return [row[j] for row in M]


def is_symmetric(M) -> bool:
    n = len(M)
    return all(len(row) == n for row in M) and all(
        M[i][j] == M[j][i] for i in range(n) for j in range(i + 1, n)
    )


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def det(M) -> int:
    """Determinant of a square integer matrix (fraction-free Bareiss)."""
    n = len(M)
    if n == 0:
        return 1
    A = copy_matrix(M)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def rank(M, ncols: Optional[int] = None) -> int:
    H, _ = hermite_normal_form(M, ncols)
    return sum(1 for row in H if any(row))


def is_unimodular(M) -> bool:
    return len(M) == len(M[0]) and abs(det(M)) == 1 if M else True


def rational_inverse(M) -> list[list[Fraction]]:
    """Inverse over Q by Gauss-Jordan; raises ZeroDivisionError if singular."""
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M)]
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("matrix is singular")
        A[c], A[p] = A[p], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


def integer_inverse(M) -> Matrix:
    inv = rational_inverse(M)
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in inv]


# ---------------------------------------------------------------------------
# Smith and Hermite normal forms


@dataclass(frozen=True)
class SnfResult:
    U: Matrix
    D: Matrix
    V: Matrix

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.V)))]

    @property
    def invariant_factors(self) -> list[int]:
        """Nonzero diagonal entries."""
        return [d for d in self.diagonal if d]


def _row_op(A, i, k, q):
    # row_i <- row_i - q * row_k
    if q:
        ri, rk = A[i], A[k]
        for j in range(len(ri)):
            ri[j] -= q * rk[j]


def _col_op(A, j, k, q):
    # col_j <- col_j - q * col_k
    if q:
        for row in A:
            row[j] -= q * row[k]


def _swap_cols(A, j, k):
    for row in A:
        row[j], row[k] = row[k], row[j]


def smith_normal_form(M, ncols: Optional[int] = None) -> SnfResult:
    """Return U, D, V with U*M*V = D, D diagonal with d1 | d2 | ... >= 0.

    Pivots on the smallest nonzero absolute value to keep entries small.
    """
    m, n = shape(M, ncols)
    A = copy_matrix(M)
    U = identity(m)
    V = identity(n)

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        A[t], A[i] = A[i], A[t]
        U[t], U[i] = U[i], U[t]
        _swap_cols(A, t, j)
        _swap_cols(V, t, j)

        while True:
            clean = True
            for i in range(t + 1, m):
                q = A[i][t] // A[t][t]
                _row_op(A, i, t, q)
                _row_op(U, i, t, q)
                clean = clean and A[i][t] == 0
            for j in range(t + 1, n):
                q = A[t][j] // A[t][t]
                _col_op(A, j, t, q)
                _col_op(V, j, t, q)
                clean = clean and A[t][j] == 0
            if not clean:
                # bring the smallest remainder in row/column t to the pivot
                cands = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
                cands += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
                _, i, j = min(cands)
                if j == t:
                    A[t], A[i] = A[i], A[t]
                    U[t], U[i] = U[i], U[t]
                else:
                    _swap_cols(A, t, j)
                    _swap_cols(V, t, j)
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            # row_t += row_i puts a non-multiple into row t
            _row_op(A, t, bad[0], -1)
            _row_op(U, t, bad[0], -1)

        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]

    return SnfResult(U=U, D=A, V=V)


def hermite_normal_form(M, ncols: Optional[int] = None) -> tuple[Matrix, Matrix]:
    """Row-style HNF: returns (H, U) with U*M = H and U unimodular.

    Pivots are positive, entries above a pivot lie in [0, pivot), zero rows
    come last.
    """
    m, n = shape(M, ncols)
    H = copy_matrix(M)
    U = identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][c]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(H[i][c]))
            H[r], H[p] = H[p], H[r]
            U[r], U[p] = U[p], U[r]
            done = True
            for i in range(r + 1, m):
                if H[i][c]:
                    q = H[i][c] // H[r][c]
                    _row_op(H, i, r, q)
                    _row_op(U, i, r, q)
                    done = done and H[i][c] == 0
            if done:
                break
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        for i in range(r):
            q = H[i][c] // H[r][c]
            _row_op(H, i, r, q)
            _row_op(U, i, r, q)
        r += 1
    return H, U


def hnf_basis(vectors: Sequence[Sequence[int]], dim: int) -> list[Vector]:
    """Canonical basis (nonzero HNF rows) of the Z-span of ``vectors``."""
    if not vectors:
        return []
    H, _ = hermite_normal_form([list(v) for v in vectors], dim)
    return [row for row in H if any(row)]


# ---------------------------------------------------------------------------
# kernels and solving


def integer_kernel(M, ncols: Optional[int] = None) -> list[Vector]:
    """Saturated Z-basis of {v : M v = 0}, returned in Hermite normal form."""
    m, n = shape(M, ncols)
    if m == 0:
        return identity(n)
    H, U = hermite_normal_form(transpose(M), m)
    r = sum(1 for row in H if any(row))
    return hnf_basis(U[r:], n)


def solve_integral(M, b: Sequence[int], ncols: Optional[int] = None) -> Optional[Vector]:
    """Some integer v with M v = b, or None when no integral solution exists."""
    m, n = shape(M, ncols)
    if len(b) != m:
        raise ValueError(f"right-hand side has length {len(b)}, expected {m}")
    snf = smith_normal_form(M, n)
    c = mat_vec(snf.U, b)
    y = [0] * n
    for i in range(m):
        d = snf.D[i][i] if i < n else 0
        if d == 0:
            if c[i]:
                return None
        elif c[i] % d:
            return None
        else:
            y[i] = c[i] // d
    return mat_vec(snf.V, y)


def reduce_modulo(v: Sequence[int], hnf_rows: Sequence[Sequence[int]]) -> Vector:
    """Reduce v against an HNF basis so pivot coordinates land in [0, pivot)."""
    v = list(v)
    for row in hnf_rows:
        p = next(j for j, x in enumerate(row) if x)
        q = v[p] // row[p]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return v


# ---------------------------------------------------------------------------
# signature


def signature(G) -> tuple[int, int, int]:
    """(positive, negative, null) inertia of a symmetric integer matrix.

    Exact congruence diagonalization over Q.  A zero diagonal with a nonzero
    off-diagonal partner is split off as a hyperbolic 2x2 block.
    """
    if not is_symmetric(G):
        raise NotSymmetric("signature needs a symmetric matrix")
    A = [[Fraction(x) for x in row] for row in G]
    live = list(range(len(A)))
    pos = neg = 0

    def eliminate(pivots):
        # Schur complement on the pivot block; pivots are 1 or 2 indices
        rest = [k for k in live if k not in pivots]
        if len(pivots) == 1:
            (p,) = pivots
            for k in rest:
                f = A[k][p] / A[p][p]
                if f:
                    for l in rest:
                        A[k][l] -= f * A[p][l]
        else:
            i, j = pivots
            a = A[i][j]
            for k in rest:
                ci, cj = A[k][j] / a, A[k][i] / a
                if ci or cj:
                    for l in rest:
                        A[k][l] -= ci * A[i][l] + cj * A[j][l]
        for p in pivots:
            live.remove(p)

    while live:
        p = next((k for k in live if A[k][k] != 0), None)
        if p is not None:
            if A[p][p] > 0:
                pos += 1
            else:
                neg += 1
            eliminate([p])
            continue
        pair = next(((i, j) for i in live for j in live if i < j and A[i][j] != 0), None)
        if pair is None:
            break
        pos += 1
        neg += 1
        eliminate(list(pair))
    return pos, neg, len(G) - pos - neg
