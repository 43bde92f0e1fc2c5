"""Hypothesis strategies and random generators shared by the tests."""

import random

from hypothesis import strategies as st

from ncyorders import exactla as la


def int_matrices(max_dim=6, bound=5):
    return st.integers(1, max_dim).flatmap(
        lambda m: st.integers(1, max_dim).flatmap(
            lambda n: st.lists(st.lists(st.integers(-bound, bound), min_size=n, max_size=n),
                               min_size=m, max_size=m)))


def symmetric_matrices(max_dim=5, bound=4):
    def build(n):
        return st.lists(st.integers(-bound, bound), min_size=n * (n + 1) // 2,
                        max_size=n * (n + 1) // 2).map(lambda xs: _sym(n, xs))
    return st.integers(1, max_dim).flatmap(build)


def _sym(n, xs):
    G = la.zeros(n, n)
    k = 0
    for i in range(n):
        for j in range(i, n):
            G[i][j] = G[j][i] = xs[k]
            k += 1
    return G


def random_unimodular(n: int, rnd: random.Random, steps: int = 8, bound: int = 2):
    """Product of elementary operations and sign flips."""
    A = la.identity(n)
    for _ in range(steps):
        if n > 1:
            i, j = rnd.sample(range(n), 2)
            q = rnd.randint(-bound, bound)
            A[i] = [a + q * b for a, b in zip(A[i], A[j])]
        if rnd.random() < 0.2:
            k = rnd.randrange(n)
            A[k] = [-a for a in A[k]]
    return A
