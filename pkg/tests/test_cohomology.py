import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from ncyorders import exactla as la
from ncyorders.action import CyclicAction, check_isometry
from ncyorders.cohomology import CocycleQuotient, NotACocycle, h1, norm_matrix, same_class
from ncyorders.lattice import Lattice
from ncyorders.scenarios import hirzebruch2, p2_sextic, quadric
from strategies import random_unimodular


def action_of(sc):
    return CyclicAction(sc.sublattice, sc.involution, sc.order)


def brute_h1_order(a: CyclicAction, rep_box=2, img_box=4) -> int:
    """|ker N / im(1 - sigma)| by enumerating small vectors."""
    n = a.rank
    N = norm_matrix(a)
    D = la.mat_sub(la.identity(n), a.matrix)
    image = {tuple(la.mat_vec(D, x)) for x in itertools.product(range(-img_box, img_box + 1), repeat=n)}
    reps = []
    for v in itertools.product(range(-rep_box, rep_box + 1), repeat=n):
        if any(la.mat_vec(N, v)):
            continue
        if not any(tuple(x - y for x, y in zip(v, r)) in image for r in reps):
            reps.append(v)
    return len(reps)


def order_two_isometries(G):
    n = len(G)
    I = la.identity(n)
    for entries in itertools.product((-1, 0, 1), repeat=n * n):
        P = [list(entries[i * n:(i + 1) * n]) for i in range(n)]
        if P != I and la.mat_mul(P, P) == I and check_isometry(Lattice(G), P):
            yield P


def small_grams(rnd, n, count):
    out = [la.identity(n), [[-x for x in r] for r in la.identity(n)]]
    while len(out) < count:
        G = la.zeros(n, n)
        for i in range(n):
            for j in range(i, n):
                G[i][j] = G[j][i] = rnd.choice((-2, -1, 0, 0, 1, 2)) if i != j else rnd.choice((-2, 0, 2))
        out.append(G)
    return out


@pytest.mark.parametrize("n", [1, 2, 3])
def test_h1_matches_brute_force_exhaustive(n):
    rnd = random.Random(1000 + n)
    seen = 0
    for G in small_grams(rnd, n, 6 if n == 3 else 10):
        for P in order_two_isometries(G):
            a = CyclicAction(Lattice(G), P, 2)
            grp = h1(a)
            assert all(f == 2 for f in grp.invariant_factors)
            assert grp.order == brute_h1_order(a)
            seen += 1
    assert seen > 0


@pytest.mark.parametrize("k", range(1, 7))
def test_minus_identity(k):
    a = CyclicAction(Lattice(la.identity(k)), [[-int(i == j) for j in range(k)] for i in range(k)], 2)
    assert h1(a).invariant_factors == [2] * k


@settings(max_examples=30)
@given(st.sampled_from([3, 5, 8]), st.randoms(use_true_random=False))
def test_h1_invariant_under_change_of_basis(n, rnd):
    a = action_of(p2_sextic(n))
    P = random_unimodular(n, rnd)
    Pinv = la.integer_inverse(P)
    G2 = la.mat_mul(la.mat_mul(la.transpose(P), a.lattice.gram), P)
    M2 = la.mat_mul(la.mat_mul(Pinv, a.matrix), P)
    b = CyclicAction(Lattice(G2), M2, 2)
    assert h1(b).invariant_factors == h1(a).invariant_factors


def test_sextic_n3():
    a = action_of(p2_sextic(3))
    q = CocycleQuotient(a)
    assert q.group.invariant_factors == [2]
    assert same_class(a, [1, -1, 0], [0, 0, 0])
    assert not same_class(a, [1, 0, -1], [0, 0, 0])


@pytest.mark.parametrize("n", range(3, 19))
def test_sextic_generators(n):
    q = CocycleQuotient(action_of(p2_sextic(n)))
    assert q.group.invariant_factors == [2] * (n - 2)
    gens = [[1 if k == 0 else (-1 if k == i else 0) for k in range(n)] for i in range(2, n)]
    assert q.generates(gens)
    # dropping any one of them loses a class
    if n > 3:
        assert not q.generates(gens[1:])


def test_quadric():
    q = CocycleQuotient(action_of(quadric()))
    assert q.kernel_basis == [[0, 1, 0, -1], [0, 0, 1, -1]]
    # same lattice as the one spanned by s2 - s3, s2 - s4
    assert la.hnf_basis([[0, 1, -1, 0], [0, 1, 0, -1]], 4) == la.hnf_basis(q.kernel_basis, 4)
    assert q.group.invariant_factors == [2]
    assert q.generates([[0, 1, 0, -1]])


def test_hirzebruch2():
    q = CocycleQuotient(action_of(hirzebruch2()))
    assert q.group.invariant_factors == [2]
    assert q.generates([[0, 0, 1, 0, -1]])


def test_not_a_cocycle():
    q = CocycleQuotient(action_of(quadric()))
    with pytest.raises(NotACocycle):
        q.coordinates([1, 0, 0, 0])
