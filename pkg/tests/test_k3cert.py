import pytest

from ncyorders.action import CyclicAction
from ncyorders.k3cert import (CertStore, CertError, NoAmpleCertificate, SquareTooNegative, UncertifiedHypothesis,
                              UnsupportedRank, certify_ample, certify_nodal, derive_effective,
                              fixed_component_system, identify_quotient, propagate, seed_effective,
                              tritangent_check)
from ncyorders.lattice import Lattice
from ncyorders.scenarios import hirzebruch2, p2_sextic, quadric


def certified(sc):
    a = CyclicAction(sc.sublattice, sc.involution, sc.order)
    S = sc.sublattice
    store = CertStore(S)
    for v in sc.effective_seed:
        seed_effective(store, v)
    gens = [S.basis_vector(i) for i in range(S.rank)]
    s = sc.ample_candidate
    pool = gens + [a.apply(g) for g in gens] + [[x - y for x, y in zip(s, g)] for g in gens]
    propagate(store, pool)
    report = certify_ample(store, s, gens)
    propagate(store, pool)
    return a, store, report


def test_derive_after_seed():
    S = p2_sextic(3).sublattice
    store = CertStore(S)
    seed_effective(store, [1, 0, 0])
    assert derive_effective(store, [0, 1, 0])  # s1.s2 = 3 > 0
    assert store.effective[(0, 1, 0)].partner == (1, 0, 0)


def test_square_too_negative():
    store = CertStore(Lattice([[-4]]))
    with pytest.raises(SquareTooNegative):
        seed_effective(store, [1])
    assert not derive_effective(store, [1])


def test_ample_needs_certified_hypotheses():
    S = p2_sextic(3).sublattice
    store = CertStore(S)
    gens = [S.basis_vector(i) for i in range(3)]
    with pytest.raises(UncertifiedHypothesis):
        certify_ample(store, [1, 1, 0], gens)


def test_ample_needs_spanning_generators():
    S = p2_sextic(3).sublattice
    store = CertStore(S)
    with pytest.raises(CertError):
        certify_ample(store, [1, 1, 0], [[1, 0, 0], [0, 1, 0]])


@pytest.mark.parametrize("n", [3, 7, 12, 18])
def test_sextic_ample_and_nodal(n):
    a, store, rep = certified(p2_sextic(n))
    assert rep.ample and rep.square == 2
    for i in range(n):
        v = [0] * n
        v[i] = 1
        assert certify_nodal(store, v)
        assert certify_nodal(store, a.apply(v))
    assert tritangent_check(a, store, fixed_class=[1, 1] + [0] * (n - 2), contact=3) == n - 1


def test_quadric_ample_pairings():
    _, store, rep = certified(quadric())
    assert rep.ample and rep.square == 4
    assert [p[1] for p in rep.pairings] == [2, 1, 1, 1]
    assert certify_nodal(store, [0, 1, 1, -1])


def test_hirzebruch2_ample_pairings():
    _, store, rep = certified(hirzebruch2())
    assert rep.ample and rep.square == 8
    assert [p[1] for p in rep.pairings] == [1, 1, 1, 1, 1]


def test_nodal_needs_ample():
    store = CertStore(p2_sextic(3).sublattice)
    with pytest.raises(NoAmpleCertificate):
        certify_nodal(store, [1, 0, 0])


def test_candidate_with_uncertified_remainder():
    sc = p2_sextic(3)
    sc.ample_candidate = [1, 0, 0]  # s - s2 = s1 - s2 has square -8
    with pytest.raises(UncertifiedHypothesis):
        certified(sc)


def test_non_ample_candidate():
    sc = quadric()
    sc.ample_candidate = [1, 1, 1, 1]  # pairs to -1 with s4
    _, store, rep = certified(sc)
    assert not rep.ample and store.ample is None
    assert "s.s4 = -1" in rep.failures


def test_identify_quotient():
    assert identify_quotient(Lattice([[1]])).tag == "P2"
    assert identify_quotient(Lattice([[2]])).tag == "Undetermined"
    assert identify_quotient(Lattice([[0, 1], [1, 0]])).tag == "P1xP1"
    assert identify_quotient(Lattice([[-2, 1], [1, 0]]), [[1, 0]]).tag == "F2"
    assert identify_quotient(Lattice([[-1, 0], [0, 1]])).tag == "Undetermined"
    with pytest.raises(UnsupportedRank):
        identify_quotient(Lattice([[1, 0, 0], [0, -1, 0], [0, 0, -1]]))


def test_quadric_fixed_component_system():
    S = quadric().sublattice
    res = fixed_component_system(S, [1, 2, 3])
    assert res.solutions == [[0, 1, 1, 0]]
    assert res.only_square_zero
