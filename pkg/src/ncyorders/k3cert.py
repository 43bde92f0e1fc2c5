"""Lattice-level certificates for effectivity, ampleness and nodal classes on a K3.

No h^0 is ever computed.  Two rules admit effective classes:

* a class of square >= -2 (so it or its negative is effective) that pairs
  strictly positively with a certified irreducible curve or with the
  certified ample class is effective;
* a seed chosen effective up to sign, taken as an irreducible curve class.

Irreducibility comes only from seeds or from ample degree one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import exactla as la
from .action import CyclicAction
from .exactla import Vector
from .lattice import Lattice


class CertError(ValueError):
    module = "k3cert"


class SquareTooNegative(CertError):
    pass


class UncertifiedHypothesis(CertError):
    pass


class NoAmpleCertificate(CertError):
    pass


class UnsupportedRank(CertError):
    pass


@dataclass(frozen=True)
class Certificate:
    vector: tuple[int, ...]
    rule: str
    partner: Optional[tuple[int, ...]] = None
    pairing: Optional[int] = None
    note: str = ""

    def to_json(self, lattice: Optional[Lattice] = None) -> dict:
        fmt = lattice.format if lattice is not None else list
        out = {"class": fmt(self.vector), "rule": self.rule}
        if self.partner is not None:
            out["partner"] = fmt(self.partner)
            out["pairing"] = self.pairing
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class CertStore:
    lattice: Lattice
    effective: dict = field(default_factory=dict)
    irreducible: dict = field(default_factory=dict)
    nodal: dict = field(default_factory=dict)
    ample: Optional[tuple[int, ...]] = None
    chain: list = field(default_factory=list)

    def _record(self, cert: Certificate, *tables):
        for t in tables:
            t[cert.vector] = cert
        self.chain.append(cert)

    def is_effective(self, v) -> bool:
        return tuple(v) in self.effective

    def chain_json(self) -> list[dict]:
        return [c.to_json(self.lattice) for c in self.chain]


def seed_effective(store: CertStore, v: Sequence[int]) -> None:
    """Declare v effective without loss of generality (sign choice)."""
    v = tuple(v)
    sq = store.lattice.square(v)
    if sq < -2:
        raise SquareTooNegative(f"{store.lattice.format(v)} has square {sq} < -2")
    if v in store.effective:
        return
    cert = Certificate(v, "wlog-seed", note="effective up to sign; taken irreducible")
    if any(v):
        store._record(cert, store.effective, store.irreducible)
    else:
        store._record(cert, store.effective)


def derive_effective(store: CertStore, v: Sequence[int]) -> bool:
    v = tuple(v)
    if v in store.effective:
        return True
    L = store.lattice
    if L.square(v) < -2:
        return False
    for p in sorted(store.irreducible):
        d = L.pair(v, p)
        if d > 0:
            store._record(Certificate(v, "positive-on-irreducible", p, d), store.effective)
            return True
    if store.ample is not None:
        d = L.pair(v, store.ample)
        if d > 0:
            store._record(Certificate(v, "positive-on-ample", store.ample, d), store.effective)
            return True
    return False


def propagate(store: CertStore, candidates: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Apply derive_effective to a fixed point; returns newly admitted classes."""
    pending = [tuple(c) for c in candidates if tuple(c) not in store.effective]
    admitted = []
    changed = True
    while changed:
        changed = False
        for c in list(pending):
            if derive_effective(store, c):
                pending.remove(c)
                admitted.append(c)
                changed = True
    return admitted


@dataclass
class AmpleReport:
    ample: bool
    square: int
    pairings: list = field(default_factory=list)  # (generator, s.g, s.(s-g))
    positive_on_effective: bool = True
    failures: list = field(default_factory=list)

    def to_json(self, lattice: Lattice) -> dict:
        return {
            "ample": self.ample,
            "square": self.square,
            "pairings": [
                {"generator": lattice.format(g), "s.g": a, "s.(s-g)": b}
                for g, a, b in self.pairings
            ],
            "positive_on_effective": self.positive_on_effective,
            "failures": self.failures,
        }


def certify_ample(store: CertStore, s: Sequence[int], generators: Sequence[Sequence[int]]) -> AmpleReport:
    """Nakai-Moishezon style test against effective generators g and s - g."""
    L = store.lattice
    s = tuple(s)
    gens = [tuple(g) for g in generators]
    if la.smith_normal_form(gens, L.rank).diagonal != [1] * L.rank:
        raise CertError("generators do not span the lattice")
    for g in gens:
        if not derive_effective(store, g):
            raise UncertifiedHypothesis(f"generator {L.format(g)} is not certified effective")
        rest = tuple(a - b for a, b in zip(s, g))
        if any(rest) and not derive_effective(store, rest):
            raise UncertifiedHypothesis(f"s - g = {L.format(rest)} is not certified effective")

    sq = L.square(s)
    report = AmpleReport(ample=False, square=sq)
    if sq <= 0:
        report.failures.append(f"s^2 = {sq} is not positive")
    for g in gens:
        a = L.pair(s, g)
        b = sq - a
        report.pairings.append((g, a, b))
        if a <= 0:
            report.failures.append(f"s.{L.format(g)} = {a}")
        if b <= 0:
            report.failures.append(f"s.(s-{L.format(g)}) = {b}")
    bad = [v for v in store.effective if any(v) and L.pair(s, v) <= 0]
    if bad:
        report.positive_on_effective = False
        report.failures.extend(f"s.{L.format(v)} <= 0 for certified effective class" for v in bad)
    report.ample = not report.failures
    if report.ample:
        store.ample = s
        store._record(Certificate(s, "ample-criterion", note=f"s^2 = {sq}"))
    return report


def certify_nodal(store: CertStore, v: Sequence[int]) -> bool:
    """Effective (-2)-class of ample degree one: an irreducible smooth rational curve."""
    if store.ample is None:
        raise NoAmpleCertificate("certify_nodal needs an ample class first")
    v = tuple(v)
    if v not in store.effective:
        return False
    if v in store.nodal:
        return True
    L = store.lattice
    if L.square(v) != -2 or L.pair(store.ample, v) != 1:
        return False
    store._record(
        Certificate(v, "ample-degree-one", store.ample, 1), store.nodal, store.irreducible
    )
    return True


@dataclass
class QuotientIdentification:
    tag: str
    rules: list[str]
    diagnostics: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"tag": self.tag, "rules": self.rules, "diagnostics": self.diagnostics}


def is_hyperbolic_plane(L: Lattice) -> bool:
    """Rank 2, even, determinant -1: isometric to H."""
    return L.rank == 2 and la.det(L.gram) == -1 and all(L.gram[i][i] % 2 == 0 for i in range(2))


def identify_quotient(halved: Lattice, nodal_images: Sequence[Sequence[int]] = ()) -> QuotientIdentification:
    """Name the rational quotient surface from its Picard lattice.

    ``nodal_images`` are classes (in the halved basis) of images of
    irreducible curves; they are the geometric input separating F2 from
    P1xP1.
    """
    if halved.rank == 1:
        if halved.gram == [[1]]:
            return QuotientIdentification("P2", ["rank one with generator of square 1"])
        return QuotientIdentification(
            "Undetermined", [], [f"rank one with square {halved.gram[0][0]}"]
        )
    if halved.rank != 2:
        raise UnsupportedRank(f"quotient Picard lattice of rank {halved.rank}")
    if not is_hyperbolic_plane(halved):
        return QuotientIdentification(
            "Undetermined", [], [f"rank two form {halved.gram} is not isometric to H"]
        )
    rules = ["rank two, even unimodular: a Hirzebruch surface F_2m"]
    squares = [halved.square(v) for v in nodal_images]
    if any(sq == -2 for sq in squares):
        rules.append("irreducible curve of square -2 forces F_2 (only F_n has an irreducible (-n)-curve)")
        return QuotientIdentification("F2", rules)
    if squares:
        return QuotientIdentification(
            "Undetermined", rules, [f"supplied irreducible images have squares {squares}"]
        )
    rules.append("no irreducible negative curve supplied: F_0 (relies on the base-point-free pencil argument)")
    return QuotientIdentification("P1xP1", rules)


@dataclass
class TangentPair:
    curve: tuple[int, ...]
    image: tuple[int, ...]
    contact: int
    total: tuple[int, ...]


def tangent_pairs(a: CyclicAction, store: CertStore) -> list[TangentPair]:
    """Unordered pairs {C, sigma(C)} of distinct certified nodal classes."""
    L = a.lattice
    seen, out = set(), []
    for v in sorted(store.nodal):
        w = tuple(a.apply(v))
        if w == v or frozenset((v, w)) in seen:
            continue
        if w not in store.nodal:
            continue
        seen.add(frozenset((v, w)))
        out.append(TangentPair(v, w, L.pair(v, w), tuple(x + y for x, y in zip(v, w))))
    return out


def tritangent_check(a: CyclicAction, store: CertStore, fixed_class: Optional[Sequence[int]] = None,
                     contact: int = 3) -> int:
    """Count curve pairs C + sigma(C) ~ fixed_class meeting in ``contact`` points.

    Each pair is the preimage of a line (or fibre) tangent to the branch curve
    at ``contact`` points.
    """
    target = tuple(fixed_class) if fixed_class is not None else None
    return sum(
        1
        for tp in tangent_pairs(a, store)
        if tp.contact == contact and (target is None or tp.total == target)
    )


@dataclass
class FixedComponentResult:
    solutions: list[Vector]  # Z-basis of coefficient vectors a with R.S_i = 0
    square_form: list[list[int]]

    @property
    def only_square_zero(self) -> bool:
        return all(x == 0 for row in self.square_form for x in row)


def fixed_component_system(L: Lattice, orthogonal_to: Sequence[int]) -> FixedComponentResult:
    """Solve R = sum a_i s_i with R.s_j = 0 for j in ``orthogonal_to``.

    Returns the solution lattice and the form R^2 restricted to it; when that
    form vanishes no such R can be a (-2)-curve.
    """
    rows = [L.gram[j] for j in orthogonal_to]
    sols = la.integer_kernel(rows, L.rank)
    form = [[L.pair(v, w) for w in sols] for v in sols]
    return FixedComponentResult(sols, form)
