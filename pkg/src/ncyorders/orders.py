"""Order bookkeeping: canonical class K_A, cocycle classes, ramification vectors, reports."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

from . import exactla as la
from .action import CyclicAction
from .cohomology import norm_matrix
from .exactla import Vector
from .lattice import FinAbGroup, Lattice


class OrderError(ValueError):
    module = "orders"


class UnsupportedTorsion(OrderError):
    pass


class NegativeMultiplicity(OrderError):
    pass


# Named assumptions that lattice data cannot decide.
ASSUMPTIONS = {
    "k3-realization": "a primitive sublattice of signature (1, rho-1) is the Picard lattice of some K3 surface",
    "torelli-involution": "an integral involution fixing an ample class and acting by -1 on the "
                          "transcendental lattice is induced by an anti-symplectic automorphism",
    "rational-quotient": "the quotient by that involution is a smooth rational surface with irreducible branch curve",
    "overlap-condition": "every relation built from an H^1 class satisfies the overlap condition "
                         "(ramification indices have lcm equal to the group order)",
    "maximality": "the cyclic cover of each ramification curve defined by the cocycle is irreducible",
    "brauer-distinctness": "distinct H^1 classes give distinct Brauer classes when the cover is totally "
                           "ramified along an irreducible divisor",
    "nodal-uniqueness": "a nodal class has a unique effective representative (not verified)",
    "cover-existence": "a cyclic cover with the declared ramification exists",
}


@dataclass(frozen=True)
class SurfaceModel:
    pic: Lattice
    canonical: tuple
    name: str


def p2_model() -> SurfaceModel:
    return SurfaceModel(Lattice([[1]], ["H"]), (-3,), "P2")


def p1xp1_model() -> SurfaceModel:
    return SurfaceModel(Lattice([[0, 1], [1, 0]], ["t1", "t2"]), (-2, -2), "P1xP1")


def ruled_model(c0_square: int, genus: int, name: str = "") -> SurfaceModel:
    """Numerical lattice <C0, F> of a ruled surface with K = -2 C0 + (C0^2 + 2g - 2) F."""
    pic = Lattice([[c0_square, 1], [1, 0]], ["C0", "F"])
    return SurfaceModel(pic, (-2, c0_square + 2 * genus - 2), name or f"ruled(C0^2={c0_square}, g={genus})")


def hirzebruch_model(n: int) -> SurfaceModel:
    return ruled_model(-n, 0, f"F{n}")


def canonical_consistency(model: SurfaceModel) -> dict:
    """Basis-free sanity checks for a rational surface: K^2 = 10 - rho and K.x = x^2 mod 2."""
    L = model.pic
    K = list(model.canonical)
    k2 = L.square(K)
    wu = all((L.pair(K, e) - L.square(e)) % 2 == 0 for e in (L.basis_vector(i) for i in range(L.rank)))
    return {"K^2": k2, "expected_K^2": 10 - L.rank, "characteristic": wu,
            "ok": k2 == 10 - L.rank and wu}


@dataclass(frozen=True)
class RamificationDatum:
    divisor_class: tuple
    index: int

    def __post_init__(self):
        if self.index < 2:
            raise OrderError(f"ramification index must be >= 2, got {self.index}")
        if not any(self.divisor_class):
            raise OrderError("ramification divisor class must be nonzero")


@dataclass
class OrderDescriptor:
    surface: SurfaceModel
    ramification: list[RamificationDatum]
    cocycle_class: Optional[Vector] = None
    h1_context: Optional[FinAbGroup] = None
    action: Optional[CyclicAction] = None
    assumptions: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.cocycle_class is not None and self.action is not None:
            N = norm_matrix(self.action)
            if any(la.mat_vec(N, self.cocycle_class)):
                raise OrderError("cocycle class is not in ker(N)")


def canonical_order_class(o: OrderDescriptor) -> list[Fraction]:
    """K_Z + sum (1 - 1/e_i) D_i with exact rational coefficients."""
    K = [Fraction(x) for x in o.surface.canonical]
    for r in o.ramification:
        c = 1 - Fraction(1, r.index)
        K = [k + c * d for k, d in zip(K, r.divisor_class)]
    return K


def is_numerically_cy(o: OrderDescriptor) -> bool:
    K = canonical_order_class(o)
    G = o.surface.pic.gram
    return all(sum(k * g for k, g in zip(K, row)) == 0 for row in G)


def count_orders(h1: FinAbGroup) -> int:
    if any(f != 2 for f in h1.invariant_factors):
        raise UnsupportedTorsion(f"only 2-torsion H^1 is enumerated, got factors {h1.invariant_factors}")
    return 2 ** len(h1.invariant_factors) - 1


def enumerate_orders(h1: FinAbGroup, a: CyclicAction, limit: Optional[int] = None) -> list[Vector]:
    """Nonzero classes sum m_i g_i, m_i in {0, 1}, in binary counting order."""
    count_orders(h1)
    k = len(h1.invariant_factors)
    N = norm_matrix(a)
    out = []
    for ms in product((0, 1), repeat=k):
        if not any(ms):
            continue
        if limit is not None and len(out) >= limit:
            break
        v = [0] * a.rank
        for m, g in zip(reversed(ms), h1.generators):
            if m:
                v = [x + y for x, y in zip(v, g)]
        if any(la.mat_vec(N, v)):
            raise OrderError("generator combination is not a cocycle")
        out.append(v)
    return out


def ramification_vector(o: OrderDescriptor, fiber: Sequence[int]) -> tuple[int, ...]:
    """Each e_i repeated D_i.F times, sorted."""
    out = []
    for r in o.ramification:
        m = o.surface.pic.pair(r.divisor_class, fiber)
        if m < 0:
            raise NegativeMultiplicity(f"D.F = {m} for {list(r.divisor_class)}")
        out.extend([r.index] * m)
    return tuple(sorted(out))


# ---------------------------------------------------------------------------
# reports

PASS, FAIL, SKIP = "PASS", "FAIL", "SKIP"


@dataclass
class Check:
    name: str
    status: str
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail}


@dataclass
class Report:
    scenario: str
    checks: list[Check] = field(default_factory=list)
    sections: dict = field(default_factory=dict)
    assumptions: list[str] = field(default_factory=list)
    errors: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.errors and all(c.status == PASS for c in self.checks)

    @property
    def status(self) -> str:
        return PASS if self.passed else FAIL

    def check(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)

    def to_json(self) -> dict:
        return {
            "scenario": self.scenario,
            "status": self.status,
            "checks": [c.to_json() for c in self.checks],
            "sections": self.sections,
            "assumptions": [{"tag": t, "statement": ASSUMPTIONS[t]} for t in self.assumptions],
            "errors": self.errors,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True, default=_json_default)

    def render_text(self) -> str:
        lines = [f"scenario: {self.scenario}  [{self.status}]"]
        for c in self.checks:
            summary = c.detail.get("summary", "")
            lines.append(f"  {c.status:4}  {c.name}" + (f"  {summary}" if summary else ""))
        for e in self.errors:
            lines.append(f"  ERROR [{e['module']}] {e['error']}: {e['message']}")
        emb = self.sections.get("embedding", {}).get("images")
        if emb:
            lines.append("  embedding:")
            lines.extend(f"    {x}" for x in emb)
        chain = self.sections.get("certificates", {}).get("chain")
        if chain:
            lines.append("  certificate chain:")
            for c in chain:
                extra = f" via {c['partner']} (pairing {c['pairing']})" if "partner" in c else ""
                lines.append(f"    {c['rule']}: {c['class']}{extra}")
        if self.assumptions:
            lines.append("  assumptions: " + ", ".join(self.assumptions))
        return "\n".join(lines)


def _json_default(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, tuple):
        return list(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def build_report(scenario: str, checks: Sequence[Check], sections: dict,
                 assumptions: Sequence[str], errors: Sequence[dict] = ()) -> Report:
    unknown = [t for t in assumptions if t not in ASSUMPTIONS]
    if unknown:
        raise OrderError(f"unknown assumption tags {unknown}")
    return Report(scenario, list(checks), dict(sections), list(assumptions), list(errors))
