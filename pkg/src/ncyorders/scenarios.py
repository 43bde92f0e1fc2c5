"""Scenario files, the built-in constructions, and the verification pipeline.

A scenario JSON file has the fields::

    {"name": str (optional),
     "ambient": "K3" | {"gram": [[...]], "labels": [...]},
     "sublattice": {"gram": [[...]], "labels": [...]},
     "embedding": [[...], ...],          # image of each sublattice basis vector
     "involution": {"matrix": [[...]], "order": n},   # column j = image of s_j
     "effective_seed": [[...], ...],     # or a single vector
     "ample_candidate": [...],
     "surface_hints": {"irreducible_neg2_images": [[...], ...]},
     "order_data": {"canonical": [...], "ramification": [{"class": [...], "index": e}]},
     "reference_generators": [[...], ...]}   # optional H^1 generators to test

Integers may be JSON numbers or decimal strings.  ``irreducible_neg2_images``
lists irreducible curves on the cover (sublattice coordinates); their images
in the quotient are tested.  ``order_data`` vectors use the basis of the
halved invariant lattice.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from . import exactla as la
from .action import ActionError, CyclicAction, PartialIsometry, check_isometry, extends_to_ambient, \
    fixed_sublattice, halved_form, matrix_order
from .cohomology import CocycleQuotient
from .exactla import Matrix, Vector
from .k3cert import CertStore, certify_ample, certify_nodal, identify_quotient, propagate, \
    seed_effective, tangent_pairs
from .lattice import Lattice, build_k3_lattice, embedding_from_images, first_form_mismatch, is_primitive, \
    orthogonal_complement
from .orders import FAIL, PASS, SKIP, Check, OrderDescriptor, RamificationDatum, Report, SurfaceModel, \
    build_report, canonical_consistency, canonical_order_class, count_orders, enumerate_orders, \
    is_numerically_cy

DEFAULT_LIST_CAP = 256


class ScenarioError(ValueError):
    module = "scenarios"


class ParseError(ScenarioError):
    pass


class SchemaError(ScenarioError):
    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


class UnknownScenario(ScenarioError):
    pass


class OutOfRangeN(ScenarioError):
    pass


# ---------------------------------------------------------------------------
# scenario data


@dataclass
class Scenario:
    name: str
    ambient: Lattice
    sublattice: Lattice
    images: list[Vector]
    involution: Matrix
    order: int
    ambient_is_k3: bool = True
    effective_seed: list[Vector] = field(default_factory=list)
    ample_candidate: Optional[Vector] = None
    irreducible_images: list[Vector] = field(default_factory=list)
    canonical: Optional[Vector] = None
    ramification: list[tuple[Vector, int]] = field(default_factory=list)
    reference_generators: list[Vector] = field(default_factory=list)

    def to_json(self) -> dict:
        out: dict[str, Any] = {"name": self.name}
        if self.ambient_is_k3:
            out["ambient"] = "K3"
        else:
            out["ambient"] = {"gram": _enc(self.ambient.gram)}
            if self.ambient.labels:
                out["ambient"]["labels"] = list(self.ambient.labels)
        out["sublattice"] = {"gram": _enc(self.sublattice.gram)}
        if self.sublattice.labels:
            out["sublattice"]["labels"] = list(self.sublattice.labels)
        out["embedding"] = _enc(self.images)
        out["involution"] = {"matrix": _enc(self.involution), "order": self.order}
        out["effective_seed"] = _enc(self.effective_seed)
        if self.ample_candidate is not None:
            out["ample_candidate"] = _enc(self.ample_candidate)
        out["surface_hints"] = {"irreducible_neg2_images": _enc(self.irreducible_images)}
        if self.canonical is not None:
            out["order_data"] = {
                "canonical": _enc(self.canonical),
                "ramification": [{"class": _enc(c), "index": e} for c, e in self.ramification],
            }
        if self.reference_generators:
            out["reference_generators"] = _enc(self.reference_generators)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True)


_BIG = 2 ** 53


def _enc(x):
    if isinstance(x, (list, tuple)):
        return [_enc(y) for y in x]
    return str(x) if abs(x) >= _BIG else x


_DECIMAL = re.compile(r"-?\d+\Z")


def _int(x, path: str) -> int:
    if isinstance(x, bool):
        raise SchemaError(path, "expected an integer, got a boolean")
    if isinstance(x, int):
        return x
    if isinstance(x, str) and _DECIMAL.match(x.strip()):
        return int(x.strip())
    raise SchemaError(path, f"expected an integer, got {x!r}")


def _vector(x, path: str, length: Optional[int] = None) -> Vector:
    if not isinstance(x, list):
        raise SchemaError(path, "expected a list of integers")
    v = [_int(y, f"{path}[{i}]") for i, y in enumerate(x)]
    if length is not None and len(v) != length:
        raise SchemaError(path, f"expected length {length}, got {len(v)}")
    return v


def _matrix(x, path: str, rows: Optional[int] = None, cols: Optional[int] = None) -> Matrix:
    if not isinstance(x, list) or not x:
        raise SchemaError(path, "expected a nonempty list of rows")
    if rows is not None and len(x) != rows:
        raise SchemaError(path, f"expected {rows} rows, got {len(x)}")
    width = cols if cols is not None else (len(x[0]) if isinstance(x[0], list) else None)
    return [_vector(r, f"{path}[{i}]", width) for i, r in enumerate(x)]


def _vector_list(x, path: str, length: int) -> list[Vector]:
    if x is None:
        return []
    if not isinstance(x, list):
        raise SchemaError(path, "expected a list of vectors")
    if x and not isinstance(x[0], list):
        return [_vector(x, path, length)]
    return [_vector(v, f"{path}[{i}]", length) for i, v in enumerate(x)]


def _lattice(x, path: str) -> Lattice:
    if not isinstance(x, dict) or "gram" not in x:
        raise SchemaError(path, "expected an object with a 'gram' field")
    gram = _matrix(x["gram"], f"{path}.gram")
    n = len(gram)
    if any(len(r) != n for r in gram):
        raise SchemaError(f"{path}.gram", "gram matrix is not square")
    if not la.is_symmetric(gram):
        raise SchemaError(f"{path}.gram", "gram matrix is not symmetric")
    labels = x.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or not all(isinstance(s, str) for s in labels) or len(labels) != n:
            raise SchemaError(f"{path}.labels", f"expected {n} label strings")
    return Lattice(gram, labels)


KNOWN_KEYS = {"name", "ambient", "sublattice", "embedding", "involution", "effective_seed",
              "ample_candidate", "surface_hints", "order_data", "reference_generators"}


def scenario_from_json(data: Any, default_name: str = "file") -> Scenario:
    if not isinstance(data, dict):
        raise SchemaError("$", "scenario must be a JSON object")
    unknown = sorted(set(data) - KNOWN_KEYS)
    if unknown:
        raise SchemaError(unknown[0], "unknown field")
    for key in ("ambient", "sublattice", "embedding", "involution"):
        if key not in data:
            raise SchemaError(key, "required field missing")

    amb = data["ambient"]
    if amb == "K3":
        ambient, is_k3 = build_k3_lattice(), True
    elif isinstance(amb, dict):
        ambient, is_k3 = _lattice(amb, "ambient"), False
    else:
        raise SchemaError("ambient", "expected \"K3\" or an object with a gram matrix")

    sub = _lattice(data["sublattice"], "sublattice")
    images = _matrix(data["embedding"], "embedding", sub.rank, ambient.rank)

    inv = data["involution"]
    if not isinstance(inv, dict) or "matrix" not in inv or "order" not in inv:
        raise SchemaError("involution", "expected {\"matrix\": ..., \"order\": n}")
    matrix = _matrix(inv["matrix"], "involution.matrix", sub.rank, sub.rank)
    order = _int(inv["order"], "involution.order")
    if order < 1:
        raise SchemaError("involution.order", "order must be positive")

    seeds = _vector_list(data.get("effective_seed"), "effective_seed", sub.rank)
    ample = data.get("ample_candidate")
    ample = _vector(ample, "ample_candidate", sub.rank) if ample is not None else None

    hints = data.get("surface_hints") or {}
    if not isinstance(hints, dict):
        raise SchemaError("surface_hints", "expected an object")
    irr = _vector_list(hints.get("irreducible_neg2_images"), "surface_hints.irreducible_neg2_images", sub.rank)

    canonical, ram = None, []
    od = data.get("order_data")
    if od is not None:
        if not isinstance(od, dict) or "canonical" not in od:
            raise SchemaError("order_data", "expected an object with 'canonical'")
        canonical = _vector(od["canonical"], "order_data.canonical")
        for i, r in enumerate(od.get("ramification", [])):
            p = f"order_data.ramification[{i}]"
            if not isinstance(r, dict) or "class" not in r or "index" not in r:
                raise SchemaError(p, "expected {\"class\": [...], \"index\": e}")
            ram.append((_vector(r["class"], f"{p}.class", len(canonical)), _int(r["index"], f"{p}.index")))

    refs = _vector_list(data.get("reference_generators"), "reference_generators", sub.rank)
    name = data.get("name", default_name)
    if not isinstance(name, str):
        raise SchemaError("name", "expected a string")
    return Scenario(name, ambient, sub, images, matrix, order, is_k3, seeds, ample, irr, canonical, ram, refs)


def load_scenario(path) -> Scenario:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from None
    return scenario_from_json(data, default_name=path.stem)


# ---------------------------------------------------------------------------
# built-in constructions

# Gram matrix of the sextic family; the rank-n lattice uses the leading n x n block.
_SEXTIC_GRAM_ROWS = """
-2  3  0  1  1  1  1  1  1  1  1  1  1  1  1  1  1  1
 3 -2  1  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0
 0  1 -2  1  0  0  0  0  0  0  0  0  0  0  0  0  0  0
 1  0  1 -2  1  0  0  0  0  0  0  0  0  0  0  0  0  0
 1  0  0  1 -2  1  0  0  0  0  0  0  0  0  0  0  0  0
 1  0  0  0  1 -2  1  0  0  0  0  0  0  0  0  0  0  0
 1  0  0  0  0  1 -2  1  0  0  0  0  0  0  0  0  0  0
 1  0  0  0  0  0  1 -2  0  0  0  0  0  0  0  0  0  0
 1  0  0  0  0  0  0  0 -2  0  0  1  0  0  0  0  0  0
 1  0  0  0  0  0  0  0  0 -2  1  0  0  0  0  0  0  0
 1  0  0  0  0  0  0  0  0  1 -2  1  0  0  0  0  0  0
 1  0  0  0  0  0  0  0  1  0  1 -2  1  0  0  0  0  0
 1  0  0  0  0  0  0  0  0  0  0  1 -2  1  0  0  0  0
 1  0  0  0  0  0  0  0  0  0  0  0  1 -2  1  0  0  0
 1  0  0  0  0  0  0  0  0  0  0  0  0  1 -2  1  0  0
 1  0  0  0  0  0  0  0  0  0  0  0  0  0  1 -2  0  0
 1  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0 -2  0
 1  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0  0 -2
"""
SEXTIC_GRAM: Matrix = [[int(x) for x in line.split()] for line in _SEXTIC_GRAM_ROWS.strip().splitlines()]

SEXTIC_IMAGES = [
    "lambda1+mu1", "lambda2+3mu2", "lambda3", "lambda4",
    "lambda5+mu2", "lambda6+mu2", "lambda7+mu2", "lambda8+mu2",
    "lambda1'+mu2", "lambda2'+mu2", "lambda3'+mu2", "lambda4'+mu2",
    "lambda5'+mu2", "lambda6'+mu2", "lambda7'+mu2", "lambda8'+mu2",
    "mu2+mu1'-mu2'", "mu2+mu1''-mu2''",
]

SEXTIC_N_RANGE = range(3, 19)


def _labels(n: int) -> list[str]:
    return [f"s{i}" for i in range(1, n + 1)]


def _unit(n: int, *idx: int, coeffs=None) -> Vector:
    v = [0] * n
    for k, i in enumerate(idx):
        v[i - 1] += coeffs[k] if coeffs else 1
    return v


def p2_sextic(n: int) -> Scenario:
    """Double cover of P2 branched on a sextic, Picard rank n, with s_i -> s1 + s2 - s_i."""
    if n not in SEXTIC_N_RANGE:
        raise OutOfRangeN(f"n must lie in 3..18, got {n}")
    K3 = build_k3_lattice()
    S = Lattice([row[:n] for row in SEXTIC_GRAM[:n]], _labels(n))
    images = [K3.vector(expr) for expr in SEXTIC_IMAGES[:n]]
    # column j is s1 + s2 - s_j
    phi = [[(1 if i in (0, 1) else 0) - int(i == j) for j in range(n)] for i in range(n)]
    s = _unit(n, 1, 2)
    return Scenario(
        name=f"p2-sextic-n{n}",
        ambient=K3, sublattice=S, images=images, involution=phi, order=2,
        effective_seed=[_unit(n, i) for i in range(1, n + 1)],
        ample_candidate=s,
        canonical=[-3], ramification=[([6], 2)],
        reference_generators=[_unit(n, 1, i, coeffs=[1, -1]) for i in range(3, n + 1)],
    )


def perturbed_sextic() -> Scenario:
    """The n = 3 sextic with s3 sent to lambda3 + mu2 instead of lambda3 (negative control)."""
    sc = p2_sextic(3)
    K3 = sc.ambient
    sc.images = [sc.images[0], sc.images[1], K3.vector("lambda3+mu2")]
    sc.name = "p2-sextic-n3-perturbed"
    return sc


def quadric() -> Scenario:
    """Double cover of P1 x P1 branched on a (4,4) curve."""
    K3 = build_k3_lattice()
    S = Lattice([[0, 1, 1, 1], [1, -2, 2, 0], [1, 2, -2, 0], [1, 0, 0, -2]], _labels(4))
    images = [K3.vector(x) for x in ("mu1+mu1'", "lambda1+mu2+mu1''", "lambda4+mu2+mu2''", "lambda2+mu2")]
    phi = [[1, 0, 0, 0], [0, 0, 1, 1], [0, 1, 0, 1], [0, 0, 0, -1]]
    return Scenario(
        name="quadric",
        ambient=K3, sublattice=S, images=images, involution=phi, order=2,
        effective_seed=[_unit(4, i) for i in range(1, 5)],
        ample_candidate=[1, 1, 1, 0],
        canonical=[-2, -2], ramification=[([4, 4], 2)],
        reference_generators=[[0, 1, 0, -1]],
    )


def hirzebruch2() -> Scenario:
    """Double cover of F2 branched on a curve in |4C0 + 8F|."""
    K3 = build_k3_lattice()
    S = Lattice(
        [[-2, 0, 1, 0, 1], [0, -2, 0, 1, 0], [1, 0, -2, 2, 0], [0, 1, 2, -2, 0], [1, 0, 0, 0, -2]],
        _labels(5),
    )
    images = [K3.vector(x) for x in ("lambda4", "lambda2+mu1", "lambda1+2mu1", "lambda7+mu2", "lambda5")]
    phi = [[0, 1, 0, 0, 0], [1, 0, 0, 0, 0], [0, 0, 0, 1, 1], [0, 0, 1, 0, 1], [0, 0, 0, 0, -1]]
    return Scenario(
        name="hirzebruch2",
        ambient=K3, sublattice=S, images=images, involution=phi, order=2,
        effective_seed=[_unit(5, i) for i in range(1, 6)],
        ample_candidate=[1, 1, 3, 3, 0],
        irreducible_images=[_unit(5, 1)],
        canonical=[-2, -4], ramification=[([4, 8], 2)],
        reference_generators=[[0, 0, 1, 0, -1]],
    )


BUILTINS = ("p2-sextic", "quadric", "hirzebruch2")


def builtin(name: str, n: Optional[int] = None) -> Scenario:
    if name == "p2-sextic":
        return p2_sextic(3 if n is None else n)
    if name == "quadric":
        return quadric()
    if name == "hirzebruch2":
        return hirzebruch2()
    raise UnknownScenario(f"unknown scenario {name!r}; choose from {', '.join(BUILTINS)}")


# ---------------------------------------------------------------------------
# pipeline


def _error(exc: Exception) -> dict:
    return {"module": getattr(exc, "module", "internal"), "error": type(exc).__name__, "message": str(exc)}


def run_scenario(sc: Scenario, list_cap: int = DEFAULT_LIST_CAP) -> Report:
    """embed -> primitive -> signature -> isometry -> extend -> fixed -> halve -> identify
    -> certificates -> H^1 -> orders -> K_A."""
    checks: list[Check] = []
    sections: dict[str, Any] = {}
    errors: list[dict] = []
    S, T = sc.sublattice, sc.ambient
    fmt = S.format
    rho = S.rank

    assumptions = ["overlap-condition", "maximality"]
    if sc.ambient_is_k3:
        assumptions = ["k3-realization", "torelli-involution", "rational-quotient",
                       "nodal-uniqueness"] + assumptions

    def finish():
        return build_report(sc.name, checks, sections, assumptions, errors)

    # embedding
    emb = embedding_from_images(S, T, sc.images, check=False)
    mismatch = first_form_mismatch(S, T, sc.images)
    sections["embedding"] = {"images": emb.describe(), "form_preserving": emb.form_preserving}
    detail = {"summary": "form preserved" if mismatch is None else
              f"pair {mismatch[:2]}: sublattice {mismatch[2]}, images {mismatch[3]}"}
    checks.append(Check("embedding-form", PASS if mismatch is None else FAIL, detail))

    prim, diag = is_primitive(emb)
    checks.append(Check("primitive", PASS if prim else FAIL,
                        {"summary": f"Smith diagonal {diag}", "smith_diagonal": diag}))

    sig = S.signature()
    want = (1, rho - 1, 0)
    checks.append(Check("signature", PASS if sig == want else FAIL,
                        {"summary": f"{sig[:2]} (expected {want[:2]})", "signature": list(sig)}))

    action = None
    try:
        action = CyclicAction(S, sc.involution, sc.order)
        checks.append(Check("isometry", PASS, {"summary": f"order {sc.order} isometry of the sublattice"}))
    except ActionError as exc:
        errors.append(_error(exc))
        checks.append(Check("isometry", FAIL, {"summary": str(exc),
                                               "is_isometry": check_isometry(S, sc.involution),
                                               "actual_order": matrix_order(sc.involution, 64)}))

    ext = None
    if action is not None and prim:
        try:
            ext = extends_to_ambient(PartialIsometry(action, emb))
        except ValueError as exc:
            errors.append(_error(exc))
    if ext is None:
        checks.append(Check("extension", SKIP if action is None else FAIL, {"summary": "not attempted"}))
    else:
        detail = {"summary": "integral witness, verified isometry" if ext.extends else ext.reason,
                  "witness_checks": ext.checks}
        if ext.first_non_integral is not None:
            i, j, x = ext.first_non_integral
            detail["first_non_integral"] = {"row": i, "col": j, "value": str(x)}
        checks.append(Check("extension", PASS if ext.extends else FAIL, detail))
        if ext.witness is not None:
            sections["extension"] = {"witness": ext.witness, "complement_rank": ext.complement.lattice.rank,
                                     "complement_signature": list(ext.complement.lattice.signature())}

    downstream = ["fixed-lattice", "halved-form", "quotient", "effectivity", "ample", "nodal",
                  "tangent-curves", "h1", "h1-reference-generators", "orders", "canonical-surface",
                  "numerically-cy"]
    if not all(c.status == PASS for c in checks):
        checks.extend(Check(name, SKIP, {"summary": "upstream check failed"}) for name in downstream)
        return finish()

    try:
        _downstream(sc, action, checks, sections, assumptions, list_cap)
    except ValueError as exc:
        errors.append(_error(exc))
        done = {c.name for c in checks}
        checks.extend(Check(name, SKIP, {"summary": "pipeline error"}) for name in downstream if name not in done)
    return finish()


def _downstream(sc: Scenario, action: CyclicAction, checks, sections, assumptions, list_cap):
    S = sc.sublattice
    fmt = S.format

    fixed = fixed_sublattice(action)
    fixed_ok = bool(fixed.basis) and all(action.apply(v) == v for v in fixed.basis)
    checks.append(Check("fixed-lattice", PASS if fixed_ok else FAIL,
                        {"summary": ", ".join(fmt(v) for v in fixed.basis) or "trivial",
                         "generators": [fmt(v) for v in fixed.basis], "gram": fixed.lattice.gram}))

    halved = halved_form(fixed.lattice)
    checks.append(Check("halved-form", PASS, {"summary": f"{halved.gram}", "gram": halved.gram}))

    # images in the quotient of the supplied irreducible curves: pullback C + sigma(C)
    F = la.columns_to_matrix(fixed.basis, S.rank)
    hint_coords = []
    for v in sc.irreducible_images:
        pull = [a + b for a, b in zip(v, action.apply(v))] if action.apply(v) != v else v
        c = la.solve_integral(F, pull, len(fixed.basis))
        if c is None:
            raise ScenarioError(f"hint {fmt(v)} does not pull back into the invariant lattice")
        hint_coords.append(c)
    ident = identify_quotient(halved, hint_coords)
    sections["quotient"] = ident.to_json() | {"hint_images": hint_coords}
    checks.append(Check("quotient", PASS if ident.tag != "Undetermined" else FAIL, {"summary": ident.tag}))

    # certificates
    store = CertStore(S)
    for v in sc.effective_seed:
        seed_effective(store, v)
    gens = [S.basis_vector(i) for i in range(S.rank)]
    pool = gens + [action.apply(g) for g in gens]
    s = sc.ample_candidate
    if s is not None:
        pool += [[a - b for a, b in zip(s, g)] for g in gens]
    propagate(store, pool)
    eff_ok = all(store.is_effective(g) for g in gens)
    checks.append(Check("effectivity", PASS if eff_ok else FAIL,
                        {"summary": f"{len(store.effective)} certified effective classes"}))

    amp = None
    if s is not None and eff_ok:
        amp = certify_ample(store, s, gens)
        propagate(store, pool)
    if amp is None:
        checks.append(Check("ample", FAIL, {"summary": "no ample candidate certified"}))
    else:
        checks.append(Check("ample", PASS if amp.ample else FAIL,
                            {"summary": f"s = {fmt(s)}, s^2 = {amp.square}", **amp.to_json(S)}))

    nodal_fail = []
    if store.ample is not None:
        for v in sorted(store.effective):
            if S.square(v) == -2 and not certify_nodal(store, v):
                nodal_fail.append(fmt(v))
    nodal = [fmt(v) for v in sorted(store.nodal)]
    nodal_ok = store.ample is not None and not nodal_fail
    checks.append(Check("nodal", PASS if nodal_ok else FAIL,
                        {"summary": f"{len(nodal)} nodal classes", "nodal": nodal, "not_nodal": nodal_fail}))
    sections["certificates"] = {"chain": store.chain_json(), "ample": fmt(store.ample) if store.ample else None}

    pairs = tangent_pairs(action, store) if store.ample is not None else []
    fixed_gen = tuple(fixed.basis[0]) if len(fixed.basis) == 1 else None
    tritangents = sum(1 for p in pairs if p.contact == 3 and (fixed_gen is None or p.total == fixed_gen))
    bitangents = sum(1 for p in pairs if p.contact == 2)
    sections["tangent_curves"] = {
        "pairs": [{"curve": fmt(p.curve), "image": fmt(p.image), "contact": p.contact, "total": fmt(p.total)}
                  for p in pairs],
        "tritangents": tritangents, "bitangents": bitangents,
    }
    consistent = all(action.apply(p.total) == list(p.total) for p in pairs)
    checks.append(Check("tangent-curves", PASS if consistent else FAIL,
                        {"summary": f"{tritangents} tritangent, {bitangents} bitangent pairs"}))

    # H^1
    q = CocycleQuotient(action)
    grp = q.group
    sections["h1"] = {"group": grp.describe(), **grp.to_json(),
                      "generator_labels": [fmt(g) for g in grp.generators],
                      "kernel_of_norm": [fmt(v) for v in q.kernel_basis],
                      "image_of_difference": [fmt(v) for v in q.image_basis]}
    checks.append(Check("h1", PASS if not grp.is_trivial else FAIL, {"summary": grp.describe()}))
    if sc.reference_generators:
        covers = q.generates(sc.reference_generators)
        checks.append(Check("h1-reference-generators", PASS if covers else FAIL,
                            {"summary": ("cover" if covers else "do not cover") + " every class",
                             "generators": [fmt(v) for v in sc.reference_generators]}))
    else:
        checks.append(Check("h1-reference-generators", PASS, {"summary": "none supplied"}))

    # orders
    count = count_orders(grp)
    listed = enumerate_orders(grp, action, limit=list_cap)
    coords = [q.coordinates(v) for v in listed]
    distinct = len(set(coords)) == len(coords) and all(any(c) for c in coords)
    if count <= list_cap:
        distinct = distinct and len(listed) == count
    assumptions.append("brauer-distinctness" if sc.ambient_is_k3 and sc.order == 2 else "cover-existence")
    sections["orders"] = {"count": count, "materialized": len(listed), "list_cap": list_cap,
                          "classes": [fmt(v) for v in listed],
                          "distinctness": "brauer" if "brauer-distinctness" in assumptions else "h1-classes"}
    checks.append(Check("orders", PASS if distinct and count > 0 else FAIL,
                        {"summary": f"{count} orders ({len(listed)} listed)"}))

    # canonical class of the order
    if sc.canonical is None:
        checks.append(Check("canonical-surface", SKIP, {"summary": "no order data"}))
        checks.append(Check("numerically-cy", SKIP, {"summary": "no order data"}))
        return
    if len(sc.canonical) != halved.rank:
        raise ScenarioError(f"canonical class has {len(sc.canonical)} entries, Pic Z has rank {halved.rank}")
    model = SurfaceModel(halved, tuple(sc.canonical), ident.tag)
    cons = canonical_consistency(model)
    checks.append(Check("canonical-surface", PASS if cons["ok"] else FAIL,
                        {"summary": f"K^2 = {cons['K^2']}", **cons}))
    desc = OrderDescriptor(model, [RamificationDatum(tuple(c), e) for c, e in sc.ramification],
                           cocycle_class=listed[0] if listed else None, h1_context=grp, action=action,
                           assumptions=list(assumptions))
    KA = canonical_order_class(desc)
    cy = is_numerically_cy(desc)
    sections["canonical"] = {"K_Z": list(sc.canonical), "K_A": [str(x) for x in KA]}
    checks.append(Check("numerically-cy", PASS if cy else FAIL,
                        {"summary": f"K_A = {[str(x) for x in KA]}"}))
