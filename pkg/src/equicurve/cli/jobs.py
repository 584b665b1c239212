"""Verification jobs: parameter validation and dispatch to the library."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

from ..arith import QQ, FieldTower, Poly, TowerError
from ..brauer import CertificateProof, is_split_kx
from ..brauer.split import UnsupportedFieldError
from ..curves import even_cyclic_curve, even_dihedral_curve, klein_construction_polys, klein_curve, klein_delta_class
from ..curves.hyperelliptic import CurveError
from ..forms import EtaleAlgebra, diagonalize, serre_invariant, trace_form, w2
from ..projective import (
    SideConditionError, a5_compression, conjugated_compression, embedding_catalog, equivariant_check,
    power_map, s4_compression,
)
from ..ramify import RamificationError, RamificationSpec, build_ramified_poly, sm_cover
from .report import FAIL, INCONCLUSIVE, PASS, Entry
from .suite import CHECKS, poly_json

KINDS = ("split", "invariant", "compress", "build-curve", "ramify", "sm-cover", "paper-check")


class JobError(ValueError):
    """Parameters that do not fit the job kind (a usage error)."""


@dataclass(frozen=True)
class VerificationJob:
    id: str
    kind: str
    parameters: dict = field(default_factory=dict)


# name -> (required keys, optional keys)
SCHEMAS = {
    "split": ({"f", "g"}, {"field", "expect"}),
    "invariant": ({"poly"}, {"field"}),
    "compress": ({"group"}, {"n", "field", "params", "verify_only"}),
    "build-curve": ({"kind"}, {"n", "a", "h", "P", "Q", "x1", "x2", "field"}),
    "ramify": ({"conditions"}, {"degree"}),
    "sm-cover": ({"m"}, set()),
    "paper-check": ({"name"}, set()),
}

CURVE_KINDS = ("even-cyclic", "klein", "even-dihedral")


def validate(job):
    if job.kind not in SCHEMAS:
        raise JobError(f"unknown job kind {job.kind!r}")
    if not isinstance(job.parameters, dict):
        raise JobError("job parameters must be an object")
    req, opt = SCHEMAS[job.kind]
    keys = set(job.parameters)
    if req - keys:
        raise JobError(f"{job.kind}: missing {sorted(req - keys)}")
    if keys - req - opt:
        raise JobError(f"{job.kind}: unknown keys {sorted(keys - req - opt)}")
    p = job.parameters
    if job.kind == "build-curve" and p["kind"] not in CURVE_KINDS:
        raise JobError(f"curve kind must be one of {CURVE_KINDS}")
    if job.kind == "sm-cover" and (not isinstance(p["m"], int) or p["m"] < 2):
        raise JobError("m must be an integer ≥ 2")
    if job.kind == "paper-check" and p["name"] not in CHECKS:
        raise JobError(f"unknown paper check {p['name']!r}")
    if job.kind == "split" and p.get("expect", "split") not in ("split", "notsplit"):
        raise JobError("expect must be 'split' or 'notsplit'")


def _tower(p):
    spec = p.get("field")
    if spec is None:
        return FieldTower()
    if isinstance(spec, FieldTower):
        return spec
    try:
        return FieldTower.from_json(spec)
    except TowerError as exc:
        raise JobError(f"malformed field tower: {exc}") from exc


def _poly(obj, tower):
    try:
        return tower.parse_poly(obj)
    except (TowerError, ValueError, TypeError) as exc:
        raise JobError(f"cannot read polynomial {obj!r}: {exc}") from exc


def _status(verdicts):
    if any(v is False for v in verdicts):
        return FAIL
    if any(v is None for v in verdicts):
        return INCONCLUSIVE
    return PASS


# ---------------------------------------------------------------------------
# handlers return (status, detail lines)
# ---------------------------------------------------------------------------

def _split(p):
    T = _tower(p)
    if T.quad_D is not None:
        raise JobError("splitting is decided over K(x) for K = Q or a number field")
    f, g = _poly(p["f"], T), _poly(p["g"], T)
    if not f or not g:
        raise JobError("symbol entries must be nonzero")
    var = T.variable or "x"
    try:
        res = is_split_kx(f, g)
    except UnsupportedFieldError as exc:
        return INCONCLUSIVE, [f"unsupported field: {exc}"]
    if res.is_split is None:
        return INCONCLUSIVE, [res.describe(var)]
    expect = p.get("expect")
    ok = res.verify() and (expect is None or res.is_split == (expect == "split"))
    lines = [res.describe(var)]
    if res.is_split and isinstance(res.proof, CertificateProof):
        lines.append(res.proof.describe(var))
    lines.append(f"PROOF {json.dumps(_proof_dict(res, var), sort_keys=True, ensure_ascii=False)}")
    return (PASS if ok else FAIL), lines


def _proof_dict(res, var):
    if res.is_split:
        proof = res.proof
        if hasattr(proof, "to_dict"):
            return {"decision": "split", **proof.to_dict(var)}
        return {"decision": "split", "detail": proof.describe(var)}
    w = res.witness
    return {"decision": "notsplit", "witness": w.describe(var)}


def _element(obj, T, F):
    try:
        return T.parse(obj) if F is T.top else F(T.parse(obj))
    except (TowerError, ValueError, TypeError, ZeroDivisionError) as exc:
        raise JobError(f"cannot read field element {obj!r}: {exc}") from exc


def _invariant(p):
    T = _tower(p)
    F = T.top
    coeffs = p["poly"]
    if not isinstance(coeffs, list) or len(coeffs) < 2:
        raise JobError("poly must be a coefficient list of degree ≥ 1")
    P = Poly([_element(c, T, F) for c in coeffs], F)
    try:
        E = EtaleAlgebra(P.monic())
    except ValueError as exc:
        raise JobError(f"not an étale algebra: {exc}") from exc
    q = diagonalize(trace_form(E))
    d = q.determinant()
    lines = [f"FORM {q}", f"DISC {d.to_str() if hasattr(d, 'to_str') else QQ.format(d)}",
             f"W2 {w2(q)}", f"DELTA {serre_invariant(E, q)}"]
    return PASS, lines


_COMPRESSIONS = {"dihedral", "s4", "a5", "klein"}


def _compress(p):
    g = str(p["group"]).lower()
    if g not in _COMPRESSIONS:
        raise JobError(f"compress group must be one of {sorted(_COMPRESSIONS)}")
    T = _tower(p)
    K = None if p.get("field") is None else T.constant_field
    verify_only = bool(p.get("verify_only", False))
    try:
        if g == "dihedral":
            n = p.get("n")
            if not isinstance(n, int) or n < 3:
                raise JobError("dihedral compression needs an integer n ≥ 3")
            rep = conjugated_compression(n, K)
            F, eq, extra = rep.map, rep.equivariant, rep.defined_over_base
        else:
            if g == "klein":
                params = p.get("params", {"a": 1, "b": 1})
                E = embedding_catalog("klein", params, K or QQ)
                F = power_map(3, E.field)
            else:
                E = embedding_catalog(g, {}, K)
                F = (s4_compression if g == "s4" else a5_compression)(E.field)
            eq, extra = equivariant_check(F, E), True
    except SideConditionError as exc:
        raise JobError(str(exc)) from exc
    lines = [] if verify_only else [f"MAP {json.dumps(F.f0.to_json())} {json.dumps(F.f1.to_json())}",
                                    *F.to_lines()]
    lines.insert(0, f"EQUIVARIANT {'yes' if eq else 'no'} DEGREE {F.degree}")
    if g == "dihedral":
        lines.append(f"BASE-FIELD {'yes' if extra else 'no'}")
    return (PASS if eq and extra else FAIL), lines


def _curve_field(p):
    if p.get("field") is None:
        return None
    return _tower(p).constant_field


def _build_curve(p):
    kind = p["kind"]
    K = _curve_field(p)
    try:
        if kind == "even-cyclic":
            n = p.get("n")
            if not isinstance(n, int):
                raise JobError("even-cyclic needs an integer n")
            c = even_cyclic_curve(n, p.get("a"), K)
            lines = [f"CURVE {c.model.equation()}"]
            lines += [f"ACTION {k}: (x,y) -> {a.to_str('x')}" for k, a in c.model.actions.items()]
            lines += [f"POLY {poly_json(c.model.s)}", f"GENUS {c.model.genus()}"]
            lines += c.lines()
        elif kind == "klein":
            T = FieldTower()
            if "h" in p:
                P, Q, alpha = klein_construction_polys(_poly(p["h"], T))
                head = [f"ALPHA {alpha}"]
            elif "P" in p and "Q" in p:
                P, Q = _poly(p["P"], T), _poly(p["Q"], T)
                head = []
            else:
                raise JobError("klein needs h or both P and Q")
            x1 = QQ(p["x1"]) if "x1" in p else None
            x2 = QQ(p["x2"]) if "x2" in p else None
            c = klein_curve(P, Q, x1, x2)
            cls, decision = klein_delta_class(P, Q)
            lines = head + [f"CURVE {e}" for e in c.equations()]
            lines += [f"POLY P {poly_json(P)}", f"POLY Q {poly_json(Q)}", f"CLASS {cls}",
                      f"DECISION {decision.describe('x')}"]
            lines += c.lines()
        else:
            n = p.get("n")
            if not isinstance(n, int) or "h" not in p:
                raise JobError("even-dihedral needs an integer n and h")
            h = _poly(p["h"], FieldTower())
            c = even_dihedral_curve(n, h, K)
            lines = [f"CURVE {c.model.equation()}"]
            lines += [f"ACTION {k}: (x,y) -> {a.to_str('x')}" for k, a in c.model.actions.items()]
            lines += [f"CLASS {c.delta_class}"]
            lines += c.lines()
    except (CurveError, SideConditionError) as exc:
        return FAIL, [f"ERROR {exc}"]
    return (PASS if c.ok else FAIL), lines


def _ramify(p):
    try:
        spec = RamificationSpec.from_json(p)
    except (RamificationError, TypeError, ValueError) as exc:
        raise JobError(f"bad ramification spec: {exc}") from exc
    try:
        built = build_ramified_poly(spec)
    except RamificationError as exc:
        return FAIL, [f"ERROR {exc}"]
    lines = [f"POLY {poly_json(built.P)}", f"P = {built.P.to_str()}", f"c = {QQ.format(built.c)}"]
    deg = built.P.deg
    for dec in built.decompositions:
        lines.append(f"BRANCH {QQ.format(dec.beta)} PATTERN {','.join(map(str, dec.pattern(deg)))}")
    lines += [f"check {k}: {'ok' if v else 'FAILED'}" for k, v in built.checks.items()]
    return (PASS if built.ok else FAIL), lines


def _sm_cover(p):
    rep = sm_cover(p["m"])
    lines = [f"POLY {poly_json(rep.poly.P)}"] + rep.lines()
    return (PASS if rep.ok else FAIL), lines


def _paper_check(p):
    verdicts, lines = [], []
    for v, d in CHECKS[p["name"]]():
        verdicts.append(v)
        lines.append(d if v is not False else f"FAILED {d}")
    return _status(verdicts), lines


HANDLERS = {
    "split": _split, "invariant": _invariant, "compress": _compress, "build-curve": _build_curve,
    "ramify": _ramify, "sm-cover": _sm_cover, "paper-check": _paper_check,
}


def run_job(job):
    """Run one job; schema problems raise :class:`JobError`, everything else is an entry."""
    validate(job)
    start = time.perf_counter()
    try:
        status, lines = HANDLERS[job.kind](job.parameters)
    except JobError:
        raise
    except Exception as exc:  # a crash in a check is a failure, not a usage error
        status, lines = FAIL, [f"ERROR {type(exc).__name__}: {exc}"]
    return Entry(job.id, status, tuple(lines), time.perf_counter() - start)
