"""Polynomials with prescribed ramification over given branch values.

A ramification condition (b₁, …, b_l) at β asks that P − β have roots of
multiplicity exactly b_j at l distinct points and only simple roots
elsewhere.  The construction solves the congruences
Q ≡ β_i + (x − a_ij)^{b_ij} mod (x − a_ij)^{b_ij + 1}, takes
H = Π (x − a_ij)^{b_ij + 1} and sets P = Q + c·H for the first c that
leaves no stray multiple roots.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from collections import Counter

from sympy import isprime, nextprime
from sympy.utilities.iterables import partitions

from . import config
from .arith import QQ, Poly, crt_poly, gcd


class RamificationError(ValueError):
    """Invalid data, or a polynomial that fails its prescribed decomposition."""


@dataclass(frozen=True)
class RamificationCondition:
    parts: tuple

    def __post_init__(self):
        parts = tuple(int(b) for b in self.parts)
        if not parts or any(b < 2 for b in parts):
            raise RamificationError(f"a ramification condition needs entries ≥ 2, got {self.parts}")
        object.__setattr__(self, "parts", parts)

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


@dataclass(frozen=True)
class RamificationSpec:
    entries: tuple  # of (RamificationCondition, beta)
    degree: int = None

    def __post_init__(self):
        ents = tuple((c if isinstance(c, RamificationCondition) else RamificationCondition(c), QQ(b))
                     for c, b in self.entries)
        if not ents:
            raise RamificationError("empty ramification spec")
        betas = [b for _, b in ents]
        if len(set(betas)) != len(betas):
            raise RamificationError(f"branch values must be distinct: {betas}")
        object.__setattr__(self, "entries", ents)

    @classmethod
    def from_json(cls, obj):
        try:
            ents = [(tuple(e["condition"]), e["beta"]) for e in obj["conditions"]]
        except (KeyError, TypeError) as exc:
            raise RamificationError(f"malformed spec: {exc}") from exc
        return cls(tuple(ents), obj.get("degree"))


@dataclass
class LocalDecomposition:
    beta: object
    points: list  # (a, multiplicity)
    certificate: Poly  # gcd(P − β, P′)

    def pattern(self, degree):
        mults = sorted((m for _, m in self.points), reverse=True)
        return tuple(mults) + (1,) * (degree - sum(mults))


def _multiplicity(f, a):
    X = Poly([-a, 1], f.K)
    m = 0
    while f and not f(a):
        f = f.exquo(X)
        m += 1
    return m


def _strip(g, points):
    """Divide g by (x − a) for every a in points as often as possible."""
    for a in points:
        X = Poly([-a, 1], g.K)
        while g.deg > 0 and not g(a):
            g = g.exquo(X)
    return g


def verify_local_decomposition(P, beta, cond, allowed_points=None):
    if P.deg < 1:
        raise RamificationError("P must be nonconstant")
    if not isinstance(cond, RamificationCondition):
        cond = RamificationCondition(cond)
    beta = QQ(beta)
    f = P - beta
    g = gcd(f, f.deriv())
    if allowed_points is None:
        from .arith.factor import rational_roots
        allowed_points = rational_roots(g) if g.deg > 0 else []
    points = [(a, _multiplicity(f, a)) for a in allowed_points]
    points = [(a, m) for a, m in points if m >= 2]
    expected = Poly.const(1, P.K)
    for a, m in points:
        expected = expected * Poly([-a, 1], P.K) ** (m - 1)
    quo, rem = divmod(g, expected)
    if rem or quo.deg != 0:
        stray = _strip(g, allowed_points)
        raise RamificationError(f"P - {beta} has multiple roots outside the allowed points: factor {stray}")
    got = Counter(m for _, m in points)
    want = Counter(cond.parts)
    if got != want:
        raise RamificationError(
            f"multiplicities {sorted(got.elements(), reverse=True)} at {beta} differ from the condition {cond}")
    return LocalDecomposition(beta, points, g)


def stray_free(f, allowed):
    """Every multiple root of f lies in the allowed set."""
    g = gcd(f, f.deriv())
    return _strip(g, allowed).deg <= 0


def choose_c(Q, H, offsets, allowed=None, bound=None):
    if not H:
        raise RamificationError("H must be nonzero")
    if allowed is None:
        from .arith.factor import rational_roots
        allowed = rational_roots(H) if H.deg > 0 else []
    bound = bound or config.active().c_bound
    for c in range(1, bound + 1):
        ok = True
        for beta in offsets:
            f = Q - QQ(beta) + H * c
            if not f or not stray_free(f, allowed):
                ok = False
                break
        if ok:
            return QQ(c)
    raise RamificationError(f"no admissible c up to {bound}")


@dataclass
class RamifiedPolynomial:
    P: Poly
    Q: Poly
    H: Poly
    c: object
    base_points: list  # per condition, the a_ij
    decompositions: list
    checks: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(self.checks.values())


def build_ramified_poly(spec, degree=None):
    if not isinstance(spec, RamificationSpec):
        spec = RamificationSpec(tuple(spec), degree)
    degree = degree if degree is not None else spec.degree
    X = Poly.x(QQ)
    base, congruences, H = [], [], Poly.const(1, QQ)
    nxt = 0
    for cond, beta in spec.entries:
        pts = []
        for b in cond.parts:
            a = QQ(nxt)
            nxt += 1
            pts.append(a)
            congruences.append((beta + (X - a) ** b, (X - a) ** (b + 1)))
            H = H * (X - a) ** (b + 1)
        base.append(pts)
    Q = crt_poly(congruences)
    if degree is not None:
        bound = max(Q.deg, H.deg)
        if degree <= bound:
            raise RamificationError(f"degree {degree} must exceed max(deg Q, deg H) = {bound}")
        H = H * (X - base[0][0]) ** (degree - H.deg)
    allowed = [a for pts in base for a in pts]
    betas = [beta for _, beta in spec.entries]
    c = choose_c(Q, H, betas, allowed)
    P = Q + H * c

    checks = {}
    decs = []
    for (cond, beta), pts in zip(spec.entries, base):
        checks[f"(i) multiplicities at beta = {beta}"] = all(
            _multiplicity(P - beta, a) == b for a, b in zip(pts, cond.parts))
        decs.append(verify_local_decomposition(P, beta, cond, pts))
        checks[f"(iii) no stray multiple roots at beta = {beta}"] = True
    checks["(ii) P(a_ij) = beta_i"] = all(P(a) == beta for (_, beta), pts in zip(spec.entries, base) for a in pts)
    if degree is not None:
        checks["requested degree"] = P.deg == degree
    return RamifiedPolynomial(P, Q, H, c, base, decs, checks)


# ---------------------------------------------------------------------------
# the S_m cover
# ---------------------------------------------------------------------------

def nontrivial_partitions(m):
    """Partitions of m other than 1 + … + 1, largest parts first."""
    out = []
    for p in partitions(m):
        parts = tuple(sorted((k for k, e in p.items() for _ in range(e)), reverse=True))
        if parts[0] > 1:
            out.append(parts)
    return sorted(out, reverse=True)


@dataclass
class CoverReport:
    m: int
    prime: int
    poly: RamifiedPolynomial
    branches: list  # (beta, partition, realized pattern)
    notes: list
    checks: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(self.checks.values()) and self.poly.ok

    def lines(self):
        out = [f"m = {self.m}, deg P = {self.prime}", f"P = {self.poly.P.to_str('x')}"]
        for beta, part, pat in self.branches:
            out.append(f"BRANCH {QQ.format(beta)} PATTERN {','.join(map(str, pat))} (partition {'+'.join(map(str, part))})")
        out += self.notes
        out += [f"check {k}: {'ok' if v else 'FAILED'}" for k, v in self.checks.items()]
        return out


def sm_cover(m):
    if m < 2:
        raise RamificationError("m must be at least 2")
    parts = nontrivial_partitions(m)
    entries = tuple((tuple(b for b in p if b > 1), QQ(i)) for i, p in enumerate(parts))
    spec = RamificationSpec(entries)
    # degrees of Q and H without padding
    Hdeg = sum(b + 1 for cond, _ in spec.entries for b in cond.parts)
    p = int(nextprime(Hdeg))
    while True:
        try:
            built = build_ramified_poly(spec, p)
            break
        except RamificationError:
            p = int(nextprime(p))
    branches, checks = [], {}
    for part, dec in zip(parts, built.decompositions):
        pat = dec.pattern(p)
        want = part + (1,) * (p - m)
        branches.append((dec.beta, part, pat))
        checks[f"cycle type at {dec.beta} is {'+'.join(map(str, part))}"] = pat == tuple(sorted(want, reverse=True))
    checks["degree is prime"] = isprime(built.P.deg)
    checks["a transposition type occurs"] = any(pat == (2,) + (1,) * (p - 2) for _, _, pat in branches)
    notes = ["P(x) - t is irreducible over Q(t): it has degree 1 in t and content 1",
             f"infinity: P has degree {p}, so the inertia there is a {p}-cycle",
             f"a {p}-cycle and a transposition generate S_{p} since {p} is prime"]
    return CoverReport(m, p, built, branches, notes, checks)
