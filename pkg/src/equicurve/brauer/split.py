"""Deciding whether a quaternion symbol (f, g) splits over K(x).

The procedure, for K = Q or a quadratic number field:

1. compute residues at every irreducible factor of f·g and at infinity;
   a certified non-square residue proves (f, g) ≠ 0;
2. look for a small certificate f·p² + g·q² = r²;
3. otherwise every residue is trivial, so the class is constant (Faddeev's
   exact sequence) and equals its specialization at any point where f and g
   are units; decide that constant class over K.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd as igcd, isqrt

from .. import config
from ..arith import NumberField, Poly, QQ, RatFunc, gcd, sqf_list
from ..arith.factor import factor
from ..arith.squares import NonSquare, ProbablySquare, Square, is_square_in_field
from .hilbert import ramified_places
from .residue import INFINITY, ResidueFieldError, ResidueWitness, residue_field, residue_symbol


class UnsupportedFieldError(NotImplementedError):
    pass


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SplitCertificate:
    """Polynomials with f·p² + g·q² = r²."""

    p: Poly
    q: Poly
    r: Poly

    def describe(self, var="x"):
        return " ".join(_compact(c.to_str(var)) for c in (self.p, self.q, self.r))


def _compact(s):
    return s.replace(" ", "")


def _as_poly(a, K=None):
    if isinstance(a, Poly):
        return a
    if isinstance(a, RatFunc):
        if not a.is_polynomial():
            raise ValueError("expected a polynomial")
        return a.num
    K = K or QQ
    return Poly.const(a, K)


def _common_ring(*polys):
    Ks = [p.K for p in polys if isinstance(p, Poly)]
    K = next((k for k in Ks if k != QQ), QQ)
    return [p.change_ring(K) if isinstance(p, Poly) else Poly.const(p, K) for p in polys], K


def verify_split_certificate(f, g, cert):
    """Exact check of f·p² + g·q² = r² and gcd(p, q, r) = 1."""
    (f, g, p, q, r), _ = _common_ring(_as_poly(f), _as_poly(g), _as_poly(cert.p), _as_poly(cert.q), _as_poly(cert.r))
    if not (p or q or r):
        return False
    if f * p * p + g * q * q != r * r:
        return False
    nz = [c for c in (p, q, r) if c]
    h = nz[0]
    for c in nz[1:]:
        h = gcd(h, c)
    return h.deg == 0


def poly_sqrt(h):
    """r with r² = h, or None."""
    if not h:
        return Poly.const(0, h.K)
    lc, parts = sqf_list(h)
    root = Poly.const(1, h.K)
    for s, e in parts:
        if e % 2:
            return None
        root = root * s ** (e // 2)
    v = is_square_in_field(h.K(lc)) if h.K != QQ else is_square_in_field(Fraction(lc))
    if not isinstance(v, Square):
        return None
    r = root * v.root
    return r if r * r == h else None


def _quick_nonsquare(h, K):
    """Cheap screen: h(x0) a non-square rational for some small x0."""
    if K != QQ:
        return False
    for x0 in (0, 1, 2, -1, 3):
        v = Fraction(h(Fraction(x0)))
        if v < 0:
            return True
        if v and (isqrt(v.numerator) ** 2 != v.numerator or isqrt(v.denominator) ** 2 != v.denominator):
            return True
    return False


def _pairs_by_height(H):
    for h in range(0, H + 1):
        for p in range(0, h + 1):
            for q in sorted(range(-h, h + 1), key=lambda v: (abs(v), v < 0)):
                if max(p, abs(q)) != h or (p == 0 and q <= 0):
                    continue
                if igcd(p, abs(q)) != 1:
                    continue
                yield p, q


def find_certificate(f, g, height=None):
    """Search constant, then linear, p and constant q for a certificate."""
    cfg = config.active()
    height = cfg.certificate_height if height is None else height
    (f, g), K = _common_ring(_as_poly(f), _as_poly(g))
    for p, q in _pairs_by_height(height):
        h = f * (p * p) + g * (q * q)
        if _quick_nonsquare(h, K):
            continue
        r = poly_sqrt(h)
        if r is not None:
            cert = SplitCertificate(Poly.const(p, K), Poly.const(q, K), r)
            if verify_split_certificate(f, g, cert):
                return cert
    lin = range(-3, 4)
    x = Poly.x(K)
    for p0, p1, q in product(lin, range(1, 4), range(-3, 4)):
        if q == 0:
            continue
        pp = x * p1 + p0
        h = f * pp * pp + g * (q * q)
        if _quick_nonsquare(h, K):
            continue
        r = poly_sqrt(h)
        if r is not None:
            cert = SplitCertificate(pp, Poly.const(q, K), r)
            if verify_split_certificate(f, g, cert):
                return cert
    return None


# ---------------------------------------------------------------------------
# decisions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CertificateProof:
    certificate: SplitCertificate
    kind = "certificate"

    def verify(self, f, g):
        return verify_split_certificate(f, g, self.certificate)

    def describe(self, var="x"):
        return f"CERT {self.certificate.describe(var)}"

    def to_dict(self, var="x"):
        c = self.certificate
        return {"kind": self.kind, "p": c.p.to_json(), "q": c.q.to_json(), "r": c.r.to_json(),
                "identity": "f*p^2 + g*q^2 = r^2"}


@dataclass(frozen=True)
class ConstantClassProof:
    """All residues trivial, so the class is constant and equals its value at x0."""

    places: tuple
    point: object
    values: tuple
    local_check: str
    kind = "constant-class"

    def verify(self, f, g):
        (f, g), K = _common_ring(_as_poly(f), _as_poly(g))
        for pl in self.places:
            place = INFINITY if pl == INFINITY else pl
            cls, _ = residue_symbol(f, g, place)
            if not isinstance(is_square_in_field(cls), Square):
                return False
        a, b = f(K(self.point)), g(K(self.point))
        if (a, b) != self.values or not a or not b:
            return False
        return _constant_split(a, b, K)[0] is True

    def describe(self, var="x"):
        a, b = self.values
        return (f"CONSTANT-CLASS residues trivial at {len(self.places)} places; "
                f"{var}={_fmt(self.point)} gives ({_fmt(a)}, {_fmt(b)}) split ({self.local_check})")

    def to_dict(self, var="x"):
        return {"kind": self.kind,
                "reasoning": ["every residue of (f, g) at the listed places is a square",
                              "by Faddeev's exact sequence the class comes from the constant field",
                              "a constant class equals its specialization at any point where f, g are units",
                              "the specialization is split over the constant field"],
                "places": [p if p == INFINITY else p.to_json() for p in self.places],
                "point": _fmt(self.point), "values": [_fmt(v) for v in self.values],
                "local_check": self.local_check}


@dataclass(frozen=True)
class SpecializationWitness:
    """At x = x0 the specialized symbol is not split over the constant field."""

    point: object
    values: tuple
    places: tuple

    def recheck(self, f, g):
        (f, g), K = _common_ring(_as_poly(f), _as_poly(g))
        a, b = f(K(self.point)), g(K(self.point))
        return (a, b) == self.values and _constant_split(a, b, K)[0] is False

    def describe(self, var="x"):
        a, b = self.values
        where = ", ".join(str(p) for p in self.places)
        return f"({_fmt(a)}, {_fmt(b)}) at {var}={_fmt(self.point)} is not split over Q (ramified at {where})"


@dataclass(frozen=True)
class Split:
    proof: object
    f: Poly = None
    g: Poly = None
    is_split = True

    def verify(self):
        return self.proof.verify(self.f, self.g)

    def describe(self, var="x"):
        return f"SPLIT {self.proof.describe(var)}"


@dataclass(frozen=True)
class NotSplit:
    witness: object
    f: Poly = None
    g: Poly = None
    others: tuple = field(default=())
    is_split = False

    def verify(self):
        return self.witness.recheck(self.f, self.g)

    def describe(self, var="x"):
        return f"NOTSPLIT {self.witness.describe(var)}"


@dataclass(frozen=True)
class Inconclusive:
    reason: str
    is_split = None

    def verify(self):
        return False

    def describe(self, var="x"):
        return f"INCONCLUSIVE {self.reason}"


def _fmt(x):
    if isinstance(x, (int, Fraction)):
        return QQ.format(x)
    return x.to_str().replace(" ", "") if hasattr(x, "to_str") else str(x)


# ---------------------------------------------------------------------------
# constant classes
# ---------------------------------------------------------------------------

def _constant_split(a, b, K):
    """(decision, detail) for the constant symbol (a, b) over K."""
    if K == QQ or (isinstance(K, NumberField) and K.degree == 1):
        a, b = QQ(a), QQ(b)
        bad = ramified_places(a, b)
        return (not bad), ("Hilbert symbols trivial at all places" if not bad else bad)
    if isinstance(K, NumberField) and K.degree == 2:
        a, b = K(a), K(b)
        if a.is_rational_constant and b.is_rational_constant and not ramified_places(a.rational_value(), b.rational_value()):
            return True, "already split over Q"
        pt = conic_point(a, b, K)
        if pt is not None:
            return True, "point " + ", ".join(_fmt(c) for c in pt)
        return None, "no conic point found within the search bound"
    raise UnsupportedFieldError(f"splitting over {K} is not supported")


def conic_point(a, b, K):
    """(X, Y, Z) ≠ 0 with a·X² + b·Y² = Z² by a bounded search over K."""
    H = min(config.active().conic_search_height, 4)
    theta = K.gen
    elems = [K(u) + K(v) * theta for u in range(-H, H + 1) for v in range(-H, H + 1)]
    elems.sort(key=lambda e: max(abs(c) for c in e.c))
    for X in elems:
        for Y in elems:
            if not X and not Y:
                continue
            val = a * X * X + b * Y * Y
            if not val:
                return X, Y, K.zero
            v = is_square_in_field(val)
            if isinstance(v, Square):
                return X, Y, v.root
    return None


# ---------------------------------------------------------------------------
# the decision procedure
# ---------------------------------------------------------------------------

def _clear(f):
    if isinstance(f, RatFunc):
        return f.num * f.den
    return _as_poly(f)


def places_of(f, g):
    """Irreducible factors of g, then of f, then infinity."""
    out = []
    for h in (g, f):
        if h.deg > 0:
            for pi, _ in factor(h)[1]:
                if pi not in out:
                    out.append(pi)
    return out + [INFINITY]


def _residue_test(f, g, place):
    cls, F = residue_symbol(f, g, place)
    verdict = is_square_in_field(cls)
    trivial = None if isinstance(verdict, ProbablySquare) else isinstance(verdict, Square)
    if "residue" in config.active().mutate and trivial is not None:
        trivial = not trivial
    return trivial, ResidueWitness(place, cls, F, verdict)


def is_split_kx(f, g):
    """Decide (f, g) over K(x); see the module docstring."""
    if not f or not g:
        raise ValueError("quaternion symbol with a zero entry")
    (f, g), K = _common_ring(_clear(f), _clear(g))
    if isinstance(K, NumberField) and K.degree > 2:
        deep = True
    else:
        deep = False
    witnesses = []
    places = places_of(f, g)
    for place in places:
        try:
            trivial, w = _residue_test(f, g, place)
        except ResidueFieldError as exc:
            return Inconclusive(str(exc))
        if trivial is None:
            return Inconclusive(f"residue at {w.place_str()} undecided")
        if not trivial:
            witnesses.append(w)
    if witnesses:
        return NotSplit(witnesses[0], f, g, tuple(witnesses[1:]))
    cert = find_certificate(f, g)
    if cert is not None:
        return Split(CertificateProof(cert), f, g)
    if deep:
        raise UnsupportedFieldError(f"split-by-specialization over {K} is unsupported constant field")
    x0 = 0
    while True:
        a, b = f(K(x0)), g(K(x0))
        if a and b:
            break
        x0 += 1
    decision, detail = _constant_split(a, b, K)
    if decision is None:
        return Inconclusive(detail)
    if decision:
        return Split(ConstantClassProof(tuple(places), x0, (a, b), detail), f, g)
    return NotSplit(SpecializationWitness(x0, (a, b), tuple(detail)), f, g)


# ---------------------------------------------------------------------------
# the square criterion at the roots of g
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RootSquareReport:
    factor: Poly
    field: object
    value: object
    root: object

    def describe(self, var="x"):
        return f"f ≡ ({_fmt(self.root)})^2 mod {self.factor.to_str(var)}"


def square_criterion_check(f, g, cert):
    """For each irreducible factor π of g, exhibit √f in K[x]/(π).

    When p(α) ≠ 0 the root is r(α)/p(α), read off the certificate.
    """
    if cert is None:
        raise ValueError("no certificate")
    (f, g, p, q, r), K = _common_ring(_as_poly(f), _as_poly(g), _as_poly(cert.p), _as_poly(cert.q), _as_poly(cert.r))
    if not verify_split_certificate(f, g, SplitCertificate(p, q, r)):
        raise ValueError("certificate does not verify")
    for name, h in (("f", f), ("g", g)):
        if h.deg > 0:
            _, parts = sqf_list(h)
            for s, e in parts:
                if e > 1:
                    raise ValueError(f"{name} is not separable: repeated factor {s}")
    reports = []
    if g.deg <= 0:
        return reports
    for pi, _ in factor(g)[1]:
        R = residue_field(pi)
        fv = R.reduce(f)
        pv = R.reduce(p)
        root = None
        if pv:
            root = R.reduce(r) / pv
        else:
            v = is_square_in_field(fv)
            root = v.root if isinstance(v, Square) else None
        if root is None or root * root != fv:
            raise AssertionError(f"f is not a square modulo {pi}")
        reports.append(RootSquareReport(pi, R.field, fv, root))
    return reports
