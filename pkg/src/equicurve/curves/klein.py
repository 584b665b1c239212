"""Klein-four curves L = k(x)(√(xP(x)), √(xQ(x))) and their fixed points.

The affine model Y ⊂ A³ is cut out by y² − xP(x) and z² − xQ(x), with e₁
negating y and e₂ negating z.  The element e₁e₂ only fixes the singular
origin, so its fixed points are found on the chart x = yu, z = yv of the
blow-up of the origin.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .. import config
from ..arith import QQ, MPoly, Poly, QuadExt, gcd, is_irreducible, is_squarefree, univariate_at
from ..arith.factor import rational_roots
from ..arith.numberfield import NumberField
from ..arith.squares import NonSquare, Square, is_square_in_field
from .hyperelliptic import CurveError


@dataclass
class ConditionReport:
    ok: bool
    details: dict
    x1: object = None
    x2: object = None

    def failing(self):
        return [k for k, (good, _) in self.details.items() if not good]


def xi_certificate(h):
    """Certify that a root ξ of h is not a square in Q(ξ)."""
    if h.deg == 1:
        xi = -h.c[0] / h.c[1]
        return xi, is_square_in_field(xi)
    K = NumberField(h.monic(), name="ξ")
    return K.gen, is_square_in_field(K.gen)


def klein_conditions(P, Q, x1=None, x2=None):
    """Conditions (i)–(iii) for a pair of polynomials, with the roots used."""
    d = {}
    d["separable"] = (P.deg >= 1 and Q.deg >= 1 and is_squarefree(P) and is_squarefree(Q),
                      "P and Q separable of positive degree")
    d["(i) no common roots"] = (gcd(P, Q).deg == 0, f"gcd = {gcd(P, Q)}")
    d["(ii) nonzero at 0"] = (bool(P(0)) and bool(Q(0)), f"P(0) = {P(0)}, Q(0) = {Q(0)}")

    def pick(F, G, given):
        cands = [given] if given is not None else rational_roots(F)
        for r in cands:
            if F(r) or not r or not G(r):
                continue
            v = is_square_in_field(r * G(r))
            if isinstance(v, Square):
                return r, v.root
        return None, None

    r1, w1 = pick(P, Q, x1)
    r2, w2 = pick(Q, P, x2)
    d["(iii) x1 Q(x1) square"] = (r1 is not None, f"x1 = {r1}, sqrt = {w1}" if r1 is not None
                                  else "no rational root x1 of P with x1*Q(x1) a square")
    d["(iii) x2 P(x2) square"] = (r2 is not None, f"x2 = {r2}, sqrt = {w2}" if r2 is not None
                                  else "no rational root x2 of Q with x2*P(x2) a square")
    return ConditionReport(all(v for v, _ in d.values()), d, r1, r2)


def _build(h, a):
    X = Poly.x(QQ)
    shifted = h.compose(X - a)
    c = (a + 1) * h(-a)
    if not c:
        return None
    num = (X - a) * ((X - a - 1) * shifted + c)
    quo, rem = divmod(num, X * c)
    if rem:
        raise AssertionError("x does not divide the numerator of P")
    P = quo
    Q = (X * -1 + a + 1) * (a * h(0)) * shifted
    return P, Q


def klein_construction_polys(h, alpha=None):
    """(P, Q, α) from the minimal polynomial h of a non-square ξ.

    α is searched over 1, 2, 3, … unless given.
    """
    if not isinstance(h, Poly):
        h = Poly(h, QQ)
    if h.deg < 1 or not is_irreducible(h):
        raise CurveError(f"h = {h} must be irreducible over Q")
    _, verdict = xi_certificate(h)
    if not isinstance(verdict, NonSquare):
        raise CurveError("ξ is not certified to be a non-square in Q(ξ)")
    cands = [QQ(alpha)] if alpha is not None else [QQ(k) for k in range(1, config.active().alpha_search_bound + 1)]
    for a in cands:
        if a in (0, -1):
            continue
        built = _build(h, a)
        if built is None:
            continue
        P, Q = built
        if not (is_squarefree(P) and P(0) and Q(0)):
            continue
        rep = klein_conditions(P, Q, a, a + 1)
        if rep.ok:
            return P, Q, a
    raise CurveError("no admissible α below the search bound")


# ---------------------------------------------------------------------------
# Jacobian criterion
# ---------------------------------------------------------------------------

def rank(rows):
    m = [list(r) for r in rows]
    r = 0
    for c in range(len(m[0]) if m else 0):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        for i in range(r + 1, len(m)):
            if m[i][c]:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


def jacobian_at(polys, point):
    n = len(point)
    return [[g.diff(j)(*point) for j in range(n)] for g in polys]


@dataclass
class BlowupChart:
    generators: tuple
    exceptional: tuple
    field: object

    def vanish(self):
        return all(not g(*pt) for g in self.generators for pt in self.exceptional)

    def ranks(self):
        return [rank(jacobian_at(self.generators, pt)) for pt in self.exceptional]


def blowup_chart(P, Q):
    """Generators of the strict transform on the chart (y, u, v) and its exceptional points."""
    X = Poly.x(QQ)
    P0, Q0 = P(0), Q(0)
    P1 = (P - P0).exquo(X)
    Q1 = (Q - Q0).exquo(X)
    y, u, v = (MPoly.var(i, 3) for i in range(3))
    yu = y * u
    G1 = y - u * univariate_at(P, yu)
    G2 = y * v * v - u * univariate_at(Q, yu)
    G3 = MPoly.const(Q0, 3) - v * v * P0 - u * u * univariate_at(P1, yu) * Q0 + u * u * univariate_at(Q1, yu) * P0
    ratio = Q0 / P0
    w = is_square_in_field(ratio)
    if isinstance(w, Square):
        F, r = QQ, w.root
    else:
        F = QuadExt(QQ, ratio, name=f"√({ratio})")
        r = F.gen
    zero = F.zero
    return BlowupChart((G1, G2, G3), ((zero, zero, r), (zero, zero, -r)), F)


@dataclass
class KleinCurve:
    P: Poly
    Q: Poly
    conditions: ConditionReport
    A: tuple
    B: tuple
    chart: BlowupChart
    checks: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(self.checks.values())

    def equations(self):
        return [f"y^2 = x*({self.P.to_str('x')})", f"z^2 = x*({self.Q.to_str('x')})"]

    def lines(self):
        out = self.equations()
        out.append("e1: (x,y,z) -> (x,-y,z); e2: (x,y,z) -> (x,y,-z)")
        out.append(f"A = {tuple(str(c) for c in self.A)} fixed by e1")
        out.append(f"B = {tuple(str(c) for c in self.B)} fixed by e2")
        out.append(f"exceptional points {[tuple(str(c) for c in p) for p in self.chart.exceptional]} fixed by e1e2")
        out += [f"check {k}: {'ok' if v else 'FAILED'}" for k, v in self.checks.items()]
        return out


def klein_curve(P, Q, x1=None, x2=None):
    rep = klein_conditions(P, Q, x1, x2)
    if not rep.ok:
        raise CurveError("condition failed: " + "; ".join(f"{k} ({rep.details[k][1]})" for k in rep.failing()))
    X = Poly.x(QQ)
    xs, ys, zs = (MPoly.var(i, 3) for i in range(3))
    F1 = ys * ys - univariate_at(X * P, xs)
    F2 = zs * zs - univariate_at(X * Q, xs)
    a1 = rep.x1
    A = (a1, QQ(0), is_square_in_field(a1 * Q(a1)).root)
    a2 = rep.x2
    B = (a2, is_square_in_field(a2 * P(a2)).root, QQ(0))
    checks = {}
    for name, pt in (("A", A), ("B", B)):
        checks[f"{name} lies on Y"] = not F1(*pt) and not F2(*pt)
        checks[f"{name} is smooth (Jacobian rank 2)"] = rank(jacobian_at((F1, F2), pt)) == 2
    checks["e1 fixes A"] = A[1] == 0
    checks["e2 fixes B"] = B[2] == 0

    chart = blowup_chart(P, Q)
    G1, G2, G3 = chart.generators
    y = MPoly.var(0, 3)
    checks["Q(0)*G1 - P(0)*G2 = y*G3"] = G1 * Q(0) - G2 * P(0) == y * G3
    checks["generators vanish at exceptional points"] = chart.vanish()
    checks["exceptional points smooth (rank 2)"] = chart.ranks() == [2, 2]
    flip = [-MPoly.var(0, 3), -MPoly.var(1, 3), MPoly.var(2, 3)]
    checks["e1e2 preserves the chart ideal"] = (G1.substitute(flip) == -G1 and G2.substitute(flip) == -G2
                                               and G3.substitute(flip) == G3)
    checks["e1e2 fixes exceptional points"] = all(
        (-p[0], -p[1], p[2]) == p for p in chart.exceptional)
    return KleinCurve(P, Q, rep, A, B, chart, checks)


def klein_delta_class(P, Q, a=1, b=1):
    """(a·xP(x), b·xQ(x)) over Q(x) for the embedding class (a, b), plus its splitting decision."""
    from ..arith import RationalFunctionField
    from ..brauer.split import is_split_kx
    from ..forms import klein_delta

    Kx = RationalFunctionField(QQ, "x")
    X = Poly.x(QQ)
    c, d = Kx(X * P), Kx(X * Q)
    cls = klein_delta(c, d, QQ(a), QQ(b), Kx)
    return cls, is_split_kx(X * P * QQ(a), X * Q * QQ(b))
