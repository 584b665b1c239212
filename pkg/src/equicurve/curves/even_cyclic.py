"""Hyperelliptic curves with a Z/n action for even n, built from the twisted cyclic torsor.

The cyclic embedding acts on P¹ with coordinate u.  Its central involution
u ↦ β/u has quotient x = (u² + β)/(2u), the induced Z/(n/2) action on x has
quotient t = p(x)/q(x), and twisting by f(t) = q(a)·t − p(a) gives the curve
y² = (x² − β)·f(t), normalized to a squarefree polynomial model.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd as igcd, lcm as ilcm

from ..arith import QQ, Poly, RationalFunctionField
from ..arith.squares import Square, is_square_in_field
from ..projective import ProjMatrix, closure, cyclic, cyclic_embedding, descend_mobius, invariant_quotient_map
from .hyperelliptic import CurveError, HyperellipticModel, lift_action, normalize_model


@dataclass
class EvenCyclicCurve:
    n: int
    a: object
    alpha: object
    beta: object
    t: object
    p: Poly
    q: Poly
    product: Poly
    model: HyperellipticModel
    checks: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(self.checks.values())

    def lines(self):
        out = [f"n = {self.n}, a = {self.a}, alpha = {self.alpha}, beta = {self.beta}",
               f"t = {self.t.to_str('x')}",
               f"p = {self.p.to_str('x')}, q = {self.q.to_str('x')}"]
        out += self.model.lines()
        out += [f"check {k}: {'ok' if v else 'FAILED'}" for k, v in self.checks.items()]
        return out


def integral_pair(t):
    """(p, q) with t = p/q; over Q both primitive integral with lc(q) > 0."""
    p, q = t.num, t.den
    if p.K != QQ:
        return p, q
    coeffs = [Fraction(c) for c in p.c + q.c]
    den = ilcm(*(c.denominator for c in coeffs))
    num = 0
    for c in coeffs:
        num = igcd(num, (c * den).numerator)
    scale = QQ(Fraction(den, num))
    if q.lc < 0:
        scale = -scale
    return p * scale, q * scale


def admissible(a, p, q):
    """a is neither a zero of q nor of q·p′ − p·q′."""
    return bool(q(a)) and bool((q * p.deriv() - p * q.deriv())(a))


def _candidates():
    k = 1
    while True:
        yield k
        yield -k
        k += 1


def even_cyclic_curve(n, a=None, field=None):
    if n < 4 or n % 2:
        raise CurveError("n must be even and at least 4")
    m = n // 2
    E = cyclic_embedding(n, field)
    K = E.field
    alpha, beta = E.params["alpha"], E.params["beta"]
    sigma = E.images["sigma"]
    checks = {}

    xq = invariant_quotient_map([ProjMatrix.identity(K), sigma ** m], K, var="u")
    U = RationalFunctionField(K, "u")
    u = U.gen
    checks["central quotient is (u^2+beta)/(2u)"] = xq == (u * u + beta) / (2 * u)
    on_x = descend_mobius(sigma, xq)
    if on_x is None:
        raise CurveError("the generator does not descend to the central quotient")
    t = invariant_quotient_map(closure([on_x]), K, var="x")
    F = t.field
    x = F.gen
    checks["t has degree m"] = t.degree == m
    p, q = integral_pair(t)
    checks["t = p/q"] = F.frac(p, q) == t

    if a is None:
        limit = 200
        for cand in _candidates():
            if admissible(K(cand), p, q):
                a = cand
                break
            if abs(cand) > limit:
                raise CurveError("no admissible a found")
    a = K(a)
    if not admissible(a, p, q):
        raise CurveError(f"a = {a} is a zero of q or qp′−pq′")

    twist = p * q(a) - q * p(a)
    product = (Poly([-beta, 0, 1], K) * twist) * q
    R = F(Poly([-beta, 0, 1], K)) * (q(a) * t - p(a))

    phi = on_x.mobius(x)
    s, _ = normalize_model(R, K)
    acts = lift_action(F(s), {"sigma": phi}, cyclic(n), central=("sigma", m))
    model = HyperellipticModel(s, K, acts, cyclic(n))

    checks["action preserves the curve"] = model.preserves(acts["sigma"])
    checks["sigma has exact order n"] = model.order("sigma") == n
    checks["sigma^m is the hyperelliptic involution"] = (acts["sigma"] ** m).is_involution_of_cover()
    checks["t is invariant"] = t.compose(phi) == t
    checks["(a, 0) lies on the curve"] = model.contains_point(a, K.zero)
    quo, rem = divmod(product, s)
    checks["product / s is a square"] = not rem and isinstance(is_square_in_field(F(quo)), Square)
    return EvenCyclicCurve(n, a, alpha, beta, t, p, q, product, model, checks)
