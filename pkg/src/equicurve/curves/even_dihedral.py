"""Hyperelliptic curves with a dihedral action of order 2n, n even, when ω_n is in the field.

With x = u² and t = (x^m + x^{−m})/2 (m = n/2), the curve is
y² = x·f(t) where f vanishes at T_m(γ) and T_m(δ), γ² = 1 + ξ,
δ² = 1 + 1/ξ, and ξ is a root of h that is not a square in Q(ξ).
The generators act by σ(x, y) = (ω²x, ωy) and τ(x, y) = (1/x, y/x).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .. import config
from ..arith import QQ, Poly, QuadExt, RationalFunctionField, gcd, is_irreducible, is_squarefree
from ..arith.cyclotomic import omega
from ..arith.factor import factor_over_Q, norm_poly, rational_roots
from ..arith.numberfield import NFElem, NumberField
from ..arith.quadext import QuadElem
from ..arith.squares import NonSquare, Square, is_square_in_field
from ..brauer import BrauerClass
from ..projective import dihedral
from .hyperelliptic import CurveAutomorphism, CurveError, HyperellipticModel, normalize_model, transport


def chebyshev(m, K=QQ):
    """T_m with T_m((x + 1/x)/2) = (x^m + x^{−m})/2."""
    prev, cur = Poly.const(1, K), Poly.x(K)
    if m == 0:
        return prev
    two_s = Poly([0, 2], K)
    for _ in range(m - 1):
        prev, cur = cur, two_s * cur - prev
    return cur


def chebyshev_identity(m, K=QQ):
    F = RationalFunctionField(K, "x")
    x = F.gen
    s = (x + 1 / x) / 2
    return chebyshev(m, K)(s) == (x ** m + x ** (-m)) / 2


def adjoin_sqrt(c):
    """(field, root) for √c: c's own field when c is a square there."""
    v = is_square_in_field(c)
    if isinstance(v, Square):
        return None, v.root
    base = getattr(c, "field", QQ)
    E = QuadExt(base, c)
    return E, E.gen


def minimal_polynomial_over_Q(z):
    """Minimal polynomial over Q of an element of Q, Q(ξ) or Q(ξ)(√D).

    The norm of the relative minimal polynomial is factored and the factor
    that vanishes at z is kept.
    """
    if isinstance(z, QuadElem) and not z.v:
        z = z.u
    if not isinstance(z, (QuadElem, NFElem)):
        return Poly([-QQ(z), 1], QQ)
    if isinstance(z, NFElem):
        cand = z.minpoly()
    else:
        L = z.field.base
        G = Poly([z.norm(), -z.trace(), L.one], L)
        cand = G if L == QQ else norm_poly(G, L)
    _, facs = factor_over_Q(cand)
    for fac, _ in facs:
        if not fac(z):
            return fac.monic()
    raise AssertionError("no factor of the norm vanishes at the element")


def _xi_field(h):
    if h.deg == 1:
        return QQ, -h.c[0] / h.c[1]
    L = NumberField(h.monic(), name="ξ")
    return L, L.gen


def _scaled(h, c):
    """Minimal polynomial of c²·ξ."""
    X = Poly.x(QQ)
    d = h.deg
    return (h.compose(X * QQ(1, c * c)) * QQ(c) ** (2 * d)).monic()


@dataclass
class EvenDihedralCurve:
    n: int
    h: Poly
    xi: object
    gamma: object
    delta: object
    f: Poly
    multiplier: object
    model: HyperellipticModel
    raw_actions: dict
    delta_class: BrauerClass
    fixed_point: object
    checks: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(self.checks.values())

    def lines(self):
        m = self.n // 2
        out = [f"n = {self.n}, h = {self.h.to_str('x')}, xi = {self.xi}",
               f"f(t) = {self.f.to_str('t')}",
               f"raw model: y^2 = x*f((x^{m} + x^-{m})/2)"]
        out += [f"raw {k}: (x,y) -> {a.to_str('x')}" for k, a in self.raw_actions.items()]
        out += self.model.lines()
        out.append(f"rational point fixed by the hyperelliptic involution: {self.fixed_point}")
        out.append(f"Delta_eta = {self.delta_class}")
        out += [f"check {k}: {'ok' if v else 'FAILED'}" for k, v in self.checks.items()]
        return out


def even_dihedral_curve(n, h, field=None):
    if n < 4 or n % 2:
        raise CurveError("n must be even and at least 4")
    if not isinstance(h, Poly):
        h = Poly(h, QQ)
    if h.deg < 1 or not is_irreducible(h):
        raise CurveError(f"h = {h} must be irreducible over Q")
    m = n // 2
    try:
        K, w = omega(n, field)
    except ValueError as exc:
        raise CurveError(f"ω{n} is required in the field") from exc
    checks = {}
    checks[f"T_m identity for m = {m}"] = chebyshev_identity(m)
    T = chebyshev(m)

    for c in range(1, config.active().multiplier_bound + 1):
        hc = h if c == 1 else _scaled(h, c)
        L, xi = _xi_field(hc)
        cert = is_square_in_field(xi)
        if not isinstance(cert, NonSquare):
            raise CurveError("ξ is not certified to be a non-square in Q(ξ)")
        _, gamma = adjoin_sqrt(1 + xi)
        _, delta = adjoin_sqrt(1 + 1 / xi)
        fg = minimal_polynomial_over_Q(T(gamma))
        fd = minimal_polynomial_over_Q(T(delta))
        f = fg if fg == fd else fg * fd.exquo(gcd(fg, fd))
        S = Poly([1, 1], QQ) * f.compose(T)
        if is_squarefree(S):
            break
    else:
        raise CurveError("no ξ-scaling makes (s+1)·f(T_m(s)) separable")
    checks["xi certified non-square in Q(xi)"] = True
    checks["f vanishes at T_m(gamma), T_m(delta)"] = not f(T(gamma)) and not f(T(delta))
    checks["(s+1) f(T_m(s)) separable"] = True

    Fx = RationalFunctionField(K, "x")
    x = Fx.gen
    tx = (x ** m + x ** (-m)) / 2
    fK = f.change_ring(K)
    R = x * Fx(fK).compose(tx)
    sx = (x + 1 / x) / 2
    checks["y^2 (1+1/x)^2 = (2s+2) f(T_m(s))"] = R * (1 + 1 / x) ** 2 == (2 * sx + 2) * Fx(fK).compose(Fx(T.change_ring(K)).compose(sx))

    raw = {"sigma": CurveAutomorphism(w * w * x, Fx(w)), "tau": CurveAutomorphism(1 / x, 1 / x)}
    pres = dihedral(n)
    raw_model = _RawCheck(R, raw, pres)
    checks["raw actions preserve the curve"] = all(raw_model.preserves(a) for a in raw.values())
    checks["raw actions satisfy the dihedral relations"] = raw_model.relations_hold()
    sm = raw["sigma"] ** m
    checks["sigma^m is the hyperelliptic involution"] = sm.is_involution_of_cover()
    checks["fixed field of <sigma^m, tau> is k(s)"] = _fixed_field_check(raw, m, sx)
    wtau = 1 + 1 / x
    checks["y(1+1/x) is tau-invariant"] = raw["tau"].psi * wtau.compose(raw["tau"].phi) == wtau

    s_poly, g = normalize_model(R, K)
    acts = transport(raw, g)
    model = HyperellipticModel(s_poly, K, acts, pres)
    checks["normalized actions preserve the curve"] = all(model.preserves(a) for a in acts.values())
    checks["normalized actions satisfy the relations"] = not model.failing_relators()
    checks["sigma has exact order n"] = model.order("sigma") == n

    fixed, multiplier = _involution_fixed_point(s_poly, K)
    checks["rational point fixed by the hyperelliptic involution"] = fixed is not None

    Ka = RationalFunctionField(K, "a")
    Ks = RationalFunctionField(Ka, "s")
    s = Ks.gen
    a = Ks(Ka.gen)
    body = Ks(S.change_ring(Ka))
    delta_class = BrauerClass([(2 * a * body, s * s - 1)], Ks)
    return EvenDihedralCurve(n, h if c == 1 else hc, xi, gamma, delta, f, multiplier, model, raw,
                             delta_class, fixed, checks)


class _RawCheck(HyperellipticModel):
    def __init__(self, R, actions, presentation):
        super().__init__(None, R.field.constant_field, actions, presentation)
        self.R = R

    def preserves(self, g):
        return g.psi * g.psi * self.R == self.R.compose(g.phi)

    def relations_hold(self):
        return not self.failing_relators()


def _fixed_field_check(raw, m, sx):
    """s is fixed by the order-4 subgroup ⟨σ^m, τ⟩ and [L′ : k(s)] = 2·deg(s) = 4."""
    sm, tau = raw["sigma"] ** m, raw["tau"]
    group = {"1": sm ** 2, "sigma^m": sm, "tau": tau, "sigma^m tau": sm.compose(tau)}
    distinct = len({(g.phi, g.psi) for g in group.values()}) == 4
    fixes = all(sx.compose(g.phi) == sx for g in group.values())
    return distinct and fixes and 2 * sx.degree == 4


def _involution_fixed_point(s, K):
    """A rational Weierstrass point: ∞ for odd degree, else a rational root of s."""
    if s.deg % 2:
        return "infinity", K.one
    if K == QQ:
        roots = rational_roots(s)
        if roots:
            return (roots[0], 0), K.one
    elif not s(K.zero):
        return (0, 0), K.one
    return None, None
