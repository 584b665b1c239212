import pytest
import sympy
from hypothesis import given, settings, strategies as st

from equicurve.arith import QQ, Poly, is_squarefree, omega_field
from equicurve.curves import (
    CurveError, a4_elliptic_computation, blowup_chart, chebyshev, chebyshev_identity, even_cyclic_curve,
    even_dihedral_curve, genus, klein_construction_polys, klein_curve, octahedral_quadric_computation,
)

X = Poly.x(QQ)
xs, ys = sympy.symbols("x y")


def to_sym(p, v=xs):
    return sum(sympy.Rational(c.numerator, c.denominator) * v ** i for i, c in enumerate(p.c))


# -- genus ------------------------------------------------------------------

def test_genus_examples():
    assert genus(X ** 5 - X) == 2
    assert genus(X ** 3 + 1) == 1
    assert genus(X ** 6 + 1) == 2
    with pytest.raises(CurveError):
        genus((X - 1) ** 2 * (X + 2) * X)


@given(st.lists(st.integers(-5, 5), min_size=5, max_size=5))
@settings(max_examples=60, deadline=None)
def test_genus_under_inversion(cs):
    s = Poly([QQ(c) for c in cs] + [QQ(1)], QQ)  # degree 5
    if not s(QQ(0)) or not is_squarefree(s):
        return
    flipped = Poly(list(reversed(s.c)), QQ) * X  # x^6 s(1/x), degree 6
    assert is_squarefree(flipped)
    assert genus(s) == genus(flipped) == 2


# -- even cyclic ----------------------------------------------------------

def test_even_cyclic_n4():
    c = even_cyclic_curve(4, 1)
    assert c.ok
    assert c.model.s == X ** 5 - X
    g = c.model.actions["sigma"]
    F = g.phi.field
    x = F.gen
    assert g.phi == -1 / x and g.psi == 1 / x ** 3
    assert c.model.order("sigma") == 4 and c.model.genus() == 2
    # sympy oracle: (y/x^3)^2 = s(-1/x) on y^2 = x^5 - x
    lhs = (sympy.Symbol("Y") / xs ** 3) ** 2
    rhs = to_sym(c.model.s).subs(xs, -1 / xs)
    assert sympy.simplify(lhs.subs(sympy.Symbol("Y") ** 2, to_sym(c.model.s)) - rhs) == 0


def test_even_cyclic_rejects_zero_of_q():
    with pytest.raises(CurveError, match="zero of q"):
        even_cyclic_curve(4, 0)


def test_even_cyclic_n6():
    c = even_cyclic_curve(6)
    assert c.ok
    assert c.model.genus() >= 2
    assert c.model.order("sigma") == 6


def test_even_cyclic_descent_quotient():
    c = even_cyclic_curve(4, 3)
    quo, rem = divmod(c.product, c.model.s)
    assert not rem
    sq = sympy.sqf_list(to_sym(quo))
    assert all(e % 2 == 0 for _, e in sq[1])


# -- Klein curves -----------------------------------------------------------

def test_klein_polys_sqrt2():
    P, Q, alpha = klein_construction_polys(X ** 2 - 2)
    c = klein_curve(P, Q)
    assert c.ok and c.conditions.ok
    # closed formula for Q, checked with sympy
    h = to_sym(X ** 2 - 2)
    a = sympy.Rational(alpha.numerator, alpha.denominator)
    Qs = a * (a + 1 - xs) * h.subs(xs, 0) * h.subs(xs, xs - a)
    assert sympy.expand(Qs - to_sym(Q)) == 0
    Ps = (xs - a) * ((xs - a - 1) * h.subs(xs, xs - a) + (a + 1) * h.subs(xs, -a)) / ((a + 1) * h.subs(xs, -a) * xs)
    assert sympy.cancel(Ps - to_sym(P)) == 0


def test_klein_polys_rational_xi():
    P, Q, _ = klein_construction_polys(X - 5)
    assert klein_curve(P, Q).ok


def test_klein_rejects_reducible_h():
    with pytest.raises(CurveError):
        klein_construction_polys(X ** 2 - 1)


def test_klein_condition_iii_fails():
    with pytest.raises(CurveError, match=r"\(iii\)"):
        klein_curve(X - 1, X - 2)


def test_blowup_chart_against_sympy():
    P, Q, _ = klein_construction_polys(X ** 2 - 2)
    chart = blowup_chart(P, Q)
    y, u, v = sympy.symbols("y u v")
    Ps, Qs = to_sym(P), to_sym(Q)
    P0, Q0 = Ps.subs(xs, 0), Qs.subs(xs, 0)
    P1, Q1 = sympy.cancel((Ps - P0) / xs), sympy.cancel((Qs - Q0) / xs)
    gens = [y - u * Ps.subs(xs, y * u), y * v ** 2 - u * Qs.subs(xs, y * u),
            Q0 - P0 * v ** 2 - u ** 2 * Q0 * P1.subs(xs, y * u) + u ** 2 * P0 * Q1.subs(xs, y * u)]
    r = sympy.sqrt(Q0 / P0)
    J = sympy.Matrix([[sympy.diff(g, w) for w in (y, u, v)] for g in gens])
    for sign in (1, -1):
        pt = {y: 0, u: 0, v: sign * r}
        assert all(sympy.simplify(g.subs(pt)) == 0 for g in gens)
        assert J.subs(pt).rank(simplify=True) == 2
    assert chart.vanish() and chart.ranks() == [2, 2]


# -- even dihedral ----------------------------------------------------------

@pytest.mark.parametrize("m", range(1, 9))
def test_chebyshev(m):
    assert chebyshev_identity(m)
    assert sympy.expand(to_sym(chebyshev(m)) - sympy.chebyshevt(m, xs)) == 0


def test_even_dihedral_n4():
    c = even_dihedral_curve(4, X ** 2 - 2, omega_field(4))
    assert c.ok, [k for k, v in c.checks.items() if not v]
    assert c.model.order("sigma") == 4
    assert "fixed field of <sigma^m, tau> is k(s)" in c.checks


def test_even_dihedral_requires_omega():
    with pytest.raises(CurveError):
        even_dihedral_curve(4, X ** 2 - 2, QQ)


# -- polyhedral computations ----------------------------------------------

def test_octahedral_computation():
    rep = octahedral_quadric_computation()
    assert rep.ok, [k for k, v in rep.checks.items() if not v]


def test_octahedral_orbit_product_oracle():
    """sympy: Π over sign changes of α, reduced mod b² + a² + 1."""
    a, b, Y = sympy.symbols("a b Y")
    alpha = a + b / a + 1 / b + 1 / a + b + a / b
    rel = b ** 2 + a ** 2 + 1
    prod = 1
    for ea, eb in ((1, 1), (-1, -1), (1, -1), (-1, 1)):
        conj = alpha.subs({a: ea * a, b: eb * b}, simultaneous=True)
        conj = sympy.together(conj.subs(1 / b, -b / (a ** 2 + 1)))
        prod = prod * (Y - conj)
    num, den = sympy.fraction(sympy.together(sympy.expand(prod)))
    num = sympy.rem(sympy.expand(num), rel, b)
    den = sympy.rem(sympy.expand(den), rel, b)
    coeffs = sympy.Poly(sympy.cancel(num / den), Y).all_coeffs()
    assert [sympy.simplify(c) for c in coeffs[:4]] == [1, 0, -6, 8]
    t = sympy.simplify(coeffs[4] - 24)
    shown = (a - 1) ** 2 * (a + 1) ** 2 * (2 * a ** 2 + 1) ** 2 * (a ** 2 + 2) ** 2 / (a ** 4 * (a ** 2 + 1) ** 2)
    assert sympy.simplify(t - shown) == 0


def test_a4_elliptic():
    rep = a4_elliptic_computation(-1)
    assert rep.ok, [k for k, v in rep.checks.items() if not v]


def test_a4_requires_rational_two_torsion():
    with pytest.raises(CurveError):
        a4_elliptic_computation(-1, QQ)
