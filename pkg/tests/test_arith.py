from fractions import Fraction

import pytest
import sympy
from sympy.polys.subresultants_qq_zz import sylvester
from hypothesis import given, settings, strategies as st

from equicurve.arith import (
    QQ, FieldTower, NonSquare, NumberField, Poly, QuadExt, RationalFunctionField, Square, TowerError,
    crt_poly, gcd, interpolate, irreducible_over_Q, is_square_in_field, is_squarefree, poly_gcd_squarefree,
    resultant, squarefree_part, xgcd,
)
from equicurve.arith.cyclotomic import alpha_beta, alpha_minpoly, cyclotomic_poly, omega
from equicurve.arith.factor import factor_over_Q, rational_roots, roots_in_field

X = Poly.x(QQ)
xs = sympy.Symbol("x")


def to_sym(p):
    return sum(sympy.Rational(c.numerator, c.denominator) * xs ** i for i, c in enumerate(p.c))


def from_sym(e):
    sp = sympy.Poly(e, xs)
    return Poly([Fraction(int(c.p), int(c.q)) for c in reversed(sp.all_coeffs())], QQ)


small = st.integers(-6, 6)
polys = st.lists(small, min_size=1, max_size=6).map(lambda cs: Poly([QQ(c) for c in cs], QQ))
nonzero_polys = polys.filter(bool)


# -- examples ---------------------------------------------------------------

def test_squarefree_part_of_square():
    assert squarefree_part(X ** 2) == X


def test_squarefree_part_of_cyclic_product():
    p = 4 * (X ** 2 + 1) * (X ** 2 - 1) * X
    assert squarefree_part(p) == X ** 5 - X


def test_gcd_example():
    assert gcd(X ** 3 - X, X ** 2 - 1) == X ** 2 - 1


def test_gcd_of_zeros_is_an_error():
    with pytest.raises(ValueError, match="undefined gcd"):
        poly_gcd_squarefree(Poly.const(0, QQ), Poly.const(0, QQ))


def test_square_examples():
    v = is_square_in_field(QQ(4))
    assert isinstance(v, Square) and abs(v.root) == 2
    K = QuadExt(QQ, QQ(2), name="√2")
    r = K.gen
    v = is_square_in_field(3 + 2 * r)
    assert isinstance(v, Square) and v.root * v.root == 3 + 2 * r
    v = is_square_in_field(2 + r)
    assert isinstance(v, NonSquare) and v.verify(2 + r)


def test_square_of_zero_is_an_error():
    with pytest.raises(ValueError):
        is_square_in_field(QQ(0))


def test_crt_examples():
    assert crt_poly([(Poly.const(1, QQ), X)]) == Poly.const(1, QQ)
    assert crt_poly([(Poly.const(1, QQ), X), (Poly.const(2, QQ), X - 1)]) == X + 1


def test_crt_rejects_common_factor():
    with pytest.raises(ValueError):
        crt_poly([(Poly.const(1, QQ), X * (X - 1)), (Poly.const(2, QQ), X - 1)])


def test_resultant_examples():
    assert resultant(X - 1, X + 1) == 2
    assert resultant(X ** 2 - 2, X) == -2
    assert resultant(X ** 2 - 2, X ** 2 - 3) == 1


def test_irreducibility_examples():
    assert irreducible_over_Q(X ** 2 - 2)
    assert not irreducible_over_Q(X ** 2 - 1)
    assert irreducible_over_Q(X ** 4 + 2 * X ** 2 + 4)


def test_rational_roots_and_factorization():
    p = (X - QQ(1) / 2) * (X + 3) * (X ** 2 + 1)
    assert sorted(rational_roots(p)) == [-3, Fraction(1, 2)]
    _, facs = factor_over_Q(p)
    assert sorted(f.deg for f, _ in facs) == [1, 1, 2]


# -- properties against sympy ---------------------------------------------

@given(nonzero_polys, nonzero_polys)
@settings(max_examples=100, deadline=None)
def test_gcd_matches_sympy(p, q):
    assert gcd(p, q) == from_sym(sympy.gcd(to_sym(p), to_sym(q))).monic()


@given(nonzero_polys, nonzero_polys)
@settings(max_examples=100, deadline=None)
def test_xgcd_bezout(p, q):
    g, s, t = xgcd(p, q)
    assert s * p + t * q == g


@given(polys, polys)
@settings(max_examples=100, deadline=None)
def test_resultant_vanishes_iff_common_factor(p, q):
    if not p and not q:
        return
    if p.deg < 1 or q.deg < 1:
        return
    assert (resultant(p, q) == 0) == (gcd(p, q).deg > 0)
    # sympy.resultant disagrees in sign when deg p < deg q; the Sylvester determinant is the reference
    assert resultant(p, q) == Fraction(str(sylvester(to_sym(p), to_sym(q), xs).det()))


@given(nonzero_polys)
@settings(max_examples=100, deadline=None)
def test_squarefree_part_properties(p):
    if p.deg < 1:
        return
    s = squarefree_part(p)
    assert s.is_monic and p.divides(p) and s.divides(p ** s.deg) and divmod(p, s)[1] == Poly.const(0, QQ)
    assert is_squarefree(s)
    assert s == from_sym(sympy.sqf_part(to_sym(p))).monic()


@given(st.lists(st.tuples(st.integers(-5, 5), polys), min_size=1, max_size=4, unique_by=lambda t: t[0]))
@settings(max_examples=60, deadline=None)
def test_crt_re_reduces(data):
    congruences = [(r, (X - a) ** 2) for a, r in data]
    Q = crt_poly(congruences)
    for r, m in congruences:
        assert divmod(Q - r, m)[1] == Poly.const(0, QQ)
    assert Q.deg < 2 * len(data)


@given(st.lists(st.tuples(st.integers(-8, 8), st.integers(-8, 8)), min_size=1, max_size=5, unique_by=lambda t: t[0]))
@settings(max_examples=60, deadline=None)
def test_interpolation(points):
    P = interpolate([(QQ(a), QQ(b)) for a, b in points])
    assert all(P(QQ(a)) == b for a, b in points)


@given(st.integers(-40, 40).filter(bool), st.integers(1, 40))
@settings(max_examples=100, deadline=None)
def test_rational_square_test(n, d):
    q = Fraction(n, d)
    v = is_square_in_field(QQ(q))
    expected = sympy.Rational(n, d) > 0 and sympy.sqrt(sympy.Rational(n, d)).is_rational
    assert isinstance(v, Square) == bool(expected)
    assert v.verify(QQ(q))


@given(st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9))
@settings(max_examples=100, deadline=None)
def test_quadext_norm_identity(u, v, a, b):
    K = QuadExt(QQ, QQ(3), name="√3")
    z = K(u) + K(v) * K.gen
    assert z * z.conj() == K(u * u - 3 * v * v)
    if z:
        assert z * z.inverse() == K.one
    w = K(a) + K(b) * K.gen
    if w:
        sq = is_square_in_field(w * w)
        assert isinstance(sq, Square) and sq.root * sq.root == w * w


@given(st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9))
@settings(max_examples=60, deadline=None)
def test_number_field_squares(a, b, c):
    K = NumberField(Poly([-2, 0, 0, 1], QQ), name="r")  # Q(2^(1/3))
    r = K.gen
    z = K(a) + K(b) * r + K(c) * r * r
    if not z:
        return
    v = is_square_in_field(z * z)
    assert isinstance(v, Square) and v.root * v.root == z * z
    w = is_square_in_field(2 * z * z)
    assert w.verify(2 * z * z)
    assert not isinstance(w, Square)


# -- rational functions, cyclotomic data, towers --------------------------

def test_ratfunc_canonical_form():
    F = RationalFunctionField(QQ, "t")
    t = F.gen
    f = (2 * t * t - 2) / (4 * t - 4)
    assert f == (t + 1) / 2
    assert f.den.is_monic


def test_cyclotomic_and_alpha():
    for n in range(1, 13):
        phi = cyclotomic_poly(n)
        assert phi == from_sym(sympy.cyclotomic_poly(n, xs))
    for n in (3, 4, 5, 7, 8, 12):
        mp = alpha_minpoly(n)
        cos_val = sympy.cos(2 * sympy.pi / n)
        assert mp == from_sym(sympy.minimal_polynomial(cos_val, xs)).monic()
    K, al, be = alpha_beta(4)
    assert al == 0 and be == -1


def test_omega_roots():
    K, w = omega(4)
    assert w * w == -1
    K, w = omega(3)
    assert w * w + w + 1 == 0
    with pytest.raises(ValueError):
        omega(4, QQ)


def test_roots_in_number_field():
    K, i = omega(4)
    roots = roots_in_field(Poly([1, 0, 1], K))
    assert set(roots) == {i, -i}


def test_tower_round_trip():
    obj = {"number_field": {"min_poly": ["-2/1", "0/1", "1/1"], "name": "r"}, "variable": "t",
           "quad_ext": {"D": "t"}}
    T = FieldTower.from_json(obj)
    assert FieldTower.from_json(T.to_json()).to_json() == T.to_json()
    assert T.parse_poly("t^2 - 2") == Poly([-2, 0, 1], T.constant_field)
    assert T.field.gen * T.field.gen == T.field(T.function_field.gen)


@pytest.mark.parametrize("bad", [
    "not json", "[1,2]", {"number_field": {"min_poly": ["1/1", "0/1", "-1/1"]}},
    {"number_field": {"min_poly": ["-1/1", "0/1", "1/1"]}}, {"variable": "2x"}, {"extra": 1},
    {"quad_ext": {"D": "4"}},
])
def test_malformed_towers(bad):
    with pytest.raises(TowerError):
        FieldTower.from_json(bad)
