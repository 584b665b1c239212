from collections import Counter

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from equicurve.arith import QQ, Poly
from equicurve.ramify import (
    RamificationCondition, RamificationError, RamificationSpec, build_ramified_poly, choose_c,
    nontrivial_partitions, sm_cover, verify_local_decomposition,
)

X = Poly.x(QQ)
xs = sympy.Symbol("x")


def to_sym(p):
    return sum(sympy.Rational(c.numerator, c.denominator) * xs ** i for i, c in enumerate(p.c))


def root_multiplicities(P, beta):
    """Oracle: multiplicities > 1 of the roots of P − β over Q-bar (sympy factorization)."""
    _, facs = sympy.factor_list(to_sym(P) - beta)
    out = Counter()
    for f, e in facs:
        if e > 1:
            out[e] += sympy.degree(f, xs)
    return out


# -- data types -------------------------------------------------------------

def test_condition_entries_at_least_two():
    with pytest.raises(RamificationError):
        RamificationCondition((1,))
    with pytest.raises(RamificationError):
        RamificationCondition(())


def test_branch_values_distinct():
    with pytest.raises(RamificationError, match="distinct"):
        RamificationSpec((((2,), 0), ((3,), 0)))


def test_spec_from_json():
    spec = RamificationSpec.from_json({"conditions": [{"condition": [2, 2], "beta": 1}], "degree": 11})
    assert spec.entries[0][0].parts == (2, 2) and spec.degree == 11
    with pytest.raises(RamificationError):
        RamificationSpec.from_json({"conditions": [{"beta": 1}]})


# -- verification -----------------------------------------------------------

def test_verify_x_squared():
    dec = verify_local_decomposition(X ** 2, 0, (2,))
    assert dec.points == [(0, 2)]


def test_verify_x_cubed_is_rejected():
    with pytest.raises(RamificationError, match="multiplicities"):
        verify_local_decomposition(X ** 3, 0, (2,))


def test_verify_stray_root_rejected():
    P = X ** 2 * (X - 5) ** 2
    with pytest.raises(RamificationError, match="outside the allowed points"):
        verify_local_decomposition(P, 0, (2,), [QQ(0)])


# -- choose_c ---------------------------------------------------------------

def test_choose_c_examples():
    assert choose_c(X, Poly.const(1, QQ), [0]) == 1
    assert choose_c(X ** 2, X ** 2, [0]) == 1


def test_choose_c_m3():
    rep = sm_cover(3)
    built = rep.poly
    assert built.c >= 1
    betas = [d.beta for d in built.decompositions]
    allowed = [a for pts in built.base_points for a in pts]
    assert choose_c(built.Q, built.H, betas, allowed) == built.c


# -- building ---------------------------------------------------------------

def test_single_double_point():
    r = build_ramified_poly(RamificationSpec((((2,), 0),)))
    assert r.ok and r.c == 1
    assert r.P == X ** 3 + X ** 2
    assert root_multiplicities(r.P, 0) == Counter({2: 1})


def test_two_conditions():
    r = build_ramified_poly(RamificationSpec((((2,), 0), ((3,), 1))))
    assert r.ok
    for beta, want in ((0, {2: 1}), (1, {3: 1})):
        assert root_multiplicities(r.P, beta) == Counter(want)
        verify_local_decomposition(r.P, beta, list(want))


def test_target_prime_degree():
    r = build_ramified_poly(RamificationSpec((((2,), 0), ((3,), 1)), 11))
    assert r.ok and r.P.deg == 11 and r.c != 0
    with pytest.raises(RamificationError):
        build_ramified_poly(RamificationSpec((((2,), 0),), 3))


conditions = st.lists(st.lists(st.integers(2, 3), min_size=1, max_size=2), min_size=1, max_size=3)


@given(conditions)
@settings(max_examples=15, deadline=None)
def test_built_polys_realize_their_conditions(conds):
    spec = RamificationSpec(tuple((tuple(c), QQ(i)) for i, c in enumerate(conds)))
    r = build_ramified_poly(spec)
    assert r.ok
    for (cond, beta), pts, dec in zip(spec.entries, r.base_points, r.decompositions):
        assert root_multiplicities(r.P, int(beta)) == Counter(cond.parts)
        assert all(r.P(a) == beta for a in pts)
        again = verify_local_decomposition(r.P, beta, cond, pts)
        assert again.points == dec.points and again.certificate == dec.certificate
    # determinism
    assert build_ramified_poly(spec).P == r.P


# -- S_m covers ---------------------------------------------------------------

def test_partitions():
    assert nontrivial_partitions(3) == [(3,), (2, 1)]
    assert len(nontrivial_partitions(5)) == 6
    assert len(nontrivial_partitions(4)) == sum(1 for _ in sympy.utilities.iterables.partitions(4)) - 1


@pytest.mark.parametrize("m, prime", [(2, 5), (3, 11), (4, 19)])
def test_sm_cover(m, prime):
    rep = sm_cover(m)
    assert rep.ok and rep.prime == prime and sympy.isprime(rep.poly.P.deg)
    for beta, part, pat in rep.branches:
        assert pat == part + (1,) * (prime - m)
        want = Counter(b for b in part if b > 1)
        assert root_multiplicities(rep.poly.P, beta) == want
    assert any(pat == (2,) + (1,) * (prime - 2) for _, _, pat in rep.branches)


def test_sm_cover_m5():
    rep = sm_cover(5)
    assert rep.ok and rep.prime == 37 and len(rep.branches) == 6
    assert sm_cover(5).poly.P == rep.poly.P
