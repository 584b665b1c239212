import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from equicurve.arith import QQ, Poly, omega_field
from equicurve.brauer import is_split_Q
from equicurve.projective import (
    EmbeddingInstance, ProjMatrix, ProjectiveMap, SideConditionError, a5_compression, a5_embedding,
    binomial_compression, conjugated_compression, embedding_catalog, equivariant_check, invariant_quotient_map,
    klein_embedding, power_map, s4_compression, s4_embedding, verify_relations,
)

xs, ys, sb = sympy.symbols("x y sb")


def form_coeffs(expr, d):
    """Coefficients of a binary form from x^d down to y^d (sympy oracle)."""
    p = sympy.Poly(sympy.expand(expr), xs, ys)
    return [p.coeff_monomial(xs ** (d - i) * ys ** i) for i in range(d + 1)]


# -- catalog ----------------------------------------------------------------

def test_klein_lambda_example():
    E = klein_embedding(2, -1)
    assert E.params["lambda"] == 1
    assert E.images["e1"].printed == (1, -2, 1, -1)
    assert verify_relations(E).order == 4


def test_klein_requires_split_symbol():
    with pytest.raises(SideConditionError, match=r"\(a,b\) not split"):
        klein_embedding(-1, -1)


def test_klein_random_split_pairs():
    rng = random.Random(1)
    done = 0
    while done < 20:
        a, b = rng.choice([-1, 1]) * rng.randint(1, 30), rng.choice([-1, 1]) * rng.randint(1, 30)
        if not is_split_Q(a, b):
            continue
        rel = verify_relations(klein_embedding(a, b))
        assert rel and rel.order == 4, (a, b)
        done += 1


def test_dihedral_n4_matrices():
    D = embedding_catalog("dihedral", {"n": 4})
    assert D.images["sigma"].entries() == (1, -1, 1, 1)
    assert D.images["tau"].entries() == (1, 0, 0, -1)
    assert D.params["alpha"] == 0 and D.params["beta"] == -1


def test_a5_over_Q_is_refused():
    with pytest.raises(SideConditionError, match="ω5 required"):
        embedding_catalog("a5", {}, QQ)


@pytest.mark.parametrize("group, params, field, order", [
    ("klein", {"a": 1, "b": 1}, None, 4),
    ("z2", {"b": 3}, None, 2),
    ("dihedral", {"n": 3}, None, 6),
    ("dihedral", {"n": 6}, None, 12),
    ("cyclic", {"n": 8}, None, 8),
    ("dihedral_general", {"n": 4, "x": 1, "y": 2}, None, 8),
    ("versal_cyclic", {"n": 4}, None, 4),
    ("omega_dihedral", {"n": 4, "a": 3}, None, 8),
    ("s4", {}, "w4", 24),
    ("a4", {}, "w4", 12),
    ("a5", {}, "w5", 60),
])
def test_catalog_orders(group, params, field, order):
    K = {None: None, "w4": omega_field(4), "w5": omega_field(5)}[field]
    E = embedding_catalog(group, params, K)
    rel = verify_relations(E)
    assert rel and rel.order == order


def test_tampered_tau_fails():
    D = embedding_catalog("dihedral", {"n": 4})
    bad = EmbeddingInstance(D.presentation, {"sigma": D.images["sigma"], "tau": ProjMatrix(1, 0, 0, 1)}, QQ)
    rel = verify_relations(bad)
    assert not rel and rel.failing


# -- equivariance -----------------------------------------------------------

def test_identity_is_equivariant():
    assert equivariant_check(power_map(1), embedding_catalog("dihedral", {"n": 5}))


def test_polyhedral_compressions():
    K4 = omega_field(4)
    F = s4_compression(K4)
    assert F.degree == 7 and equivariant_check(F, s4_embedding(K4))
    K5 = omega_field(5)
    F = a5_compression(K5)
    assert F.degree == 11 and equivariant_check(F, a5_embedding(K5))
    assert not equivariant_check(power_map(2, K4), s4_embedding(K4))


def test_klein_cube_map():
    assert equivariant_check(power_map(3), klein_embedding(1, 1))


@pytest.mark.parametrize("n", range(3, 9))
def test_conjugated_compression(n):
    rep = conjugated_compression(n)
    assert rep.ok and rep.degree == n + 1
    assert rep.map.same_map(binomial_compression(n))
    # oracle: sympy expansion with √β a symbol, then β evaluated in the field
    beta = _beta(n)
    K = rep.map.K
    plus, minus = (xs + sb * ys) ** (n + 1), (xs - sb * ys) ** (n + 1)
    f0 = sympy.expand(plus + minus)
    f1 = sympy.expand(sympy.cancel((plus - minus) / sb))

    def in_field(c):
        out = K(0)
        for (k,), v in sympy.Poly(c, sb).terms():
            assert k % 2 == 0, "odd power of √β survived"
            out = out + K(int(v)) * beta ** (k // 2)
        return out

    want = ProjectiveMap.from_forms([in_field(c) for c in form_coeffs(f0, n + 1)],
                                    [in_field(c) for c in form_coeffs(f1, n + 1)], K)
    assert rep.map.same_map(want)


def _beta(n):
    return embedding_catalog("dihedral", {"n": n}).params["beta"]


def test_compression_over_nonrational_alpha():
    from equicurve.arith.cyclotomic import alpha_beta
    K, _, _ = alpha_beta(5)
    rep = conjugated_compression(5, K)
    assert rep.ok and rep.degree == 6


@given(st.integers(1, 9), st.sampled_from([(1, 2, 3, 5), (0, 1, 1, 0), (2, -1, 1, 1)]))
@settings(max_examples=20, deadline=None)
def test_equivariance_stable_under_scaling_and_conjugation(c, M):
    E = embedding_catalog("dihedral", {"n": 4})
    F = conjugated_compression(4).map
    assert equivariant_check(F.scaled(QQ(c)), E)
    P = ProjMatrix(*M)
    conj = EmbeddingInstance(E.presentation, {k: P * g * P.inverse() for k, g in E.images.items()}, QQ)
    assert equivariant_check(F.conjugate(P), conj)


forms = st.lists(st.integers(-4, 4), min_size=3, max_size=3)


@given(forms, forms, forms, forms)
@settings(max_examples=60, deadline=None)
def test_composition_degree(a0, a1, b0, b1):
    def make(c0, c1):
        f0, f1 = sum(c * xs ** (2 - i) * ys ** i for i, c in enumerate(c0)), \
            sum(c * xs ** (2 - i) * ys ** i for i, c in enumerate(c1))
        if f0 == 0 or f1 == 0 or sympy.resultant(f0.subs(ys, 1), f1.subs(ys, 1), xs) == 0 \
                or sympy.Poly(f0, xs, ys).total_degree() < 2 or (c0[0] == 0 and c1[0] == 0):
            return None
        return ProjectiveMap.from_forms([QQ(c) for c in c0], [QQ(c) for c in c1])
    F, G = make(a0, a1), make(b0, b1)
    if F is None or G is None or F.degree != 2 or G.degree != 2:
        return
    assert F.compose(G).degree == 4


# -- invariant quotient maps -----------------------------------------------

def _rdeg(t):
    return max(t.num.deg, t.den.deg)


def test_quotient_of_rho_b():
    E = embedding_catalog("z2", {"b": 3})
    t = invariant_quotient_map(E)
    x = t.field.gen
    assert t == (x * x + 3) / (2 * x) and _rdeg(t) == 2


def test_quotient_of_central_involution():
    C = embedding_catalog("cyclic", {"n": 4})
    s = C.images["sigma"]
    beta = C.params["beta"]
    assert s * s == ProjMatrix(0, beta, 1, 0)
    t = invariant_quotient_map([ProjMatrix.identity(), s * s])
    x = t.field.gen
    assert t == (x * x + beta) / (2 * x)


def test_quotient_of_cyclic_four():
    C = embedding_catalog("cyclic", {"n": 4})
    t = invariant_quotient_map(C)
    assert _rdeg(t) == 4
    for g in C.elements():
        assert t.compose(g.mobius(t.field.gen)) == t
