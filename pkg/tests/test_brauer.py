import random
from fractions import Fraction
from itertools import combinations, product
from math import isqrt, prod

import pytest
from hypothesis import given, settings, strategies as st

from equicurve.arith import QQ, Poly, QuadExt, NonSquare, is_squarefree
from equicurve.brauer import (
    INFINITY, BrauerClass, ConcreteClassError, ConstantClassProof, CertificateProof, FormalContext, NotSplit,
    ResidueWitness, Split, SplitCertificate, bad_places, hilbert_symbol_Q, is_split_Q, is_split_kx, residue_symbol,
    residue_witness, square_criterion_check, verify_split_certificate,
)
from equicurve.brauer.formal import MINUS_ONE, canonical, format_form, word
from equicurve.brauer.residue import ResidueFieldError
from equicurve.brauer.split import places_of

X = Poly.x(QQ)
F = FormalContext(("a", "b", "c", "d"))


def P(*cs, K=QQ):
    return Poly([K(c) for c in cs], K)


# -- formal mode ------------------------------------------------------------

def formal(*pairs):
    return BrauerClass([(F(a), F(b)) for a, b in pairs], F)


def test_split_relation_a_minus_a():
    assert formal(("a", "-a")).is_zero()


def test_two_torsion():
    assert (formal(("a", "b")) + formal(("a", "b"))).is_zero()
    assert formal(("a", "b"), ("b", "a")).is_zero()


def test_trace_form_pairs_of_1_a_b_ab():
    entries = ["1", "a", "b", "a*b"]
    total = formal(*combinations(entries, 2))
    assert total == formal(("-a", "-b"), ("-1", "-1"))


def test_concrete_normalize_is_refused():
    c = BrauerClass([(QQ(2), QQ(3))], QQ)
    with pytest.raises(ConcreteClassError, match="use concrete decision procedures"):
        c.normalize()


words = st.sets(st.sampled_from(["a", "b", "c", "d", MINUS_ONE]), min_size=1).map(frozenset)


@given(st.lists(st.tuples(words, words), max_size=6))
@settings(max_examples=100, deadline=None)
def test_normalize_idempotent(pairs):
    c = BrauerClass(pairs, F)
    n = c.normalize()
    assert n.normalize().pairs() == n.pairs()
    assert n == c


@given(words, words, words)
@settings(max_examples=100, deadline=None)
def test_bilinearity(a, b, c):
    if b ^ c:
        total = BrauerClass([(a, b ^ c)], F) + BrauerClass([(a, b)], F) + BrauerClass([(a, c)], F)
        assert total.is_zero()
    assert (BrauerClass([(a, a)], F) + BrauerClass([(a, word(MINUS_ONE))], F)).is_zero()


def test_canonical_form_text():
    assert format_form(canonical([(word("a"), word("a"))])) == "(-1,a)"
    assert format_form(canonical([(word(MINUS_ONE), word(MINUS_ONE))])) == "(-1,-1)"


# -- Hilbert symbols over Q ------------------------------------------------

def local_isotropy_oracle(a, b, p):
    """Brute force: z² = a x² + b y² has a primitive solution mod p^k.

    For squarefree integers a, b a primitive solution mod p^3 (p odd) or
    mod 2^5 lifts to Z_p by Hensel's lemma, so this decides (a, b)_p.
    """
    k = 5 if p == 2 else 3
    m = p ** k
    unit_sq = {z * z % m for z in range(m) if z % p}
    all_sq = {z * z % m for z in range(m)}
    for x, y in product(range(m), repeat=2):
        v = (a * x * x + b * y * y) % m
        if x % p or y % p:
            if v in all_sq:
                return 1
        elif v in unit_sq:
            return 1
    return -1


def test_hilbert_examples():
    assert hilbert_symbol_Q(-1, -1, INFINITY) == -1
    assert hilbert_symbol_Q(-1, -1, 2) == local_isotropy_oracle(-1, -1, 2) == -1
    for v in bad_places(17, 34):
        assert hilbert_symbol_Q(1, 17, v) == 1


SMALL_SQUAREFREE = sorted({s * prod(c) for s in (1, -1) for r in range(4) for c in combinations((2, 3, 5, 7), r)})


@pytest.mark.parametrize("p", [2, 3, 5])
def test_hilbert_matches_local_oracle(p):
    rng = random.Random(p)
    pairs = rng.sample(list(product(SMALL_SQUAREFREE, repeat=2)), 40 if p > 2 else 120)
    for a, b in pairs:
        assert hilbert_symbol_Q(a, b, p) == local_isotropy_oracle(a, b, p), (a, b, p)


nonzero_rationals = st.tuples(st.integers(-300, 300).filter(bool), st.integers(1, 60)).map(lambda t: Fraction(*t))


@given(nonzero_rationals, nonzero_rationals)
@settings(max_examples=200, deadline=None)
def test_product_formula(a, b):
    prod = 1
    for v in bad_places(a, b):
        prod *= hilbert_symbol_Q(a, b, v)
    assert prod == 1


def test_is_split_Q_examples():
    assert is_split_Q(-1, -1) is False
    assert is_split_Q(-1, 2) is True
    assert is_split_Q(1, 17) is True


def isotropic_point(a, b, H=50):
    """(x, y, z) ≠ 0 with a x² + b y² = z², |x|, |y| ≤ H."""
    for x in range(0, H + 1):
        for y in range(-H, H + 1):
            if x == 0 and y == 0:
                continue
            v = a * x * x + b * y * y
            if v >= 0 and isqrt(v) ** 2 == v:
                return x, y, isqrt(v)
    return None


def test_is_split_Q_agrees_with_brute_force():
    rng = random.Random(7)
    found = 0
    for _ in range(80):
        a, b = rng.choice([-1, 1]) * rng.randint(1, 40), rng.choice([-1, 1]) * rng.randint(1, 40)
        pt = isotropic_point(a, b)
        if pt is not None:
            found += 1
            assert is_split_Q(a, b), (a, b, pt)
    assert found > 10


# -- residues ---------------------------------------------------------------

def test_residue_unramified_is_trivial():
    cls, _ = residue_symbol(X + 1, X + 2, X)
    assert cls == 1
    w, _ = residue_witness(X + 1, X ** 2 + 1, X)
    assert w is None


def test_residue_2_plus_sqrt2():
    pi = X ** 2 - 4 * X + 2
    w, verdict = residue_witness(X, pi, pi)
    assert isinstance(w, ResidueWitness) and isinstance(verdict, NonSquare)
    K = w.field
    assert w.residue_class in (2 + K.gen, 2 - K.gen)
    assert w.recheck(X, pi)


def test_residue_minus_one_x():
    w, _ = residue_witness(P(-1), X, X)
    assert w is not None and w.residue_class == -1


def test_residue_at_reducible_place():
    with pytest.raises(ResidueFieldError):
        residue_symbol(X, X + 1, X ** 3 - X)


# -- splitting over Q(x) ---------------------------------------------------

def test_split_paper_certificate():
    T = Poly.x(QQ)
    f, g = -3 * T, T * (T + 27)
    res = is_split_kx(f, g)
    assert isinstance(res, Split) and res.verify()
    assert isinstance(res.proof, CertificateProof)
    c = res.proof.certificate
    assert (c.p, c.q, c.r) == (P(3), P(1), T)
    assert verify_split_certificate(f, g, SplitCertificate(P(3), P(1), T))


def test_split_x_x2_4x_2_not_split():
    res = is_split_kx(X, X ** 2 - 4 * X + 2)
    assert isinstance(res, NotSplit) and res.verify()
    assert "non-square in Q(√2)" in res.describe()


def test_split_trivial_second_entry():
    res = is_split_kx(X ** 3 + 5, P(1))
    assert isinstance(res, Split) and res.verify()
    c = res.proof.certificate
    assert (c.p, c.q, c.r) == (P(0), P(1), P(1))


def test_split_with_trivial_residues():
    # -1 is a square in Q(i), the residue field at x²+1
    res = is_split_kx(P(-1), X ** 2 + 1)
    assert res.is_split and res.verify()


def test_constant_class_proof_rechecks():
    f, g = P(-1), X ** 2 + 1
    proof = ConstantClassProof(tuple(places_of(f, g)), 0, (QQ(-1), QQ(1)), "Hilbert symbols trivial at all places")
    assert proof.verify(f, g)
    assert not ConstantClassProof(tuple(places_of(P(2), g)), 0, (QQ(2), QQ(1)), "").verify(P(2), g)


def test_specialization_witness():
    res = is_split_kx(P(-1), P(-1) + 0 * X)
    assert res.is_split is False and res.verify()


def test_zero_entry_is_an_error():
    with pytest.raises(ValueError):
        is_split_kx(P(0), X)


def test_certificate_over_sqrt_minus_3():
    K = QuadExt(QQ, QQ(-3), name="√-3")
    s = K.gen
    t = Poly.x(K)
    f = 144 - 3 * t * t
    g = 192 - 3 * t * t
    cert = SplitCertificate(P(2, K=K), Poly([s], K), t * s)
    assert verify_split_certificate(f, g, cert)
    assert not verify_split_certificate(f, g, SplitCertificate(P(2, K=K), Poly([s], K), t))


def test_trivial_certificate_and_zero_certificate():
    assert verify_split_certificate(P(1), P(1), SplitCertificate(P(1), P(0), P(1)))
    assert not verify_split_certificate(P(1), P(1), SplitCertificate(P(0), P(0), P(0)))
    # common factor
    assert not verify_split_certificate(P(1), P(1), SplitCertificate(X, P(0), X))


# -- square criterion ------------------------------------------------------

def test_square_criterion_without_certificate():
    with pytest.raises(ValueError, match="no certificate"):
        square_criterion_check(X ** 2 - 2, X, None)


def test_square_criterion_constant_one():
    g = (X - 1) * (X ** 2 + 3)
    reps = square_criterion_check(P(1), g, SplitCertificate(P(1), P(0), P(1)))
    assert len(reps) == 2 and all(r.root * r.root == r.value for r in reps)


def test_square_criterion_names_repeated_factor():
    f = X
    g = (X + 1) ** 2
    cert = SplitCertificate(P(0), P(1), X + 1)
    with pytest.raises(ValueError, match="repeated factor"):
        square_criterion_check(f, g, cert)


def generated_split_symbols(n, seed=3):
    """(f, g, cert) with g = r² − f p², q = 1, f and g separable."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        f = Poly([QQ(rng.randint(-4, 4)) for _ in range(rng.randint(1, 3))] + [QQ(rng.choice([1, -1, 2]))], QQ)
        p = Poly([QQ(rng.randint(-3, 3)) for _ in range(rng.randint(1, 2))], QQ)
        r = Poly([QQ(rng.randint(-3, 3)) for _ in range(rng.randint(1, 3))], QQ)
        g = r * r - f * p * p
        if not p or g.deg < 1 or not is_squarefree(f) or not is_squarefree(g):
            continue
        out.append((f, g, SplitCertificate(p, P(1), r)))
    return out


def test_square_criterion_on_generated_split_symbols():
    for f, g, cert in generated_split_symbols(200):
        assert verify_split_certificate(f, g, cert)
        reps = square_criterion_check(f, g, cert)
        assert reps and all(rep.root * rep.root == rep.value for rep in reps)


def test_decision_on_generated_split_symbols():
    for f, g, _ in generated_split_symbols(25, seed=11):
        res = is_split_kx(f, g)
        assert res.is_split is not False, (f, g, res.describe())
        if res.is_split:
            assert res.verify()
