"""Acceptance criteria 1-10.

Each test prints one ``ACCEPTANCE <n> PASS|FAIL`` line (visible in ``pytest -v``
output) and fails if its assertions or its runtime bound fail.
"""

import random
import time
from collections import Counter
from contextlib import contextmanager
from fractions import Fraction
from math import isqrt

import sympy

from equicurve import config
from equicurve.arith import QQ, Poly, QuadExt, RationalFunctionField, is_squarefree, omega_field
from equicurve.brauer import (
    BrauerClass, NotSplit, SplitCertificate, SquareClassBasis, bad_places, formal, hilbert_symbol_Q, is_split_Q,
    is_split_kx, square_criterion_check, verify_split_certificate,
)
from equicurve.curves import (
    a4_elliptic_computation, blowup_chart, chebyshev, chebyshev_identity, even_cyclic_curve, even_dihedral_curve,
    genus, klein_construction_polys, klein_curve, octahedral_quadric_computation,
)
from equicurve.forms import (
    NONTRIVIAL_DISC, TRIVIAL_DISC, QuadForm, diagonalize, etale_from_symbol, trace_form, w2,
)
from equicurve.projective import (
    a5_compression, a5_embedding, conjugated_compression, embedding_catalog, equivariant_check, klein_embedding,
    power_map, s4_compression, s4_embedding, verify_relations,
)
from equicurve.ramify import sm_cover

X = Poly.x(QQ)
xs, ts, a_, s_ = sympy.symbols("x t a s")


def to_sym(p, v=xs):
    return sum(sympy.Rational(c.numerator, c.denominator) * v ** i for i, c in enumerate(p.c))


@contextmanager
def criterion(capsys, n, title, bound):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        dt = time.perf_counter() - start
        within = dt < bound
        status = "PASS" if ok and within else "FAIL"
        with capsys.disabled():
            print(f"\nACCEPTANCE {n} {status} {title} ({dt:.2f}s, bound {bound}s)")
    assert within, f"criterion {n} took {dt:.2f}s > {bound}s"


# 1 -------------------------------------------------------------------------

def test_criterion_1_cyclic_example(capsys):
    with criterion(capsys, 1, "even cyclic n=4 curve y^2 = x^5 - x", 1.0):
        c = even_cyclic_curve(4, 1)
        assert c.ok
        assert c.model.s == X ** 5 - X
        sig = c.model.actions["sigma"]
        x = c.model.function_field.gen
        assert sig.phi == -1 / x and sig.psi == 1 / x ** 3
        assert c.model.order("sigma") == 4
        assert genus(c.model.s) == 2


# 2 -------------------------------------------------------------------------

def test_criterion_2_octahedral(capsys):
    with criterion(capsys, 2, "octahedral invariant computation", 10.0):
        rep = octahedral_quadric_computation()
        assert rep.ok, [k for k, v in rep.checks.items() if not v]
        Y = sympy.Symbol("Y")
        got = sympy.sympify(rep.data["minimal polynomial"], locals={"t": ts, "Y": Y})
        assert sympy.expand(got - (Y ** 4 - 6 * Y ** 2 + 8 * Y + ts + 24)) == 0
        t_got = sympy.sympify(rep.data["t"], locals={"a": a_})
        shown = (a_ - 1) ** 2 * (a_ + 1) ** 2 * (2 * a_ ** 2 + 1) ** 2 * (a_ ** 2 + 2) ** 2 \
            / (a_ ** 4 * (a_ ** 2 + 1) ** 2)
        assert sympy.cancel(t_got - shown) == 0
        for key in ("trace form entries match up to squares", "disc and w2 agree with the expected form",
                    "invariant = (-1,-1) + (2,t) modulo the split symbol", "sigma fixes alpha", "tau fixes alpha"):
            assert rep.checks[key], key
        cert = SplitCertificate(Poly.const(3, QQ), Poly.const(1, QQ), X)
        assert verify_split_certificate(-3 * X, X * (X + 27), cert)


# 3 -------------------------------------------------------------------------

def test_criterion_3_a4_elliptic(capsys):
    with criterion(capsys, 3, "A4 elliptic computation, b = -1", 10.0):
        b = -1
        rep = a4_elliptic_computation(b)
        assert rep.ok, [k for k, v in rep.checks.items() if not v]
        assert sum(1 for k in rep.checks if k.startswith("t invariant")) == 4
        assert rep.checks["degree 12"]
        Y = sympy.Symbol("Y")
        p = sympy.sympify(rep.data["p(Y)"], locals={"t": ts, "Y": Y})
        assert sympy.expand(p - (Y ** 4 - ts * Y ** 3 + 18 * b * Y ** 2 - 27 * b ** 2)) == 0
        A = sympy.sympify(rep.data["A"], locals={"t": ts})
        B = sympy.sympify(rep.data["B"], locals={"t": ts})
        assert sympy.expand(A - (3 * ts ** 2 - 144 * b)) == 0
        assert sympy.expand(B - (192 * b - 3 * ts ** 2) * (144 * b - 3 * ts ** 2)) == 0
        K = QuadExt(QQ, QQ(-3), name="√-3")
        r3 = K.gen
        f, g = Poly([144 * b, 0, -3], K), Poly([192 * b, 0, -3], K)
        assert verify_split_certificate(f, g, SplitCertificate(Poly.const(2, K), Poly.const(r3, K), Poly([0, r3], K)))
        assert rep.checks["invariant = (-1,-1) modulo the split symbol"]


# 4 -------------------------------------------------------------------------

def test_criterion_4_formal_identities(capsys):
    with criterion(capsys, 4, "formal symbol identities", 5.0):
        ctx = formal.FormalContext(("a", "b", "c"))
        assert w2(QuadForm.formal(["1", "a", "b", "a*b"], ctx)) == BrauerClass([("-a", "-b"), ("-1", "-1")], ctx)
        assert w2(QuadForm.formal(["1", "a", "b", "c", "a*b*c"], ctx)) == \
            BrauerClass([("-a*c", "-b*c"), ("-1", "-1")], ctx)
        Ka = RationalFunctionField(QQ, "a")
        F = RationalFunctionField(Ka, "b")
        a, b = F(Ka.gen), F.gen
        basis = SquareClassBasis(F)
        rng = random.Random(4)
        for variant, extra in ((TRIVIAL_DISC, (F(-1), F(-1))), (NONTRIVIAL_DISC, (F(-1), b))):
            S = etale_from_symbol(a, b, variant, field=F)
            got = basis.canonical(w2(diagonalize(trace_form(S.algebra))))
            want = basis.canonical(BrauerClass([(a, b), extra], F))
            assert got == want, variant
            for _ in range(50):
                imgs = {"a": formal.random_word(rng, ("g1", "g2", "g3", "g4")),
                        "b": formal.random_word(rng, ("g1", "g2", "g3", "g4"))}
                assert formal.substitute(got, imgs) == formal.substitute(want, imgs)


# 5 -------------------------------------------------------------------------

CATALOG = [
    ("klein", {"a": 1, "b": 1}, None, 4), ("klein", {"a": 2, "b": -1}, None, 4), ("z2", {"b": 3}, None, 2),
    *[("dihedral", {"n": n}, None, 2 * n) for n in range(3, 9)],
    *[("cyclic", {"n": n}, None, n) for n in (3, 4, 6, 8)],
    ("versal_cyclic", {"n": 4}, None, 4), ("omega_dihedral", {"n": 4, "a": 3}, None, 8),
    ("dihedral_general", {"n": 4, "x": 1, "y": 2}, None, 8),
    ("s4", {}, 4, 24), ("a4", {}, 4, 12), ("a5", {}, 5, 60),
]


def test_criterion_5_equivariance(capsys):
    with criterion(capsys, 5, "embedding catalog and compressions", 10.0):
        for group, params, w, order in CATALOG:
            rel = verify_relations(embedding_catalog(group, params, omega_field(w) if w else None))
            assert rel and rel.order == order, (group, params)
        for n in range(3, 9):
            rep = conjugated_compression(n)
            assert rep.ok and rep.equivariant and rep.degree == n + 1 and rep.defined_over_base, n
        K4, K5 = omega_field(4), omega_field(5)
        F = s4_compression(K4)
        assert F.degree == 7 and equivariant_check(F, s4_embedding(K4))
        F = a5_compression(K5)
        assert F.degree == 11 and equivariant_check(F, a5_embedding(K5))
        assert equivariant_check(power_map(3), klein_embedding(1, 1))


# 6 -------------------------------------------------------------------------

def _generated_split_symbols(n, rng):
    while n:
        f = Poly([QQ(rng.randint(-4, 4)) for _ in range(rng.randint(1, 3))] + [QQ(rng.choice([1, -1, 2]))], QQ)
        p = Poly([QQ(rng.randint(-3, 3)) for _ in range(rng.randint(1, 2))], QQ)
        r = Poly([QQ(rng.randint(-3, 3)) for _ in range(rng.randint(1, 3))], QQ)
        g = r * r - f * p * p
        if not p or g.deg < 1 or not is_squarefree(f) or not is_squarefree(g):
            continue
        n -= 1
        yield f, g, SplitCertificate(p, Poly.const(1, QQ), r)


def _brute_isotropic(a, b, H=50):
    for x in range(H + 1):
        for y in range(-H, H + 1):
            v = a * x * x + b * y * y
            if (x or y) and v >= 0 and isqrt(v) ** 2 == v:
                return True
    return False


def test_criterion_6_splitting(capsys):
    with criterion(capsys, 6, "splitting decisions and properties", 60.0):
        res = is_split_kx(X, X ** 2 - 4 * X + 2)
        assert isinstance(res, NotSplit) and res.verify()
        assert "2+√2 non-square in Q(√2), norm 2" in res.describe()
        res = is_split_kx(Poly.const(-1, QQ), X)
        assert isinstance(res, NotSplit) and res.verify() and res.witness.place == X
        res = is_split_kx(-3 * X, X * (X + 27))
        assert res.is_split is True and res.verify()

        rng = random.Random(6)
        for f, g, cert in _generated_split_symbols(200, rng):
            assert verify_split_certificate(f, g, cert)
            res = is_split_kx(f, g)
            assert res.is_split is True and res.verify(), (f, g)
            reps = square_criterion_check(f, g, cert)
            assert reps and all(rep.root * rep.root == rep.value for rep in reps)

        for _ in range(200):
            a = Fraction(rng.choice([-1, 1]) * rng.randint(1, 500), rng.randint(1, 50))
            b = Fraction(rng.choice([-1, 1]) * rng.randint(1, 500), rng.randint(1, 50))
            sign = 1
            for v in bad_places(a, b):
                sign *= hilbert_symbol_Q(a, b, v)
            assert sign == 1, (a, b)

        found = 0
        for _ in range(120):
            a, b = rng.choice([-1, 1]) * rng.randint(1, 60), rng.choice([-1, 1]) * rng.randint(1, 60)
            if _brute_isotropic(a, b):
                found += 1
                assert is_split_Q(a, b), (a, b)
        assert found > 20


# 7 -------------------------------------------------------------------------

def test_criterion_7_klein_curve(capsys):
    with criterion(capsys, 7, "Klein curve from h = x^2 - 2", 10.0):
        P, Q, _ = klein_construction_polys(X ** 2 - 2)
        c = klein_curve(P, Q)
        assert c.conditions.ok and c.ok, [k for k, v in c.checks.items() if not v]
        y, z = sympy.symbols("y z")
        Ps, Qs = to_sym(P), to_sym(Q)
        eqs = [y ** 2 - xs * Ps, z ** 2 - xs * Qs]
        J = sympy.Matrix([[sympy.diff(e, v) for v in (xs, y, z)] for e in eqs])
        for pt, fixed_coord in ((c.A, y), (c.B, z)):
            sub = dict(zip((xs, y, z), (sympy.Rational(v.numerator, v.denominator) for v in pt)))
            assert all(e.subs(sub) == 0 for e in eqs)
            assert J.subs(sub).rank() == 2
            assert sub[fixed_coord] == 0
        # blow-up chart at the origin
        yy, u, v = sympy.symbols("yy u v")
        P0, Q0 = Ps.subs(xs, 0), Qs.subs(xs, 0)
        P1, Q1 = sympy.cancel((Ps - P0) / xs), sympy.cancel((Qs - Q0) / xs)
        gens = [yy - u * Ps.subs(xs, yy * u), yy * v ** 2 - u * Qs.subs(xs, yy * u),
                Q0 - P0 * v ** 2 - u ** 2 * Q0 * P1.subs(xs, yy * u) + u ** 2 * P0 * Q1.subs(xs, yy * u)]
        Jc = sympy.Matrix([[sympy.diff(g, w) for w in (yy, u, v)] for g in gens])
        r = sympy.sqrt(Q0 / P0)
        for sgn in (1, -1):
            pt = {yy: 0, u: 0, v: sgn * r}
            assert all(sympy.simplify(g.subs(pt)) == 0 for g in gens)
            assert Jc.subs(pt).rank(simplify=True) == 2
        assert c.checks["e1e2 preserves the chart ideal"] and c.checks["e1e2 fixes exceptional points"]
        chart = blowup_chart(P, Q)
        assert chart.vanish() and chart.ranks() == [2, 2]


# 8 -------------------------------------------------------------------------

def test_criterion_8_even_dihedral(capsys):
    with criterion(capsys, 8, "even dihedral n=4 pipeline", 10.0):
        for m in range(1, 9):
            assert chebyshev_identity(m)
            assert sympy.expand(to_sym(chebyshev(m), s_) - sympy.chebyshevt(m, s_)) == 0
        c = even_dihedral_curve(4, X ** 2 - 2, omega_field(4))
        assert c.ok, [k for k, v in c.checks.items() if not v]
        assert c.checks["y^2 (1+1/x)^2 = (2s+2) f(T_m(s))"]
        # f from the minimal polynomials of T_2(γ), T_2(δ) with ξ = √2, γ² = 1 + ξ, δ² = 1 + 1/ξ
        xi = sympy.sqrt(2)
        f_oracle = sympy.expand(sympy.minimal_polynomial(2 * (1 + xi) - 1, ts)
                                * sympy.minimal_polynomial(2 * (1 + 1 / xi) - 1, ts))
        assert sympy.expand(to_sym(c.f, ts) - f_oracle) == 0
        (first, second), = c.delta_class.pairs()
        first = sympy.sympify(str(first), locals={"a": a_, "s": s_})
        second = sympy.sympify(str(second), locals={"s": s_})
        T2 = sympy.chebyshevt(2, s_)
        assert sympy.expand(first - 2 * a_ * (s_ + 1) * f_oracle.subs(ts, T2)) == 0
        assert sympy.expand(second - (s_ ** 2 - 1)) == 0


# 9 -------------------------------------------------------------------------

def _multiplicities(P, beta):
    _, facs = sympy.factor_list(to_sym(P) - beta)
    out = Counter()
    for f, e in facs:
        if e > 1:
            out[e] += sympy.degree(f, xs)
    return out


def test_criterion_9_sm_covers(capsys):
    with criterion(capsys, 9, "S_m covers for m = 2..5", 30.0):
        for m, prime in ((2, 5), (3, 11), (4, 19), (5, 37)):
            rep = sm_cover(m)
            assert rep.ok and rep.prime == prime and rep.poly.P.deg == prime and sympy.isprime(prime)
            assert rep.poly.checks["(ii) P(a_ij) = beta_i"]
            parts = set()
            for beta, part, pat in rep.branches:
                assert pat == part + (1,) * (prime - m)
                assert _multiplicities(rep.poly.P, beta) == Counter(e for e in part if e > 1)
                parts.add(part)
            assert len(parts) == len(rep.branches) == sum(1 for _ in sympy.utilities.iterables.partitions(m)) - 1
            assert (2,) + (1,) * (m - 2) in parts
            assert sm_cover(m).poly.P.to_json() == rep.poly.P.to_json()


# 10 ------------------------------------------------------------------------

def test_criterion_10_full_suite(capsys):
    from equicurve.cli import verify_paper_suite
    with criterion(capsys, 10, "full verify-paper suite", 180.0):
        rep = verify_paper_suite(config.active())
        statuses = Counter(rep.statuses())
        assert statuses["INCONCLUSIVE"] == 0
        assert statuses["PASS"] == len(rep.entries) == 23, [(e.id, e.status) for e in rep.entries]
        assert rep.exit_code == 0
