"""The fixed reproduction suite.

Every check is deterministic: random instantiations use a private seeded
generator, independent of the ``--seed`` flag.  A check yields
``(verdict, detail)`` pairs where verdict is True, False or None
(undecided); the entry status is FAIL if any verdict is False,
INCONCLUSIVE if any is None, PASS otherwise.
"""

from __future__ import annotations

import json
import random

from ..arith import (
    QQ, NonSquare, Poly, ProbablySquare, QuadExt, RationalFunctionField, crt_poly,
    is_square_in_field, squarefree_part,
)
from ..brauer import (
    BrauerClass, NotSplit, SplitCertificate, SquareClassBasis, classes_equal_Q,
    format_form, is_split_kx, verify_split_certificate,
)
from ..brauer import formal
from ..curves import (
    a4_elliptic_computation, even_cyclic_curve, even_dihedral_curve, genus, klein_construction_polys,
    klein_curve, klein_delta_class, octahedral_quadric_computation,
)
from ..curves.hyperelliptic import CurveError
from ..forms import (
    NONTRIVIAL_DISC, TRIVIAL_DISC, QuadForm, diagonalize, discriminant, etale_from_symbol,
    quartic_EAB, same_square_class, serre_invariant, trace_form, w2,
)
from ..projective import (
    SideConditionError, a5_compression, a5_embedding, conjugated_compression, embedding_catalog,
    equivariant_check, klein_embedding, power_map, s4_compression, s4_embedding, verify_relations,
)
from ..ramify import RamificationSpec, build_ramified_poly, sm_cover

SUITE_SEED = 20240601
X = Poly.x(QQ)


def poly_json(p):
    return json.dumps(p.to_json(), separators=(",", ":"))


def _checks(obj):
    """Verdicts from a result object carrying a ``checks`` dict."""
    for name, ok in obj.checks.items():
        yield bool(ok), f"{name}: {'ok' if ok else 'FAILED'}"


# ---------------------------------------------------------------------------
# square classes and symbols
# ---------------------------------------------------------------------------

def check_cyclic_example():
    c = even_cyclic_curve(4, 1)
    s = c.model.s
    yield s == X ** 5 - X, f"CURVE {c.model.equation()}"
    sig = c.model.actions["sigma"]
    F = c.model.function_field
    x = F.gen
    yield sig.phi == -1 / x and sig.psi == 1 / x ** 3, f"ACTION sigma: (x,y) -> {sig.to_str('x')}"
    yield c.model.order("sigma") == 4, "sigma has exact order 4"
    yield genus(s) == 2, f"GENUS {genus(s)}"
    yield c.p == X ** 2 - 1 and c.q == 2 * X, f"p = {c.p.to_str()}, q = {c.q.to_str()}"
    yield from _checks(c)
    yield squarefree_part(c.product) == s, f"squarefree part of {c.product.to_str()} is {s.to_str()}"
    yield True, f"POLY {poly_json(s)}"
    try:
        even_cyclic_curve(4, 0)
        yield False, "a = 0 accepted"
    except CurveError as exc:
        yield True, f"a = 0 rejected: {exc}"


def check_nonsquare_2_plus_sqrt2():
    K = QuadExt(QQ, QQ(2), name="√2")
    v = is_square_in_field(2 + K.gen)
    if isinstance(v, ProbablySquare):
        yield None, "2+√2 undecided"
    else:
        yield isinstance(v, NonSquare), f"2+√2 in Q(√2): {v.describe()}"


def check_formal_w2():
    ctx = formal.FormalContext(("a", "b", "c"))
    q = QuadForm.formal(["1", "a", "b", "a*b"], ctx)
    target = BrauerClass([("-a", "-b"), ("-1", "-1")], ctx)
    yield w2(q) == target, f"w2<1,a,b,ab> = {format_form(w2(q).canonical_form())}"
    q5 = QuadForm.formal(["1", "a", "b", "c", "a*b*c"], ctx)
    t5 = BrauerClass([("-a*c", "-b*c"), ("-1", "-1")], ctx)
    yield w2(q5) == t5, f"w2<1,a,b,c,abc> = {format_form(w2(q5).canonical_form())}"


def _generic_symbol_field():
    Ka = RationalFunctionField(QQ, "a")
    Kb = RationalFunctionField(Ka, "b")
    return Kb, Kb(Ka.gen), Kb.gen


def check_etale_recipes():
    F, a, b = _generic_symbol_field()
    basis = SquareClassBasis(F)
    rng = random.Random(SUITE_SEED)
    gens = ("g1", "g2", "g3", "g4")
    for variant, extra, label in ((TRIVIAL_DISC, (F(-1), F(-1)), "(a,b)+(-1,-1)"),
                                  (NONTRIVIAL_DISC, (F(-1), b), "(a,b)+(-1,b)")):
        S = etale_from_symbol(a, b, variant, field=F)
        got = basis.canonical(w2(diagonalize(trace_form(S.algebra))))
        want = basis.canonical(BrauerClass([(a, b), extra], F))
        yield got == want, f"{variant}: generic w2 {format_form(got)} vs {label}"
        ok = True
        for _ in range(50):
            imgs = {"a": formal.random_word(rng, gens), "b": formal.random_word(rng, gens)}
            if formal.substitute(got, imgs) != formal.substitute(want, imgs):
                ok = False
        yield ok, f"{variant}: 50 generator instantiations agree"
    # concrete instantiations checked by Hilbert symbols
    bad = 0
    for _ in range(50):
        while True:
            ca = QQ(rng.choice([-1, 1]) * rng.randint(1, 40)) / rng.randint(1, 9)
            cb = QQ(rng.choice([-1, 1]) * rng.randint(1, 40)) / rng.randint(1, 9)
            try:
                S = etale_from_symbol(ca, cb, TRIVIAL_DISC)
                break
            except ValueError:
                continue
        inv = serre_invariant(S.algebra)
        if not classes_equal_Q(inv.pairs(), [(ca, cb), (-1, -1)]):
            bad += 1
    yield bad == 0, f"50 rational instantiations of the trivial-discriminant recipe: {bad} mismatches"


def check_etale_examples():
    S = etale_from_symbol(QQ(-1), QQ(-1), TRIVIAL_DISC)
    yield (S.c, S.A, S.B) == (2, 25, 225), f"(-1,-1): c = {S.c}, A = {S.A}, B = {S.B}"
    yield same_square_class(-S.A, QQ(-1)) and same_square_class(-S.B * (S.A ** 2 - S.B), QQ(-1)), \
        "-A ≡ a and -B(A^2-B) ≡ b"
    S = etale_from_symbol(QQ(2), QQ(3), NONTRIVIAL_DISC)
    yield (S.A, S.B) == (-2, -12), f"(2,3): A = {S.A}, B = {S.B}"
    d = discriminant(S.algebra)
    yield same_square_class(d, QQ(-3)), f"disc class of (2,3) algebra is -3: {d}"
    inv = w2(diagonalize(trace_form(S.algebra)))
    yield classes_equal_Q(inv.pairs(), [(2, 3), (-1, 3)]), "w2 = (2,3) + (-1,3) in Br(Q)"
    try:
        etale_from_symbol(QQ(1), QQ(1), NONTRIVIAL_DISC)
        yield False, "(1,1) accepted"
    except ValueError:
        yield True, "(1,1) nontrivial-discriminant recipe rejected"


def check_trace_form_EAB():
    F, A, B = _generic_symbol_field()
    E = quartic_EAB(A, B, F)
    q = diagonalize(trace_form(E))
    shown = [F(1), A, A * A - B, A * B * (A * A - B)]
    ok = all(same_square_class(u, v) for u, v in zip(q.diagonal, shown))
    yield ok, f"trace form of Y^4 - 2AY^2 + B = {q}"
    yield same_square_class(discriminant(E), B), "discriminant class is B"


def check_octahedral():
    rep = octahedral_quadric_computation()
    yield from _checks(rep)
    yield True, f"MINPOLY {rep.data['minimal polynomial']}"


def check_a4_elliptic():
    rep = a4_elliptic_computation(-1)
    yield from _checks(rep)
    yield True, f"MINPOLY {rep.data['p(Y)']}"


def check_split_residue_sqrt2():
    res = is_split_kx(X, X ** 2 - 4 * X + 2)
    if res.is_split is None:
        yield None, res.describe()
        return
    ok = isinstance(res, NotSplit) and res.verify()
    ok = ok and res.witness.place == X ** 2 - 4 * X + 2
    detail = res.describe("x")
    yield ok and "2+√2 non-square in Q(√2), norm 2" in detail, detail


def check_split_minus_one_x():
    res = is_split_kx(Poly.const(-1, QQ), X)
    if res.is_split is None:
        yield None, res.describe()
        return
    ok = isinstance(res, NotSplit) and res.verify() and res.witness.place == X
    yield ok, res.describe("x")


def check_split_octahedral():
    f, g = -3 * X, X * (X + 27)
    cert = SplitCertificate(Poly.const(3, QQ), Poly.const(1, QQ), X)
    yield verify_split_certificate(f, g, cert), "(-3t)*3^2 + t(t+27)*1^2 = t^2"
    res = is_split_kx(f, g)
    yield res.is_split is True and res.verify(), res.describe("t").replace("SPLIT ", "")


def check_sqrt3_certificate():
    K = QuadExt(QQ, QQ(-3), name="√-3")
    s = K.gen
    f = Poly([144, 0, -3], K)
    g = Poly([192, 0, -3], K)
    cert = SplitCertificate(Poly.const(2, K), Poly.const(s, K), Poly([0, s], K))
    yield verify_split_certificate(f, g, cert), "(144 - 3t^2)2^2 + (192 - 3t^2)(√-3)^2 = (√-3 t)^2"


# ---------------------------------------------------------------------------
# embeddings and compressions
# ---------------------------------------------------------------------------

def _field(n):
    from ..arith import omega_field
    return omega_field(n)


def check_embedding_catalog():
    cases = [("klein", {"a": 1, "b": 1}, None), ("klein", {"a": 2, "b": -1}, None),
             ("z2", {"b": 3}, None)]
    cases += [("dihedral", {"n": n}, None) for n in (3, 4, 5, 6, 8)]
    cases += [("cyclic", {"n": n}, None) for n in (3, 4, 6, 8)]
    cases += [("versal_cyclic", {"n": 4}, None), ("omega_dihedral", {"n": 4, "a": 3}, None)]
    cases += [("s4", {}, _field(4)), ("a4", {}, _field(4)), ("a5", {}, _field(5))]
    for g, params, K in cases:
        E = embedding_catalog(g, params, K)
        rel = verify_relations(E)
        yield bool(rel), f"{g} {params}: order {rel.order} (expected {E.presentation.order})"
    E = klein_embedding(2, -1)
    lam = E.params.get("lambda")
    yield lam == 1, f"Klein (2,-1): lambda = {lam}"
    D = embedding_catalog("dihedral", {"n": 4})
    s, t = D.images["sigma"], D.images["tau"]
    yield s.entries() == (1, -1, 1, 1) and t.entries() == (1, 0, 0, -1), \
        f"dihedral n=4: sigma = {s.to_str()}, tau = {t.to_str()}"
    try:
        embedding_catalog("a5", {}, QQ)
        yield False, "A5 over Q accepted"
    except SideConditionError as exc:
        yield "ω5 required" in str(exc), f"A5 over Q rejected: {exc}"


def check_dihedral_compressions():
    for n in range(3, 9):
        rep = conjugated_compression(n)
        yield rep.ok and rep.degree == n + 1, \
            f"n = {n}: EQUIVARIANT {'yes' if rep.equivariant else 'no'} DEGREE {rep.degree} over base {rep.defined_over_base}"


def check_polyhedral_compressions():
    K4 = _field(4)
    F = s4_compression(K4)
    yield equivariant_check(F, s4_embedding(K4)) and F.degree == 7, "S4 degree 7 map is equivariant over Q(ω4)"
    K5 = _field(5)
    F = a5_compression(K5)
    yield equivariant_check(F, a5_embedding(K5)) and F.degree == 11, "A5 degree 11 map is equivariant over Q(ω5)"
    E = klein_embedding(1, 1)
    yield equivariant_check(power_map(3), E), "Klein cube map (x^3:y^3) is equivariant"


# ---------------------------------------------------------------------------
# curves
# ---------------------------------------------------------------------------

def check_klein_curve():
    h = X ** 2 - 2
    P, Q, alpha = klein_construction_polys(h)
    yield True, f"alpha = {alpha}, P = {P.to_str()}, Q = {Q.to_str()}"
    c = klein_curve(P, Q)
    yield c.conditions.ok, "conditions (i)-(iii) hold"
    yield from _checks(c)
    cls, decision = klein_delta_class(P, Q)
    yield True, f"Delta = {cls}"
    yield decision.is_split is not None, f"(xP, xQ): {decision.describe('x')}"


def check_even_dihedral():
    c = even_dihedral_curve(4, X ** 2 - 2, _field(4))
    yield from _checks(c)
    from ..curves import chebyshev_identity
    yield all(chebyshev_identity(m) for m in range(1, 9)), "T_m identity for m = 1..8"
    yield True, f"DELTA {c.delta_class}"


# ---------------------------------------------------------------------------
# ramification
# ---------------------------------------------------------------------------

def check_crt_m3():
    data = [(QQ(0) + (X - 0) ** 3, (X - 0) ** 4), (QQ(1) + (X - 1) ** 2, (X - 1) ** 3)]
    Q = crt_poly(data)
    yield all(not divmod(Q - r, m)[1] for r, m in data), f"Q = {Q.to_str()}"


def check_ramify_degree():
    spec = RamificationSpec((((2,), 0), ((3,), 1)))
    base = build_ramified_poly(spec)
    bound = max(base.Q.deg, 7)
    from sympy import nextprime
    p = int(nextprime(bound))
    built = build_ramified_poly(spec, p)
    yield built.P.deg == p and built.ok, f"target degree {p}: deg P = {built.P.deg}"


def _sm(m):
    def run():
        rep = sm_cover(m)
        yield from _checks(rep)
        yield from _checks(rep.poly)
        again = sm_cover(m)
        yield again.poly.P == rep.poly.P, f"deterministic P of degree {rep.prime}"
        for beta, part, pat in rep.branches:
            yield True, f"BRANCH {QQ.format(beta)} PATTERN {','.join(map(str, pat))}"
    run.__name__ = f"check_sm_cover_{m}"
    return run


SUITE = [
    ("cyclic-n4-example", check_cyclic_example),
    ("nonsquare-2+sqrt2", check_nonsquare_2_plus_sqrt2),
    ("formal-w2-identities", check_formal_w2),
    ("etale-symbol-recipes", check_etale_recipes),
    ("etale-symbol-examples", check_etale_examples),
    ("trace-form-EAB", check_trace_form_EAB),
    ("octahedral-invariant", check_octahedral),
    ("a4-elliptic-invariant", check_a4_elliptic),
    ("split-x-x2-4x+2", check_split_residue_sqrt2),
    ("split-minus1-x", check_split_minus_one_x),
    ("split-octahedral-certificate", check_split_octahedral),
    ("split-sqrt-3-certificate", check_sqrt3_certificate),
    ("embedding-catalog", check_embedding_catalog),
    ("dihedral-compressions", check_dihedral_compressions),
    ("polyhedral-compressions", check_polyhedral_compressions),
    ("klein-curve", check_klein_curve),
    ("even-dihedral-n4", check_even_dihedral),
    ("crt-m3", check_crt_m3),
    ("ramify-target-degree", check_ramify_degree),
] + [(f"sm-cover-m{m}", _sm(m)) for m in (2, 3, 4, 5)]

CHECKS = dict(SUITE)
