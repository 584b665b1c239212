"""Finite group actions on the projective line.

Matrices act on P¹ by (x : y) ↦ (a·x + b·y : c·x + d·y), and in the affine
chart x = X/Y as Möbius transformations.  Binary forms of degree d are
stored dehomogenized, F(x, y) = y^d·f(x/y), together with d.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .arith import NumberField, Poly, QQ, QuadExt, RationalFunctionField, gcd
from .arith.cyclotomic import alpha_beta, omega
from .arith.squares import NonSquare, Square, is_square_in_field


class SideConditionError(ValueError):
    """A catalog entry was requested outside its hypotheses (field, split symbol, ...)."""


# ---------------------------------------------------------------------------
# PGL₂ elements
# ---------------------------------------------------------------------------

class ProjMatrix:
    """A 2×2 matrix up to scalars, normalized so the first nonzero entry is 1."""

    __slots__ = ("a", "b", "c", "d", "K", "printed")

    def __init__(self, a, b, c, d, K=QQ):
        a, b, c, d = (K(e) for e in (a, b, c, d))
        self.printed = (a, b, c, d)
        if not (a * d - b * c):
            raise ValueError("singular matrix")
        lead = next(e for e in (a, b, c, d) if e)
        inv = K(1) / lead
        self.a, self.b, self.c, self.d = a * inv, b * inv, c * inv, d * inv
        self.K = K

    @classmethod
    def identity(cls, K=QQ):
        return cls(1, 0, 0, 1, K)

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __mul__(self, o):
        return ProjMatrix(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                          self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d, self.K)

    def inverse(self):
        return ProjMatrix(self.d, -self.b, -self.c, self.a, self.K)

    def __pow__(self, n):
        out = ProjMatrix.identity(self.K)
        base = self if n >= 0 else self.inverse()
        for _ in range(abs(n)):
            out = out * base
        return out

    def __eq__(self, other):
        return isinstance(other, ProjMatrix) and self.entries() == other.entries()

    def __hash__(self):
        return hash(self.entries())

    def is_identity(self):
        return self == ProjMatrix.identity(self.K)

    def order(self, bound=200):
        g = self
        for k in range(1, bound + 1):
            if g.is_identity():
                return k
            g = g * self
        raise ArithmeticError("element of infinite (or very large) order")

    def as_map(self):
        return ProjectiveMap(Poly([self.b, self.a], self.K), Poly([self.d, self.c], self.K), 1)

    def mobius(self, x):
        """Image of x (any ring element, e.g. a rational function)."""
        return (x * self.a + self.b) / (x * self.c + self.d)

    def to_str(self, printed=True):
        a, b, c, d = self.printed if printed else self.entries()
        f = lambda e: e.to_str() if hasattr(e, "to_str") else QQ.format(e)
        return f"[[{f(a)}, {f(b)}], [{f(c)}, {f(d)}]]"

    def __repr__(self):
        return self.to_str()


# ---------------------------------------------------------------------------
# rational self-maps of P¹
# ---------------------------------------------------------------------------

def _ydeg(h, d):
    return d - h.deg if h else None


class ProjectiveMap:
    """(F0 : F1) with F0, F1 coprime binary forms of degree d."""

    __slots__ = ("f0", "f1", "d")

    def __init__(self, f0, f1, d=None, reduce=True):
        K = f0.K if f0.K != QQ else f1.K
        f0, f1 = f0.change_ring(K), f1.change_ring(K)
        if d is None:
            d = max(f0.deg, f1.deg)
        if not f0 and not f1:
            raise ValueError("both forms vanish")
        if reduce:
            ys = [e for e in (_ydeg(f0, d), _ydeg(f1, d)) if e is not None]
            d -= min(ys)
            nz = f0 if f0 else f1
            g = gcd(f0, f1) if f0 and f1 else nz.monic()
            if g.deg > 0:
                f0 = f0.exquo(g)
                f1 = f1.exquo(g)
                d -= g.deg
        self.f0, self.f1, self.d = f0, f1, d

    @classmethod
    def from_forms(cls, c0, c1, K=QQ):
        """From coefficient lists [x^d, x^{d-1}y, …, y^d] (highest x-power first)."""
        d = len(c0) - 1
        return cls(Poly(list(reversed(c0)), K), Poly(list(reversed(c1)), K), d)

    @property
    def K(self):
        return self.f0.K

    @property
    def degree(self):
        return self.d

    def coefficients(self, i):
        """Coefficients of F_i from x^d down to y^d."""
        h = self.f0 if i == 0 else self.f1
        return [h[j] for j in range(self.d, -1, -1)]

    def compose(self, g):
        """self ∘ g."""
        if g.K == QQ and self.K != QQ:
            g = ProjectiveMap(g.f0.change_ring(self.K), g.f1.change_ring(self.K), g.d, reduce=False)
        D = self.d * g.d

        def hom(h):
            out = Poly([], g.K)
            for i in range(self.d + 1):
                if h[i]:
                    out = out + g.f0 ** i * g.f1 ** (self.d - i) * h[i]
            return out

        return ProjectiveMap(hom(self.f0.change_ring(g.K)), hom(self.f1.change_ring(g.K)), D)

    def __call__(self, x):
        return self.f0(x) / self.f1(x)

    def same_map(self, other):
        """Cross-multiplication test on coprime representatives."""
        if self.d != other.d:
            return False
        return self.f0 * other.f1 == self.f1 * other.f0

    def scaled(self, c):
        return ProjectiveMap(self.f0 * c, self.f1 * c, self.d, reduce=False)

    def conjugate(self, M):
        """M ∘ self ∘ M⁻¹."""
        return M.as_map().compose(self.compose(M.inverse().as_map()))

    def to_lines(self, var=("x", "y")):
        return [_form_str(self.coefficients(i), var) for i in (0, 1)]

    def __str__(self):
        a, b = self.to_lines()
        return f"({a} : {b})"


def _form_str(coeffs, var):
    d = len(coeffs) - 1
    x, y = var
    terms = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        px, py = d - i, i
        mon = "*".join(m for m in ((f"{x}^{px}" if px > 1 else x) if px else "",
                                    (f"{y}^{py}" if py > 1 else y) if py else "") if m)
        cs = c.to_str() if hasattr(c, "to_str") else QQ.format(c)
        if mon:
            if cs == "1":
                cs = ""
            elif cs == "-1":
                cs = "-"
            elif "+" in cs[1:] or "-" in cs[1:]:
                cs = f"({cs})*"
            else:
                cs += "*"
            terms.append(cs + mon)
        else:
            terms.append(cs)
    out = " + ".join(terms).replace("+ -", "- ")
    return out or "0"


# ---------------------------------------------------------------------------
# presentations and embeddings
# ---------------------------------------------------------------------------

ORDERS = {"Klein": 4, "A4": 12, "S4": 24, "A5": 60}


@dataclass(frozen=True)
class GroupPresentation:
    group: str  # "Cyclic", "Dihedral", "Klein", "A4", "S4", "A5"
    n: int
    generators: tuple
    relators: tuple  # each a tuple of (generator index, exponent)

    @property
    def order(self):
        if self.group == "Cyclic":
            return self.n
        if self.group == "Dihedral":
            return 2 * self.n
        return ORDERS[self.group]

    def label(self):
        if self.group in ("Cyclic", "Dihedral"):
            return f"{self.group}({self.n})"
        return self.group


def cyclic(n):
    return GroupPresentation("Cyclic", n, ("sigma",), (((0, n),),))


def dihedral(n):
    return GroupPresentation("Dihedral", n, ("sigma", "tau"),
                             (((0, n),), ((1, 2),), ((0, 1), (1, 1), (0, 1), (1, 1))))


def klein():
    return GroupPresentation("Klein", 2, ("e1", "e2"),
                             (((0, 2),), ((1, 2),), ((0, 1), (1, 1), (0, 1), (1, 1))))


def polyhedral(name, p, q, r, k=1):
    """⟨s, t | s^p = t^q = (s^k·t)^r = 1⟩."""
    return GroupPresentation(name, 0, ("s", "t"),
                             (((0, p),), ((1, q),), tuple([(0, k), (1, 1)] * r)))


@dataclass
class EmbeddingInstance:
    presentation: GroupPresentation
    images: dict
    field: object
    params: dict = field(default_factory=dict)
    name: str = ""

    def generators(self):
        return [self.images[g] for g in self.presentation.generators]

    def evaluate(self, word):
        gens = self.generators()
        out = ProjMatrix.identity(self.field)
        for i, e in word:
            out = out * gens[i] ** e
        return out

    def elements(self, bound=200):
        return closure(self.generators(), bound)


def closure(gens, bound=200):
    """All products of the generators (breadth first)."""
    K = gens[0].K
    e = ProjMatrix.identity(K)
    seen = {e: None}
    frontier = [e]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                p = g * h
                if p not in seen:
                    seen[p] = None
                    nxt.append(p)
                    if len(seen) > bound:
                        raise ArithmeticError("generated group exceeds the bound")
        frontier = nxt
    return list(seen)


@dataclass(frozen=True)
class RelationReport:
    ok: bool
    order: int
    failing: tuple = ()

    def __bool__(self):
        return self.ok


def verify_relations(E):
    """Every relator is trivial and the generated group has the advertised order."""
    failing = tuple(r for r in E.presentation.relators if not E.evaluate(r).is_identity())
    try:
        order = len(E.elements(bound=4 * E.presentation.order + 10))
    except ArithmeticError:
        order = -1
    return RelationReport(not failing and order == E.presentation.order, order, failing)


# ---------------------------------------------------------------------------
# the catalog
# ---------------------------------------------------------------------------

def _is_square(x):
    v = is_square_in_field(x)
    if not isinstance(v, (Square, NonSquare)):
        raise SideConditionError(f"could not decide whether {x} is a square")
    return isinstance(v, Square)


def _symbol_split(a, b, K):
    from .brauer.hilbert import is_split_Q
    from .brauer.split import _constant_split
    if K == QQ:
        return is_split_Q(a, b)
    return _constant_split(a, b, K)[0] is True


def find_lambda(a, b, K, bound=None):
    """λ with λ² − a ≡ b mod squares (λ² ≠ a), searched over small halves."""
    from . import config
    bound = bound or config.active().lambda_search_bound
    cands = sorted({QQ(n) / 2 for n in range(-2 * bound, 2 * bound + 1)}, key=lambda q: (abs(q), q < 0))
    for lam in cands:
        lam = K(lam)
        v = lam * lam - a
        if v and _is_square(v / b):
            return lam
    if K == QQ:
        lam = _conic_lambda(QQ(a), QQ(b))
        if lam is not None:
            return lam
    raise SideConditionError(f"no λ with λ² − a ≡ b found within the search bound ({a}, {b})")


def _conic_lambda(a, b):
    """λ = X/Z from an integral point of X² − a·Z² − b·S² = 0 (Legendre's method, via sympy)."""
    import sympy
    from sympy.solvers.diophantine.diophantine import diop_ternary_quadratic
    v0, v1, v2 = sympy.symbols("v0 v1 v2", integer=True)
    m = a.denominator * b.denominator
    eq = m * v0 ** 2 - a.numerator * b.denominator * v1 ** 2 - b.numerator * a.denominator * v2 ** 2
    X, Z, S = diop_ternary_quadratic(eq)
    if X is None or not Z or not S:
        return None
    lam = QQ(int(X)) / int(Z)
    return lam if _is_square((lam * lam - a) / b) else None


def klein_embedding(a, b, K=QQ):
    a, b = K(a), K(b)
    if not a or not b:
        raise SideConditionError("a and b must be nonzero")
    if not _symbol_split(a, b, K):
        raise SideConditionError("(a,b) not split")
    params = {"a": a, "b": b}
    if _is_square(a):
        imgs = {"e1": ProjMatrix(0, b, 1, 0, K), "e2": ProjMatrix(-1, 0, 0, 1, K)}
        case = "a square"
    elif _is_square(b):
        imgs = {"e1": ProjMatrix(-1, 0, 0, 1, K), "e2": ProjMatrix(0, a, 1, 0, K)}
        case = "b square"
    else:
        lam = find_lambda(a, b, K)
        params["lambda"] = lam
        imgs = {"e1": ProjMatrix(lam, -a, 1, -lam, K), "e2": ProjMatrix(0, a, 1, 0, K)}
        case = "a, b non-squares"
    params["case"] = case
    return EmbeddingInstance(klein(), imgs, K, params, "klein")


def z2_embedding(b, K=QQ):
    b = K(b)
    if not b:
        raise SideConditionError("b must be nonzero")
    return EmbeddingInstance(cyclic(2), {"sigma": ProjMatrix(0, b, 1, 0, K)}, K, {"b": b}, "rho_b")


def _alpha(n, K):
    try:
        return alpha_beta(n, None if K is None else K)
    except ValueError as exc:
        raise SideConditionError(f"α_{n} required") from exc


def dihedral_sigma(n, K=None):
    K, al, be = _alpha(n, K)
    return K, al, be, ProjMatrix(al + 1, be, 1, al + 1, K)


def dihedral_embedding(n, K=None):
    K, al, be, s = dihedral_sigma(n, K)
    return EmbeddingInstance(dihedral(n), {"sigma": s, "tau": ProjMatrix(1, 0, 0, -1, K)}, K,
                             {"alpha": al, "beta": be}, "dihedral")


def dihedral_general_embedding(n, x, y, K=None):
    K, al, be, s = dihedral_sigma(n, K)
    x, y = K(x), K(y)
    a = x * x - be * y * y
    if not a:
        raise SideConditionError("x² − β y² must be nonzero")
    tau = ProjMatrix(x, -y * be, y, -x, K)
    return EmbeddingInstance(dihedral(n), {"sigma": s, "tau": tau}, K,
                             {"alpha": al, "beta": be, "a": a, "x": x, "y": y}, "dihedral_general")


def cyclic_embedding(n, K=None):
    K, al, be, s = dihedral_sigma(n, K)
    return EmbeddingInstance(cyclic(n), {"sigma": s}, K, {"alpha": al, "beta": be}, "cyclic")


def _omega(n, K):
    try:
        return omega(n, K)
    except ValueError as exc:
        raise SideConditionError(f"ω{n} required") from exc


def versal_cyclic_embedding(n, K=None):
    K, w = _omega(n, K)
    return EmbeddingInstance(cyclic(n), {"sigma": ProjMatrix(w, 0, 0, 1, K)}, K, {"omega": w}, "versal_cyclic")


def omega_dihedral_embedding(n, a=1, K=None):
    K, w = _omega(n, K)
    a = K(a)
    return EmbeddingInstance(dihedral(n), {"sigma": ProjMatrix(w, 0, 0, 1, K), "tau": ProjMatrix(0, a, 1, 0, K)},
                             K, {"omega": w, "a": a}, "omega_dihedral")


def _require(n, K):
    if K is None or K == QQ:
        if n > 2:
            raise SideConditionError(f"ω{n} required")
    return _omega(n, K)


def s4_embedding(K=None):
    K, i = _omega(4, K) if K is not None else _omega(4, None)
    g1 = ProjMatrix(i, 0, 0, 1, K)
    g2 = ProjMatrix(i, i, -1, 1, K)
    return EmbeddingInstance(polyhedral("S4", 4, 3, 2), {"s": g1, "t": g2}, K, {"omega": i}, "S4")


def a4_embedding(K=None):
    S = s4_embedding(K)
    g1, g2 = S.images["s"], S.images["t"]
    return EmbeddingInstance(polyhedral("A4", 2, 3, 3), {"s": g1 * g1, "t": g2}, S.field, S.params, "A4")


def a5_embedding(K=None):
    K, w = _omega(5, K) if K is not None else _omega(5, None)
    c = w + K(1) / w
    g1 = ProjMatrix(w, 0, 0, 1, K)
    g2 = ProjMatrix(c, 1, 1, -c, K)
    return EmbeddingInstance(polyhedral("A5", 5, 2, 3, k=2), {"s": g1, "t": g2}, K, {"omega": w}, "A5")


def embedding_catalog(group, params=None, field=None):
    """Look up a named embedding of a finite group into PGL2."""
    params = dict(params or {})
    K = field
    g = group.lower()
    if g == "klein":
        return klein_embedding(params["a"], params["b"], K or QQ)
    if g in ("z2", "rho_b"):
        return z2_embedding(params["b"], K or QQ)
    if g == "dihedral":
        return dihedral_embedding(params["n"], K)
    if g == "dihedral_general":
        return dihedral_general_embedding(params["n"], params["x"], params["y"], K)
    if g == "cyclic":
        return cyclic_embedding(params["n"], K)
    if g == "versal_cyclic":
        return versal_cyclic_embedding(params["n"], K)
    if g == "omega_dihedral":
        return omega_dihedral_embedding(params["n"], params.get("a", 1), K)
    if g in ("s4", "a4", "a5"):
        if K is None or K == QQ or (isinstance(K, NumberField) and K.degree == 1):
            if K is not None:
                raise SideConditionError(f"ω{5 if g == 'a5' else 4} required")
        builder = {"s4": s4_embedding, "a4": a4_embedding, "a5": a5_embedding}[g]
        return builder(K)
    raise ValueError(f"unknown group {group!r}")


# ---------------------------------------------------------------------------
# equivariance, compressions and quotient maps
# ---------------------------------------------------------------------------

def equivariant_check(F, E):
    """F ∘ g = g ∘ F for every generator g (cross-multiplication)."""
    for g in E.generators():
        gm = g.as_map()
        if not F.compose(gm).same_map(gm.compose(F)):
            return False
    return True


@dataclass(frozen=True)
class CompressionReport:
    map: ProjectiveMap
    degree: int
    defined_over_base: bool
    equivariant: bool

    @property
    def ok(self):
        return self.defined_over_base and self.equivariant


def conjugated_compression(n, K=None, check=True):
    """Q∘(x^{n+1} : y^{n+1})∘Q⁻¹ for the standard dihedral embedding.

    Expanded with √β as a formal symbol: in
    ((x+√β·y)^{n+1} + (x−√β·y)^{n+1} : β^{−1/2}((x+√β·y)^{n+1} − (x−√β·y)^{n+1}))
    the odd powers of √β cancel in the first form and the even ones in the
    second, leaving coefficients in the base field.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    E = dihedral_embedding(n, K)
    K, be = E.field, E.params["beta"]
    R = QuadExt(K, be, name=f"√β{n}", check=False)
    s = R.gen
    x = Poly.x(R)
    plus = (x + s) ** (n + 1)
    minus = (x - s) ** (n + 1)
    ssum, sdiff = plus + minus, plus - minus
    over_base = all(not c.v for c in ssum.c) and all(not c.u for c in sdiff.c)
    f0 = Poly([c.u for c in ssum.c], K)
    f1 = Poly([c.v for c in sdiff.c], K)
    F = ProjectiveMap(f0, f1, n + 1)
    eq = equivariant_check(F, E) if check else None
    return CompressionReport(F, F.degree, over_base, eq)


def binomial_compression(n, K=None):
    """The same map written out with binomial coefficients (an independent route)."""
    E = dihedral_embedding(n, K)
    K, be = E.field, E.params["beta"]
    c0 = [K(0)] * (n + 2)
    c1 = [K(0)] * (n + 2)
    for k in range(n + 2):
        if k % 2 == 0:
            c0[n + 1 - k] = K(2 * comb(n + 1, k)) * be ** (k // 2)
        else:
            c1[n + 1 - k] = K(2 * comb(n + 1, k)) * be ** ((k - 1) // 2)
    return ProjectiveMap(Poly(c0, K), Poly(c1, K), n + 1)


def power_map(e, K=QQ):
    """(x^e : y^e)."""
    return ProjectiveMap(Poly.monomial(e, 1, K), Poly.const(1, K), e)


def s4_compression(K=QQ):
    """(7x⁴y³ + y⁷ : −x⁷ − 7x³y⁴)."""
    return ProjectiveMap.from_forms([0, 0, 0, 7, 0, 0, 0, 1], [-1, 0, 0, 0, -7, 0, 0, 0], K)


def a5_compression(K=QQ):
    """(x¹¹ + 66x⁶y⁵ − 11xy¹⁰ : −11x¹⁰y − 66x⁵y⁶ + y¹¹)."""
    c0 = [1, 0, 0, 0, 0, 66, 0, 0, 0, 0, -11, 0]
    c1 = [0, -11, 0, 0, 0, 0, -66, 0, 0, 0, 0, 1]
    return ProjectiveMap.from_forms(c0, c1, K)


def invariant_quotient_map(E_or_elements, K=None, var="x"):
    """Orbit-mean of the first nonconstant elementary symmetric function.

    For a finite group of Möbius transformations the orbit {g·x} gives
    invariant symmetric functions; the first nonconstant e_k, divided by
    C(N, k), is returned as a rational function in ``var``.
    """
    elems = E_or_elements.elements() if isinstance(E_or_elements, EmbeddingInstance) else list(E_or_elements)
    K = K or elems[0].K
    F = RationalFunctionField(K, var)
    x = F.gen
    orbit = [g.mobius(x) for g in elems]
    N = len(orbit)
    Y = Poly.x(F)
    prod = Poly.const(F.one, F)
    for o in orbit:
        prod = prod * (Y - o)
    for k in range(1, N + 1):
        e = prod[N - k] * (-1) ** k
        if not e.is_constant():
            t = e / comb(N, k)
            for g in elems:
                assert t.compose(g.mobius(x)) == t
            return t
    raise AssertionError("all symmetric functions are constant")


def descend_mobius(M, quotient):
    """The Möbius map φ with quotient∘M = φ∘quotient, or None.

    ``quotient`` is a rational function invariant under a normal subgroup
    normalized by M; φ is fitted on three points and verified symbolically.
    """
    F = quotient.field
    K = F.constant_field
    x = F.gen
    lhs = quotient.compose(M.mobius(x))
    pts = []
    u = 0
    while len(pts) < 3 and u < 60:
        u += 1
        uu = K(u)
        try:
            X, Yv = quotient(uu), lhs(uu)
        except ZeroDivisionError:
            continue
        if all(X != p[0] for p in pts):
            pts.append((X, Yv))
    if len(pts) < 3:
        return None
    phi = _mobius_through(pts, K)
    if phi is None or phi.mobius(quotient) != lhs:
        return None
    return phi


def _mobius_through(pts, K):
    # solve (a X + b) - Y (c X + d) = 0 for three points; nullspace of a 3x4 system
    rows = [[X, K(1), -Y * X, -Y] for X, Y in pts]
    sol = _nullspace_vector(rows, K)
    if sol is None:
        return None
    try:
        return ProjMatrix(*sol, K)
    except ValueError:
        return None


def _nullspace_vector(rows, K):
    m = [list(r) for r in rows]
    ncol = len(m[0])
    piv_cols = []
    r = 0
    for c in range(ncol):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = K(1) / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        piv_cols.append(c)
        r += 1
    free = [c for c in range(ncol) if c not in piv_cols]
    if not free:
        return None
    fc = free[0]
    v = [K(0)] * ncol
    v[fc] = K(1)
    for i, c in enumerate(piv_cols):
        v[c] = -m[i][fc]
    return v
