"""Trace forms of étale algebras and their cohomological invariants.

Given a monic separable p over a field F, E = F[Y]/(p) is étale and its
trace form has Gram matrix Tr(y^{i+j}), computed from Newton power sums.
From a diagonalization ⟨a₁, …, aₙ⟩ we read off the discriminant (the
square class of the determinant), w₂ = Σ_{i<j} (a_i, a_j), and Serre's
invariant w₂ + (−2, d).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .arith import Poly, QQ, RatFunc, gcd, sqf_list, squarefree_integer
from .arith.squares import NonSquare, Square, is_square_in_field
from .brauer import BrauerClass, FormalContext, SquareClassBasis, equal_modulo_split, formal


def _field_of(p):
    return p.K


def _one(F):
    return getattr(F, "one", None) or F(1)


def _zero(F):
    z = getattr(F, "zero", None)
    return z if z is not None else F(0)


# ---------------------------------------------------------------------------
# étale algebras and Gram matrices
# ---------------------------------------------------------------------------

class EtaleAlgebra:
    """F[Y]/(p) for a monic separable p."""

    def __init__(self, defining_poly, name="Y"):
        p = defining_poly
        if p.deg < 1:
            raise ValueError("an étale algebra needs a nonconstant polynomial")
        if p.lc != _one(p.K):
            p = p.monic()
        if gcd(p, p.deriv()).deg > 0:
            raise ValueError(f"{p.to_str(name)} is not separable")
        self.poly = p
        self.field = p.K
        self.name = name

    @property
    def dimension(self):
        return self.poly.deg

    def power_sums(self, count=None):
        """Tr(y^k) for k = 0 .. count-1 (default 2n − 1)."""
        n = self.poly.deg
        m = self.poly.c
        F = self.field
        count = 2 * n - 1 if count is None else count
        ps = [F(n)]
        for k in range(1, count):
            s = _zero(F)
            for i in range(1, min(k, n) + 1):
                if k - i > 0:
                    s = s - m[n - i] * ps[k - i]
            if k <= n:
                s = s - m[n - k] * k
            ps.append(s)
        return ps

    def product(self, other):
        return EtaleAlgebra(self.poly * other.poly, self.name)

    def __str__(self):
        return f"{self.field}[{self.name}]/({self.poly.to_str(self.name)})"


class GramMatrix:
    def __init__(self, rows, field):
        self.rows = [list(r) for r in rows]
        self.field = field
        n = len(self.rows)
        for i in range(n):
            if len(self.rows[i]) != n:
                raise ValueError("Gram matrix must be square")
            for j in range(i):
                if self.rows[i][j] != self.rows[j][i]:
                    raise ValueError("Gram matrix must be symmetric")

    @property
    def n(self):
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, GramMatrix) and self.rows == other.rows

    def determinant(self):
        """Gaussian elimination over the field."""
        a = [list(r) for r in self.rows]
        n = self.n
        det = _one(self.field)
        for i in range(n):
            piv = next((r for r in range(i, n) if a[r][i]), None)
            if piv is None:
                return _zero(self.field)
            if piv != i:
                a[i], a[piv] = a[piv], a[i]
                det = -det
            det = det * a[i][i]
            inv = _one(self.field) / a[i][i]
            for r in range(i + 1, n):
                if a[r][i]:
                    m = a[r][i] * inv
                    a[r] = [x - m * y for x, y in zip(a[r], a[i])]
        return det


def trace_form(E):
    """Gram matrix Tr(y^{i+j}) in the basis 1, y, …, y^{n−1}."""
    n = E.dimension
    ps = E.power_sums(2 * n - 1)
    return GramMatrix([[ps[i + j] for j in range(n)] for i in range(n)], E.field)


def _matmul(A, B):
    n, m, k = len(A), len(B[0]), len(B)
    return [[sum((A[i][t] * B[t][j] for t in range(k)), start=A[i][0] * 0) for j in range(m)] for i in range(n)]


def _transpose(A):
    return [list(r) for r in zip(*A)]


@dataclass
class Diagonalization:
    form: "QuadForm"
    transform: list

    def verify(self, G):
        prod = _matmul(_matmul(self.transform, G.rows), _transpose(self.transform))
        n = G.n
        for i in range(n):
            for j in range(n):
                want = self.form.diagonal[i] if i == j else 0
                if prod[i][j] != want:
                    return False
        return True


def diagonalize(G, order=None, with_transform=False):
    """Symmetric Gaussian elimination: T·G·Tᵗ = diag.

    ``order`` permutes the basis first, which changes the pivots but not the
    invariants.  Zero pivots are repaired by adding a later basis vector.
    """
    F = G.field
    n = G.n
    one, zero = _one(F), _zero(F)
    perm = list(order) if order is not None else list(range(n))
    if sorted(perm) != list(range(n)):
        raise ValueError("order must be a permutation")
    A = [[G.rows[perm[i]][perm[j]] for j in range(n)] for i in range(n)]
    T = [[one if perm[i] == j else zero for j in range(n)] for i in range(n)]

    def add_row_col(i, j, m):
        # basis_i += m·basis_j
        A[i] = [x + m * y for x, y in zip(A[i], A[j])]
        for r in range(n):
            A[r][i] = A[r][i] + m * A[r][j]
        T[i] = [x + m * y for x, y in zip(T[i], T[j])]

    def swap(i, j):
        A[i], A[j] = A[j], A[i]
        for r in range(n):
            A[r][i], A[r][j] = A[r][j], A[r][i]
        T[i], T[j] = T[j], T[i]

    for i in range(n):
        if not A[i][i]:
            j = next((j for j in range(i + 1, n) if A[j][j]), None)
            if j is not None:
                swap(i, j)
            else:
                j = next((j for j in range(i + 1, n) if A[i][j]), None)
                if j is None:
                    raise ValueError("singular Gram matrix")
                add_row_col(i, j, one)
        inv = one / A[i][i]
        for j in range(i + 1, n):
            if A[j][i]:
                add_row_col(j, i, -(A[j][i] * inv))
    diag = [A[i][i] for i in range(n)]
    result = Diagonalization(QuadForm(diag, F), T)
    if not result.verify(G):
        raise AssertionError("congruence transform failed to verify")
    return result if with_transform else result.form


# ---------------------------------------------------------------------------
# diagonal forms and invariants
# ---------------------------------------------------------------------------

class QuadForm:
    """A diagonal form ⟨a₁, …, aₙ⟩ over a field or a formal context."""

    def __init__(self, diagonal, field=QQ):
        self.diagonal = tuple(diagonal)
        self.field = field
        if not isinstance(field, FormalContext) and not all(self.diagonal):
            raise ValueError("diagonal entries must be nonzero")

    @classmethod
    def formal(cls, entries, context=None):
        ctx = context or FormalContext()
        return cls([ctx(e) for e in entries], ctx)

    @property
    def rank(self):
        return len(self.diagonal)

    @property
    def is_formal(self):
        return isinstance(self.field, FormalContext)

    def determinant(self):
        if self.is_formal:
            return formal.mul(*self.diagonal)
        out = _one(self.field)
        for a in self.diagonal:
            out = out * a
        return out

    def permuted(self, order):
        return QuadForm([self.diagonal[i] for i in order], self.field)

    def lines(self):
        return [_fmt(self.field, a) for a in self.diagonal]

    def __str__(self):
        return "⟨" + ", ".join(self.lines()) + "⟩"


def _fmt(F, a):
    if isinstance(F, FormalContext):
        return formal.format_word(a)
    if isinstance(a, (int, Fraction)):
        return QQ.format(a)
    return a.to_str() if hasattr(a, "to_str") else str(a)


def w2(q, context=None):
    """Σ_{i<j} (a_i, a_j)."""
    ctx = context or q.field
    return BrauerClass([(a, b) for a, b in combinations(q.diagonal, 2)], ctx)


def discriminant(E):
    """det of the trace Gram matrix (a representative of d_E)."""
    return trace_form(E).determinant()


def serre_invariant(E, form=None):
    """w₂(q_E) + (−2, d_E)."""
    q = form or diagonalize(trace_form(E))
    d = q.determinant()
    F = q.field
    return w2(q) + BrauerClass([(F(-2), d)], F)


def square_class_rep(x):
    """A small representative of the square class of x (for display)."""
    if isinstance(x, (int, Fraction)):
        return Fraction(squarefree_integer(x))
    if isinstance(x, RatFunc) and x.field.constant_field == QQ:
        num = x.num * x.den
        lc, parts = sqf_list(num)
        out = Poly.const(squarefree_integer(lc), QQ)
        for s, e in parts:
            if e % 2:
                out = out * s
        return x.field(out)
    return x


def same_square_class(x, y):
    v = is_square_in_field(x / y)
    if isinstance(v, Square):
        return True
    if isinstance(v, NonSquare):
        return False
    return None


@dataclass(frozen=True)
class InvariantComparison:
    rank: bool
    discriminant: bool
    w2: object  # EqualityProof or None

    @property
    def ok(self):
        return self.rank and self.discriminant is True and self.w2 is not None


def compare_invariants(q1, q2, split_symbols=(), basis=None):
    """Compare rank, discriminant class and w₂ of two diagonal forms."""
    rank = q1.rank == q2.rank
    if q1.is_formal:
        disc = q1.determinant() == q2.determinant()
    else:
        disc = same_square_class(q1.determinant(), q2.determinant())
    proof = equal_modulo_split(w2(q1), w2(q2), split_symbols, basis)
    return InvariantComparison(rank, disc, proof)


# ---------------------------------------------------------------------------
# étale algebras realizing a symbol
# ---------------------------------------------------------------------------

TRIVIAL_DISC = "TrivialDisc"
NONTRIVIAL_DISC = "NonTrivialDisc"


def quartic_EAB(A, B, F, name="Y"):
    """F[Y]/(Y⁴ − 2A·Y² + B)."""
    return EtaleAlgebra(Poly([F(B), 0, F(-2) * A, 0, 1], F), name)


@dataclass
class SymbolAlgebra:
    algebra: EtaleAlgebra
    A: object
    B: object
    a: object
    b: object
    c: object = None


def _pad(E, n):
    F = E.field
    out = E
    c = 0
    while out.dimension < n:
        lin = Poly([F(-c), 1], F)
        if E.poly(F(c)) and gcd(out.poly, lin).deg == 0:
            out = out.product(EtaleAlgebra(lin, E.name))
        c += 1
    return out


def etale_from_symbol(a, b, variant=TRIVIAL_DISC, n=4, field=None):
    """An étale algebra of dimension n whose w₂ encodes the symbol (a, b).

    TrivialDisc: A = −a(bc² − 1)², B = a²(b²c⁴ − 1)² with the smallest
    c ≥ 1 giving an étale algebra.  NonTrivialDisc: A = −a,
    B = −4ba²/(b − 1)², after trading (a, b) for an equal symbol with −b a
    non-square and b ≠ 1.
    """
    if n < 4:
        raise ValueError("dimension must be at least 4")
    F = field or _guess_field(a, b)
    a, b = F(a), F(b)
    if not a or not b:
        raise ValueError("symbol entries must be nonzero")
    if variant == TRIVIAL_DISC:
        for c in range(1, 50):
            A = -a * (b * c * c - 1) ** 2
            B = a * a * (b * b * c ** 4 - 1) ** 2
            if not A or not B or not (A * A - B):
                continue
            try:
                E = quartic_EAB(A, B, F)
            except ValueError:
                continue
            return SymbolAlgebra(_pad(E, n), A, B, a, b, c)
        raise ValueError("degenerate parameters")
    if variant == NONTRIVIAL_DISC:
        for a2, b2 in ((a, b), (b, a), (a, -a * b), (b, -a * b)):
            if b2 == F(1) or not _nonsquare(-b2):
                continue
            A = -a2
            B = F(-4) * b2 * a2 * a2 / (b2 - 1) ** 2
            if not (A * A - B):
                continue
            try:
                E = quartic_EAB(A, B, F)
            except ValueError:
                continue
            return SymbolAlgebra(_pad(E, n), A, B, a2, b2)
        raise ValueError("degenerate parameters: no presentation with −b a non-square and b ≠ 1")
    raise ValueError(f"unknown variant {variant!r}")


def _nonsquare(x):
    try:
        v = is_square_in_field(x)
    except (TypeError, ValueError):
        return True
    return not isinstance(v, Square)


def _guess_field(*xs):
    for x in xs:
        f = getattr(x, "field", None)
        if f is not None:
            return f
    return QQ


# ---------------------------------------------------------------------------
# closed-form invariants of Klein and order-two actions
# ---------------------------------------------------------------------------

def klein_delta(c, d, a, b, context=None):
    """The class (ac, bd) attached to a Klein-four torsor."""
    ctx = context or _guess_field(c, d, a, b)
    if isinstance(ctx, FormalContext):
        return BrauerClass([(formal.mul(ctx(a), ctx(c)), formal.mul(ctx(b), ctx(d)))], ctx)
    return BrauerClass([(ctx(a) * c, ctx(b) * d)], ctx)


def z2_delta(c, b, context=None):
    """The class (c, b) attached to an order-two torsor."""
    ctx = context or _guess_field(c, b)
    return BrauerClass([(c, b)], ctx)
