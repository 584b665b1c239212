"""Certified square tests in every field of a tower.

A verdict is one of

* :class:`Square` carrying a root r with r·r = β,
* :class:`NonSquare` carrying a witness that can be re-checked,
* :class:`ProbablySquare` when no witness was found and the root could not be
  produced within the effort bound.

For number fields the witness is a prime p with a simple root r of the
minimal polynomial mod p such that β(r) is a non-residue mod p.  That prime
has residue field F_p, so a square in K would reduce to a square there.
Roots are reconstructed exactly by splitting Y² − β over K.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from sympy import nextprime

from .. import config
from .numberfield import NFElem, NumberField
from .poly import Poly, discriminant, sqf_list
from .primefield import PFElem, PrimeField
from .quadext import QuadElem
from .ratfunc import RatFunc
from .rational import QQ, rational_sqrt


# ---------------------------------------------------------------------------
# verdicts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Square:
    root: object
    is_square = True

    def verify(self, beta):
        return self.root * self.root == beta

    def describe(self):
        return f"square of {_fmt(self.root)}"


@dataclass(frozen=True)
class NonSquare:
    witness: object
    is_square = False

    def verify(self, beta):
        return self.witness.recheck(beta)

    def describe(self):
        return self.witness.describe()


@dataclass(frozen=True)
class ProbablySquare:
    confidence: str
    is_square = None

    def verify(self, beta):
        return False

    def describe(self):
        return f"probably a square ({self.confidence})"


def _fmt(x):
    f = getattr(getattr(x, "field", None), "format", None)
    return f(x) if f else str(x)


# ---------------------------------------------------------------------------
# witnesses
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ModularWitness:
    """β reduces to the non-residue ``value`` mod ``prime`` (θ ↦ ``root``)."""

    prime: int
    root: object  # int for number fields, None for Q
    value: int

    def recheck(self, beta):
        p = self.prime
        F = PrimeField(p)
        if isinstance(beta, NFElem):
            m = beta.field.min_poly
            if self.root is None or F(int(_reduce(m, self.root, p))) != 0:
                return False
            if _reduce_q(discriminant(m), p) is None or not _reduce_q(discriminant(m), p):
                return False
            v = _reduce(beta.as_poly(), self.root, p)
        else:
            v = _reduce_q(QQ(beta), p)
        return v is not None and v == self.value and F(v).legendre() == -1

    def describe(self):
        if self.root is None:
            return f"non-residue {self.value} mod {self.prime}"
        return f"non-residue {self.value} mod {self.prime} at θ ≡ {self.root}"


@dataclass(frozen=True)
class NormWitness:
    norm: object
    inner: NonSquare

    def recheck(self, beta):
        return beta.norm() == self.norm and self.inner.verify(self.norm)

    def describe(self):
        return f"norm {_fmt(self.norm)} is a non-square ({self.inner.describe()})"


@dataclass(frozen=True)
class OddValuationWitness:
    """A squarefree factor occurring to an odd power in numerator or denominator."""

    factor: Poly
    multiplicity: int

    def recheck(self, beta):
        for part in (beta.num, beta.den):
            _, parts = sqf_list(part) if part.deg > 0 else (None, [])
            for f, e in parts:
                if e == self.multiplicity and f == self.factor:
                    return e % 2 == 1
        return False

    def describe(self):
        return f"factor {self.factor} occurs to the odd power {self.multiplicity}"


@dataclass(frozen=True)
class ConstantWitness:
    constant: object
    inner: NonSquare

    def recheck(self, beta):
        return beta.num.lc == self.constant and self.inner.verify(self.constant)

    def describe(self):
        return f"leading constant {_fmt(self.constant)} is a non-square ({self.inner.describe()})"


@dataclass(frozen=True)
class HalvesWitness:
    """u + v√D square forces (u ± n)/2 to be a square in the base (n² = norm)."""

    n: object
    verdicts: tuple

    def recheck(self, beta):
        if self.n * self.n != beta.norm():
            return False
        for sign, v in zip((1, -1), self.verdicts):
            half = (beta.u + sign * self.n) / 2
            if not half:
                half = (beta.u - sign * self.n) / (2 * beta.field.D)
            if not (isinstance(v, NonSquare) and v.verify(half)):
                return False
        return True

    def describe(self):
        return "neither (u + n)/2 nor (u - n)/2 is a square in the base"


@dataclass(frozen=True)
class IrreducibleWitness:
    """Y² − β has no root in K (exact factorization)."""

    field: object

    def recheck(self, beta):
        return _nf_sqrt_exact(beta) is None

    def describe(self):
        return f"Y^2 - β is irreducible over {self.field}"


@dataclass(frozen=True)
class EulerWitness:
    prime: int
    value: int

    def recheck(self, beta):
        return beta.v == self.value and beta.legendre() == -1

    def describe(self):
        return f"{self.value} is a non-residue mod {self.prime}"


# ---------------------------------------------------------------------------
# reductions mod p
# ---------------------------------------------------------------------------

def _reduce_q(q, p):
    q = Fraction(q)
    if q.denominator % p == 0:
        return None
    return q.numerator * pow(q.denominator, -1, p) % p


def _reduce(poly, r, p):
    """poly(r) mod p for a rational polynomial, or None if a denominator vanishes."""
    acc = 0
    for a in reversed(poly.c):
        ra = _reduce_q(a, p)
        if ra is None:
            return None
        acc = (acc * r + ra) % p
    return acc


def _good_places(K, limit):
    """Yield (p, r) with r a simple root of min_poly mod p, over the first ``limit`` good primes."""
    m = K.min_poly
    disc = discriminant(m)
    count = 0
    p = 2
    while count < limit:
        p = nextprime(p)
        dp = _reduce_q(disc, p)
        if dp is None or dp == 0:
            continue
        if any(_reduce_q(a, p) is None for a in m.c):
            continue
        roots = [r for r in range(p) if _reduce(m, r, p) == 0]
        if not roots:
            continue
        count += 1
        for r in roots:
            yield p, r


def _rational_witness(q, limit):
    n = q.numerator * q.denominator
    p = 2
    for _ in range(limit):
        p = nextprime(p)
        if n % p == 0:
            continue
        if PrimeField(p)(n).legendre() == -1:
            return ModularWitness(p, None, n % p * pow(q.denominator ** 2, -1, p) % p)
    return None


def _nf_witness(beta, limit):
    K = beta.field
    poly = beta.as_poly()
    for p, r in _good_places(K, limit):
        v = _reduce(poly, r, p)
        if v is None or v == 0:
            continue
        if PrimeField(p)(v).legendre() == -1:
            return ModularWitness(p, r, v)
    return None


# ---------------------------------------------------------------------------
# exact roots
# ---------------------------------------------------------------------------

def _nf_sqrt_exact(beta):
    K = beta.field
    if not any(beta.c[1:]):
        r = rational_sqrt(beta.c[0])
        if r is not None:
            return K(r)
    if K.degree == 2:
        # γ² = β gives N(γ) = ±√N(β) and Tr(γ)² = Tr(β) + 2N(γ); then γ = (β + N(γ))/Tr(γ)
        nb = beta.norm()
        s = rational_sqrt(nb)
        if s is None:
            return None
        for n in (s, -s):
            t = rational_sqrt(beta.trace() + 2 * n)
            if t:
                g = (beta + n) / t
                if g * g == beta:
                    return g
        # fall through for the degenerate trace-zero case
    from .factor import factor_over_nf
    Y2 = Poly([-beta, 0, 1], K)
    _, facs = factor_over_nf(Y2, K)
    for f, _ in facs:
        if f.deg == 1:
            g = -f.c[0]
            if g * g == beta:
                return g
    return None


def _poly_sqrt_parts(p):
    """(constant, root) with p = constant * root², or None if p is not a constant times a square."""
    lc, parts = sqf_list(p)
    root = Poly.const(1, p.K)
    for f, e in parts:
        if e % 2:
            return None, f, e
        root = root * f ** (e // 2)
    return lc, root, None


# ---------------------------------------------------------------------------
# the dispatcher
# ---------------------------------------------------------------------------

def is_square_in_field(beta, K=None):
    """Decide whether β is a square in its field (``K`` is informational)."""
    if isinstance(beta, bool):
        raise TypeError("bool is not a field element")
    if isinstance(beta, (int, Fraction)):
        return _square_q(Fraction(beta))
    if not beta:
        raise ValueError("square class of zero is undefined")
    if isinstance(beta, NFElem):
        return _square_nf(beta)
    if isinstance(beta, RatFunc):
        return _square_ratfunc(beta)
    if isinstance(beta, QuadElem):
        return _square_quad(beta)
    if isinstance(beta, PFElem):
        if beta.legendre() == -1:
            return NonSquare(EulerWitness(beta.field.p, beta.v))
        return Square(beta.sqrt())
    raise TypeError(f"unsupported field element {beta!r}")


def _square_q(q):
    if q == 0:
        raise ValueError("square class of zero is undefined")
    r = rational_sqrt(q)
    if r is not None:
        return Square(r)
    w = _rational_witness(q, 10 * config.active().witness_primes_extended)
    if w is None:  # pragma: no cover - quadratic reciprocity guarantees a witness
        return ProbablySquare("no witness prime found")
    return NonSquare(w)


def _square_nf(beta):
    cfg = config.active()
    if beta.field.degree == 1:
        v = _square_q(beta.c[0])
        return Square(beta.field(v.root)) if isinstance(v, Square) else v
    w = _nf_witness(beta, cfg.witness_primes)
    if w is not None:
        return NonSquare(w)
    try:
        root = _nf_sqrt_exact(beta)
    except ArithmeticError:
        return ProbablySquare(f"no witness among {cfg.witness_primes} primes; root reconstruction exhausted")
    if root is not None:
        return Square(root)
    w = _nf_witness(beta, cfg.witness_primes_extended)
    if w is not None:
        return NonSquare(w)
    return NonSquare(IrreducibleWitness(beta.field))


def _square_ratfunc(beta):
    F = beta.field
    K = F.constant_field
    roots = []
    c = K.one
    for part, sign in ((beta.num, 1), (beta.den, -1)):
        lc, root, bad = _poly_sqrt_parts(part)
        if bad is not None:
            return NonSquare(OddValuationWitness(root, bad))
        roots.append(root)
        c = c * lc if sign == 1 else c / lc
    v = is_square_in_field(K(c))
    if isinstance(v, NonSquare):
        return NonSquare(ConstantWitness(beta.num.lc, v))
    if isinstance(v, ProbablySquare):
        return v
    r = F.frac(roots[0] * v.root, roots[1])
    assert r * r == beta
    return Square(r)


def _square_quad(beta):
    F = beta.field
    base = F.base
    if not beta.v:
        v = is_square_in_field(beta.u)
        if isinstance(v, Square):
            return Square(F(v.root))
        w = is_square_in_field(beta.u / F.D)
        if isinstance(w, Square):
            return Square(F.elem(0, w.root))
        if isinstance(v, ProbablySquare) or isinstance(w, ProbablySquare):
            return ProbablySquare("undecided in the base field")
        return NonSquare(HalvesWitness(beta.u, (v, w)))
    N = beta.norm()
    vn = is_square_in_field(N)
    if isinstance(vn, NonSquare):
        return NonSquare(NormWitness(N, vn))
    if isinstance(vn, ProbablySquare):
        return vn
    n = vn.root
    verdicts = []
    for sign in (1, -1):
        X = (beta.u + sign * n) / 2
        if X:
            vx = is_square_in_field(X)
            if isinstance(vx, Square):
                x = vx.root
                y = beta.v / (2 * x)
                r = F.elem(x, y)
                if r * r == beta:
                    return Square(r)
        else:
            vx = is_square_in_field((beta.u - sign * n) / (2 * F.D))
            if isinstance(vx, Square):
                r = F.elem(0, vx.root)
                if r * r == beta:
                    return Square(r)
        verdicts.append(vx)
    if any(isinstance(v, ProbablySquare) for v in verdicts):
        return ProbablySquare("undecided in the base field")
    return NonSquare(HalvesWitness(n, tuple(verdicts)))


def is_square(beta):
    """Boolean convenience wrapper; raises on an inconclusive verdict."""
    v = is_square_in_field(beta)
    if isinstance(v, ProbablySquare):
        raise ArithmeticError(v.describe())
    return v.is_square


def sqrt(beta):
    v = is_square_in_field(beta)
    if not isinstance(v, Square):
        raise ArithmeticError(f"{beta} is not a certified square")
    return v.root
