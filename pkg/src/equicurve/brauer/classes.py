"""Quaternion symbols, Brauer classes in Br₂ and square-class bases."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import sympy
from sympy import factorint

from ..arith import NFElem, NumberField, Poly, QQ, RatFunc, RationalFunctionField
from ..arith.factor import factor
from ..arith.squares import Square, is_square_in_field
from . import formal
from .formal import FormalContext, MINUS_ONE


class ConcreteClassError(TypeError):
    """A formal-only operation was asked of a concrete class."""


def _fmt(ctx, x):
    if isinstance(ctx, FormalContext):
        return formal.format_word(x)
    f = getattr(ctx, "format", None)
    if f is not None:
        try:
            return f(ctx(x))
        except (TypeError, ValueError):
            pass
    if isinstance(x, Fraction):
        return QQ.format(x)
    to_str = getattr(x, "to_str", None)
    return to_str() if to_str else str(x)


@dataclass(frozen=True)
class QuaternionSymbol:
    a: object
    b: object

    def key(self):
        ka, kb = _skey(self.a), _skey(self.b)
        return (ka, kb) if ka <= kb else (kb, ka)

    def to_str(self, ctx=None):
        return f"({_fmt(ctx, self.a)}, {_fmt(ctx, self.b)})"


def _skey(x):
    if isinstance(x, frozenset):
        return "w:" + formal.format_word(x)
    if isinstance(x, RatFunc):
        return f"r:{x.num.c}/{x.den.c}"
    if isinstance(x, NFElem):
        return f"n:{x.c}"
    return f"{type(x).__name__}:{x}"


class BrauerClass:
    """A sum of quaternion symbols, reduced mod 2 on insertion.

    ``context`` is a :class:`FormalContext` (entries are words) or a field
    (entries are nonzero field elements).
    """

    def __init__(self, symbols=(), context=None):
        self.context = context if context is not None else QQ
        seen = {}
        for s in symbols:
            if not isinstance(s, QuaternionSymbol):
                a, b = s
                s = QuaternionSymbol(self._coerce(a), self._coerce(b))
            if not isinstance(self.context, FormalContext) and (not s.a or not s.b):
                raise ValueError("quaternion symbol with a zero entry")
            k = s.key()
            if k in seen:
                del seen[k]
            else:
                seen[k] = s
        self.symbols = tuple(seen.values())

    def _coerce(self, x):
        ctx = self.context
        if isinstance(ctx, FormalContext):
            return ctx(x)
        try:
            return ctx(x)
        except (TypeError, ValueError):
            return x

    @classmethod
    def symbol(cls, a, b, context=None):
        return cls([(a, b)], context)

    @property
    def is_formal(self):
        return isinstance(self.context, FormalContext)

    def __add__(self, other):
        if isinstance(other, (int,)) and other == 0:
            return self
        return BrauerClass(self.symbols + other.symbols, self.context)

    __radd__ = __add__

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def pairs(self):
        return [(s.a, s.b) for s in self.symbols]

    def canonical_form(self):
        if not self.is_formal:
            raise ConcreteClassError("use concrete decision procedures")
        return formal.canonical(self.pairs(), self.context.minus_one)

    def normalize(self):
        """Canonical formal representative (formal context only)."""
        form = self.canonical_form()
        return BrauerClass([(formal.word(g), formal.word(h)) for g, h in sorted(form)], self.context)

    def is_zero(self):
        if self.is_formal:
            return not self.canonical_form()
        return not self.symbols

    def __eq__(self, other):
        if not isinstance(other, BrauerClass):
            if other == 0:
                return self.is_zero()
            return NotImplemented
        if self.is_formal and other.is_formal:
            return self.canonical_form() == other.canonical_form()
        return {s.key() for s in self.symbols} == {s.key() for s in other.symbols}

    def __hash__(self):
        if self.is_formal:
            return hash(self.canonical_form())
        return hash(frozenset(s.key() for s in self.symbols))

    def lines(self):
        return [s.to_str(self.context) for s in self.symbols]

    def __str__(self):
        return " + ".join(self.lines()) if self.symbols else "0"

    def __repr__(self):
        return f"BrauerClass({self})"

    def map_entries(self, fn, context):
        return BrauerClass([(fn(a), fn(b)) for a, b in self.pairs()], context)


# ---------------------------------------------------------------------------
# square-class bases: concrete elements -> formal words
# ---------------------------------------------------------------------------

class SquareClassBasis:
    """Assigns formal words to concrete field elements multiplicatively.

    Atoms are −1, rational primes, monic irreducible polynomial factors and,
    over a number field, constants for which no relation with the earlier
    atoms was found.  Two elements get the same word only if their ratio is
    a square, so canonical forms computed from these words are sound.
    """

    def __init__(self, field):
        self.field = field
        self.K = _constant_field(field)
        self._const = []  # (name, element) for a number-field constant basis
        self._cache = {}
        self.minus_one = self.word(-1)

    # -- constants -----------------------------------------------------------
    def _const_word(self, c):
        K = self.K
        if isinstance(K, NumberField) and K.degree > 1:
            c = K(c)
            if c.is_rational_constant:
                return self._rational_word(c.rational_value(), nf=True)
            return self._nf_word(c, c.to_str())
        return self._rational_word(QQ(c), nf=False)

    def _rational_word(self, q, nf):
        q = Fraction(q)
        n = q.numerator * q.denominator
        atoms = [MINUS_ONE] if n < 0 else []
        atoms += [str(p) for p, e in factorint(abs(n)).items() if e % 2]
        if not nf:
            return formal.word(*atoms)
        out = frozenset()
        for a in atoms:
            val = -1 if a == MINUS_ONE else int(a)
            out = out ^ self._nf_word(self.K(val), a)
        return out

    def _nf_word(self, c, name):
        key = ("nf", c.c)
        if key in self._cache:
            return self._cache[key]
        if isinstance(is_square_in_field(c), Square):
            self._cache[key] = frozenset()
            return frozenset()
        names = [n for n, _ in self._const]
        for r in range(1, len(self._const) + 1):
            for combo in combinations(range(len(self._const)), r):
                prod = c
                for i in combo:
                    prod = prod * self._const[i][1]
                if isinstance(is_square_in_field(prod), Square):
                    w = formal.word(*(names[i] for i in combo))
                    self._cache[key] = w
                    return w
        self._const.append((name, c))
        w = formal.word(name)
        self._cache[key] = w
        return w

    # -- elements ------------------------------------------------------------
    def word(self, x):
        if isinstance(x, bool):
            raise TypeError("bool is not a field element")
        if isinstance(x, RatFunc):
            if isinstance(x.field.constant_field, RationalFunctionField):
                return self._sympy_word(x)
            return self._ratfunc_word(x)
        if not x:
            raise ValueError("zero has no square class")
        return self._const_word(x)

    def _ratfunc_word(self, x):
        var = x.field.var
        out = self._const_word(x.num.lc / x.den.lc)
        for part in (x.num, x.den):
            if part.deg <= 0:
                continue
            _, facs = factor(part)
            for f, e in facs:
                if e % 2:
                    out = out ^ formal.word(f.to_str(var))
        return out

    def _sympy_word(self, x):
        expr = sympy.together(to_sympy(x))
        num, den = sympy.fraction(expr)
        out = frozenset()
        for part in (num, den):
            c, facs = sympy.factor_list(sympy.expand(part))
            out = out ^ self._rational_word(Fraction(int(sympy.Rational(c).p), int(sympy.Rational(c).q)), nf=False)
            for f, e in facs:
                if e % 2:
                    out = out ^ formal.word(str(f).replace("**", "^").replace(" ", ""))
        return out

    def formal_class(self, cls):
        """The formal class obtained by replacing entries with their words."""
        ctx = FormalContext()
        ctx.minus_one = self.minus_one
        return BrauerClass([(self.word(a), self.word(b)) for a, b in cls.pairs()], ctx)

    def canonical(self, cls):
        return formal.canonical([(self.word(a), self.word(b)) for a, b in cls.pairs()], self.minus_one)


def _constant_field(F):
    while isinstance(F, RationalFunctionField):
        F = F.constant_field
    return F


def to_sympy(x, names=None):
    """Convert a (possibly nested) rational function to a sympy expression."""
    if isinstance(x, RatFunc):
        v = sympy.Symbol(x.field.var)
        return _poly_sympy(x.num, v) / _poly_sympy(x.den, v)
    if isinstance(x, Fraction) or isinstance(x, int):
        x = Fraction(x)
        return sympy.Rational(x.numerator, x.denominator)
    raise TypeError(f"cannot convert {x!r}")


def _poly_sympy(p, v):
    return sum((to_sympy(c) * v ** i for i, c in enumerate(p.c)), sympy.Integer(0))


# ---------------------------------------------------------------------------
# equality modulo certified split symbols
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EqualityProof:
    """c1 − c2 is a sum of the listed certified-split symbols (formally)."""

    used: tuple
    residual: frozenset

    def describe(self):
        if not self.used:
            return "equal by bilinearity"
        return "equal modulo split symbols " + ", ".join(self.used)


def equal_modulo_split(c1, c2, split_symbols=(), basis=None):
    """Certify c1 = c2 using bilinearity and the given split symbols.

    ``split_symbols`` are (a, b) pairs that carry verified certificates.
    Returns an :class:`EqualityProof` or None when no certificate was found
    (which does not prove the classes differ).
    """
    if c1.is_formal:
        minus_one = c1.context.minus_one
        diff = formal.canonical(c1.pairs() + c2.pairs(), minus_one)
        span = [formal.canonical([s], minus_one) for s in split_symbols]
    else:
        basis = basis or SquareClassBasis(c1.context)
        diff = basis.canonical(c1 + c2 if c1.context == c2.context else BrauerClass(c1.symbols + c2.symbols, c1.context))
        span = [formal.canonical([(basis.word(a), basis.word(b))], basis.minus_one) for a, b in split_symbols]
    combo = formal.span_contains(diff, span)
    if combo is None:
        return None
    labels = tuple(f"({_fmt(c1.context, split_symbols[i][0])}, {_fmt(c1.context, split_symbols[i][1])})" for i in combo)
    return EqualityProof(labels, diff)
