"""Factorization over Q and over number fields.

Over Q the heavy lifting (modular factorization, Hensel lifting and factor
recombination) is delegated to sympy's Zassenhaus implementation after a
cheap rational-root screen.  Over a number field we run Trager's norm
method on top of that.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import lcm as ilcm

import sympy
from sympy import divisors

from .poly import Poly, gcd, interpolate, is_squarefree, sqf_list
from .rational import QQ

_X = sympy.Symbol("x")


def to_integer_poly(p):
    """(denominator, integer coefficient list low→high) with p = ints / denominator."""
    den = 1
    for a in p.c:
        den = ilcm(den, Fraction(a).denominator)
    return den, [int(Fraction(a) * den) for a in p.c]


def _to_sympy(p):
    den, ints = to_integer_poly(p)
    return sympy.Poly.from_list(list(reversed(ints)), _X, domain="ZZ")


def _from_sympy(sp):
    coeffs = [Fraction(int(sympy.Rational(c).p), int(sympy.Rational(c).q)) for c in reversed(sp.all_coeffs())]
    return Poly(coeffs, QQ)


@lru_cache(maxsize=4096)
def _factor_Q_cached(coeffs):
    p = Poly._raw(coeffs, QQ)
    sp = _to_sympy(p)
    _, facs = sp.factor_list()
    out = []
    for f, e in facs:
        out.append((_from_sympy(f).monic(), e))
    out.sort(key=lambda fe: (fe[0].deg, [str(c) for c in fe[0].c]))
    return tuple(out)


def factor_over_Q(p):
    """(leading coefficient, [(monic irreducible, multiplicity), ...])."""
    p = p.change_ring(QQ) if p.K != QQ else p
    if not p:
        raise ValueError("cannot factor the zero polynomial")
    if p.deg <= 0:
        return p.lc, []
    return p.lc, list(_factor_Q_cached(p.c))


def rational_roots(p):
    """Rational roots of p (with no multiplicity information), by divisor screening."""
    if not p:
        raise ValueError("roots of the zero polynomial")
    _, ints = to_integer_poly(p.change_ring(QQ))
    while ints and ints[0] == 0:
        ints = ints[1:]
    roots = [Fraction(0)] if len(ints) < len(p.c) else []
    if len(ints) <= 1:
        return roots
    a0, an = abs(ints[0]), abs(ints[-1])
    q = Poly(ints, QQ)
    for num in divisors(a0):
        for den in divisors(an):
            for r in (Fraction(num, den), Fraction(-num, den)):
                if r not in roots and not q(r):
                    roots.append(r)
    return sorted(roots)


def irreducible_over_Q(p):
    """True iff p (nonconstant, rational coefficients) is irreducible over Q."""
    p = p.change_ring(QQ) if p.K != QQ else p
    if p.deg < 1:
        raise ValueError("irreducibility of a constant")
    if p.deg == 1:
        return True
    _, ints = to_integer_poly(p)
    if ints[0] == 0:
        return False
    screened = max(abs(ints[0]), abs(ints[-1])) < 10 ** 12
    if screened and rational_roots(p):
        return False
    if screened and p.deg <= 3:
        return True
    _, facs = factor_over_Q(p)
    return len(facs) == 1 and facs[0][1] == 1


# ---------------------------------------------------------------------------
# number fields
# ---------------------------------------------------------------------------

def norm_poly(G, K):
    """Norm of G ∈ K[Y] down to Q[Y], via evaluation and interpolation."""
    D = K.degree * G.deg
    pts = []
    for j in range(D + 1):
        v = G(Fraction(j))
        v = K(v)
        pts.append((j, v.norm()))
    return interpolate(pts, QQ)


def _shifts():
    yield 0
    k = 1
    while True:
        yield k
        yield -k
        k += 1


def _trager(g, K, max_shift=40):
    if g.deg <= 1:
        return [g.monic()]
    theta = K.gen
    for count, s in enumerate(_shifts()):
        if count > max_shift:
            raise ArithmeticError("no squarefree norm found within the shift bound")
        G = g.shift(-s * theta) if s else g
        N = norm_poly(G, K)
        if is_squarefree(N):
            break
    _, facs = factor_over_Q(N)
    if len(facs) == 1:
        return [g.monic()]
    out = []
    for n_i, _ in facs:
        h = gcd(G, n_i.change_ring(K))
        out.append((h.shift(s * theta) if s else h).monic())
    return out


def factor_over_nf(p, K):
    if p.K != K:
        p = p.change_ring(K)
    if not p:
        raise ValueError("cannot factor the zero polynomial")
    lc = p.lc
    if p.deg <= 0:
        return lc, []
    if K.degree == 1:
        _, facs = factor_over_Q(Poly([QQ(a) for a in p.monic().c], QQ))
        return lc, [(f.change_ring(K), e) for f, e in facs]
    _, parts = sqf_list(p)
    out = []
    for g, e in parts:
        for h in _trager(g, K):
            out.append((h, e))
    out.sort(key=lambda fe: (fe[0].deg, str(fe[0])))
    return lc, out


def factor(p):
    """Factor over the coefficient field (Q or a number field)."""
    from .numberfield import NumberField
    K = p.K
    if K == QQ:
        return factor_over_Q(p)
    if isinstance(K, NumberField):
        return factor_over_nf(p, K)
    raise NotImplementedError(f"factorization over {K} is not supported")


def is_irreducible(p):
    if p.deg < 1:
        raise ValueError("irreducibility of a constant")
    if p.K == QQ:
        return irreducible_over_Q(p)
    _, facs = factor(p)
    return len(facs) == 1 and facs[0][1] == 1


def roots_in_field(p):
    """Roots of p lying in its coefficient field, sorted deterministically."""
    _, facs = factor(p)
    return [-f.c[0] for f, _ in facs if f.deg == 1]
