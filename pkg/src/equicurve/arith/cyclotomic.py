"""Cyclotomic polynomials and the constants α_n = (ω+ω⁻¹)/2, β_n = α_n² − 1."""

from __future__ import annotations

from functools import lru_cache

from sympy import totient

from .factor import factor_over_Q, roots_in_field
from .numberfield import NumberField
from .poly import Poly, resultant
from .rational import QQ
from .ratfunc import RationalFunctionField


@lru_cache(maxsize=None)
def cyclotomic_poly(n):
    """Φ_n by exact division of xⁿ − 1 by Φ_d for the proper divisors d of n."""
    if n < 1:
        raise ValueError("n must be positive")
    f = Poly.monomial(n, 1, QQ) - 1
    for d in range(1, n):
        if n % d == 0:
            f = f.exquo(cyclotomic_poly(d))
    return f


@lru_cache(maxsize=None)
def alpha_minpoly(n):
    """Minimal polynomial of cos(2π/n) over Q.

    Eliminates ω from Φ_n(ω) = 0 and 2xω − ω² − 1 = 0 and keeps the
    irreducible factor of degree φ(n)/2.
    """
    if n < 3:
        raise ValueError("α_n is only used for n ≥ 3")
    Kx = RationalFunctionField(QQ, "x")
    x = Kx.gen
    phi = cyclotomic_poly(n).change_ring(Kx)
    g = Poly([-1, 2 * x, -1], Kx)
    res = resultant(phi, g)
    assert res.is_polynomial()
    r = res.num
    target = int(totient(n)) // 2
    _, facs = factor_over_Q(r)
    cands = [f for f, _ in facs if f.deg == target]
    if len(cands) != 1:
        raise ArithmeticError(f"could not isolate the minimal polynomial of α_{n}")
    return cands[0]


def alpha_field(n):
    """The default presentation Q(α_n): Q itself when α_n is rational."""
    m = alpha_minpoly(n)
    if m.deg == 1:
        return QQ
    return NumberField(m, name=f"α{n}")


def alpha_beta(n, field=None):
    """(field, α_n, β_n) with α_n located in ``field`` (default: Q(α_n))."""
    m = alpha_minpoly(n)
    if field is None:
        field = alpha_field(n)
        alpha = -m.c[0] if m.deg == 1 else field.gen
    else:
        roots = roots_in_field(m.change_ring(field)) if field != QQ else roots_in_field(m)
        if not roots:
            raise ValueError(f"α_{n} is not in {field}")
        alpha = _canonical_root(roots)
    alpha = field(alpha)
    return field, alpha, alpha * alpha - 1


def omega_field(n):
    if n <= 2:
        return QQ
    return NumberField(cyclotomic_poly(n), name=f"ω{n}")


def omega(n, field=None):
    """(field, ω_n) with ω_n a primitive n-th root of unity in ``field``."""
    if field is None:
        field = omega_field(n)
        if n <= 2:
            return field, QQ(-1 if n == 2 else 1)
        return field, field.gen
    phi = cyclotomic_poly(n)
    roots = roots_in_field(phi.change_ring(field)) if field != QQ else roots_in_field(phi)
    if not roots:
        raise ValueError(f"ω{n} is not in {field}")
    return field, _canonical_root(roots)


def _canonical_root(roots):
    return sorted(roots, key=lambda r: str(r))[0]
