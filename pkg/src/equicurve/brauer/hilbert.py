"""Hilbert symbols over Q and the local-global splitting test."""

from __future__ import annotations

from fractions import Fraction

from sympy import factorint

INFINITY = "inf"


def _integral(q):
    """A nonzero integer in the square class of the rational q."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("Hilbert symbol of zero is undefined")
    return q.numerator * q.denominator


def _split_p(n, p):
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e, n


def _legendre(u, p):
    return 1 if pow(u % p, (p - 1) // 2, p) == 1 else -1


def hilbert_symbol_Q(a, b, place):
    """(a, b)_v ∈ {1, −1} for v a prime or :data:`INFINITY`."""
    a, b = _integral(a), _integral(b)
    if place == INFINITY or place == "infinity":
        return -1 if a < 0 and b < 0 else 1
    p = int(place)
    alpha, u = _split_p(a, p)
    beta, v = _split_p(b, p)
    if p == 2:
        eps = lambda z: ((z - 1) // 2) % 2
        omega = lambda z: ((z * z - 1) // 8) % 2
        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    lu = _legendre(u, p) if beta % 2 else 1
    lv = _legendre(v, p) if alpha % 2 else 1
    return sign * lu * lv


def bad_places(*entries):
    """∞, 2 and every odd prime dividing a numerator or denominator."""
    primes = {2}
    for q in entries:
        n = _integral(q)
        primes |= set(factorint(abs(n)))
    return [INFINITY] + sorted(primes)


def ramified_places(a, b):
    """Places where the quaternion algebra (a, b) over Q does not split."""
    return [v for v in bad_places(a, b) if hilbert_symbol_Q(a, b, v) == -1]


def is_split_Q(a, b):
    return not ramified_places(a, b)


def local_invariants(symbols):
    """Places where the sum of the given rational symbols is nontrivial."""
    entries = [x for s in symbols for x in s]
    if not entries:
        return []
    out = []
    for v in bad_places(*entries):
        prod = 1
        for a, b in symbols:
            prod *= hilbert_symbol_Q(a, b, v)
        if prod == -1:
            out.append(v)
    return out


def classes_equal_Q(symbols1, symbols2):
    """Equality in Br₂(Q) by comparing local invariants at every place."""
    return not local_invariants(list(symbols1) + list(symbols2))
