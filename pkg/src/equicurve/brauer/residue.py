"""Residues of quaternion symbols over K(x) at finite places and at infinity.

For f = π^α·u and g = π^β·v with u, v units at π, the residue of (f, g)
at π is the square class of (−1)^{αβ} u^β v^{−α} in the residue field
K[x]/(π).  The symbol is unramified at π exactly when that class is
trivial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..arith import NumberField, Poly, QQ, QuadExt, RatFunc, rational_sqrt, squarefree_integer
from ..arith.factor import is_irreducible
from ..arith.squares import NonSquare, NormWitness, is_square_in_field

INFINITY = "infinity"


class ResidueFieldError(ValueError):
    pass


@dataclass(frozen=True)
class ResidueField:
    """K[x]/(π) together with the image of x."""

    place: object
    field: object
    root: object

    def reduce(self, p):
        """Image of a polynomial (or rational function) in the residue field."""
        if isinstance(p, RatFunc):
            return self.reduce(p.num) / self.reduce(p.den)
        return self.field(p(self.root))

    def __str__(self):
        return str(self.field)


def residue_field(place):
    """Present K[x]/(π) for a monic irreducible π over K."""
    if not isinstance(place, Poly) or place.deg < 1:
        raise ResidueFieldError(f"place must be a nonconstant polynomial, got {place!r}")
    K = place.K
    if place.deg == 1:
        return ResidueField(place, K, K(-place[0] / place[1]))
    if not is_irreducible(place):
        raise ResidueFieldError(f"place {place} is reducible")
    pi = place.monic()
    if pi.deg == 2:
        b, c = pi[1], pi[0]
        D = b * b / 4 - c
        if K == QQ:
            d = squarefree_integer(D)
            scale = rational_sqrt(Fraction(D) / d)
            F = QuadExt(QQ, d, name=f"√{d}" if d != -1 else "i")
            return ResidueField(place, F, F.elem(-b / 2, scale))
        F = QuadExt(K, D, name=f"√({K.format(D) if hasattr(K, 'format') else D})")
        return ResidueField(place, F, F.elem(-b / 2, 1))
    if K == QQ:
        F = NumberField(pi, name="θ", check=False)
        return ResidueField(place, F, F.gen)
    raise ResidueFieldError(f"residue fields of degree {pi.deg} over {K} are not supported")


def valuation(p, pi):
    """(e, u) with p = π^e·u and π ∤ u, for a nonzero polynomial p."""
    if not p:
        raise ValueError("valuation of zero")
    e = 0
    while p.deg >= pi.deg:
        q, r = divmod(p, pi)
        if r:
            break
        p, e = q, e + 1
    return e, p


def _split(f, pi):
    if isinstance(f, RatFunc):
        en, un = valuation(f.num, pi)
        ed, ud = valuation(f.den, pi)
        return en - ed, (un, ud)
    return valuation(f, pi)[0], (valuation(f, pi)[1], None)


def _deg(f):
    if isinstance(f, RatFunc):
        return f.num.deg - f.den.deg
    return f.deg


def _lc(f):
    if isinstance(f, RatFunc):
        return f.num.lc / f.den.lc
    return f.lc


def residue_symbol(f, g, place):
    """(residue class, residue field) of (f, g) at ``place``.

    ``place`` is a monic irreducible polynomial or :data:`INFINITY`.
    """
    if not f or not g:
        raise ValueError("quaternion symbol with a zero entry")
    if place == INFINITY:
        a, b = -_deg(f), -_deg(g)
        sign = -1 if (a * b) % 2 else 1
        val = sign * _lc(f) ** (b % 2) * _lc(g) ** (a % 2)
        K = (f.num if isinstance(f, RatFunc) else f).K
        return K(val), K
    R = residue_field(place)
    pi = place.monic()
    a, (u_num, u_den) = _split(f, pi)
    b, (v_num, v_den) = _split(g, pi)

    def unit(num, den):
        x = R.reduce(num)
        return x / R.reduce(den) if den is not None else x

    u, v = unit(u_num, u_den), unit(v_num, v_den)
    cls = R.field(-1 if (a * b) % 2 else 1)
    if b % 2:
        cls = cls * u
    if a % 2:
        cls = cls / v
    return cls, R.field


@dataclass(frozen=True)
class ResidueWitness:
    """A place where (f, g) has a certified nontrivial residue."""

    place: object
    residue_class: object
    field: object
    non_square_evidence: NonSquare

    def recheck(self, f, g):
        cls, _ = residue_symbol(f, g, self.place)
        ev = self.non_square_evidence
        return cls == self.residue_class and isinstance(ev, NonSquare) and ev.verify(cls)

    def place_str(self, var="x"):
        return self.place if self.place == INFINITY else self.place.to_str(var)

    def describe(self, var="x"):
        c = self.residue_class
        text = c.to_str().replace(" ", "") if hasattr(c, "to_str") else QQ.format(c)
        if not isinstance(self.non_square_evidence, NonSquare):
            return f"{text} claimed non-square in {self.field} without evidence (residue at {self.place_str(var)})"
        out = f"{text} non-square in {self.field}"
        w = self.non_square_evidence.witness
        if isinstance(w, NormWitness):
            nf = getattr(w.norm, "to_str", None)
            out += f", norm {nf() if nf else QQ.format(w.norm)}"
        return out + f" (residue at {self.place_str(var)}; {self.non_square_evidence.describe()})"


def residue_witness(f, g, place):
    """A :class:`ResidueWitness` if the residue at ``place`` is nontrivial.

    Returns ``(witness_or_None, verdict)``.
    """
    cls, F = residue_symbol(f, g, place)
    verdict = is_square_in_field(cls)
    if isinstance(verdict, NonSquare):
        return ResidueWitness(place, cls, F, verdict), verdict
    return None, verdict
