"""Hyperelliptic models y² = s(x) together with automorphisms of their function fields.

An automorphism is stored as a pair (φ, ψ) of rational functions in x and
acts on points by (x, y) ↦ (φ(x), ψ(x)·y).  It preserves the curve iff
ψ² · s = s∘φ, which is checked as an identity of rational functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from ..arith import QQ, Poly, RationalFunctionField, is_squarefree, odd_part, squarefree_integer
from ..arith.squares import Square, is_square_in_field


class CurveError(ValueError):
    """A construction's hypotheses fail or one of its verifications does."""


def genus(s):
    """Genus of the smooth model of y² = s(x)."""
    if not isinstance(s, Poly):
        raise TypeError("genus expects a polynomial")
    if s.deg < 3:
        raise CurveError(f"degree {s.deg} < 3 gives a rational curve")
    if not is_squarefree(s):
        raise CurveError(f"{s} is not squarefree")
    return (s.deg - 1) // 2


@dataclass(frozen=True)
class CurveAutomorphism:
    phi: object
    psi: object

    def compose(self, other):
        """self ∘ other (other acts first)."""
        return CurveAutomorphism(self.phi.compose(other.phi), self.psi.compose(other.phi) * other.psi)

    def is_identity(self):
        x = self.phi.field.gen
        return self.phi == x and self.psi == self.phi.field.one

    def is_involution_of_cover(self):
        """(x, y) ↦ (x, −y)."""
        F = self.phi.field
        return self.phi == F.gen and self.psi == -F.one

    def __pow__(self, n):
        F = self.phi.field
        out = CurveAutomorphism(F.gen, F.one)
        for _ in range(n):
            out = self.compose(out)
        return out

    def to_str(self, var="x"):
        y = "y" if self.psi == self.phi.field.one else f"({self.psi.to_str(var)})*y"
        return f"({self.phi.to_str(var)}, {y})"


@dataclass
class HyperellipticModel:
    s: Poly
    field: object
    actions: dict = field(default_factory=dict)
    presentation: object = None
    var: str = "x"

    @property
    def function_field(self):
        return RationalFunctionField(self.field, self.var)

    def equation(self):
        return f"y^2 = {self.s.to_str(self.var)}"

    def genus(self):
        return genus(self.s)

    def preserves(self, g):
        F = self.function_field
        S = F(self.s)
        return g.psi * g.psi * S == S.compose(g.phi)

    def evaluate(self, word):
        F = self.function_field
        out = CurveAutomorphism(F.gen, F.one)
        names = self.presentation.generators
        for i, e in word:
            out = out.compose(self.actions[names[i]] ** e)
        return out

    def failing_relators(self):
        return [r for r in self.presentation.relators if not self.evaluate(r).is_identity()]

    def order(self, name, bound=200):
        g = self.actions[name]
        h = g
        for k in range(1, bound + 1):
            if h.is_identity():
                return k
            h = g.compose(h)
        raise CurveError(f"{name} has order > {bound}")

    def contains_point(self, x0, y0):
        return self.s(x0) == y0 * y0

    def lines(self):
        out = [self.equation()]
        for name, g in self.actions.items():
            out.append(f"{name}: (x,y) -> {g.to_str(self.var)}")
        return out


def lift_multiplier(R, phi):
    """Both rational ψ with ψ² = R(φ)/R, positive-leading one first."""
    ratio = R.compose(phi) / R
    v = is_square_in_field(ratio)
    if not isinstance(v, Square):
        raise CurveError(f"{ratio} is not a square: the x-action does not lift")
    r = v.root
    if _leading_sign(r) < 0:
        r = -r
    return r, -r


def _leading_sign(r):
    c = r.num.lc
    try:
        return 1 if QQ(c) > 0 else -1
    except (TypeError, ValueError):
        return 1 if not str(c).startswith("-") else -1


def lift_action(R, x_actions, presentation, central=None):
    """Lift Möbius actions on x to y² = R(x), choosing signs that respect the presentation.

    ``central`` names a generator power (name, k) that must act as the
    covering involution (x, y) ↦ (x, −y); the first sign pattern that
    satisfies every relator and this condition is returned.
    """
    names = list(presentation.generators)
    choices = [lift_multiplier(R, x_actions[nm]) for nm in names]
    for signs in product((0, 1), repeat=len(names)):
        acts = {nm: CurveAutomorphism(x_actions[nm], ch[s]) for nm, ch, s in zip(names, choices, signs)}
        if any(not _evaluate(acts, names, r, R.field).is_identity() for r in presentation.relators):
            continue
        if central is not None:
            nm, k = central
            if not (acts[nm] ** k).is_involution_of_cover():
                continue
        return acts
    raise CurveError("no sign choice satisfies the group relations")


def _evaluate(acts, names, word, F):
    out = CurveAutomorphism(F.gen, F.one)
    for i, e in word:
        out = out.compose(acts[names[i]] ** e)
    return out


def normalize_model(R, K):
    """Rewrite y² = R(x) as y'² = s(x) with s a squarefree polynomial.

    R = c·s₀·g² with s₀ monic squarefree; the constant c is reduced to a
    square-class representative (a squarefree integer over Q, 1 when c is a
    square elsewhere).  Returns (s, g) with y = g·y'.
    """
    F = R.field
    lc, s0 = odd_part(R.num * R.den)
    rest = (R.num * R.den).exquo(s0 * lc) if s0.deg > 0 else (R.num * R.den) * (K.one / lc)
    v = is_square_in_field(F(rest))
    if not isinstance(v, Square):
        raise CurveError("odd-part decomposition left a non-square cofactor")
    g = v.root / F(R.den)
    c = lc
    if K == QQ:
        sf = QQ(squarefree_integer(lc))
        w = is_square_in_field(lc / sf)
        c, g = sf, g * F(w.root)
    else:
        w = is_square_in_field(K(lc))
        if isinstance(w, Square):
            c, g = K.one, g * F(w.root)
    s = s0 * c
    assert F(s) * g * g == R
    return s, g


def transport(actions, g):
    """Actions on y² = R rewritten for y' = y/g."""
    return {nm: CurveAutomorphism(a.phi, a.psi * g / g.compose(a.phi)) for nm, a in actions.items()}
