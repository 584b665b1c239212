"""Formal square-class calculus.

A *word* is an element of the free F₂-vector space on named generators,
stored as a frozenset of generator names; multiplication is symmetric
difference.  The generator ``"-1"`` is distinguished.

The canonical form of a sum of symbols is a set of unordered generator
pairs, obtained by expanding every symbol bilinearly, using symmetry, and
rewriting (g, g) as (g, −1).  The pair (−1, −1) is kept as is.  Only
bilinearity, symmetry and (g, g) = (g, −1) are imposed, so equal canonical
forms imply equal Brauer classes in every field, while unequal ones prove
nothing by themselves.
"""

from __future__ import annotations

import random
import re

MINUS_ONE = "-1"

Word = frozenset


def word(*atoms):
    """The product of the given atoms (repeats cancel)."""
    out = set()
    for a in atoms:
        out ^= {a}
    return frozenset(out)


def mul(*words):
    out = frozenset()
    for w in words:
        out = out ^ w
    return out


_TOKEN = re.compile(r"[A-Za-z_][A-Za-z0-9_']*|\d+")


def parse_word(text):
    """Parse ``"-a*b"``, ``"a b"`` or ``"-1"`` into a word.

    A leading minus sign contributes the generator ``-1``; integers other
    than 1 are kept as opaque atoms (no factoring happens here).
    """
    text = text.strip()
    atoms = [MINUS_ONE] if text.startswith("-") else []
    atoms += [tok for tok in _TOKEN.findall(text) if tok != "1"]
    return word(*atoms)


def format_word(w):
    if not w:
        return "1"
    neg = MINUS_ONE in w
    rest = sorted(a for a in w if a != MINUS_ONE)
    if not rest:
        return "-1"
    return ("-" if neg else "") + "*".join(rest)


def _pair_key(g, h):
    return (g, h) if g <= h else (h, g)


def expand_symbol(a, b, minus_one=word(MINUS_ONE)):
    """Canonical pair set of the single symbol (a, b) for words a, b."""
    out = set()
    for g in a:
        for h in b:
            for pair in _generator_pair(g, h, minus_one):
                out ^= {pair}
    return frozenset(out)


def _generator_pair(g, h, minus_one):
    if g != h:
        return [_pair_key(g, h)]
    if g in minus_one:
        return [(g, g)]
    return [_pair_key(g, m) for m in minus_one]


def canonical(symbols, minus_one=word(MINUS_ONE)):
    """Canonical form of Σ (a_i, b_i) given as a list of word pairs."""
    out = frozenset()
    for a, b in symbols:
        out = out ^ expand_symbol(a, b, minus_one)
    return out


def substitute(form, images, minus_one=word(MINUS_ONE)):
    """Apply a substitution atom ↦ word to a canonical form.

    Atoms missing from ``images`` are left alone.  The result is again
    canonical; since canonical forms are bilinear this is a homomorphism.
    """
    syms = [(images.get(g, word(g)), images.get(h, word(h))) for g, h in form]
    return canonical(syms, minus_one)


def format_form(form):
    if not form:
        return "0"
    return " + ".join(f"({g},{h})" for g, h in sorted(form))


def random_word(rng, generators, include_minus_one=True):
    pool = list(generators) + ([MINUS_ONE] if include_minus_one else [])
    w = frozenset(g for g in pool if rng.random() < 0.5)
    return w or frozenset([rng.choice(pool)])


def span_contains(target, spanning):
    """Decide target ∈ F₂-span(spanning) for sets of pairs.

    Returns the indices of a subset summing to ``target``, or None.
    """
    basis = []  # (pivot, vector, combination)
    for idx, vec in enumerate(spanning):
        v, comb = set(vec), {idx}
        for piv, bv, bc in basis:
            if piv in v:
                v ^= bv
                comb ^= bc
        if v:
            basis.append((min(v), v, comb))
    v, comb = set(target), set()
    for piv, bv, bc in basis:
        if piv in v:
            v ^= bv
            comb ^= bc
    if v:
        return None
    return sorted(comb)


class FormalContext:
    """Context for symbols whose entries are formal words."""

    minus_one = word(MINUS_ONE)

    def __init__(self, generators=()):
        self.generators = tuple(generators)

    def __call__(self, x):
        if isinstance(x, frozenset):
            return x
        if isinstance(x, str):
            return parse_word(x)
        if isinstance(x, int) and x in (1, -1):
            return word(MINUS_ONE) if x == -1 else word()
        raise TypeError(f"cannot read {x!r} as a formal word")

    def mul(self, *ws):
        return mul(*(self(w) for w in ws))

    def random_word(self, rng=None):
        return random_word(rng or random.Random(0), self.generators)

    def format(self, w):
        return format_word(w)

    def __eq__(self, other):
        return isinstance(other, FormalContext)

    def __hash__(self):
        return hash("formal")

    def __repr__(self):
        return "FormalContext()"
