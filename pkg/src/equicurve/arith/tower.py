"""Field-tower descriptors and their JSON exchange format.

A tower is Q, optionally followed by one number field, one transcendental
variable and one quadratic extension, in that order::

    {"number_field": {"min_poly": ["1/1", "0/1", "1/1"], "name": "i"},
     "variable": "t",
     "quad_ext": {"D": {"num": ["-1/1", "0/1", "-1/1"]}}}

Polynomials are coefficient lists, lowest degree first, each coefficient a
string ``"num/den"``.
"""

from __future__ import annotations

import json

import sympy

from .numberfield import NumberField
from .poly import Poly
from .quadext import QuadExt
from .rational import QQ, fmt_rational
from .ratfunc import RationalFunctionField


class TowerError(ValueError):
    """Malformed or invalid tower descriptor."""


class FieldTower:
    def __init__(self, min_poly=None, variable=None, quad_D=None, nf_name="w"):
        self.constant_field = QQ
        if min_poly is not None:
            if not isinstance(min_poly, Poly):
                min_poly = Poly(min_poly, QQ)
            if min_poly.deg < 1 or min_poly.lc != 1:
                raise TowerError(f"number-field min_poly must be monic of degree ≥ 1: {min_poly}")
            try:
                self.constant_field = NumberField(min_poly, name=nf_name)
            except ValueError as exc:
                raise TowerError(str(exc)) from exc
        self.nf_name = nf_name
        self.variable = variable
        self.function_field = RationalFunctionField(self.constant_field, variable) if variable else None
        below = self.function_field or self.constant_field
        self.quad_D = None
        self.top = below
        if quad_D is not None:
            D = below(quad_D)
            try:
                self.top = QuadExt(below, D)
            except ValueError as exc:
                raise TowerError(str(exc)) from exc
            self.quad_D = D

    @property
    def field(self):
        return self.top

    @property
    def poly_field(self):
        """Coefficient field for polynomials in the tower's variable."""
        return self.constant_field

    # -- JSON ------------------------------------------------------------
    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            try:
                obj = json.loads(obj)
            except json.JSONDecodeError as exc:
                raise TowerError(f"tower descriptor is not valid JSON: {exc}") from exc
        if not isinstance(obj, dict):
            raise TowerError("tower descriptor must be a JSON object")
        unknown = set(obj) - {"number_field", "variable", "quad_ext"}
        if unknown:
            raise TowerError(f"unknown tower keys: {sorted(unknown)}")
        mp, name = None, "w"
        if obj.get("number_field") is not None:
            nf = obj["number_field"]
            if not isinstance(nf, dict) or "min_poly" not in nf:
                raise TowerError("number_field needs a min_poly list")
            mp = _parse_qpoly(nf["min_poly"])
            name = nf.get("name", "w")
        var = obj.get("variable")
        if var is not None and (not isinstance(var, str) or not var.isidentifier()):
            raise TowerError(f"bad variable name {var!r}")
        D = None
        tower = cls(mp, var, None, name)
        if obj.get("quad_ext") is not None:
            qe = obj["quad_ext"]
            if not isinstance(qe, dict) or "D" not in qe:
                raise TowerError("quad_ext needs D")
            below = tower.function_field or tower.constant_field
            D = parse_element(qe["D"], below, tower)
            tower = cls(mp, var, D, name)
        return tower

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
        return cls.from_json(text)

    def to_json(self):
        out = {}
        if isinstance(self.constant_field, NumberField):
            out["number_field"] = {"min_poly": [fmt_rational(c) for c in self.constant_field.min_poly.c],
                                   "name": self.nf_name}
        if self.variable:
            out["variable"] = self.variable
        if self.quad_D is not None:
            below = self.function_field or self.constant_field
            out["quad_ext"] = {"D": below.to_json(self.quad_D)}
        return out

    def __str__(self):
        return str(self.top)

    # -- parsing helpers --------------------------------------------------
    def parse_poly(self, text):
        """A polynomial in the tower's variable over the constant field."""
        return parse_poly(text, self)

    def parse(self, text):
        return parse_element(text, self.top, self)


def _parse_qpoly(obj):
    if not isinstance(obj, list) or not obj:
        raise TowerError("polynomial must be a non-empty coefficient list")
    try:
        return Poly([QQ(c) for c in obj], QQ)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise TowerError(f"bad coefficient in {obj}: {exc}") from exc


def parse_poly(obj, tower):
    """Coefficient list (JSON) or an expression in the tower variable."""
    K = tower.constant_field
    if isinstance(obj, str) and obj.strip().startswith("["):
        obj = json.loads(obj)
    if isinstance(obj, list):
        try:
            dec = getattr(K, "from_json", K)
            return Poly([dec(c) for c in obj], K)
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise TowerError(f"bad polynomial {obj}: {exc}") from exc
    var = tower.variable or "x"
    val = _eval_expr(str(obj), tower, {var: Poly.x(K)}, K)
    if not isinstance(val, Poly):
        val = Poly.const(val, K)
    return val


def parse_element(obj, F, tower):
    """An element of F from JSON or from an expression string."""
    if isinstance(obj, (dict, list)):
        return F.from_json(obj)
    if isinstance(obj, (int,)):
        return F(obj)
    text = str(obj)
    if "/" in text and text.replace("/", "").lstrip("-").isdigit():
        return F(QQ(text))
    names = {}
    if tower is not None and tower.variable and getattr(tower, "function_field", None) is not None:
        names[tower.variable] = tower.function_field.gen
    return F(_eval_expr(text, tower, names, F))


def _eval_expr(text, tower, names, F):
    try:
        expr = sympy.sympify(text, locals={k: sympy.Symbol(k) for k in list(names) + [getattr(tower, "nf_name", "w")]})
    except (sympy.SympifyError, SyntaxError, TypeError) as exc:
        raise TowerError(f"cannot parse {text!r}: {exc}") from exc
    return _convert(expr, tower, names, F)


def _convert(e, tower, names, F):
    K = tower.constant_field if tower is not None else QQ
    if e.is_Integer or e.is_Rational:
        return QQ(f"{e.p}/{e.q}")
    if e.is_Symbol:
        nm = str(e)
        if nm in names:
            return names[nm]
        if tower is not None and nm == tower.nf_name and isinstance(K, NumberField):
            return K.gen
        raise TowerError(f"unknown symbol {nm}")
    if e.is_Add:
        acc = None
        for a in e.args:
            v = _convert(a, tower, names, F)
            acc = v if acc is None else acc + v
        return acc
    if e.is_Mul:
        acc = None
        for a in e.args:
            v = _convert(a, tower, names, F)
            acc = v if acc is None else acc * v
        return acc
    if e.is_Pow:
        base, ex = e.args
        if ex == sympy.Rational(1, 2) and base.is_Rational:
            return _sqrt_in(QQ(f"{base.p}/{base.q}"), tower)
        if ex == sympy.Rational(-1, 2) and base.is_Rational:
            return 1 / _sqrt_in(QQ(f"{base.p}/{base.q}"), tower)
        if not ex.is_Integer:
            raise TowerError(f"unsupported exponent in {e}")
        b = _convert(base, tower, names, F)
        n = int(ex)
        if n < 0:
            return (F.one if hasattr(F, "one") else 1) / (b ** (-n))
        return b ** n
    if e == sympy.I:
        return _sqrt_in(QQ(-1), tower)
    raise TowerError(f"unsupported expression {e}")


def _sqrt_in(q, tower):
    from .factor import roots_in_field
    K = tower.constant_field if tower is not None else QQ
    if K == QQ:
        from .rational import rational_sqrt
        r = rational_sqrt(q)
        if r is None:
            raise TowerError(f"√{q} is not in Q")
        return r
    roots = roots_in_field(Poly([-q, 0, 1], K))
    if not roots:
        raise TowerError(f"√{q} is not in {K}")
    # pick the root that matches the usual a+b√q display with b > 0
    for r in roots:
        s = r.to_str()
        if not s.startswith("-"):
            return r
    return roots[0]
