"""Exact arithmetic kernel."""

from .rational import QQ, Rational, fmt_rational, pretty_rational, rational_sqrt, squarefree_integer
from .poly import (
    Poly, X, ZERO_DEGREE, crt_poly, discriminant, gcd, interpolate, is_squarefree, lcm,
    odd_part, poly_gcd_squarefree, resultant, sqf_list, squarefree_part, xgcd,
)
from .ratfunc import RatFunc, RationalFunctionField
from .numberfield import NFElem, NumberField, quadratic_field
from .quadext import QuadElem, QuadExt
from .primefield import PFElem, PrimeField
from .factor import factor, factor_over_nf, factor_over_Q, irreducible_over_Q, is_irreducible, rational_roots, roots_in_field
from .squares import (
    ModularWitness, NonSquare, ProbablySquare, Square, is_square, is_square_in_field, sqrt,
)
from .cyclotomic import alpha_beta, alpha_field, alpha_minpoly, cyclotomic_poly, omega, omega_field
from .tower import FieldTower, TowerError, parse_poly
from .multipoly import MPoly, univariate_at

__all__ = [name for name in dir() if not name.startswith("_")]
