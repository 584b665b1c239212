"""Explicit curve constructions and their verifications."""

from .hyperelliptic import (
    CurveAutomorphism, CurveError, HyperellipticModel, genus, lift_action, normalize_model, transport,
)
from .even_cyclic import EvenCyclicCurve, even_cyclic_curve
from .klein import (
    BlowupChart, ConditionReport, KleinCurve, blowup_chart, klein_conditions, klein_construction_polys,
    klein_curve, klein_delta_class,
)
from .even_dihedral import EvenDihedralCurve, chebyshev, chebyshev_identity, even_dihedral_curve, minimal_polynomial_over_Q
from .polyhedral import a4_elliptic_computation, conic_field, octahedral_quadric_computation

__all__ = [name for name in dir() if not name.startswith("_")]
