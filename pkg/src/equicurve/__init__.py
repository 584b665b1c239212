"""Exact computations on strongly incompressible curves: symbols, trace forms, equivariant maps, curve constructions and prescribed ramification."""
__version__ = "0.1.0"
