"""Quaternion symbols and 2-torsion Brauer classes."""

from .formal import FormalContext, MINUS_ONE, canonical, format_form, format_word, parse_word, word
from .hilbert import INFINITY, bad_places, classes_equal_Q, hilbert_symbol_Q, is_split_Q, local_invariants
from .classes import (
    BrauerClass, ConcreteClassError, EqualityProof, QuaternionSymbol, SquareClassBasis, equal_modulo_split,
)
from .residue import ResidueWitness, residue_field, residue_symbol, residue_witness
from .split import (
    CertificateProof, ConstantClassProof, Inconclusive, NotSplit, SpecializationWitness, Split,
    SplitCertificate, UnsupportedFieldError, find_certificate, is_split_kx, square_criterion_check,
    verify_split_certificate,
)

__all__ = [name for name in dir() if not name.startswith("_")]
