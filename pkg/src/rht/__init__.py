"""Exact-arithmetic tools for Sullivan models and their derivation Lie algebras."""

from .algebra import (
    AlgebraError,
    Differential,
    Element,
    Generator,
    GradedAlgebra,
    SullivanModel,
    augmentation,
    is_decomposable,
)
from .derivations import (
    Derivation,
    DerivationComplex,
    bracket,
    check_pi_finite_profile,
    delta,
    derivation_basis,
    homology,
    homology_bracket,
)

__all__ = [
    "AlgebraError",
    "Differential",
    "Element",
    "Generator",
    "GradedAlgebra",
    "SullivanModel",
    "augmentation",
    "is_decomposable",
    "Derivation",
    "DerivationComplex",
    "bracket",
    "check_pi_finite_profile",
    "delta",
    "derivation_basis",
    "homology",
    "homology_bracket",
]
