"""Exact computer algebra for minimal Sullivan models."""

from .gca import (AlgebraError, Derivation, Element, Generator, GradedAlgebra, apply_derivation,
                  check_d_squared, wedge, wordlength_component)
from .linalg import Subspace, preimage
from .model import MinimalModel, ModelError, ValidationReport, validate

__all__ = ["AlgebraError", "Derivation", "Element", "Generator", "GradedAlgebra", "apply_derivation",
           "check_d_squared", "wedge", "wordlength_component", "Subspace", "preimage", "MinimalModel",
           "ModelError", "ValidationReport", "validate"]

__version__ = "0.1.0"
