"""Exact computations with string algebras: words, string and band modules,
functorial filtrations and decompositions of finite-dimensional modules."""

from .algebra import AlgebraError, Letter, StringAlgebra
from .decompose import DecompositionReport, certify, krs_check
from .exactla import Field, Subspace
from .laurent import BandCoefficient
from .repmod import Representation, band_module, direct_sum, scramble, string_module
from .words import Word, props

__version__ = "0.1.0"

__all__ = [
    "AlgebraError", "BandCoefficient", "DecompositionReport", "Field", "Letter", "Representation",
    "StringAlgebra", "Subspace", "Word", "band_module", "certify", "direct_sum",
    "krs_check", "props", "scramble", "string_module",
]
