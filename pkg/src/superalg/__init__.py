"""Exact super linear algebra: Grassmann scalars, supermatrices and their
traces and determinants, Lie and Jordan superalgebras, the kan construction,
homological vector fields and cross ratios."""

from __future__ import annotations

__version__ = "0.1.0"

from .scalars import SuperPolynomial, VariableContext
from .supermatrix import (
    BlockSignature,
    SuperMatrix,
    berezinian,
    queer_determinant,
    queer_trace,
    supertrace,
)

__all__ = [
    "__version__",
    "BlockSignature",
    "SuperMatrix",
    "SuperPolynomial",
    "VariableContext",
    "berezinian",
    "queer_determinant",
    "queer_trace",
    "supertrace",
]
