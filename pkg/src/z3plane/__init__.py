"""Exact symbolic engine for the Z3-graded quantum superplane and its differential calculus."""

from __future__ import annotations

from .algebra import Element, Presentation, normal_form
from .presentations import get as presentation
from .scalar import J, ONE, Q, QINV, ZERO, CycloNum, Scalar
from .tensor import TensorElement

__all__ = [
    "CycloNum",
    "Element",
    "J",
    "ONE",
    "Presentation",
    "Q",
    "QINV",
    "Scalar",
    "TensorElement",
    "ZERO",
    "normal_form",
    "presentation",
]

__version__ = "0.1.0"
