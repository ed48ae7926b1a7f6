"""Exact computations for iquantum groups at roots of unity.

Subpackages and modules: ``qcoeff`` (scalars), ``rootdata`` and ``satake``
(combinatorics), ``twistedpoly`` and ``gradedqsp`` (the graded algebra),
``uq`` (the quantum group engine), ``iqg`` (iquantum groups) and ``cli``.
"""

from .qcoeff import CyclotomicScalar, LaurentScalar, PoleError, qnumber, specialize
from .rootdata import CartanDatum, WeylElement, cartan_type
from .satake import DiagramError, SatakeDiagram, invariants

__version__ = "0.1.0"

__all__ = [
    "CartanDatum",
    "CyclotomicScalar",
    "DiagramError",
    "LaurentScalar",
    "PoleError",
    "SatakeDiagram",
    "WeylElement",
    "cartan_type",
    "invariants",
    "qnumber",
    "specialize",
]
