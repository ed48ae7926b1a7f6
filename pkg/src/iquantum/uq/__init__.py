"""Exact arithmetic in the quantum group U: normal forms, braid operators, root vectors."""

from __future__ import annotations

from typing import Sequence

from .algebra import ENGINE_BOUND, MAX_RANK, UqAlgebra, UqElement, algebra_for
from .braid import (
    braid_defects,
    braid_T,
    braid_T_word,
    defining_relations,
    hi_degree,
    pbw_independent,
    relation_defects,
    root_vector,
    root_vectors,
)
from .rewriting import BoundExceeded, RewriteSystem, serre_relations

__all__ = [
    "ENGINE_BOUND",
    "MAX_RANK",
    "BoundExceeded",
    "RewriteSystem",
    "UqAlgebra",
    "UqElement",
    "algebra_for",
    "braid_T",
    "braid_T_word",
    "braid_defects",
    "defining_relations",
    "hi_degree",
    "multiply",
    "normal_form",
    "pbw_independent",
    "relation_defects",
    "root_vector",
    "root_vectors",
    "serre_relations",
    "specialize_element",
]


def normal_form(alg: UqAlgebra, letters: Sequence[tuple], ell: int | None = None) -> UqElement:
    """Normal form of a product of letters ``("E", i)``, ``("F", i)`` or ``("K", mu)``."""
    out = alg.one(ell)
    for kind, arg in letters:
        if kind == "E":
            g = alg.E(arg, ell)
        elif kind == "F":
            g = alg.F(arg, ell)
        elif kind == "K":
            g = alg.K(arg, ell)
        else:
            raise ValueError(f"unknown letter {kind!r}")
        out = out * g
    return out


def multiply(a: UqElement, b: UqElement) -> UqElement:
    return a * b


def specialize_element(x: UqElement, ell: int) -> UqElement:
    return x.specialize(ell)
