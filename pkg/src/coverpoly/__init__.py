"""Vertex cover ideals of cactus graphs and the weakly polymatroidal property."""

from coverpoly.errors import BudgetExceeded, CoverpolyError, InputError, StructuralViolation
from coverpoly.graph import Graph, is_cactus, simple_cycles
from coverpoly.monomial import Monomial
from coverpoly.ideal import (
    Factorization,
    MonomialIdeal,
    cover_ideal,
    ideal_power,
    membership,
    minimal_vertex_covers,
)
from coverpoly.structure import Decomposition, FiveCycle, find_decomposition, variable_order
from coverpoly.wp import first_divergence, wp_check

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "CoverpolyError",
    "Decomposition",
    "Factorization",
    "FiveCycle",
    "Graph",
    "InputError",
    "Monomial",
    "MonomialIdeal",
    "StructuralViolation",
    "cover_ideal",
    "find_decomposition",
    "first_divergence",
    "ideal_power",
    "is_cactus",
    "membership",
    "minimal_vertex_covers",
    "simple_cycles",
    "variable_order",
    "wp_check",
]
