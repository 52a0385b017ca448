"""Acyclic-number workbench: induced forests in distance-regular graph families."""

__version__ = "0.1.0"

from .graph import Graph, forest_check, is_independent  # noqa: E402
from .families import make_family  # noqa: E402
from .search import max_independent_set, max_induced_forest  # noqa: E402

__all__ = [
    "Graph",
    "forest_check",
    "is_independent",
    "make_family",
    "max_independent_set",
    "max_induced_forest",
]
