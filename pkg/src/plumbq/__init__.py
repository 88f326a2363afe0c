"""Exact q-series invariants of plumbed 3-manifolds."""

from .graph_core import PlumbingGraph, StarShape, classify_star, degrees_and_delta, linking_matrix
from .qseries import QSeries
from .falsetheta import FalseThetaCombination, FalseThetaTerm, AsymptoticExpansion
from .invariants import (reduce_star, z_bruteforce, zhat_bruteforce, decompose_3star,
                         asymptotic_3star, star_asymptotics)

__all__ = [
    "PlumbingGraph", "StarShape", "classify_star", "degrees_and_delta", "linking_matrix",
    "QSeries", "FalseThetaCombination", "FalseThetaTerm", "AsymptoticExpansion",
    "reduce_star", "z_bruteforce", "zhat_bruteforce", "decompose_3star",
    "asymptotic_3star", "star_asymptotics",
]
