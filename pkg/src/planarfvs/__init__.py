"""Feedback vertex set algorithms for planar graphs."""

from .approx import minimalize, two_approx
from .bounds import grid_lower_bound
from .embed import Embedding, NonPlanarWitness, test_and_embed, triangulate
from .exact import ExactConfig, Timeout, brute_force_opt, solve_exact
from .generators import gen_grid, gen_random_planar, gen_triangu
from .graph import FvsSolution, GraphError, MultiGraph, is_acyclic, verify_fvs
from .heuristics import HasConfig, HybridConfig, has_search, has_solve, hybrid_solve
from .kernel import KernelOutput, ReductionTrace, kernelize, lift
from .ptas import PtasConfig, PtasLeafError, ptas_solve, sweep_r
from .separator import DecompositionTree, SeparatorResult, decompose, find_separator

__all__ = [
    "DecompositionTree", "Embedding", "ExactConfig", "FvsSolution", "GraphError", "HasConfig",
    "HybridConfig", "KernelOutput", "MultiGraph", "NonPlanarWitness", "PtasConfig", "PtasLeafError",
    "ReductionTrace", "SeparatorResult", "Timeout", "brute_force_opt", "decompose", "find_separator",
    "gen_grid", "gen_random_planar", "gen_triangu", "grid_lower_bound", "has_search", "has_solve",
    "hybrid_solve", "is_acyclic", "kernelize", "lift", "minimalize", "ptas_solve", "solve_exact",
    "sweep_r", "test_and_embed", "triangulate", "two_approx", "verify_fvs",
]
