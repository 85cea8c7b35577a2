"""Grover discrete-time quantum walks: Chebyshev fidelities and state-transfer deciders."""

from .chebyshev_walk import fidelity_sweep, pst_check, transfer_fidelity
from .graph_core import Graph, build_graph, discriminant, walk_matrices
from .kronecker_relations import PgstVerdict, decide_pgst_generic
from .spectral import decompose, sign_pattern

__all__ = [
    "Graph",
    "PgstVerdict",
    "build_graph",
    "decide_pgst_generic",
    "decompose",
    "discriminant",
    "fidelity_sweep",
    "pst_check",
    "sign_pattern",
    "transfer_fidelity",
    "walk_matrices",
]
__version__ = "0.1.0"
