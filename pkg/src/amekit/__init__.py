"""Simulation and verification toolkit for absolutely maximally entangled states."""

from .analysis import (
    MajorizationReport,
    MerminSettings,
    best_permuted_overlap,
    canonical_bipartitions,
    greedy_majorizing_search,
    majorization_analysis,
    majorizes,
    mermin_classical_max,
    mermin_m5,
    minimal_support,
    verify_ame,
)
from .catalog import measurement_probabilities, named_circuit, reference_state
from .circuit import Circuit, Gate, simulate, simulate_with_snapshots
from .errors import AmeKitError, ConvergenceError, InputError, UnsupportedConstructError, ValidationError
from .graphstates import Graph, graph_to_circuit, known_graph, lc_transform
from .linalg import StateVector, partial_trace, reduced_spectrum, von_neumann_entropy
from .quditcompile import compile_to_qubits, decode

__version__ = "0.1.0"

__all__ = [
    "AmeKitError",
    "Circuit",
    "ConvergenceError",
    "Gate",
    "Graph",
    "InputError",
    "MajorizationReport",
    "MerminSettings",
    "StateVector",
    "UnsupportedConstructError",
    "ValidationError",
    "best_permuted_overlap",
    "canonical_bipartitions",
    "compile_to_qubits",
    "decode",
    "graph_to_circuit",
    "greedy_majorizing_search",
    "known_graph",
    "lc_transform",
    "majorization_analysis",
    "majorizes",
    "measurement_probabilities",
    "mermin_classical_max",
    "mermin_m5",
    "minimal_support",
    "named_circuit",
    "partial_trace",
    "reduced_spectrum",
    "reference_state",
    "simulate",
    "simulate_with_snapshots",
    "verify_ame",
    "von_neumann_entropy",
]
