"""Letting majorization pick the gates.

Starting from uniform superpositions, the search adds one controlled-Z at
a time on an allowed edge, only accepting gates that keep every bipartition
majorized, and stops once the state is AME.  It is a heuristic: on the
bow-tie coupling map it stalls on a graph state that is not AME.
"""

from __future__ import annotations

from amekit import greedy_majorizing_search, simulate, verify_ame
from amekit.graphstates import complete_graph, known_graph

for label, graph, d, budget in [
    ("K5, qubits", complete_graph(5), 2, 5),
    ("K5, qutrits", complete_graph(5), 3, 8),
    ("bow-tie, qubits", known_graph("ibmqx4_topology"), 2, 8),
]:
    circuit, report = greedy_majorizing_search(graph, d, budget)
    edges = [g.sites for g in circuit.gates if g.is_entangling]
    ok, dev = verify_ame(simulate(circuit))
    print(f"{label}: {len(edges)} gates {edges}")
    print(f"  AME {ok} (deviation {dev:.1e}), every step majorizes: {report.majorizes}")
