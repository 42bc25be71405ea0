"""Entanglement along a circuit.

After each entangling gate the spectrum of every balanced bipartition is
recorded.  A circuit "majorizes" when each spectrum is majorized by the
one before it, so entanglement only grows.
"""

from __future__ import annotations

from amekit import graph_to_circuit, known_graph, majorization_analysis
from amekit.graphstates import AME44_PARTIES
from amekit.quditcompile import ame43_circuit

report = majorization_analysis(graph_to_circuit(known_graph("ame44_qubits"), 2), AME44_PARTIES, circuit_id="octagon")
print("octagon, entropy in bits per step for bipartition", report.bipartitions[0].parties)
print("  ", [round(x, 3) for x in report.bipartitions[0].entropy_bits])

for which in ("original", "optimized"):
    r = majorization_analysis(ame43_circuit(which), circuit_id=which)
    print(f"AME(4,3) {which}: majorizes={r.majorizes}, entropy drops at {r.entropy_decreases()}")

for d in (2, 3, 4, 5):
    r = majorization_analysis(graph_to_circuit(known_graph("ame6"), d))
    print(f"six-vertex graph, d={d}: failing bipartitions {r.failing}")

print()
print(report.to_csv().splitlines()[0])
