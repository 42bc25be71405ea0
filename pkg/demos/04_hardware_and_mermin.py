"""Five-qubit circuits shaped for a bow-tie coupling map.

The AME(5,2) circuit prepares eight computational kets with equal weight,
so every measurement outcome occurs with probability 1/8.  The GHZ circuit
reaches the maximal Mermin value 16 while no local hidden-variable
assignment exceeds 4.
"""

from __future__ import annotations

from amekit import measurement_probabilities, mermin_classical_max, mermin_m5, named_circuit, simulate, verify_ame
from amekit.graphstates import is_path_graph, known_graph, lc_sequence

ame = simulate(named_circuit("ame52_ibmqx4"))
print("AME(5,2) on the bow-tie:", verify_ame(ame))
for ket, p in sorted(measurement_probabilities(ame).items()):
    print(f"  |{ket}>  {p:.3f}")

bowtie = known_graph("ibmqx4_topology")
path = lc_sequence(bowtie, [0, 4])
print("bow-tie after local complementation at 0 and 4:", path.edges, "path:", is_path_graph(path))

ghz = simulate(named_circuit("ghz5_ibmqx4"))
print(f"Mermin value of the GHZ circuit: {mermin_m5(ghz):.6f}")
print("classical bound:", mermin_classical_max())
