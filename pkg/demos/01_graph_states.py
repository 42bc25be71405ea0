"""Graph states as AME states.

Prepare the pentagon and the six-vertex graph state in several local
dimensions, then check that every balanced reduction is maximally mixed.
"""

from __future__ import annotations

from amekit import graph_to_circuit, known_graph, simulate, verify_ame
from amekit.graphstates import AME44_PARTIES

for name, dims in [("ame5_cycle", (2, 3, 5)), ("ame6", (2, 3, 5)), ("ame4_prime", (2, 3, 5))]:
    for d in dims:
        ok, dev = verify_ame(simulate(graph_to_circuit(known_graph(name), d)))
        print(f"{name:12s} d={d}  AME={ok!s:5s}  max deviation {dev:.2e}")

# Eight qubits on an octagon: AME once adjacent qubit pairs are read as ququarts.
state = simulate(graph_to_circuit(known_graph("ame44_qubits"), 2))
print("octagon as 4 ququarts:", verify_ame(state, AME44_PARTIES))
print("octagon as 8 qubits:  ", verify_ame(state))
