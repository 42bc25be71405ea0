"""Running a qutrit circuit on qubits.

Each qutrit is stored in two qubits.  The compiled circuit is simulated on
eight qubits, decoded back, and compared with the native qutrit run.
"""

from __future__ import annotations

import numpy as np

from amekit import minimal_support, reference_state, simulate, verify_ame
from amekit.analysis import best_permuted_overlap
from amekit.circuit import entangling_count
from amekit.quditcompile import ame43_circuit, ame43_qubit_circuit, decode

for which in ("original", "optimized"):
    native = ame43_circuit(which)
    qubits = ame43_qubit_circuit(which, adder_variant="b", expand=True)
    decoded, leak = decode(simulate(qubits), native.dims)
    err = np.max(np.abs(decoded.amps - simulate(native).amps))
    fid, perm = best_permuted_overlap(decoded, reference_state("omega_4_3"))
    print(f"{which}: {entangling_count(native)} adders -> {len(qubits)} qubit gates")
    print(f"  decode error {err:.1e}, leakage {leak:.1e}")
    print(f"  AME {verify_ame(decoded)[0]}, minimal support {minimal_support(decoded)}")
    print(f"  overlap with the reference state {fid:.12f} after relabeling {perm}")
