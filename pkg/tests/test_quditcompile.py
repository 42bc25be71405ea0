from __future__ import annotations

import itertools
import math

import numpy as np
import pytest

from amekit.circuit import CZ, RY, C3ADD, Circuit, CZd, F, Gate, H, gate_matrix, simulate
from amekit.errors import InputError, UnsupportedConstructError
from amekit.graphstates import graph_to_circuit, known_graph
from amekit.linalg import StateVector, basis_state
from amekit.quditcompile import (
    U3_ANGLE,
    Encoding,
    ame43_circuit,
    ame43_qubit_circuit,
    c3_adder_circuit,
    compile_to_qubits,
    cz_qudit_circuit,
    decode,
    encode,
    expand_toffolis,
    qubit_layout,
    toffoli_expansion,
    u_in_circuit,
)


def circuit_unitary(c: Circuit) -> np.ndarray:
    dim = 2**c.n
    cols = [simulate(c, StateVector(c.dims, np.eye(dim)[k])).amps for k in range(dim)]
    return np.array(cols).T


def equal_up_to_phase(a, b, tol=1e-12):
    k = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    phase = a[k] / b[k]
    return abs(abs(phase) - 1) < tol and np.allclose(a, phase * b, atol=tol)


def check_two_qudit_fragment(fragment: Circuit, native: Gate, d: int) -> int:
    """Compare the fragment with the native gate on every encoded basis pair; returns case count."""
    cases = 0
    for i, j in itertools.product(range(d), repeat=2):
        q_in = encode(basis_state((d, d), (i, j)))
        expected = encode(simulate(Circuit((d, d), (native,)), basis_state((d, d), (i, j))))
        got = simulate(fragment, q_in)
        assert np.allclose(got.amps, expected.amps, atol=1e-12), (i, j)
        cases += 1
    return cases


def test_encoding():
    e = Encoding(3)
    assert e.m == 2
    assert [e.encode(k) for k in range(3)] == [(0, 0), (0, 1), (1, 0)]
    assert e.decode((1, 1)) is None
    assert Encoding(2).m == 1 and Encoding(4).m == 2 and Encoding(5).m == 3
    with pytest.raises(InputError):
        e.encode(3)
    assert qubit_layout((3, 2, 4)) == [(0, 1), (2,), (3, 4)]


@pytest.mark.parametrize("d", [2, 3, 4])
def test_initializer_gives_uniform_superposition(d):
    frag = u_in_circuit(d).circuit
    out = simulate(frag)
    target = encode(simulate(Circuit((d,), (F(d, 0),))))
    assert np.allclose(out.amps, target.amps, atol=1e-12)


def test_initializer_with_opposite_rotation_sign_is_wrong():
    flipped = Circuit((2, 2), (RY(-U3_ANGLE, 0), Gate("CTRL_H", (0, 1)), Gate("CNOT", (1, 0))))
    target = np.array([1, 1, 1, 0]) / math.sqrt(3)
    assert not np.allclose(simulate(flipped).amps, target, atol=1e-6)
    with pytest.raises(InputError):
        u_in_circuit(5)


@pytest.mark.parametrize("d,cases", [(3, 9), (4, 16)])
def test_generalized_cz_fragments_exact(d, cases):
    assert check_two_qudit_fragment(cz_qudit_circuit(d).circuit, CZd(d, 0, 1), d) == cases


@pytest.mark.parametrize("variant", ["a", "b", "exact"])
@pytest.mark.parametrize("expand", [False, True])
def test_adder_variants_exact(variant, expand):
    frag = c3_adder_circuit(variant).circuit
    if expand:
        frag = expand_toffolis(frag)
        if variant != "exact":
            assert all(len(g.sites) <= 2 for g in frag.gates)
    assert check_two_qudit_fragment(frag, C3ADD(0, 1), 3) == 9


def test_variant_a_needs_its_corrections():
    frag = c3_adder_circuit("a", include_fixups=False).circuit
    bad = 0
    for i, j in itertools.product(range(3), repeat=2):
        expected = encode(simulate(Circuit((3, 3), (C3ADD(0, 1),)), basis_state((3, 3), (i, j))))
        got = simulate(frag, encode(basis_state((3, 3), (i, j))))
        bad += not np.allclose(got.amps, expected.amps)
    assert bad > 0


@pytest.mark.parametrize("kind", ["CCNOT_A", "CCNOT_B"])
def test_toffoli_expansions_match_signed_tables(kind):
    c = Circuit((2, 2, 2), tuple(toffoli_expansion(kind, 0, 1, 2)))
    assert equal_up_to_phase(circuit_unitary(c), gate_matrix(Gate(kind, (0, 1, 2))))


@pytest.mark.parametrize("first", [3 * math.pi / 2, -3 * math.pi / 2])
def test_three_half_pi_rotations_do_not_give_a_toffoli(first):
    gates = [RY(first, 2), CZ(1, 2), RY(-first, 2), CZ(0, 2), RY(first, 2), CZ(1, 2), RY(-first, 2)]
    u = circuit_unitary(Circuit((2, 2, 2), tuple(gates)))
    for kind in ("CCNOT", "CCNOT_A", "CCNOT_B"):
        assert not equal_up_to_phase(u, gate_matrix(Gate(kind, (0, 1, 2))), tol=1e-6)


def test_toffoli_expansion_unknown_kind():
    with pytest.raises(InputError):
        toffoli_expansion("CCNOT", 0, 1, 2)
    with pytest.raises(InputError):
        c3_adder_circuit("c")


@pytest.mark.parametrize("d", [3, 4])
@pytest.mark.parametrize("name", ["ame5_cycle", "ame6"])
def test_compiled_graph_circuits_decode_to_native(d, name):
    native = graph_to_circuit(known_graph(name), d)
    compiled = compile_to_qubits(native)
    assert compiled.meta["encoding"]["qudit_dims"] == [d] * native.n
    got, leak = decode(simulate(compiled), native.dims)
    assert leak < 1e-12
    assert np.max(np.abs(got.amps - simulate(native).amps)) < 1e-9


@pytest.mark.parametrize("which", ["original", "optimized"])
@pytest.mark.parametrize("variant", ["a", "b"])
@pytest.mark.parametrize("expand", [False, True])
def test_compiled_ame43_circuits(which, variant, expand):
    native = simulate(ame43_circuit(which))
    compiled = ame43_qubit_circuit(which, adder_variant=variant, expand=expand)
    assert compiled.dims == (2,) * 8
    got, leak = decode(simulate(compiled), (3,) * 4)
    assert leak < 1e-12
    assert np.allclose(got.amps, native.amps, atol=1e-12)


def test_adders_on_occupied_targets_use_the_full_fragment():
    c = Circuit((3, 3), (F(3, 0), F(3, 1), C3ADD(0, 1)))
    compiled = compile_to_qubits(c, copy_adders=True)
    assert any(g.kind == "CCNOT_B" for g in compiled.gates)
    got, _ = decode(simulate(compiled), (3, 3))
    assert np.allclose(got.amps, simulate(c).amps)


def test_mixed_registers_pass_qubit_gates_through():
    c = Circuit((2, 3), (H(0), F(3, 1), Gate("S", (0,))))
    compiled = compile_to_qubits(c)
    got, _ = decode(simulate(compiled), (2, 3))
    assert np.allclose(got.amps, simulate(c).amps)


def test_unsupported_constructs():
    with pytest.raises(UnsupportedConstructError):
        compile_to_qubits(Circuit((3, 3), (F(3, 0), CZd(3, 0, 1), F(3, 0))))
    with pytest.raises(UnsupportedConstructError):
        compile_to_qubits(Circuit((5,), (F(5, 0),)))
    with pytest.raises(UnsupportedConstructError):
        compile_to_qubits(Circuit((5, 5), (CZd(5, 0, 1),)))


def test_decode_rejects_wrong_register():
    with pytest.raises(InputError):
        decode(basis_state((2, 2, 2), (0, 0, 0)), (3, 3))


def test_decode_reports_leakage():
    state = basis_state((2, 2), (1, 1))
    got, leak = decode(state, (3,))
    assert leak == pytest.approx(1.0) and got.norm == 0
