from __future__ import annotations

import itertools
import math

import numpy as np
import pytest

from amekit.circuit import (
    CNOT,
    CZ,
    GATE_KINDS,
    RY,
    C3ADD,
    Circuit,
    F,
    Gate,
    CZd,
    H,
    depth,
    entangling_count,
    gate_matrix,
    simulate,
    simulate_with_snapshots,
)
from amekit.errors import InputError
from amekit.graphstates import graph_to_circuit, known_graph
from amekit.linalg import StateVector, basis_state, is_unitary, mixed_radix_index, reduced_spectrum, zero_state


def sample_gate(kind):
    arity, _ = GATE_KINDS[kind]
    theta = 0.37 if kind in ("RY", "CPH") else None
    d = 3 if kind in ("F_D", "CZ_D") else None
    return Gate(kind, tuple(range(arity)), theta, d)


@pytest.mark.parametrize("kind", sorted(GATE_KINDS))
def test_every_gate_is_unitary(kind):
    assert is_unitary(gate_matrix(sample_gate(kind)), tol=1e-12)


def test_qubit_cz_and_qutrit_cz():
    assert np.allclose(gate_matrix(CZ(0, 1)), np.diag([1, 1, 1, -1]))
    m = gate_matrix(CZd(3, 0, 1))
    assert m[8, 8] == pytest.approx(np.exp(2j * np.pi / 3))
    assert np.allclose(gate_matrix(CZd(2, 0, 1)), np.diag([1, 1, 1, -1]))


def test_adder_maps_one_one_to_one_two():
    out = simulate(Circuit((3, 3), (C3ADD(0, 1),)), basis_state((3, 3), (1, 1)))
    assert out.amps[mixed_radix_index((3, 3), (1, 2))] == 1


@pytest.mark.parametrize("kind,flipped", [("CCNOT_A", 0b101), ("CCNOT_B", 0b100)])
def test_signed_toffolis(kind, flipped):
    exact = gate_matrix(Gate("CCNOT", (0, 1, 2)))
    m = gate_matrix(Gate(kind, (0, 1, 2)))
    for k in range(8):
        sign = -1 if k == flipped else 1
        assert np.allclose(m[:, k], sign * exact[:, k])


def test_ry_convention():
    m = gate_matrix(RY(math.pi / 2, 0))
    assert np.allclose(m @ [1, 0], np.array([1, 1]) / math.sqrt(2))


def test_gate_validation():
    with pytest.raises(InputError):
        Gate("FOO", (0,))
    with pytest.raises(InputError):
        Gate("CNOT", (0, 0))
    with pytest.raises(InputError):
        Gate("CNOT", (0,))
    with pytest.raises(InputError):
        Gate("RY", (0,))
    with pytest.raises(InputError):
        Gate("H", (0,), theta=1.0)
    with pytest.raises(InputError):
        Gate("F_D", (0,))
    with pytest.raises(InputError):
        Gate("RY", (0,), theta=float("nan"))


def test_circuit_validation_is_eager():
    with pytest.raises(InputError):
        Circuit((3, 3), (CNOT(0, 1),))
    with pytest.raises(InputError):
        Circuit((2, 2), (CNOT(0, 2),))
    with pytest.raises(InputError):
        Circuit((2, 3), (CZd(3, 0, 1),))
    with pytest.raises(InputError):
        Circuit((2, 2), ("H",))


def test_json_round_trip(tmp_path):
    c = Circuit((2, 2, 3), (H(0), RY(0.25, 1), CNOT(0, 1), F(3, 2)), {"note": "x"})
    path = tmp_path / "c.json"
    c.to_json(path)
    back = Circuit.from_json(path)
    assert back == c
    assert back.meta == {"note": "x"}
    assert Circuit.from_json(c.to_json()).gates == c.gates
    d = c.to_dict()
    assert d["gates"][1] == {"kind": "RY", "params": {"theta": 0.25}, "sites": [1]}


def test_json_errors():
    with pytest.raises(InputError):
        Circuit.from_json("{not json")
    with pytest.raises(InputError):
        Circuit.from_dict({"dims": [2]})
    with pytest.raises(InputError):
        Circuit.from_dict({"dims": [2], "gates": [{"sites": [0]}]})


def test_empty_circuit():
    c = Circuit((2, 2))
    assert entangling_count(c) == 0 and depth(c) == 0
    snaps = simulate_with_snapshots(c)
    assert len(snaps) == 1 and snaps[0][0] == 0
    assert np.allclose(snaps[0][1].amps, zero_state((2, 2)).amps)


def test_bell_pair_graph_state():
    s = simulate(Circuit((2, 2), (H(0), H(1), CZ(0, 1))))
    assert np.allclose(s.amps, np.array([1, 1, 1, -1]) / 2)


def test_pentagon_counts_and_snapshots():
    c = graph_to_circuit(known_graph("ame5_cycle"), 2)
    assert entangling_count(c) == 5
    snaps = simulate_with_snapshots(c)
    assert [s for s, _ in snaps] == [1, 2, 3, 4, 5]
    assert np.allclose(snaps[-1][1].amps, simulate(c).amps)


def test_trailing_local_gates_fold_into_last_snapshot():
    c = Circuit((2, 2), (H(0), CNOT(0, 1), H(1)))
    snaps = simulate_with_snapshots(c)
    assert len(snaps) == 1
    assert np.allclose(snaps[0][1].amps, simulate(c).amps)


def test_depth_layers():
    c = Circuit((2,) * 4, (CZ(0, 1), CZ(2, 3), CZ(1, 2), H(0)))
    assert depth(c) == 2
    assert depth(c, entangling_only=True) == 2
    assert depth(Circuit((2,) * 3, (H(0), H(1), CZ(0, 1)))) == 2


def test_simulate_is_associative():
    rng = np.random.default_rng(5)
    c1 = random_circuit(rng, 4, 10)
    c2 = random_circuit(rng, 4, 10)
    assert np.allclose(simulate(c1 + c2).amps, simulate(c2, simulate(c1)).amps)


def test_initial_state_dims_checked():
    with pytest.raises(InputError):
        simulate(Circuit((2, 2)), zero_state((2,)))


def random_circuit(rng, n, n_gates):
    gates = []
    for _ in range(n_gates):
        kind = rng.choice(["H", "RY", "S", "CNOT", "CZ", "CPH"])
        if kind in ("H", "S"):
            gates.append(Gate(kind, (int(rng.integers(n)),)))
        elif kind == "RY":
            gates.append(RY(float(rng.uniform(0, 2 * np.pi)), int(rng.integers(n))))
        else:
            a, b = (int(x) for x in rng.choice(n, size=2, replace=False))
            theta = float(rng.uniform(0, 2 * np.pi)) if kind == "CPH" else None
            gates.append(Gate(kind, (a, b), theta))
    return Circuit((2,) * n, tuple(gates))


def test_random_circuits_preserve_norm_and_schmidt_symmetry():
    rng = np.random.default_rng(2024)
    for _ in range(100):
        c = random_circuit(rng, 6, 20)
        start = StateVector((2,) * 6, rng.normal(size=64) + 1j * rng.normal(size=64))
        start = StateVector(start.dims, start.amps / start.norm)
        out = simulate(c, start)
        assert abs(out.norm - 1) < 1e-12
        for k in (1, 2, 3):
            for a in itertools.combinations(range(6), k):
                comp = [s for s in range(6) if s not in a]
                la = reduced_spectrum(out, list(a))
                lb = reduced_spectrum(out, comp)
                size = max(la.size, lb.size)
                la, lb = np.pad(la, (0, size - la.size)), np.pad(lb, (0, size - lb.size))
                assert np.allclose(la, lb, atol=1e-10)
