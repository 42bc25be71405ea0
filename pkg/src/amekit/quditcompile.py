"""Lowering qudit circuits (d = 3, 4) onto qubits.

Qudit level ``k`` is stored in ``m = ceil(log2 d)`` qubits holding the
binary digits of ``k``, most significant first; for ``d = 3`` the pattern
``11`` is never populated.  Every fragment here is checked against the
native qudit gate on all encoded basis states by the test-suite.

Rotation angles are given in the ``exp(-i theta Y / 2)`` convention of
:func:`amekit.circuit.ry_matrix`; every angle below was fixed by checking
the fragment against its truth table, not by symbolic derivation.  The
controlled-Z form of the approximate Toffoli needs rotations of 3*pi/4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .circuit import CNOT, CPH, CZ, RY, Circuit, Gate
from .errors import InputError, UnsupportedConstructError
from .linalg import StateVector, mixed_radix_digits

U3_ANGLE = 2 * math.acos(1 / math.sqrt(3))


@dataclass(frozen=True)
class Encoding:
    d: int

    def __post_init__(self):
        if self.d < 2:
            raise InputError("qudit dimension must be >= 2")

    @property
    def m(self) -> int:
        return max(1, math.ceil(math.log2(self.d)))

    def encode(self, k: int) -> tuple[int, ...]:
        if not 0 <= k < self.d:
            raise InputError(f"level {k} out of range for d={self.d}")
        return tuple((k >> (self.m - 1 - b)) & 1 for b in range(self.m))

    def decode(self, bits: Sequence[int]) -> int | None:
        k = int("".join(str(int(b)) for b in bits), 2)
        return k if k < self.d else None


@dataclass(frozen=True)
class CompiledFragment:
    circuit: Circuit
    fixups: tuple[Gate, ...] = ()
    variant: str = "exact"


def _fragment(n_qubits: int, gates, fixups=(), variant="exact") -> CompiledFragment:
    return CompiledFragment(Circuit((2,) * n_qubits, tuple(gates) + tuple(fixups)), tuple(fixups), variant)


def u_in_circuit(d: int) -> CompiledFragment:
    """Qubit circuit taking ``|0...0>`` to the encoded uniform superposition over ``d`` levels."""
    if d == 2:
        return _fragment(1, [Gate("H", (0,))])
    if d == 3:
        # 1:2 weight split on qubit 0, controlled-H halves the |1> branch, CNOT moves |11> to |01>
        return _fragment(2, [RY(U3_ANGLE, 0), Gate("CTRL_H", (0, 1)), CNOT(1, 0)])
    if d == 4:
        return _fragment(2, [Gate("H", (0,)), Gate("H", (1,))])
    raise InputError(f"no initializer for d={d}; supported d are 2, 3, 4")


def cz_qudit_circuit(d: int) -> CompiledFragment:
    """Encoded CZ_d on qubits (k1, k0, l1, l0) for d in {3, 4}."""
    if d == 3:
        # k*l = k1 l1 + 2 k1 l0 + 2 k0 l1 + k0 l0  (mod 3)
        w = 2 * math.pi / 3
        return _fragment(4, [CPH(w, 1, 3), CPH(w, 0, 2), CPH(-w, 0, 3), CPH(-w, 1, 2)])
    if d == 4:
        # i^(k*l) = i^(k0 l0) (-1)^(k0 l1) (-1)^(k1 l0)
        return _fragment(4, [CPH(math.pi / 2, 1, 3), CZ(1, 2), CZ(0, 3)])
    raise InputError(f"generalized CZ lowering exists for d = 3, 4 only, not {d}")


def c3_adder_circuit(variant: str = "b", *, include_fixups: bool = True) -> CompiledFragment:
    """Encoded qutrit adder ``|i>|j> -> |i>|i+j mod 3>`` on qubits (i1, i0, j1, j0).

    The first three gates add 1 when the control is ``|01>``, the last three
    add 2 when it is ``|10>``.  Variant ``a`` uses Toffolis that flip the sign
    of ``|101>`` and needs two CZ corrections; the ``|100>`` signs of variant
    ``b`` cancel in pairs.
    """
    toffoli = {"a": "CCNOT_A", "b": "CCNOT_B", "exact": "CCNOT"}.get(variant)
    if toffoli is None:
        raise InputError(f"unknown adder variant {variant!r}")
    gates = [
        CNOT(1, 2),
        Gate(toffoli, (1, 2, 3)),
        Gate(toffoli, (1, 3, 2)),
        CNOT(0, 3),
        Gate(toffoli, (0, 3, 2)),
        Gate(toffoli, (0, 2, 3)),
    ]
    fixups = (CZ(1, 2), CZ(0, 3)) if variant == "a" and include_fixups else ()
    return _fragment(4, gates, fixups, variant)


def toffoli_expansion(kind: str, c1: int, c2: int, t: int) -> list[Gate]:
    """One- and two-qubit form of an approximate Toffoli (signed truth table, up to global phase)."""
    if kind == "CCNOT_A":
        a = 3 * math.pi / 4
        return [RY(a, t), CZ(c2, t), RY(-a, t), CZ(c1, t), RY(a, t), CZ(c2, t), RY(-a, t)]
    if kind == "CCNOT_B":
        a = math.pi / 4
        return [RY(-a, t), CNOT(c2, t), RY(-a, t), CNOT(c1, t), RY(a, t), CNOT(c2, t), RY(a, t)]
    raise InputError(f"no expansion for {kind!r}")


def expand_toffolis(circuit: Circuit) -> Circuit:
    gates = []
    for g in circuit.gates:
        if g.kind in ("CCNOT_A", "CCNOT_B"):
            gates += toffoli_expansion(g.kind, *g.sites)
        else:
            gates.append(g)
    return Circuit(circuit.dims, tuple(gates), dict(circuit.meta))


def qubit_layout(qudit_dims: Sequence[int]) -> list[tuple[int, ...]]:
    """Qubit sites holding each qudit, in register order."""
    out, off = [], 0
    for d in qudit_dims:
        m = Encoding(d).m
        out.append(tuple(range(off, off + m)))
        off += m
    return out


def _place(fragment: CompiledFragment, sites: Sequence[int]) -> list[Gate]:
    return [Gate(g.kind, tuple(sites[s] for s in g.sites), g.theta, g.d) for g in fragment.circuit.gates]


def compile_to_qubits(
    circuit: Circuit,
    *,
    adder_variant: str = "b",
    expand: bool = False,
    copy_adders: bool = True,
) -> Circuit:
    """Qubit circuit whose decoded output equals ``simulate(circuit)``.

    ``F_D`` is only lowered as an initializer on a site still in ``|0>``.
    With ``copy_adders`` an adder whose target is still ``|0>`` becomes two
    CNOTs copying the control bits.  ``expand`` rewrites approximate
    Toffolis into one- and two-qubit gates.
    """
    layout = qubit_layout(circuit.dims)
    n_qubits = sum(len(q) for q in layout)
    fresh = [True] * circuit.n
    out: list[Gate] = []
    for g in circuit.gates:
        qs = [layout[s] for s in g.sites]
        if g.kind == "F_D":
            (s,) = g.sites
            if g.d != 2 and not fresh[s]:
                raise UnsupportedConstructError(
                    f"F_D on site {s} after it was already acted on; only |0> initializers can be lowered"
                )
            if g.d not in (2, 3, 4):
                raise UnsupportedConstructError(f"no qubit initializer for d={g.d}")
            out += _place(u_in_circuit(g.d), qs[0])
        elif g.kind == "CZ_D":
            if g.d == 2:
                out.append(CZ(qs[0][0], qs[1][0]))
            elif g.d in (3, 4):
                out += _place(cz_qudit_circuit(g.d), qs[0] + qs[1])
            else:
                raise UnsupportedConstructError(f"no CZ lowering for d={g.d}")
        elif g.kind == "C3ADD":
            c, t = g.sites
            if copy_adders and fresh[t]:
                out += [CNOT(qs[0][0], qs[1][0]), CNOT(qs[0][1], qs[1][1])]
            else:
                out += _place(c3_adder_circuit(adder_variant), qs[0] + qs[1])
        else:
            # qubit gate on d=2 sites
            out.append(Gate(g.kind, tuple(q[0] for q in qs), g.theta, g.d))
        for s in g.sites:
            fresh[s] = False
    compiled = Circuit((2,) * n_qubits, tuple(out), {"encoding": {"qudit_dims": list(circuit.dims)}})
    return expand_toffolis(compiled) if expand else compiled


def _image_indices(qudit_dims: Sequence[int]) -> np.ndarray:
    """Flat qubit index of every qudit basis state, in qudit mixed-radix order."""
    encs = [Encoding(d) for d in qudit_dims]
    total = math.prod(qudit_dims)
    idx = np.empty(total, dtype=np.int64)
    for flat in range(total):
        bits: list[int] = []
        for enc, k in zip(encs, mixed_radix_digits(qudit_dims, flat)):
            bits += enc.encode(k)
        idx[flat] = int("".join(map(str, bits)), 2) if bits else 0
    return idx


def decode(state: StateVector, qudit_dims: Sequence[int]) -> tuple[StateVector, float]:
    """Qudit state read off an encoded qubit state, plus the norm found outside the encoding."""
    qudit_dims = tuple(qudit_dims)
    n_qubits = sum(Encoding(d).m for d in qudit_dims)
    if state.dims != (2,) * n_qubits:
        raise InputError(f"state dims {state.dims} do not hold qudits {qudit_dims}")
    idx = _image_indices(qudit_dims)
    amps = state.amps[idx]
    mask = np.ones(state.amps.size, dtype=bool)
    mask[idx] = False
    leak = float(np.linalg.norm(state.amps[mask]))
    return StateVector(qudit_dims, amps), leak


def encode(state: StateVector) -> StateVector:
    """Embed a qudit state into the qubit register."""
    n_qubits = sum(Encoding(d).m for d in state.dims)
    amps = np.zeros(2**n_qubits, dtype=complex)
    amps[_image_indices(state.dims)] = state.amps
    return StateVector((2,) * n_qubits, amps)


def ame43_circuit(which: str = "original") -> Circuit:
    """Four-qutrit circuits built from F_3 and qutrit adders whose output is |Omega_{4,3}>.

    ``original`` uses 5 adders; ``optimized`` uses 4 with two of them in parallel.
    Both agree with the reference state after a permutation of the qutrits.
    """
    f3 = lambda s: Gate("F_D", (s,), d=3)  # noqa: E731
    add = lambda c, t: Gate("C3ADD", (c, t))  # noqa: E731
    if which == "original":
        gates = [f3(2), f3(3), add(3, 1), add(3, 0), add(2, 1), add(2, 0), add(2, 0)]
    elif which == "optimized":
        gates = [f3(0), f3(1), add(1, 2), add(0, 1), add(2, 3), add(1, 2)]
    else:
        raise InputError(f"unknown AME(4,3) circuit {which!r}")
    return Circuit((3, 3, 3, 3), tuple(gates))


def ame43_qubit_circuit(which: str = "original", *, adder_variant: str = "b", expand: bool = False) -> Circuit:
    """Eight-qubit version; the adders that copy onto fresh qutrits become CNOT pairs."""
    return compile_to_qubits(ame43_circuit(which), adder_variant=adder_variant, expand=expand, copy_adders=True)
