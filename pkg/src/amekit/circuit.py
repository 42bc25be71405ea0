"""Gate vocabulary, circuits over mixed-radix registers, and simulation.

Gate kinds are plain string tags.  Site lists put controls before targets,
so ``Gate("CNOT", (c, t))`` flips ``t`` when ``c`` is 1.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import InputError
from .linalg import StateVector, apply_unitary, check_dims, zero_state

# kind -> (arity, required site dimension or None for "any / given by d")
GATE_KINDS: dict[str, tuple[int, int | None]] = {
    "H": (1, 2),
    "X": (1, 2),
    "Z": (1, 2),
    "S": (1, 2),
    "RY": (1, 2),
    "CNOT": (2, 2),
    "CZ": (2, 2),
    "CPH": (2, 2),
    "SWAP": (2, 2),
    "CTRL_H": (2, 2),
    "CCNOT": (3, 2),
    "CCNOT_A": (3, 2),
    "CCNOT_B": (3, 2),
    "F_D": (1, None),
    "CZ_D": (2, None),
    "C3ADD": (2, 3),
}
PARAMETRIC = {"RY", "CPH"}
QUDIT = {"F_D", "CZ_D"}


@dataclass(frozen=True)
class Gate:
    kind: str
    sites: tuple[int, ...]
    theta: float | None = None
    d: int | None = None

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise InputError(f"unknown gate kind {self.kind!r}")
        sites = tuple(int(s) for s in self.sites)
        object.__setattr__(self, "sites", sites)
        arity, _ = GATE_KINDS[self.kind]
        if len(sites) != arity:
            raise InputError(f"{self.kind} acts on {arity} sites, got {sites}")
        if len(set(sites)) != len(sites):
            raise InputError(f"repeated sites in {self.kind}{sites}")
        if self.kind in PARAMETRIC:
            if self.theta is None or not math.isfinite(self.theta):
                raise InputError(f"{self.kind} needs a finite angle")
            object.__setattr__(self, "theta", float(self.theta))
        elif self.theta is not None:
            raise InputError(f"{self.kind} takes no angle")
        if self.kind in QUDIT:
            if self.d is None or int(self.d) < 2:
                raise InputError(f"{self.kind} needs a level count d >= 2")
            object.__setattr__(self, "d", int(self.d))
        elif self.d is not None:
            raise InputError(f"{self.kind} takes no level count")

    @property
    def is_entangling(self) -> bool:
        return len(self.sites) >= 2

    def site_dims(self) -> tuple[int, ...]:
        _, dim = GATE_KINDS[self.kind]
        return (dim if dim is not None else self.d,) * len(self.sites)

    def to_dict(self) -> dict:
        params = {}
        if self.theta is not None:
            params["theta"] = self.theta
        if self.d is not None:
            params["d"] = self.d
        return {"kind": self.kind, "params": params, "sites": list(self.sites)}

    @classmethod
    def from_dict(cls, data: dict) -> Gate:
        try:
            params = data.get("params") or {}
            return cls(data["kind"], tuple(data["sites"]), params.get("theta"), params.get("d"))
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed gate entry {data!r}") from exc


# shorthand constructors
def H(q): return Gate("H", (q,))
def X(q): return Gate("X", (q,))
def Z(q): return Gate("Z", (q,))
def RY(theta, q): return Gate("RY", (q,), theta=theta)
def CNOT(c, t): return Gate("CNOT", (c, t))
def CZ(a, b): return Gate("CZ", (a, b))
def CPH(theta, a, b): return Gate("CPH", (a, b), theta=theta)
def F(d, q): return Gate("F_D", (q,), d=d)
def CZd(d, a, b): return Gate("CZ_D", (a, b), d=d)
def C3ADD(c, t): return Gate("C3ADD", (c, t))


def _perm_matrix(images: Sequence[int]) -> np.ndarray:
    m = np.zeros((len(images), len(images)), dtype=complex)
    for col, row in enumerate(images):
        m[row, col] = 1.0
    return m


def ry_matrix(theta: float) -> np.ndarray:
    """``exp(-i theta Y / 2)``."""
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def fourier_matrix(d: int) -> np.ndarray:
    k = np.arange(d)
    return np.exp(2j * np.pi * np.outer(k, k) / d) / math.sqrt(d)


def cz_qudit_matrix(d: int) -> np.ndarray:
    k = np.arange(d)
    return np.diag(np.exp(2j * np.pi * np.outer(k, k).reshape(-1) / d))


def _toffoli(sign_index: int | None = None) -> np.ndarray:
    m = _perm_matrix([0, 1, 2, 3, 4, 5, 7, 6])
    if sign_index is not None:
        m[sign_index, sign_index] = -1.0
    return m


@lru_cache(maxsize=256)
def _matrix(kind: str, theta: float | None, d: int | None) -> np.ndarray:
    h = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
    if kind == "H":
        return h
    if kind == "X":
        return _perm_matrix([1, 0])
    if kind == "Z":
        return np.diag([1, -1]).astype(complex)
    if kind == "S":
        return np.diag([1, 1j])
    if kind == "RY":
        return ry_matrix(theta)
    if kind == "CNOT":
        return _perm_matrix([0, 1, 3, 2])
    if kind == "CZ":
        return np.diag([1, 1, 1, -1]).astype(complex)
    if kind == "CPH":
        return np.diag([1, 1, 1, np.exp(1j * theta)])
    if kind == "SWAP":
        return _perm_matrix([0, 2, 1, 3])
    if kind == "CTRL_H":
        m = np.eye(4, dtype=complex)
        m[2:, 2:] = h
        return m
    if kind == "CCNOT":
        return _toffoli()
    if kind == "CCNOT_A":
        return _toffoli(0b101)
    if kind == "CCNOT_B":
        return _toffoli(0b100)
    if kind == "F_D":
        return fourier_matrix(d)
    if kind == "CZ_D":
        return cz_qudit_matrix(d)
    if kind == "C3ADD":
        return _perm_matrix([3 * i + (i + j) % 3 for i in range(3) for j in range(3)])
    raise InputError(f"no matrix for {kind!r}")


def gate_matrix(gate: Gate, dims: Sequence[int] | None = None) -> np.ndarray:
    """Unitary of ``gate``; ``dims`` (if given) must match the gate's site dimensions."""
    if dims is not None and tuple(dims) != gate.site_dims():
        raise InputError(f"{gate.kind} needs site dims {gate.site_dims()}, got {tuple(dims)}")
    m = _matrix(gate.kind, gate.theta, gate.d)
    m = m.copy()
    m.flags.writeable = False
    return m


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list over a register; validated on construction."""

    dims: tuple[int, ...]
    gates: tuple[Gate, ...] = ()
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        dims = check_dims(self.dims)
        gates = tuple(self.gates)
        for g in gates:
            if not isinstance(g, Gate):
                raise InputError(f"not a gate: {g!r}")
            for s in g.sites:
                if not 0 <= s < len(dims):
                    raise InputError(f"{g.kind} site {s} outside a {len(dims)}-site register")
            have = tuple(dims[s] for s in g.sites)
            if have != g.site_dims():
                raise InputError(f"{g.kind} on sites {g.sites} needs dims {g.site_dims()}, register has {have}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "gates", gates)

    @property
    def n(self) -> int:
        return len(self.dims)

    def __len__(self):
        return len(self.gates)

    def __add__(self, other: Circuit) -> Circuit:
        if self.dims != other.dims:
            raise InputError("cannot concatenate circuits over different registers")
        return Circuit(self.dims, self.gates + other.gates, dict(self.meta))

    def append(self, *gates: Gate) -> Circuit:
        return Circuit(self.dims, self.gates + tuple(gates), dict(self.meta))

    def to_dict(self) -> dict:
        out = {"dims": list(self.dims), "gates": [g.to_dict() for g in self.gates]}
        if self.meta:
            out.update(self.meta)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> Circuit:
        if not isinstance(data, dict) or "dims" not in data or "gates" not in data:
            raise InputError("circuit JSON needs 'dims' and 'gates'")
        meta = {k: v for k, v in data.items() if k not in ("dims", "gates")}
        return cls(tuple(data["dims"]), tuple(Gate.from_dict(g) for g in data["gates"]), meta)

    def to_json(self, path: str | Path | None = None, **kwargs) -> str:
        text = json.dumps(self.to_dict(), **kwargs)
        if path is not None:
            Path(path).write_text(text)
        return text

    @classmethod
    def from_json(cls, source: str | Path) -> Circuit:
        path = Path(source)
        text = path.read_text() if path.exists() else str(source)
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid circuit JSON: {exc}") from exc
        return cls.from_dict(data)


def simulate(circuit: Circuit, initial: StateVector | None = None) -> StateVector:
    state = zero_state(circuit.dims) if initial is None else initial
    if state.dims != circuit.dims:
        raise InputError(f"initial state dims {state.dims} != circuit dims {circuit.dims}")
    for g in circuit.gates:
        state = apply_unitary(state, gate_matrix(g), g.sites, check=False)
    return state


def simulate_with_snapshots(circuit: Circuit, initial: StateVector | None = None) -> list[tuple[int, StateVector]]:
    """States after each entangling gate, as ``(step, state)`` with step 1, 2, ...

    Local gates join the next snapshot; trailing local gates are folded into
    the last one (they cannot change any entanglement spectrum).  A circuit
    with no entangling gate yields the single pair ``(0, final_state)``.
    """
    state = zero_state(circuit.dims) if initial is None else initial
    if state.dims != circuit.dims:
        raise InputError(f"initial state dims {state.dims} != circuit dims {circuit.dims}")
    snaps: list[tuple[int, StateVector]] = []
    for g in circuit.gates:
        state = apply_unitary(state, gate_matrix(g), g.sites, check=False)
        if g.is_entangling:
            snaps.append((len(snaps) + 1, state))
    if not snaps:
        return [(0, state)]
    if snaps[-1][1] is not state:
        snaps[-1] = (snaps[-1][0], state)
    return snaps


def entangling_count(circuit: Circuit) -> int:
    return sum(g.is_entangling for g in circuit.gates)


def depth(circuit: Circuit, *, entangling_only: bool = False) -> int:
    """Greedy ASAP layering; gates on disjoint sites share a layer."""
    level = [0] * circuit.n
    total = 0
    for g in circuit.gates:
        if entangling_only and not g.is_entangling:
            continue
        layer = 1 + max(level[s] for s in g.sites)
        for s in g.sites:
            level[s] = layer
        total = max(total, layer)
    return total

