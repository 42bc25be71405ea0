"""Reference states and named hardware circuits.

Amplitudes are kept as integer sign patterns plus a rational squared
normalization, and only turned into floats when a state is requested.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable

import numpy as np

from .circuit import CNOT, Circuit, H, Z
from .errors import InputError
from .linalg import StateVector, mixed_radix_digits, mixed_radix_index

# coefficient of |i-1> in binary, i = 1..32
UPSILON_52_SIGNS = (
    1, 1, 1, 1, 1, -1, -1, 1, 1, -1, -1, 1, 1, 1, 1, 1, 1, 1,
    -1, -1, 1, -1, 1, -1, -1, 1, -1, 1, -1, -1, 1, 1,
)

ZERO_L1 = (
    (+1, "00000"), (+1, "10010"), (+1, "01001"), (+1, "10100"),
    (+1, "01010"), (-1, "11011"), (-1, "00110"), (-1, "11000"),
    (-1, "11101"), (-1, "00011"), (-1, "11110"), (-1, "01111"),
    (-1, "10001"), (-1, "01100"), (-1, "10111"), (+1, "00101"),
)
ONE_L1 = (
    (+1, "11111"), (+1, "01101"), (+1, "10110"), (+1, "01011"),
    (+1, "10101"), (-1, "00100"), (-1, "11001"), (-1, "00111"),
    (-1, "00010"), (-1, "11100"), (-1, "00001"), (-1, "10000"),
    (-1, "01110"), (-1, "10011"), (-1, "01000"), (+1, "11010"),
)

# six-qubit state as |abc> (x) (|s1 s2 s3> + sign |t1 t2 t3>) over the +/- basis
OMEGA_62_BLOCKS = (
    ("000", +1, "+-+", +1, "-+-"),
    ("001", -1, "+--", +1, "-++"),
    ("010", +1, "++-", -1, "--+"),
    ("011", -1, "+++", -1, "---"),
    ("100", -1, "+++", +1, "---"),
    ("101", -1, "++-", -1, "--+"),
    ("110", -1, "+--", -1, "-++"),
    ("111", -1, "+-+", +1, "-+-"),
)

ZERO_L2 = ((+1, "00000"), (+1, "00011"), (+1, "01100"), (-1, "01111"))
ONE_L2 = ((+1, "11010"), (+1, "11001"), (+1, "10110"), (-1, "10101"))

OMEGA_64_KETS = """
000000 111100 222200 333300 321010 230110 103210 012310
132020 023120 310220 201320 213030 302130 031230 120330
231001 320101 013201 102301 110011 001111 332211 223311
303021 212121 121221 030321 022031 133131 200231 311331
312002 203102 130202 021302 033012 122112 211212 300312
220022 331122 002222 113322 101032 010132 323232 232332
123003 032103 301203 210303 202013 313113 020213 131313
011023 100123 233223 322323 330033 221133 112233 003333
""".split()

# Output of the 5-qubit hardware circuit.  The two minus signs are what the
# circuit produces; with all signs positive the state is not AME.
AME52_HW_TERMS = (
    (+1, "00000"), (+1, "00011"), (-1, "01101"), (+1, "01110"),
    (+1, "10101"), (+1, "10110"), (+1, "11000"), (-1, "11011"),
)


def _from_terms(dims, terms, norm_sq: Fraction) -> StateVector:
    """Sum of ``sign * |ket>`` times ``sqrt(norm_sq)``."""
    amps = np.zeros(math.prod(dims), dtype=complex)
    scale = math.sqrt(norm_sq)
    for sign, ket in terms:
        amps[mixed_radix_index(dims, [int(c) for c in ket])] += sign * scale
    return StateVector(tuple(dims), amps)


def ghz_state(n: int, d: int = 2) -> StateVector:
    """``sum_i |i i ... i> / sqrt(d)``; n = 2 is the generalized Bell state."""
    if n < 2:
        raise InputError("GHZ needs at least two sites")
    if d < 2:
        raise InputError("d must be >= 2")
    amps = np.zeros(d**n, dtype=complex)
    for i in range(d):
        amps[mixed_radix_index((d,) * n, (i,) * n)] = 1 / math.sqrt(d)
    return StateVector((d,) * n, amps)


def ghz5_minus() -> StateVector:
    """``(|00000> - |11111>)/sqrt(2)``, the five-qubit GHZ state used for the Mermin test."""
    return _from_terms((2,) * 5, [(1, "00000"), (-1, "11111")], Fraction(1, 2))


def upsilon_52() -> StateVector:
    terms = [(s, format(i, "05b")) for i, s in enumerate(UPSILON_52_SIGNS)]
    return _from_terms((2,) * 5, terms, Fraction(1, 32))


def logical_l1(bit: int) -> StateVector:
    return _from_terms((2,) * 5, ZERO_L1 if bit == 0 else ONE_L1, Fraction(1, 16))


def logical_l2(bit: int) -> StateVector:
    return _from_terms((2,) * 5, ZERO_L2 if bit == 0 else ONE_L2, Fraction(1, 4))


def _pm_product(pattern: str) -> np.ndarray:
    vec = np.ones(1)
    for c in pattern:
        vec = np.kron(vec, np.array([1.0, 1.0 if c == "+" else -1.0]) / math.sqrt(2))
    return vec


def omega_62() -> StateVector:
    """Six-qubit AME state in its mixed computational / +- form."""
    amps = np.zeros(64, dtype=complex)
    for head, s1, p1, s2, p2 in OMEGA_62_BLOCKS:
        block = s1 * _pm_product(p1) + s2 * _pm_product(p2)
        start = int(head, 2) * 8
        amps[start:start + 8] += block / 4
    return StateVector((2,) * 6, amps)


def omega_62_from_l1() -> StateVector:
    """``(|0>|0_L1> + |1>|1_L1>)/sqrt(2)``."""
    amps = np.concatenate([logical_l1(0).amps, logical_l1(1).amps]) / math.sqrt(2)
    return StateVector((2,) * 6, amps)


def omega_52() -> StateVector:
    return _from_terms((2,) * 5, ZERO_L2 + ONE_L2, Fraction(1, 8))


def omega_43() -> StateVector:
    """``sum_{i,j} |i, j, i+j, i+2j> / 3`` over qutrits."""
    terms = [(1, f"{i}{j}{(i + j) % 3}{(i + 2 * j) % 3}") for i in range(3) for j in range(3)]
    return _from_terms((3,) * 4, terms, Fraction(1, 9))


def omega_64() -> StateVector:
    return _from_terms((4,) * 6, [(1, k) for k in OMEGA_64_KETS], Fraction(1, 64))


def ame52_hardware_state() -> StateVector:
    return _from_terms((2,) * 5, AME52_HW_TERMS, Fraction(1, 8))


def _parse_indexed(name: str, prefix: str, parts: int) -> tuple[int, ...] | None:
    if not name.startswith(prefix):
        return None
    try:
        vals = tuple(int(x) for x in name[len(prefix):].split("_"))
    except ValueError:
        return None
    return vals if len(vals) == parts else None


_FIXED: dict[str, Callable[[], StateVector]] = {
    "upsilon_5_2": upsilon_52,
    "zero_L1": lambda: logical_l1(0),
    "one_L1": lambda: logical_l1(1),
    "omega_6_2": omega_62,
    "zero_L2": lambda: logical_l2(0),
    "one_L2": lambda: logical_l2(1),
    "omega_5_2": omega_52,
    "omega_4_3": omega_43,
    "omega_6_4": omega_64,
    "ame52_ibmqx4": ame52_hardware_state,
    "bell": lambda: ghz_state(2, 2),
    "ghz5": ghz5_minus,
}


def reference_state(name: str) -> StateVector:
    """Catalog lookup.

    Fixed names: see :func:`state_names`.  Parametric names:
    ``omega_2_<d>`` and ``omega_3_<d>`` (Bell / GHZ in dimension d) and
    ``ghz_<n>_<d>``, all with ``+`` signs.  ``ghz5`` is the relative-minus
    state prepared by the ``ghz5_ibmqx4`` circuit.
    """
    if name in _FIXED:
        return _FIXED[name]()
    for prefix, n in (("omega_2_", 2), ("omega_3_", 3)):
        args = _parse_indexed(name, prefix, 1)
        if args:
            return ghz_state(n, args[0])
    args = _parse_indexed(name, "ghz_", 2)
    if args:
        return ghz_state(*args)
    raise InputError(f"unknown state {name!r}")


def state_names() -> list[str]:
    return sorted(_FIXED) + ["omega_2_<d>", "omega_3_<d>", "ghz_<n>_<d>"]


def named_circuit(name: str) -> Circuit:
    """Five-qubit circuits laid out for the ibmqx4 coupling map.

    ``ghz5_ibmqx4`` fans out from qubit 2 only after it has been entangled,
    and applies the Z once qubit 4 is in the superposition; the result is
    ``(|00000> - |11111>)/sqrt(2)``.  ``ghz5_ibmqx4_early_fanout`` runs the
    same gates with the fan-out first and does not reach a GHZ state.
    """
    if name == "ame52_ibmqx4":
        gates = (H(2), H(3), CNOT(2, 1), CNOT(1, 0), H(2), CNOT(2, 4), CNOT(3, 2), CNOT(2, 0))
    elif name == "ghz5_ibmqx4":
        gates = (H(3), CNOT(3, 4), CNOT(3, 2), CNOT(2, 0), CNOT(2, 1), Z(4))
    elif name == "ghz5_ibmqx4_early_fanout":
        gates = (CNOT(2, 0), H(3), Z(4), CNOT(2, 1), CNOT(3, 4), CNOT(3, 2))
    else:
        raise InputError(f"unknown named circuit {name!r}")
    return Circuit((2,) * 5, gates)


def named_circuit_names() -> list[str]:
    return ["ame52_ibmqx4", "ghz5_ibmqx4", "ghz5_ibmqx4_early_fanout"]


def ket_label(dims, digits) -> str:
    sep = "" if max(dims) <= 10 else ","
    return sep.join(str(k) for k in digits)


def measurement_probabilities(state: StateVector, cutoff: float = 1e-15) -> dict[str, float]:
    """Computational-basis outcome probabilities, keyed by digit string."""
    probs = np.abs(state.amps) ** 2
    return {
        ket_label(state.dims, mixed_radix_digits(state.dims, i)): float(p)
        for i, p in enumerate(probs)
        if p >= cutoff
    }


def state_to_records(state: StateVector) -> list[dict]:
    """``[{"ket", "re", "im"}, ...]`` over every basis element."""
    return [
        {"ket": ket_label(state.dims, mixed_radix_digits(state.dims, i)), "re": float(a.real), "im": float(a.imag)}
        for i, a in enumerate(state.amps)
    ]


def state_from_records(records: list[dict]) -> StateVector:
    """Inverse of :func:`state_to_records`; site dimensions come from the largest digit seen."""
    if not records:
        raise InputError("empty state dump")
    try:
        kets = [r["ket"].split(",") if "," in r["ket"] else list(r["ket"]) for r in records]
        digits = [[int(c) for c in k] for k in kets]
        n = len(digits[0])
        if any(len(k) != n for k in digits):
            raise InputError("kets of different lengths in state dump")
        dims = tuple(max(k[s] for k in digits) + 1 for s in range(n))
        dims = tuple(max(d, 2) for d in dims)
        amps = np.zeros(math.prod(dims), dtype=complex)
        for k, r in zip(digits, records):
            amps[mixed_radix_index(dims, k)] = complex(r["re"], r.get("im", 0.0))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed state dump: {exc}") from exc
    return StateVector(dims, amps)
