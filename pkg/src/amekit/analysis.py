"""AME checks, entanglement majorization along circuits, Mermin M5 and a
majorization-guided circuit search.

Sites can be grouped into *parties* (for example two qubits holding one
ququart).  Every check below is taken over parties, never over the raw
sites inside a party.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .circuit import Circuit, Gate, gate_matrix, simulate, simulate_with_snapshots
from .errors import InputError
from .graphstates import Graph
from .linalg import (
    StateVector,
    apply_unitary,
    eigvals_hermitian,
    overlap,
    partial_trace,
    permute_sites,
    purity,
    von_neumann_entropy,
)

AME_TOL = 1e-9
MAJORIZATION_TOL = 1e-9
ZERO_EIG = 1e-12
SUPPORT_TOL = 1e-12

Parties = tuple[tuple[int, ...], ...]


# ---------------------------------------------------------------- parties


def normalize_parties(dims: Sequence[int], parties=None) -> Parties:
    """Validate a grouping of sites into parties; default is one site each."""
    n = len(dims)
    if parties is None:
        return tuple((s,) for s in range(n))
    groups = tuple(tuple(int(s) for s in p) for p in parties)
    flat = [s for p in groups for s in p]
    if any(not p for p in groups):
        raise InputError("empty party in grouping")
    if sorted(flat) != list(range(n)):
        raise InputError(f"grouping {groups} does not partition {n} sites")
    return groups


def parse_parties(text: str) -> Parties:
    """``"0 1,2 3"`` -> ``((0, 1), (2, 3))``."""
    try:
        groups = tuple(tuple(int(tok) for tok in chunk.split()) for chunk in text.split(","))
    except ValueError as exc:
        raise InputError(f"bad party grouping {text!r}") from exc
    if any(not g for g in groups):
        raise InputError(f"bad party grouping {text!r}")
    return groups


def party_dims(dims: Sequence[int], parties: Parties) -> tuple[int, ...]:
    return tuple(math.prod(dims[s] for s in p) for p in parties)


def _uniform_party_dim(dims, parties: Parties) -> int:
    pd = set(party_dims(dims, parties))
    if len(pd) != 1:
        raise InputError(f"parties have unequal dimensions {sorted(pd)}")
    return pd.pop()


def _sites_of(parties: Parties, members: Sequence[int]) -> list[int]:
    return [s for a in members for s in parties[a]]


# ---------------------------------------------------------------- AME checks


def verify_ame(state: StateVector, parties=None) -> tuple[bool, float]:
    """``(is_ame, max deviation)`` from ``I / D`` over all floor(n/2)-party reductions."""
    parties = normalize_parties(state.dims, parties)
    n = len(parties)
    if n < 2:
        raise InputError("AME needs at least two parties")
    _uniform_party_dim(state.dims, parties)
    k = n // 2
    worst = 0.0
    for members in itertools.combinations(range(n), k):
        rho = partial_trace(state, _sites_of(parties, members))
        dev = np.abs(rho - np.eye(rho.shape[0]) / rho.shape[0]).max()
        worst = max(worst, float(dev))
    return worst <= AME_TOL, worst


def minimal_support(state: StateVector, parties=None) -> bool:
    """Exactly ``d^floor(n/2)`` nonzero amplitudes, all of modulus ``d^(-floor(n/2)/2)``."""
    parties = normalize_parties(state.dims, parties)
    d = _uniform_party_dim(state.dims, parties)
    k = len(parties) // 2
    mods = np.abs(state.amps)
    support = mods[mods > SUPPORT_TOL]
    if support.size != d**k:
        return False
    return bool(np.all(np.abs(support - d ** (-k / 2)) <= AME_TOL))


def best_permuted_overlap(state: StateVector, reference: StateVector) -> tuple[float, tuple[int, ...]]:
    """Largest ``|<reference| P state>|`` over site permutations ``P``, and the permutation."""
    if sorted(state.dims) != sorted(reference.dims):
        raise InputError("states live on different registers")
    best, best_perm = -1.0, tuple(range(state.n))
    for perm in itertools.permutations(range(state.n)):
        if tuple(state.dims[s] for s in perm) != reference.dims:
            continue
        val = abs(overlap(reference, permute_sites(state, perm)))
        if val > best + 1e-12:
            best, best_perm = val, perm
    return best, best_perm


# ---------------------------------------------------------------- majorization


def _clean(spectrum) -> np.ndarray:
    lam = np.asarray(spectrum, dtype=float).copy()
    lam[np.abs(lam) < ZERO_EIG] = 0.0
    return np.sort(lam)[::-1]


def majorizes(a, b, tol: float = MAJORIZATION_TOL) -> bool:
    """True iff ``a`` majorizes ``b``: every descending prefix sum of ``a`` is at least that of ``b``."""
    a, b = _clean(a), _clean(b)
    for lam in (a, b):
        if abs(lam.sum() - 1.0) > 1e-9:
            raise InputError(f"spectrum sums to {lam.sum()}, not 1")
    size = max(a.size, b.size)
    a = np.pad(a, (0, size - a.size))
    b = np.pad(b, (0, size - b.size))
    return bool(np.all(np.cumsum(a) >= np.cumsum(b) - tol))


def canonical_bipartitions(n: int) -> list[tuple[int, ...]]:
    """Party sets ``A`` with ``|A| = ceil(n/2)``; at even ``n`` only the one of ``{A, not A}`` holding party 0."""
    if n < 2:
        raise InputError("need at least two parties")
    m = n - n // 2
    out = []
    for a in itertools.combinations(range(n), m):
        if n % 2 == 0 and 0 not in a:
            continue
        out.append(a)
    return out


def _spectrum_of_side(state: StateVector, parties: Parties, a_members, method: str) -> np.ndarray:
    """Spectrum of rho_A, padded with zeros to dim(A); computed on the smaller side."""
    comp = [i for i in range(len(parties)) if i not in a_members]
    dim_a = math.prod(state.dims[s] for s in _sites_of(parties, a_members))
    small = comp if comp and len(comp) <= len(a_members) else list(a_members)
    lam = eigvals_hermitian(partial_trace(state, _sites_of(parties, small)), method=method)
    return np.pad(_clean(lam), (0, dim_a - lam.size))


@dataclass
class BipartitionTrace:
    """Spectra, entropies and purities of one bipartition along the snapshots."""

    parties: tuple[int, ...]
    sites: tuple[int, ...]
    spectra: list[np.ndarray] = field(default_factory=list)
    entropy_bits: list[float] = field(default_factory=list)
    entropy_dits: list[float] = field(default_factory=list)
    purity: list[float] = field(default_factory=list)
    eigen_majorizes: list[bool] = field(default_factory=list)

    @property
    def majorizes(self) -> bool:
        return all(self.eigen_majorizes)

    @property
    def entropy_monotone(self) -> bool:
        return all(b >= a - MAJORIZATION_TOL for a, b in zip(self.entropy_bits, self.entropy_bits[1:]))

    @property
    def purity_monotone(self) -> bool:
        return all(b <= a + MAJORIZATION_TOL for a, b in zip(self.purity, self.purity[1:]))


@dataclass
class MajorizationReport:
    circuit_id: str
    parties: Parties
    steps: list[int]
    bipartitions: list[BipartitionTrace]
    raw_count: int
    baseline: str = "initial state"

    @property
    def failing(self) -> list[tuple[int, ...]]:
        return [b.parties for b in self.bipartitions if not b.majorizes]

    @property
    def majorizes(self) -> bool:
        return not self.failing

    def entropy_decreases(self) -> list[tuple[tuple[int, ...], int]]:
        """``(bipartition, step)`` pairs where the entropy drops relative to the previous snapshot."""
        out = []
        for b in self.bipartitions:
            for i in range(1, len(self.steps)):
                if b.entropy_bits[i] < b.entropy_bits[i - 1] - MAJORIZATION_TOL:
                    out.append((b.parties, self.steps[i]))
        return out

    def final_entropies(self) -> dict[tuple[int, ...], float]:
        return {b.parties: b.entropy_bits[-1] for b in self.bipartitions}

    def to_csv(self, path=None) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["step", "bipartition", "eigenvalues", "entropy_bits", "entropy_dits", "purity", "majorizes_prev"])
        for i, step in enumerate(self.steps):
            for b in self.bipartitions:
                w.writerow([
                    step,
                    " ".join(map(str, b.sites)),
                    ";".join(f"{x:.12g}" for x in b.spectra[i]),
                    f"{b.entropy_bits[i]:.12g}",
                    f"{b.entropy_dits[i]:.12g}",
                    f"{b.purity[i]:.12g}",
                    str(b.eigen_majorizes[i]).lower(),
                ])
        text = buf.getvalue()
        if path is not None:
            with open(path, "w", newline="") as fh:
                fh.write(text)
        return text

    def summary(self) -> dict:
        return {
            "circuit": self.circuit_id,
            "parties": [list(p) for p in self.parties],
            "steps": len(self.steps),
            "bipartitions": len(self.bipartitions),
            "bipartitions_without_dedup": self.raw_count,
            "majorizes": self.majorizes,
            "failing": [list(p) for p in self.failing],
            "entropy_monotone": all(b.entropy_monotone for b in self.bipartitions),
            "purity_monotone": all(b.purity_monotone for b in self.bipartitions),
            "entropy_decreases": [{"bipartition": list(p), "step": s} for p, s in self.entropy_decreases()],
        }

    def summary_json(self) -> str:
        return json.dumps(self.summary(), indent=2)


def _default_parties(circuit: Circuit):
    enc = circuit.meta.get("encoding") if circuit.meta else None
    if enc and "qudit_dims" in enc:
        from .quditcompile import qubit_layout

        return tuple(qubit_layout(enc["qudit_dims"])), int(max(enc["qudit_dims"]))
    return None, None


def majorization_analysis(
    circuit: Circuit,
    parties=None,
    *,
    circuit_id: str = "",
    initial: StateVector | None = None,
    method: str = "lapack",
) -> MajorizationReport:
    """Reduced spectra of every canonical bipartition after each entangling gate.

    Step 1 is compared against the state before the first entangling gate.
    For a compiled circuit carrying an ``encoding`` entry, the default
    parties are the qubit groups of each qudit and entropies in dits use the
    qudit dimension.
    """
    enc_parties, enc_d = _default_parties(circuit)
    if parties is None and enc_parties is not None:
        parties = enc_parties
    parties = normalize_parties(circuit.dims, parties)
    d = enc_d or _uniform_party_dim(circuit.dims, parties)
    n = len(parties)
    bips = canonical_bipartitions(n)
    traces = [BipartitionTrace(a, tuple(_sites_of(parties, a))) for a in bips]

    snaps = simulate_with_snapshots(circuit, initial)
    start = _pre_entangling_state(circuit, initial)
    prev = [_spectrum_of_side(start, parties, t.parties, method) for t in traces]
    for _, state in snaps:
        for i, t in enumerate(traces):
            lam = _spectrum_of_side(state, parties, t.parties, method)
            t.spectra.append(lam)
            t.entropy_bits.append(von_neumann_entropy(lam, 2.0))
            t.entropy_dits.append(von_neumann_entropy(lam, float(d)))
            t.purity.append(purity(lam))
            t.eigen_majorizes.append(majorizes(prev[i], lam))
            prev[i] = lam
    return MajorizationReport(
        circuit_id=circuit_id,
        parties=parties,
        steps=[s for s, _ in snaps],
        bipartitions=traces,
        raw_count=math.comb(n, n // 2),
    )


def _pre_entangling_state(circuit: Circuit, initial: StateVector | None) -> StateVector:
    local = []
    for g in circuit.gates:
        if g.is_entangling:
            break
        local.append(g)
    return simulate(Circuit(circuit.dims, tuple(local)), initial)


# ---------------------------------------------------------------- Mermin

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)


def mermin_terms(n: int = 5) -> list[tuple[int, tuple[int, ...]]]:
    """``(sign, primed observers)`` for M5: -1 for no primes, +1 for two, -1 for four."""
    signs = {0: -1, 2: +1, 4: -1}
    return [(signs[k], p) for k in (0, 2, 4) for p in itertools.combinations(range(n), k)]


@dataclass(frozen=True)
class MerminSettings:
    """Per-observer pair of dichotomic observables ``(a_j, a'_j)``."""

    a: tuple[np.ndarray, ...]
    a_prime: tuple[np.ndarray, ...]

    def __post_init__(self):
        if len(self.a) != len(self.a_prime):
            raise InputError("need one primed and one unprimed observable per observer")
        for m in tuple(self.a) + tuple(self.a_prime):
            m = np.asarray(m)
            if m.shape != (2, 2) or np.abs(m - m.conj().T).max() > 1e-12:
                raise InputError("observables must be Hermitian 2x2 matrices")
            if not np.allclose(np.linalg.eigvalsh(m), [-1, 1], atol=1e-12):
                raise InputError("observables must have spectrum {-1, +1}")

    @classmethod
    def xy(cls, n: int = 5) -> MerminSettings:
        return cls((SIGMA_X,) * n, (SIGMA_Y,) * n)


def mermin_operator(settings: MerminSettings | None = None) -> np.ndarray:
    settings = settings or MerminSettings.xy()
    n = len(settings.a)
    op = np.zeros((2**n, 2**n), dtype=complex)
    for sign, primed in mermin_terms(n):
        term = np.ones((1, 1), dtype=complex)
        for j in range(n):
            term = np.kron(term, settings.a_prime[j] if j in primed else settings.a[j])
        op += sign * term
    return op


def mermin_m5(state: StateVector, settings: MerminSettings | None = None) -> float:
    if state.dims != (2,) * 5:
        raise InputError(f"M5 needs five qubits, got dims {state.dims}")
    settings = settings or MerminSettings.xy()
    if len(settings.a) != 5:
        raise InputError("M5 needs settings for five observers")
    val = np.vdot(state.amps, mermin_operator(settings) @ state.amps)
    return float(val.real)


def mermin_classical_max(n: int = 5) -> int:
    """Largest M5 value over all deterministic +-1 assignments to (a_j, a'_j)."""
    terms = mermin_terms(n)
    best = None
    for bits in itertools.product((1, -1), repeat=2 * n):
        a, ap = bits[:n], bits[n:]
        val = sum(s * math.prod(ap[j] if j in primed else a[j] for j in range(n)) for s, primed in terms)
        best = val if best is None else max(best, val)
    return int(best)


# ---------------------------------------------------------------- greedy search


def _score_spectra(state, parties, bips):
    return [_spectrum_of_side(state, parties, a, "lapack") for a in bips]


def greedy_majorizing_search(
    connectivity: Graph,
    d: int,
    max_gates: int,
) -> tuple[Circuit, MajorizationReport]:
    """Grow a graph-state circuit one CZ_d at a time along allowed edges.

    Each candidate must keep every canonical bipartition majorized by its
    predecessor.  Among admissible gates the one with the largest minimum
    entropy increase wins, then the largest total increase, then the
    lexicographically first edge.  Scores are compared after rounding to
    1e-9 so that ties are decided by edge order, not by rounding noise.
    The search stops at ``max_gates``, once the state is AME, or when no
    admissible gate increases any entropy.
    """
    if d < 2:
        raise InputError("d must be >= 2")
    if max_gates < 0:
        raise InputError("max_gates must be non-negative")
    if connectivity.n < 2 or not connectivity.is_connected():
        raise InputError("connectivity graph must be connected with at least two vertices")
    n = connectivity.n
    parties = normalize_parties((d,) * n)
    bips = canonical_bipartitions(n)
    edges = sorted(set(connectivity.edges))
    if d == 2:
        local = tuple(Gate("H", (v,)) for v in range(n))
        make = lambda e: Gate("CZ", e)  # noqa: E731
    else:
        local = tuple(Gate("F_D", (v,), d=d) for v in range(n))
        make = lambda e: Gate("CZ_D", e, d=d)  # noqa: E731
    circuit = Circuit((d,) * n, local)
    state = simulate(circuit)
    spectra = _score_spectra(state, parties, bips)
    entropies = [von_neumann_entropy(s) for s in spectra]
    for _ in range(max_gates):
        if verify_ame(state)[0]:
            break
        best = None
        for e in edges:
            g = make(e)
            cand = apply_unitary(state, gate_matrix(g), g.sites, check=False)
            cand_spectra = _score_spectra(cand, parties, bips)
            if not all(majorizes(a, b) for a, b in zip(spectra, cand_spectra)):
                continue
            cand_ent = [von_neumann_entropy(s) for s in cand_spectra]
            inc = [b - a for a, b in zip(entropies, cand_ent)]
            key = (round(min(inc), 9), round(sum(inc), 9))
            if best is None or key > best[0]:
                best = (key, g, cand, cand_spectra, cand_ent)
        if best is None or best[0][1] <= 0:
            break
        _, g, state, spectra, entropies = best
        circuit = circuit.append(g)
    report = majorization_analysis(circuit, circuit_id=f"greedy_n{n}_d{d}")
    return circuit, report
