"""Dense linear algebra on small mixed-radix registers.

Site 0 is the leftmost ket symbol and the most significant digit of the
flat amplitude index, so ``|0 1 2>`` over dims ``(2, 3, 3)`` lives at index
``0*9 + 1*3 + 2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ConvergenceError, InputError, ValidationError

UNITARY_TOL = 1e-10
HERMITIAN_TOL = 1e-12
SPECTRUM_TOL = 1e-9
CLAMP_TOL = 1e-9


def check_dims(dims: Iterable[int]) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if not dims:
        raise InputError("a register needs at least one site")
    for d in dims:
        if d < 2:
            raise InputError(f"site dimension {d} < 2")
    return dims


@dataclass(frozen=True, eq=False)
class StateVector:
    """Pure state over a register of sites with dimensions ``dims``."""

    dims: tuple[int, ...]
    amps: np.ndarray

    def __post_init__(self):
        dims = check_dims(self.dims)
        amps = np.asarray(self.amps, dtype=complex).reshape(-1)
        if amps.size != math.prod(dims):
            raise InputError(f"{amps.size} amplitudes do not fit dims {dims}")
        amps.flags.writeable = False
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amps", amps)

    @property
    def n(self) -> int:
        return len(self.dims)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to one axis per site."""
        return self.amps.reshape(self.dims)

    def __repr__(self):
        return f"StateVector(dims={self.dims}, nnz={np.count_nonzero(np.abs(self.amps) > 1e-12)})"


def mixed_radix_index(dims: Sequence[int], digits: Sequence[int]) -> int:
    if len(digits) != len(dims):
        raise InputError(f"expected {len(dims)} digits, got {len(digits)}")
    index = 0
    for d, k in zip(dims, digits):
        if not 0 <= k < d:
            raise InputError(f"digit {k} out of range for a {d}-level site")
        index = index * d + int(k)
    return index


def mixed_radix_digits(dims: Sequence[int], index: int) -> tuple[int, ...]:
    digits = []
    for d in reversed(dims):
        index, k = divmod(index, d)
        digits.append(k)
    return tuple(reversed(digits))


def basis_state(dims: Sequence[int], digits: Sequence[int]) -> StateVector:
    dims = check_dims(dims)
    amps = np.zeros(math.prod(dims), dtype=complex)
    amps[mixed_radix_index(dims, digits)] = 1.0
    return StateVector(dims, amps)


def zero_state(dims: Sequence[int]) -> StateVector:
    dims = check_dims(dims)
    return basis_state(dims, (0,) * len(dims))


def _check_sites(n: int, sites: Sequence[int]) -> tuple[int, ...]:
    sites = tuple(int(s) for s in sites)
    if not sites:
        raise InputError("empty site list")
    if len(set(sites)) != len(sites):
        raise InputError(f"repeated sites in {sites}")
    for s in sites:
        if not 0 <= s < n:
            raise InputError(f"site {s} out of range for {n} sites")
    return sites


def is_unitary(u: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return bool(np.abs(u.conj().T @ u - np.eye(u.shape[0])).max() <= tol)


def apply_unitary(state: StateVector, u: np.ndarray, sites: Sequence[int], *, check: bool = True) -> StateVector:
    """Apply ``u`` to the ordered ``sites`` of ``state``; identity elsewhere.

    ``u`` is indexed in the same mixed-radix convention restricted to
    ``sites`` (first listed site = most significant).
    """
    sites = _check_sites(state.n, sites)
    sub = tuple(state.dims[s] for s in sites)
    k = math.prod(sub)
    u = np.asarray(u, dtype=complex)
    if u.shape != (k, k):
        raise InputError(f"matrix of shape {u.shape} does not act on sites {sites} with dims {sub}")
    if check and not is_unitary(u):
        raise ValidationError("matrix is not unitary within 1e-10")
    t = state.tensor()
    ut = u.reshape(sub + sub)
    out = np.tensordot(ut, t, axes=(list(range(len(sites), 2 * len(sites))), list(sites)))
    out = np.moveaxis(out, list(range(len(sites))), list(sites))
    return StateVector(state.dims, out.reshape(-1))


def partial_trace(state: StateVector, keep: Sequence[int]) -> np.ndarray:
    """Reduced density matrix on ``keep`` (in the listed order)."""
    keep = _check_sites(state.n, keep)
    if len(keep) == state.n:
        raise InputError("keep must be a strict subset of the register")
    rest = [s for s in range(state.n) if s not in keep]
    dk = math.prod(state.dims[s] for s in keep)
    m = np.transpose(state.tensor(), list(keep) + rest).reshape(dk, -1)
    rho = m @ m.conj().T
    return (rho + rho.conj().T) / 2


def _jacobi_eigvals(a: np.ndarray, *, tol: float = 1e-12, max_sweeps: int = 100) -> np.ndarray:
    """Cyclic Jacobi for a complex Hermitian matrix."""
    a = np.array(a, dtype=complex)
    n = a.shape[0]
    scale = np.linalg.norm(a)
    if n == 1 or scale == 0.0:
        return np.real(np.diag(a)).copy()
    target = tol * scale
    off_mask = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps):
        if np.linalg.norm(a[off_mask]) <= target:
            return np.real(np.diag(a)).copy()
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mod = abs(apq)
                if mod <= 1e-300:
                    continue
                phase = apq / mod
                theta = 0.5 * math.atan2(2.0 * mod, (a[q, q] - a[p, p]).real)
                c, s = math.cos(theta), math.sin(theta)
                # phase rotation diag(1, conj(phase)) makes the pivot real, then a real Givens turn
                g = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                cols = a[:, [p, q]] @ g
                a[:, p], a[:, q] = cols[:, 0], cols[:, 1]
                rows = g.conj().T @ a[[p, q], :]
                a[p, :], a[q, :] = rows[0], rows[1]
                a[p, q] = a[q, p] = 0.0
    if np.linalg.norm(a[off_mask]) <= target:
        return np.real(np.diag(a)).copy()
    raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")


def eigvals_hermitian(m: np.ndarray, *, method: str = "lapack") -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, sorted descending.

    ``method="jacobi"`` runs the in-house cyclic Jacobi solver;
    ``"lapack"`` delegates to ``numpy.linalg.eigvalsh``. Values within
    1e-9 outside ``[0, 1]`` are clamped, which is what density matrices need.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InputError(f"expected a square matrix, got shape {m.shape}")
    if np.abs(m - m.conj().T).max() > 1e-10:
        raise ValidationError("matrix is not Hermitian within 1e-10")
    if method == "jacobi":
        vals = _jacobi_eigvals(m)
    elif method == "lapack":
        vals = np.linalg.eigvalsh(m)
    else:
        raise InputError(f"unknown eigensolver {method!r}")
    vals = np.sort(vals)[::-1]
    low = (vals < 0) & (vals >= -CLAMP_TOL)
    high = (vals > 1) & (vals <= 1 + CLAMP_TOL)
    vals[low] = 0.0
    vals[high] = 1.0
    return vals


def reduced_spectrum(state: StateVector, keep: Sequence[int], *, method: str = "lapack") -> np.ndarray:
    return eigvals_hermitian(partial_trace(state, keep), method=method)


def von_neumann_entropy(spectrum: Sequence[float], base: float = 2.0) -> float:
    if base <= 1:
        raise InputError("entropy base must exceed 1")
    lam = np.asarray(spectrum, dtype=float)
    if abs(lam.sum() - 1.0) > SPECTRUM_TOL:
        raise InputError(f"spectrum sums to {lam.sum()}, not 1")
    lam = lam[lam > 0]
    return float(max(0.0, -np.sum(lam * np.log(lam)) / math.log(base)))


def purity(spectrum: Sequence[float]) -> float:
    lam = np.asarray(spectrum, dtype=float)
    return float(np.sum(lam * lam))


def overlap(a: StateVector, b: StateVector) -> complex:
    """``<a|b>``."""
    if a.dims != b.dims:
        raise InputError(f"dimension mismatch {a.dims} vs {b.dims}")
    return complex(np.vdot(a.amps, b.amps))


def permute_sites(state: StateVector, order: Sequence[int]) -> StateVector:
    """State whose site ``i`` is site ``order[i]`` of ``state``."""
    order = tuple(int(s) for s in order)
    if sorted(order) != list(range(state.n)):
        raise InputError(f"{order} is not a permutation of {state.n} sites")
    t = np.transpose(state.tensor(), order)
    return StateVector(tuple(state.dims[s] for s in order), t.reshape(-1))
