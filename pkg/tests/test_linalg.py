from __future__ import annotations

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from amekit.errors import ConvergenceError, InputError, ValidationError
from amekit.linalg import (
    StateVector,
    _jacobi_eigvals,
    apply_unitary,
    basis_state,
    eigvals_hermitian,
    mixed_radix_digits,
    mixed_radix_index,
    overlap,
    partial_trace,
    permute_sites,
    purity,
    reduced_spectrum,
    von_neumann_entropy,
    zero_state,
)


def random_hermitian(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (a + a.conj().T) / 2


def random_state(rng, dims):
    amps = rng.normal(size=math.prod(dims)) + 1j * rng.normal(size=math.prod(dims))
    return StateVector(dims, amps / np.linalg.norm(amps))


def closed_form_2x2(m):
    a, d = m[0, 0].real, m[1, 1].real
    b = abs(m[0, 1])
    mid, rad = (a + d) / 2, math.hypot((a - d) / 2, b)
    return np.array([mid + rad, mid - rad])


def closed_form_3x3(m):
    # trigonometric roots of the characteristic cubic of a Hermitian matrix
    q = np.trace(m).real / 3
    p2 = sum(abs(m[i, j]) ** 2 for i in range(3) for j in range(3) if i != j)
    p = math.sqrt((sum((m[i, i].real - q) ** 2 for i in range(3)) + p2) / 6)
    b = (m - q * np.eye(3)) / p
    r = max(-1.0, min(1.0, np.linalg.det(b).real / 2))
    phi = math.acos(r) / 3
    roots = [q + 2 * p * math.cos(phi + 2 * math.pi * k / 3) for k in range(3)]
    return np.sort(roots)[::-1]


def test_index_convention_site0_most_significant():
    assert mixed_radix_index((2, 3, 3), (0, 1, 2)) == 5
    assert mixed_radix_digits((2, 3, 3), 5) == (0, 1, 2)
    s = basis_state((2, 3), (1, 2))
    assert s.amps[5] == 1


def test_bad_digits_and_dims():
    with pytest.raises(InputError):
        mixed_radix_index((2, 2), (0, 2))
    with pytest.raises(InputError):
        zero_state((2, 1))
    with pytest.raises(InputError):
        StateVector((2, 2), np.ones(3))


def test_state_amplitudes_are_read_only():
    s = zero_state((2, 2))
    with pytest.raises(ValueError):
        s.amps[0] = 0


def test_apply_unitary_matches_kron():
    rng = np.random.default_rng(1)
    s = random_state(rng, (2, 3, 2))
    x = np.array([[0, 1], [1, 0]])
    full = np.kron(np.kron(np.eye(2), np.eye(3)), x)
    out = apply_unitary(s, x, [2])
    assert np.allclose(out.amps, full @ s.amps)


def test_apply_unitary_site_order_matters():
    cnot = np.eye(4)[[0, 1, 3, 2]]
    s = basis_state((2, 2), (0, 1))
    assert apply_unitary(s, cnot, [1, 0]).amps[3] == 1
    assert apply_unitary(s, cnot, [0, 1]).amps[1] == 1


def test_apply_unitary_rejects_non_unitary():
    with pytest.raises(ValidationError):
        apply_unitary(zero_state((2,)), np.array([[1, 1], [0, 1]]), [0])
    with pytest.raises(InputError):
        apply_unitary(zero_state((2, 2)), np.eye(2), [0, 0])


def test_partial_trace_product_state():
    a = np.array([0.6, 0.8])
    b = np.array([1, 1j]) / math.sqrt(2)
    s = StateVector((2, 2), np.kron(a, b))
    assert np.allclose(partial_trace(s, [0]), np.outer(a, a.conj()))
    assert np.allclose(partial_trace(s, [1]), np.outer(b, b.conj()))
    with pytest.raises(InputError):
        partial_trace(s, [0, 1])


def test_partial_trace_keep_order_transposes():
    rng = np.random.default_rng(2)
    s = random_state(rng, (2, 3, 2))
    r01 = partial_trace(s, [0, 1]).reshape(2, 3, 2, 3)
    r10 = partial_trace(s, [1, 0]).reshape(3, 2, 3, 2)
    assert np.allclose(r01, r10.transpose(1, 0, 3, 2))


@pytest.mark.parametrize("n,closed", [(2, closed_form_2x2), (3, closed_form_3x3)])
def test_jacobi_matches_closed_form(n, closed):
    rng = np.random.default_rng(10 + n)
    for _ in range(200):
        m = random_hermitian(rng, n)
        assert np.allclose(np.sort(_jacobi_eigvals(m))[::-1], closed(m), atol=1e-9)


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 12), st.integers(0, 2**32 - 1))
def test_jacobi_matches_lapack(n, seed):
    m = random_hermitian(np.random.default_rng(seed), n)
    assert np.allclose(np.sort(_jacobi_eigvals(m)), np.linalg.eigvalsh(m), atol=1e-9)


def test_jacobi_on_large_density_matrix():
    rng = np.random.default_rng(3)
    s = random_state(rng, (5,) * 6)
    rho = partial_trace(s, [0, 1, 2])
    assert np.allclose(eigvals_hermitian(rho, method="jacobi"), eigvals_hermitian(rho), atol=1e-10)


def test_jacobi_reports_non_convergence():
    m = random_hermitian(np.random.default_rng(4), 4)
    with pytest.raises(ConvergenceError):
        _jacobi_eigvals(m, max_sweeps=0)


def test_eigvals_checks_and_clamps():
    with pytest.raises(ValidationError):
        eigvals_hermitian(np.array([[0, 1], [0, 0]]))
    with pytest.raises(InputError):
        eigvals_hermitian(np.eye(2), method="qr")
    vals = eigvals_hermitian(np.diag([1 + 5e-10, -5e-10]))
    assert vals[0] == 1.0 and vals[1] == 0.0
    assert list(eigvals_hermitian(np.diag([0.2, 0.5, 0.3]))) == pytest.approx([0.5, 0.3, 0.2])


def test_entropy_and_purity():
    assert von_neumann_entropy([0.5, 0.5]) == pytest.approx(1.0)
    assert von_neumann_entropy([1 / 3] * 3, base=3) == pytest.approx(1.0)
    assert von_neumann_entropy([1.0, 0.0]) == 0.0
    assert purity([0.5, 0.5]) == pytest.approx(0.5)
    with pytest.raises(InputError):
        von_neumann_entropy([0.5, 0.4])
    with pytest.raises(InputError):
        von_neumann_entropy([1.0], base=1.0)


def test_bell_reduced_spectrum():
    s = StateVector((2, 2), np.array([1, 0, 0, 1]) / math.sqrt(2))
    assert list(reduced_spectrum(s, [0])) == pytest.approx([0.5, 0.5])


def test_overlap_and_permute():
    s = basis_state((2, 3), (1, 2))
    p = permute_sites(s, (1, 0))
    assert p.dims == (3, 2)
    assert p.amps[mixed_radix_index((3, 2), (2, 1))] == 1
    assert overlap(s, s) == pytest.approx(1)
    assert cmath.isclose(overlap(s, basis_state((2, 3), (0, 0))), 0)
    with pytest.raises(InputError):
        overlap(s, p)
    with pytest.raises(InputError):
        permute_sites(s, (0, 0))
