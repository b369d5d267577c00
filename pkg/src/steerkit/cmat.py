"""Dense complex linear algebra at dimensions 2 and 4.

Matrices are plain ``numpy`` complex arrays. The helpers here add the shape
and hermiticity checks the rest of the package relies on, and fix the
basis ordering |00>, |01>, |10>, |11> for two-qubit operators.
"""

from __future__ import annotations

import numpy as np

TOL_LINALG = 1e-9
CLAMP_NEG = 1e-12

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SX, SY, SZ)


class LinalgError(ValueError):
    """Raised when an input violates a precondition of a routine."""


def as_cmat(a, dims=(2, 4)) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] not in dims or m.shape[1] not in dims:
        raise LinalgError(f"expected a square matrix of size {dims}, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise LinalgError("matrix has non-finite entries")
    return m


def dagger(a: np.ndarray) -> np.ndarray:
    return np.conj(a).T


def tensor(a, b) -> np.ndarray:
    """Kronecker product of two 2x2 matrices, ordered |00>,|01>,|10>,|11>."""
    a = as_cmat(a, (2,))
    b = as_cmat(b, (2,))
    if a.shape != (2, 2) or b.shape != (2, 2):
        raise LinalgError("tensor expects two 2x2 operands")
    return np.kron(a, b)


def hermitian_defect(a: np.ndarray) -> float:
    return float(np.max(np.abs(a - dagger(a))))


def _check_hermitian(a: np.ndarray, rel: float = 1e-10) -> None:
    scale = float(np.max(np.abs(a))) if a.size else 0.0
    if hermitian_defect(a) > rel * max(scale, 1e-300):
        raise LinalgError("matrix is not Hermitian")


def eigh(a) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvector columns of a Hermitian matrix."""
    a = as_cmat(a)
    _check_hermitian(a)
    w, v = np.linalg.eigh(0.5 * (a + dagger(a)))
    return w, v


def sqrt_psd(a) -> np.ndarray:
    """Principal square root of a Hermitian positive semidefinite matrix.

    Eigenvalues in [-1e-12, 0) are treated as rounding noise and set to zero;
    anything more negative means the input is not PSD.
    """
    w, v = eigh(a)
    if w[0] < -CLAMP_NEG:
        raise LinalgError(f"matrix is not positive semidefinite (eigenvalue {w[0]:.3e})")
    w = np.where(w < 0.0, 0.0, w)
    return (v * np.sqrt(w)) @ dagger(v)


def eigvals_general(a) -> np.ndarray:
    """All eigenvalues of a general square matrix, imaginary parts kept."""
    a = as_cmat(a)
    try:
        return np.linalg.eigvals(a)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise LinalgError(f"eigensolver did not converge: {exc}") from exc


def singular_values(a) -> np.ndarray:
    """Singular values, descending."""
    return np.linalg.svd(np.asarray(a, dtype=complex), compute_uv=False)


def partial_trace_a(rho) -> np.ndarray:
    """Trace out the first qubit of a 4x4 operator."""
    r = as_cmat(rho, (4,)).reshape(2, 2, 2, 2)
    return np.einsum("ijik->jk", r)


def partial_trace_b(rho) -> np.ndarray:
    r = as_cmat(rho, (4,)).reshape(2, 2, 2, 2)
    return np.einsum("ijkj->ik", r)


def bloch_vector(q) -> np.ndarray:
    """Bloch vector of a 2x2 operator, r_k = Tr(sigma_k q)."""
    q = as_cmat(q, (2,))
    return np.array([np.trace(s @ q).real for s in PAULI])


def is_unitary(u, tol: float = 1e-10) -> bool:
    u = np.asarray(u, dtype=complex)
    return bool(np.max(np.abs(u @ dagger(u) - np.eye(u.shape[0]))) <= tol)
