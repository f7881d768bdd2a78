"""Dense matrix kernels used slice by slice.

All functions take and return plain numpy arrays. Real inputs stay real
where the mathematics allows it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DefinitenessError, NotHermitianError, NotRealError, NumericError, ShapeError

HERMITIAN_TOL = 1e-10
PD_TOL = 1e-12


def sympmat(n: int) -> np.ndarray:
    """Standard symplectic unit ``[[0, I], [-I, 0]]`` of size ``2n``."""
    eye = np.eye(n)
    zero = np.zeros((n, n))
    return np.block([[zero, eye], [-eye, zero]])


def _square(a) -> np.ndarray:
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {a.shape}")
    return a


def _hermitian_part(a: np.ndarray, tol: float = HERMITIAN_TOL) -> np.ndarray:
    dev = np.linalg.norm(a - a.conj().T)
    scale = np.linalg.norm(a)
    if dev > tol * scale:
        raise NotHermitianError(f"matrix is not Hermitian: ||A - A^H|| = {dev:.3e}", residual=dev)
    return (a + a.conj().T) / 2


def eig_general(a) -> np.ndarray:
    """Eigenvalues of a square matrix, with multiplicity, in no particular order."""
    return np.linalg.eigvals(_square(a))


def eig_hermitian(a, tol: float = HERMITIAN_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Ascending eigenvalues and unitary eigenvectors of a Hermitian matrix.

    The input is symmetrized before factoring; deviation from Hermitian
    beyond ``tol * ||a||`` is an error.
    """
    h = _hermitian_part(_square(a), tol)
    return np.linalg.eigh(h)


@dataclass(frozen=True)
class HPDReport:
    """Outcome of :func:`is_hpd`. Truthy iff the matrix passed."""

    ok: bool
    smallest_eigenvalue: float
    reason: str = ""

    def __bool__(self):
        return self.ok


def is_hpd(a) -> HPDReport:
    """Hermitian to 1e-10 and smallest eigenvalue above ``1e-12 * ||a||``."""
    a = _square(a)
    try:
        h = _hermitian_part(a)
    except NotHermitianError as exc:
        return HPDReport(False, float("nan"), str(exc))
    w = np.linalg.eigvalsh(h)
    lo = float(w[0])
    floor = PD_TOL * np.linalg.norm(a)
    if lo <= floor:
        return HPDReport(False, lo, f"smallest eigenvalue {lo:.6e} <= {floor:.3e}")
    return HPDReport(True, lo)


def _spd_eig(a):
    a = _square(a)
    w, u = eig_hermitian(a)
    floor = PD_TOL * np.linalg.norm(a)
    if w[0] <= floor:
        raise DefinitenessError(
            f"matrix is not positive-definite (smallest eigenvalue {w[0]:.6e})",
            smallest_eigenvalue=float(w[0]),
        )
    return w, u


def sqrtm_spd(a) -> np.ndarray:
    """Hermitian positive-definite square root."""
    w, u = _spd_eig(a)
    return (u * np.sqrt(w)) @ u.conj().T


def invsqrtm_spd(a) -> np.ndarray:
    """Inverse of :func:`sqrtm_spd`."""
    w, u = _spd_eig(a)
    return (u / np.sqrt(w)) @ u.conj().T


def expm(a) -> np.ndarray:
    """Matrix exponential (scaling and squaring with a Pade approximant)."""
    return scipy.linalg.expm(_square(a))


@dataclass(frozen=True)
class SkewCanonicalForm:
    """``K = O @ Sigma @ O.T`` with 2x2 blocks ``[[0, s], [-s, 0]]`` on the diagonal.

    ``sigma`` is sorted descending; columns of ``O`` come in interleaved
    pairs, one pair per block.
    """

    O: np.ndarray
    sigma: np.ndarray

    def block_matrix(self) -> np.ndarray:
        n = len(self.sigma)
        out = np.zeros((2 * n, 2 * n))
        for j, s in enumerate(self.sigma):
            out[2 * j, 2 * j + 1] = s
            out[2 * j + 1, 2 * j] = -s
        return out


def skew_canonical(k, tol: float = HERMITIAN_TOL) -> SkewCanonicalForm:
    """Real canonical form of a nonsingular real skew-symmetric matrix.

    ``1j * K`` is Hermitian with eigenvalues ``+-sigma_j``. For an eigenvector
    ``v = x + 1j*y`` of eigenvalue ``+sigma`` we get ``K x = sigma y`` and
    ``K y = -sigma x``, so ``sqrt(2) * (y, x)`` spans one real invariant plane.
    """
    k = _square(k)
    if np.iscomplexobj(k):
        if np.max(np.abs(k.imag), initial=0.0) > PD_TOL * max(1.0, np.linalg.norm(k)):
            raise NotRealError("skew_canonical needs a real matrix")
        k = k.real
    dim = k.shape[0]
    if dim % 2:
        raise ShapeError("a nonsingular skew-symmetric matrix has even size")
    scale = np.linalg.norm(k)
    dev = np.linalg.norm(k + k.T)
    if dev > tol * scale:
        raise NotHermitianError(f"matrix is not skew-symmetric: ||K + K^T|| = {dev:.3e}", residual=dev)
    k = (k - k.T) / 2

    w, v = np.linalg.eigh(1j * k)
    n = dim // 2
    if w[n] <= PD_TOL * scale:
        raise NumericError(f"skew-symmetric matrix is singular (smallest |eigenvalue| {abs(w[n]):.3e})")
    # positive half, descending
    sigma = w[n:][::-1].copy()
    vecs = v[:, n:][:, ::-1] * np.sqrt(2.0)
    o = np.empty((dim, dim))
    o[:, 0::2] = vecs.imag
    o[:, 1::2] = vecs.real
    return SkewCanonicalForm(o, sigma)
