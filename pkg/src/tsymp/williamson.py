"""Williamson normal form for matrices and, slice-wise, for tensors.

For a real symmetric positive-definite ``M`` of size ``2n`` the classical
result gives a real symplectic ``R`` with ``R.T @ M @ R = diag(lam, lam)``.
The tensor version applies it to every Fourier slice and sets
``S_i = R_i^{-1}``, so that ``M = S^H * D * S``.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import matkernels as mk
from .errors import (
    ConjugateSymmetryError,
    DefinitenessError,
    NotRealError,
    NotSymmetricError,
    NumericError,
    PreconditionError,
    ShapeError,
)
from .tcore import FOURIER, Tensor3, conjugate_symmetry_residual, idft3, to_fourier

REAL_TOL = 1e-12
SYMMETRIC_TOL = 1e-10
IMAG_AXIS_TOL = 1e-8
CONJ_SYMMETRY_TOL = 1e-10


def _check_real_spd(m, check_pd: bool = True) -> np.ndarray:
    """Validate a real SPD matrix of even size; return its real symmetric part.

    ``check_pd=False`` skips the definiteness test for callers that factor
    the matrix anyway and fail there.
    """
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2:
        raise ShapeError(f"expected a square matrix of even size, got shape {m.shape}")
    scale = max(1.0, float(np.linalg.norm(m)))
    if np.iscomplexobj(m):
        imag = float(np.max(np.abs(m.imag), initial=0.0))
        if imag > REAL_TOL * scale:
            raise NotRealError(f"matrix has imaginary parts up to {imag:.3e}", residual=imag)
        m = m.real
    dev = float(np.linalg.norm(m - m.T))
    if dev > SYMMETRIC_TOL * np.linalg.norm(m):
        raise NotSymmetricError(f"matrix is not symmetric: ||M - M^T|| = {dev:.3e}", residual=dev)
    m = (m + m.T) / 2
    if not check_pd:
        return m
    report = mk.is_hpd(m)
    if not report:
        raise DefinitenessError(f"matrix is not positive-definite: {report.reason}",
                                smallest_eigenvalue=report.smallest_eigenvalue)
    return m


def williamson_matrix(m) -> tuple[np.ndarray, np.ndarray]:
    """Classical Williamson decomposition.

    Parameters
    ----------
    m : (2n, 2n) array_like
        Real symmetric positive-definite matrix.

    Returns
    -------
    R : (2n, 2n) ndarray
        Real symplectic matrix, ``R.T @ J @ R = J``.
    lam : (n,) ndarray
        Symplectic eigenvalues, descending, with ``R.T @ m @ R = diag(lam, lam)``.
    """
    m = _check_real_spd(m, check_pd=False)
    n = m.shape[0] // 2
    x = mk.invsqrtm_spd(m)  # raises DefinitenessError
    canon = mk.skew_canonical(x @ mk.sympmat(n) @ x)
    # sigma descending <=> lam ascending; flip the plane order to get lam descending
    lam = 1.0 / canon.sigma[::-1]
    planes = canon.O.reshape(2 * n, n, 2)[:, ::-1, :]
    # (q-block, p-block) column order: O.T K O = [[0, 1/lam], [-1/lam, 0]]
    o = np.concatenate([planes[:, :, 0], planes[:, :, 1]], axis=1)
    root = np.sqrt(np.concatenate([lam, lam]))
    return (x @ o) * root, lam


def symplectic_inverse_matrix(r: np.ndarray) -> np.ndarray:
    """``R^{-1} = -J R^T J`` for a real symplectic ``R``."""
    j = mk.sympmat(r.shape[0] // 2)
    return -j @ r.T @ j


def symplectic_eigs_oracle(m) -> np.ndarray:
    """Symplectic eigenvalues from the spectrum of ``J @ m``, descending.

    Independent of :func:`williamson_matrix`: uses the general eigensolver
    and reads off the moduli of the (purely imaginary) eigenvalue pairs.
    """
    m = _check_real_spd(m)
    n = m.shape[0] // 2
    mu = mk.eig_general(mk.sympmat(n) @ m)
    off_axis = float(np.max(np.abs(mu.real)))
    if off_axis > IMAG_AXIS_TOL * np.linalg.norm(m):
        raise NumericError(f"eigenvalues of J M leave the imaginary axis by {off_axis:.3e}")
    mods = np.sort(np.abs(mu.imag))[::-1]
    return mods[0::2].copy()


@dataclass(frozen=True)
class WilliamsonFactors:
    """Result of the T-Williamson decomposition ``M = S^H * D * S``.

    ``S`` and ``D`` are spatial-domain tensors; ``lambdas[i]`` holds the
    descending symplectic eigenvalues of Fourier slice ``i``.
    """

    S: Tensor3
    D: Tensor3
    lambdas: np.ndarray

    def D_fourier(self) -> Tensor3:
        """Exact Fourier slices ``diag(lam_i, lam_i)`` of ``D``."""
        return _diagonal_fourier(self.lambdas)


def _diagonal_fourier(lambdas: np.ndarray) -> Tensor3:
    lam2 = np.concatenate([lambdas, lambdas], axis=1)
    idx = np.arange(lam2.shape[1])
    data = np.zeros((lam2.shape[0], lam2.shape[1], lam2.shape[1]), dtype=np.complex128)
    data[:, idx, idx] = lam2
    return Tensor3(data, FOURIER)


def _slice_williamson(i: int, mi: np.ndarray):
    try:
        r, lam = williamson_matrix(mi)
    except PreconditionError as exc:
        exc.slice_index = i
        exc.args = (f"Fourier slice {i + 1}: {exc.args[0]}",)
        raise
    return symplectic_inverse_matrix(r), lam


def _factors(s_hat, lambdas) -> WilliamsonFactors:
    lambdas = np.asarray(lambdas, dtype=float)
    return WilliamsonFactors(idft3(Tensor3(s_hat, FOURIER)), idft3(_diagonal_fourier(lambdas)), lambdas)


def t_williamson(m: Tensor3, workers: int | None = None) -> WilliamsonFactors:
    """T-Williamson normal form of a tensor with real SPD Fourier slices.

    A spatial-domain input is transformed first. ``workers > 1`` runs the
    independent slice decompositions in a thread pool; results are assembled
    in slice order either way.
    """
    mf = to_fourier(m)
    if mf.m != mf.n or mf.m % 2:
        raise ShapeError(f"expected 2n x 2n slices, got {mf.m}x{mf.n}")
    idx = range(mf.p)
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            out = list(pool.map(_slice_williamson, idx, mf.data))
    else:
        out = [_slice_williamson(i, mf.data[i]) for i in idx]
    s_hat = np.stack([s for s, _ in out])
    return _factors(s_hat, [lam for _, lam in out])


def real_symmetrize_factors(m: Tensor3) -> WilliamsonFactors:
    """T-Williamson factors whose spatial tensors are real.

    Requires real SPD Fourier slices with ``M[p-i+2] == conj(M[i])``. One
    representative of each conjugate pair is decomposed and its partner gets
    the conjugated factors.
    """
    mf = to_fourier(m)
    p = mf.p
    partner = (-np.arange(p)) % p
    diffs = np.linalg.norm(mf.data[partner] - np.conj(mf.data), axis=(1, 2))
    tol = CONJ_SYMMETRY_TOL * max(1.0, float(np.max(np.linalg.norm(mf.data, axis=(1, 2)))))
    bad = np.flatnonzero(diffs > tol)
    if bad.size:
        i = int(bad[0])
        raise ConjugateSymmetryError(
            f"Fourier slices are not conjugate-symmetric: slice {int(partner[i]) + 1} differs from "
            f"conj(slice {i + 1}) by {diffs[i]:.3e} (residual {conjugate_symmetry_residual(mf):.3e})",
            slice_index=i,
            residual=float(diffs[i]),
        )
    dim = mf.m
    s_hat = np.empty((p, dim, dim), dtype=np.complex128)
    lambdas = np.empty((p, dim // 2))
    for i in range(p):
        j = int(partner[i])
        if j < i:
            continue
        s_hat[i], lambdas[i] = _slice_williamson(i, mf.data[i])
        if j != i:
            s_hat[j] = np.conj(s_hat[i])
            lambdas[j] = lambdas[i]
    return _factors(s_hat, lambdas)


@dataclass(frozen=True)
class FeasibilityReport:
    """Whether ``M^{-1} J`` has the spectrum a Williamson form would force.

    ``spectrum`` is always the computed spectrum of ``M^{-1} J``; ``lambdas``
    is filled (descending) only when feasible.
    """

    feasible: bool
    spectrum: np.ndarray
    lambdas: np.ndarray | None
    reason: str = ""


def hermitian_feasibility_check(m, tol: float = IMAG_AXIS_TOL) -> FeasibilityReport:
    """Test whether a Hermitian PD matrix could admit ``M = S^H diag(lam, lam) S``.

    A factorization with ``S^H J S = J`` makes ``M^{-1} J`` similar to
    ``diag(1/lam, 1/lam) J``, whose spectrum is ``{+-1j/lam_j}``: purely
    imaginary and closed under negation.
    """
    m = np.asarray(m)
    report = mk.is_hpd(m)
    if not report:
        raise DefinitenessError(f"matrix is not Hermitian positive-definite: {report.reason}",
                                smallest_eigenvalue=report.smallest_eigenvalue)
    if m.shape[0] % 2:
        raise ShapeError("expected an even-sized matrix")
    j = mk.sympmat(m.shape[0] // 2)
    mu = mk.eig_general(np.linalg.solve(m, j))
    scale = max(1.0, float(np.max(np.abs(mu))))
    off_axis = float(np.max(np.abs(mu.real)))
    if off_axis > tol * scale:
        return FeasibilityReport(False, mu, None, f"eigenvalues leave the imaginary axis by {off_axis:.3e}")
    im = np.sort(mu.imag)
    mismatch = float(np.max(np.abs(im + im[::-1])))
    if mismatch > tol * scale:
        return FeasibilityReport(False, mu, None, f"spectrum is not closed under negation (mismatch {mismatch:.3e})")
    if np.min(np.abs(im)) <= tol * scale:
        return FeasibilityReport(False, mu, None, "zero eigenvalue")
    lambdas = np.sort(1.0 / im[im > 0])[::-1]
    return FeasibilityReport(True, mu, lambdas)
