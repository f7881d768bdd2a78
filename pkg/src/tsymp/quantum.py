"""Decohering two-mode squeezed vacuum encoded as Fourier slices.

Phase-space ordering is ``[q1, q2, p1, p2]`` and hbar = 2, so the vacuum
covariance is the identity and symplectic eigenvalues satisfy ``lam >= 1``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import xlogy

from .errors import NumericError
from .tcore import FOURIER, Tensor3
from .williamson import symplectic_eigs_oracle, t_williamson

HEISENBERG_TOL = 1e-10
NEGATIVITY_FLOOR = 1e-12

# partial transpose: p2 -> -p2
PARTIAL_TRANSPOSE = np.diag([1.0, 1.0, 1.0, -1.0])


@dataclass(frozen=True)
class QuantumParams:
    r: float = 1.0
    nth: float = 0.5
    kappa: float = 0.3
    p: int = 64
    tmax: float = 12.0

    def __post_init__(self):
        if not np.isfinite(self.r):
            raise ValueError("r must be finite")
        if self.nth < 0:
            raise ValueError("nth must be >= 0")
        if self.kappa < 0:
            raise ValueError("kappa must be >= 0")
        if self.p < 2:
            raise ValueError("p must be >= 2")
        if not self.tmax > 0:
            raise ValueError("tmax must be > 0")

    def times(self) -> np.ndarray:
        """``t_i = tmax (i-1)/(p-1)``, i = 1..p."""
        return self.tmax * np.arange(self.p) / (self.p - 1)


def tmsv_covariance(r: float) -> np.ndarray:
    """Covariance of the two-mode squeezed vacuum with squeezing ``r``."""
    c, s = np.cosh(2 * r), np.sinh(2 * r)
    return np.array([
        [c, s, 0, 0],
        [s, c, 0, 0],
        [0, 0, c, -s],
        [0, 0, -s, c],
    ])


def evolve_covariance(m0, t: float, nth: float, kappa: float) -> np.ndarray:
    """``exp(-kappa t) M0 + (1 - exp(-kappa t)) (2 nth + 1) I``."""
    if t < 0:
        raise ValueError("t must be >= 0")
    m0 = np.asarray(m0, dtype=float)
    decay = np.exp(-kappa * t)
    return decay * m0 + (1 - decay) * (2 * nth + 1) * np.eye(m0.shape[0])


def covariance_family(params: QuantumParams) -> np.ndarray:
    m0 = tmsv_covariance(params.r)
    return np.stack([evolve_covariance(m0, t, params.nth, params.kappa) for t in params.times()])


def encode_fourier_family(params: QuantumParams) -> Tensor3:
    """4 x 4 x p Fourier tensor with slice i equal to ``M(t_i)``.

    No conjugate symmetry is imposed, so the spatial tensor is complex in general.
    """
    return Tensor3(covariance_family(params), FOURIER)


def g_entropy(lam) -> np.ndarray | float:
    """von Neumann entropy contribution (bits) of one mode with symplectic eigenvalue ``lam``."""
    lam = np.asarray(lam, dtype=float)
    if np.any(lam < 1 - 1e-6):
        raise NumericError(f"symplectic eigenvalue below the uncertainty bound: {np.min(lam)!r}")
    lam = np.maximum(lam, 1.0)
    plus, minus = (lam + 1) / 2, (lam - 1) / 2
    out = (xlogy(plus, plus) - xlogy(minus, minus)) / np.log(2)
    return float(out) if out.ndim == 0 else out


def entropy_profile(lambdas) -> np.ndarray:
    """``S_i = sum_j g(lam_j^(i))`` for a ``(p, n)`` array of symplectic eigenvalues."""
    return np.sum(g_entropy(np.atleast_2d(lambdas)), axis=1)


def log_negativity(lambdas_pt) -> np.ndarray:
    """``sum_j max(0, -log2 lam~_j)`` per row; terms below 1e-12 count as 0."""
    terms = -np.log2(np.atleast_2d(lambdas_pt))
    terms[terms < NEGATIVITY_FLOOR] = 0.0
    return terms.sum(axis=1)


def partial_transpose(m) -> np.ndarray:
    return PARTIAL_TRANSPOSE @ np.asarray(m) @ PARTIAL_TRANSPOSE


def negativity_profile(params: QuantumParams) -> tuple[np.ndarray, np.ndarray]:
    """Partial-transpose symplectic eigenvalues ``(p, 2)`` and ``E_N`` per sample."""
    lam_pt = np.stack([symplectic_eigs_oracle(partial_transpose(m)) for m in covariance_family(params)])
    return lam_pt, log_negativity(lam_pt)


@dataclass(frozen=True)
class ProfileSeries:
    times: np.ndarray
    entropy: np.ndarray
    negativity: np.ndarray
    lambdas: np.ndarray
    lambdas_oracle: np.ndarray
    lambdas_pt: np.ndarray

    def spectral_agreement(self) -> float:
        """Relative l2 distance between the Williamson and oracle eigenvalues."""
        return float(np.linalg.norm(self.lambdas - self.lambdas_oracle) / np.linalg.norm(self.lambdas_oracle))

    def rows(self):
        """``(t, S, E_N, lam1, lam2, lam~1, lam~2)`` tuples in time order."""
        for k, t in enumerate(self.times):
            yield (t, self.entropy[k], self.negativity[k], *self.lambdas[k], *self.lambdas_pt[k])


def quantum_profiles(params: QuantumParams | None = None) -> ProfileSeries:
    """Entropy and entanglement profiles of the encoded covariance family.

    Symplectic eigenvalues come from the T-Williamson factors; the oracle path
    is computed alongside so callers can compare the two.
    """
    params = params or QuantumParams()
    factors = t_williamson(encode_fourier_family(params))
    lambdas = factors.lambdas
    oracle = np.stack([symplectic_eigs_oracle(m) for m in covariance_family(params)])
    if np.min(lambdas) < 1 - HEISENBERG_TOL:
        raise NumericError(f"symplectic eigenvalue {np.min(lambdas)!r} violates the uncertainty bound")
    lam_pt, e_n = negativity_profile(params)
    return ProfileSeries(params.times(), entropy_profile(lambdas), e_n, lambdas, oracle, lam_pt)
