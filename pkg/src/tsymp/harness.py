"""Consistency residuals, spectrum datasets and runtime sweeps."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np
from threadpoolctl import threadpool_limits

from .structured import (
    random_t_hamiltonian,
    spectral_symmetry_report,
    symplectic_residual,
    t_expm,
)
from .tcore import FOURIER, Tensor3, frobenius, idft3, t_conj_transpose, to_fourier, tprod
from .williamson import WilliamsonFactors, symplectic_eigs_oracle, t_williamson

RESIDUAL_SIZES = ((4, 8), (8, 16), (12, 24), (16, 32))
RESIDUAL_GATE = 1e-10
SYMP_GATE_LARGEST = 1e-9


def random_orthogonal(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed orthogonal matrix (QR with sign-fixed R diagonal)."""
    q, r = np.linalg.qr(rng.standard_normal((dim, dim)))
    return q * np.sign(np.diag(r))


def random_spd_slices(n: int, p: int, seed=None) -> Tensor3:
    """Fourier tensor with real SPD ``2n x 2n`` slices ``Q diag(d) Q^T``.

    ``d`` is log-uniform on [0.1, 10] and ``Q`` Haar orthogonal.
    """
    rng = np.random.default_rng(seed)
    dim = 2 * n
    slices = []
    for _ in range(p):
        q = random_orthogonal(dim, rng)
        d = 10.0 ** rng.uniform(-1.0, 1.0, dim)
        slices.append((q * d) @ q.T)
    return Tensor3(np.stack(slices), FOURIER)


def _row_seed(seed: int, n: int, p: int) -> list[int]:
    return [seed, n, p]


@dataclass(frozen=True)
class ResidualRow:
    n: int
    p: int
    res_symp: float
    res_wnf: float
    res_wsp: float
    res_spec: float

    def gate(self, symp_gate: float = RESIDUAL_GATE) -> bool:
        return self.res_symp <= symp_gate and max(self.res_wnf, self.res_wsp, self.res_spec) <= RESIDUAL_GATE


@dataclass(frozen=True)
class ResidualTable:
    rows: list[ResidualRow]
    seed: int
    trials: int = 1

    def passed(self) -> bool:
        """1e-10 gate everywhere, relaxed to 1e-9 for res_Symp on the largest size."""
        if not self.rows:
            return True
        largest = max((r.n, r.p) for r in self.rows)
        return all(r.gate(SYMP_GATE_LARGEST if (r.n, r.p) == largest else RESIDUAL_GATE) for r in self.rows)

    def format_text(self) -> str:
        head = f"{'n':>4} {'p':>4} {'res_Symp':>12} {'res_WNF':>12} {'res_WSp':>12} {'res_Spec':>12}"
        lines = [head]
        for r in self.rows:
            lines.append(f"{r.n:>4} {r.p:>4} {r.res_symp:12.3e} {r.res_wnf:12.3e} {r.res_wsp:12.3e} {r.res_spec:12.3e}")
        return "\n".join(lines)


def reconstruction_residual(m: Tensor3, factors: WilliamsonFactors) -> float:
    """``||M - S^H * D * S|| / ||M||`` in the spatial domain."""
    s = to_fourier(factors.S)
    rebuilt = tprod(tprod(t_conj_transpose(s), factors.D_fourier()), s)
    m_sp = idft3(to_fourier(m))
    return frobenius(m_sp - idft3(rebuilt)) / frobenius(m_sp)


def spectral_residual(m: Tensor3, lambdas: np.ndarray) -> float:
    """Relative l2 error of per-slice symplectic eigenvalues against the oracle."""
    oracle = np.stack([symplectic_eigs_oracle(x) for x in to_fourier(m).data])
    return float(np.sqrt(np.sum((lambdas - oracle) ** 2)) / np.sqrt(np.sum(oracle ** 2)))


def residual_row(n: int, p: int, seed: int = 0) -> ResidualRow:
    if n < 1 or p < 1:
        raise ValueError(f"invalid size n={n}, p={p}")
    base = _row_seed(seed, n, p)
    try:
        h = random_t_hamiltonian(n, p, base + [0])
        res_symp = symplectic_residual(t_expm(h))
        m = random_spd_slices(n, p, base + [1])
        factors = t_williamson(m)
        return ResidualRow(
            n, p, res_symp,
            reconstruction_residual(m, factors),
            symplectic_residual(factors.S),
            spectral_residual(m, factors.lambdas),
        )
    except Exception as exc:
        exc.args = (f"residual row n={n}, p={p}: {exc.args[0] if exc.args else exc}",) + exc.args[1:]
        raise


def residual_suite(sizes=RESIDUAL_SIZES, seed: int = 0) -> ResidualTable:
    """Consistency residuals for each ``(n, p)``, rows sorted by size."""
    rows = [residual_row(n, p, seed) for n, p in sorted(sizes)]
    return ResidualTable(rows, seed)


SPECTRUM_COLUMNS = ("slice", "re", "im", "re_reflected", "im_reflected", "match_distance")


@dataclass(frozen=True)
class SpectrumDataset:
    slices: np.ndarray
    eigenvalues: np.ndarray
    distances: np.ndarray

    @property
    def reflected(self) -> np.ndarray:
        return -np.conj(self.eigenvalues)

    @property
    def max_distance(self) -> float:
        return float(np.max(self.distances, initial=0.0))

    def rows(self):
        """CSV-ready tuples; slice indices are 1-based."""
        refl = self.reflected
        for i, lam, rf, d in zip(self.slices, self.eigenvalues, refl, self.distances):
            yield (int(i) + 1, lam.real, lam.imag, rf.real, rf.imag, d)


def spectrum_of(h: Tensor3) -> SpectrumDataset:
    rep = spectral_symmetry_report(h)
    return SpectrumDataset(rep.slices, rep.eigenvalues, rep.match_distances)


def spectrum_dataset(n: int = 8, p: int = 16, seed: int = 0) -> SpectrumDataset:
    """Spectrum of a random ``2n x 2n x p`` T-Hamiltonian tensor."""
    return spectrum_of(random_t_hamiltonian(n, p, seed))


@dataclass(frozen=True)
class BenchRecord:
    axis: str
    fixed: int
    points: list[int]
    mean_times: list[float]
    runs: int
    workers: int = 1
    slope: float | None = None
    all_times: list[list[float]] = field(default_factory=list, repr=False)


def loglog_slope(points, times) -> float | None:
    """Least-squares slope of log(time) vs log(point) over the upper half of the points."""
    if len(points) < 2:
        return None
    start = min(len(points) // 2, len(points) - 2)
    x = np.log(np.asarray(points[start:], dtype=float))
    y = np.log(np.asarray(times[start:], dtype=float))
    return float(np.polyfit(x, y, 1)[0])


def bench_sweep(axis: str, points, fixed: int, runs: int = 20, seed: int = 0,
                workers: int = 1, blas_threads: int | None = 1) -> BenchRecord:
    """Mean wall time of :func:`t_williamson` along ``n`` or ``p``.

    Inputs are generated outside the timed region. The timed call includes
    the output transforms. BLAS runs single-threaded unless ``blas_threads``
    says otherwise.
    """
    if axis not in ("n", "p"):
        raise ValueError("axis must be 'n' or 'p'")
    if runs < 1:
        raise ValueError("runs must be >= 1")
    points = [int(x) for x in points]
    if points != sorted(points):
        raise ValueError("points must be ascending")
    means, samples = [], []
    with threadpool_limits(limits=blas_threads):
        for k, val in enumerate(points):
            n, p = (val, fixed) if axis == "n" else (fixed, val)
            ts = []
            for run in range(runs):
                m = random_spd_slices(n, p, [seed, k, run])
                t0 = time.perf_counter()
                t_williamson(m, workers=workers)
                ts.append(time.perf_counter() - t0)
            samples.append(ts)
            means.append(float(np.mean(ts)))
    return BenchRecord(axis, fixed, points, means, runs, workers, loglog_slope(points, means), samples)
