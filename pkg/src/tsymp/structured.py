"""T-Hamiltonian and T-symplectic tensors.

Every structural question about a tensor is answered on its Fourier slices:
a tensor is T-Hamiltonian (T-symplectic, T-positive-definite) exactly when
each Fourier slice is Hamiltonian (symplectic, Hermitian positive-definite).
Residuals that mirror the published consistency table are, however, measured
in the spatial domain with tensor Frobenius norms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import matkernels as mk
from .errors import PreconditionError, ShapeError
from .tcore import (
    FOURIER,
    SPATIAL,
    Tensor3,
    frobenius,
    idft3,
    t_conj_transpose,
    t_identity,
    to_fourier,
    tprod,
)

STRUCTURE_TOL = 1e-10
SYMMETRY_TOL = 1e-8


def _half(t: Tensor3) -> int:
    if t.m != t.n:
        raise ShapeError(f"expected square slices, got {t.m}x{t.n}")
    if t.m % 2:
        raise ShapeError(f"expected an even leading dimension 2n, got {t.m}")
    return t.m // 2


def make_t_J(n: int, p: int) -> Tensor3:
    """T-symplectic unit tensor (spatial): ``J`` in slice 1, zeros elsewhere."""
    if n < 1 or p < 1:
        raise ShapeError("n and p must be >= 1")
    data = np.zeros((p, 2 * n, 2 * n), dtype=np.complex128)
    data[0] = mk.sympmat(n)
    return Tensor3(data, SPATIAL)


def _fourier_J(n: int, p: int) -> Tensor3:
    return Tensor3(np.broadcast_to(mk.sympmat(n), (p, 2 * n, 2 * n)), FOURIER)


@dataclass(frozen=True)
class HamiltonianBlocks:
    """Per-slice blocks ``(A_i, B_i, C_i)``, each stacked as ``(p, n, n)``.

    ``B`` and ``C`` are replaced by their Hermitian parts on construction.
    """

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray

    def __post_init__(self):
        arrs = [np.array(x, dtype=np.complex128) for x in (self.A, self.B, self.C)]
        if any(x.ndim != 3 or x.shape[1] != x.shape[2] for x in arrs):
            raise ShapeError("blocks must be stacks of square matrices, shape (p, n, n)")
        if len({x.shape for x in arrs}) != 1:
            raise ShapeError(f"block shapes differ: {[x.shape for x in arrs]}")
        a, b, c = arrs
        b = (b + b.conj().transpose(0, 2, 1)) / 2
        c = (c + c.conj().transpose(0, 2, 1)) / 2
        object.__setattr__(self, "A", a)
        object.__setattr__(self, "B", b)
        object.__setattr__(self, "C", c)

    @property
    def n(self) -> int:
        return self.A.shape[1]

    @property
    def p(self) -> int:
        return self.A.shape[0]


def assemble_hamiltonian(blocks: HamiltonianBlocks) -> Tensor3:
    """Fourier tensor with slices ``[[A_i, B_i], [C_i, -A_i^H]]``."""
    a, b, c = blocks.A, blocks.B, blocks.C
    top = np.concatenate([a, b], axis=2)
    bottom = np.concatenate([c, -a.conj().transpose(0, 2, 1)], axis=2)
    return Tensor3(np.concatenate([top, bottom], axis=1), FOURIER)


def _complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_hamiltonian_blocks(n: int, p: int, seed=None) -> HamiltonianBlocks:
    # PCG64 via default_rng; real and imaginary parts i.i.d. N(0, 1)
    rng = np.random.default_rng(seed)
    shape = (p, n, n)
    return HamiltonianBlocks(_complex_gaussian(rng, shape), _complex_gaussian(rng, shape), _complex_gaussian(rng, shape))


def random_t_hamiltonian(n: int, p: int, seed=None) -> Tensor3:
    """Random T-Hamiltonian tensor (Fourier domain), reproducible for a fixed seed."""
    return assemble_hamiltonian(random_hamiltonian_blocks(n, p, seed))


def hamiltonian_residual(h: Tensor3) -> float:
    """Max over Fourier slices of ``||(J H)^H - J H||_F / max(1, ||H||_F)``."""
    n = _half(h)
    hf = to_fourier(h).data
    jh = np.matmul(mk.sympmat(n), hf)
    dev = np.linalg.norm(jh.conj().transpose(0, 2, 1) - jh, axis=(1, 2))
    scale = np.maximum(1.0, np.linalg.norm(hf, axis=(1, 2)))
    return float(np.max(dev / scale))


def symplectic_residual(s: Tensor3) -> float:
    """``||S^H * J * S - J|| / ||J||`` in spatial-domain Frobenius norms."""
    n = _half(s)
    sf = to_fourier(s)
    gram = tprod(tprod(t_conj_transpose(sf), _fourier_J(n, s.p)), sf)
    j = make_t_J(n, s.p)
    return frobenius(idft3(gram) - j) / frobenius(j)


def t_symplectic_inverse(s: Tensor3, tol: float = SYMMETRY_TOL) -> Tensor3:
    """``-J * S^H * J``; requires ``symplectic_residual(s) <= tol``."""
    n = _half(s)
    res = symplectic_residual(s)
    if res > tol:
        raise PreconditionError(f"tensor is not T-symplectic (residual {res:.3e} > {tol:.0e})", residual=res)
    j = _fourier_J(n, s.p)
    sf = to_fourier(s)
    inv = -tprod(tprod(j, t_conj_transpose(sf)), j)
    return inv if s.domain == FOURIER else idft3(inv)


def t_expm(h: Tensor3) -> Tensor3:
    """Tensor exponential: ``expm`` on every Fourier slice, same domain as ``h``."""
    if h.m != h.n:
        raise ShapeError(f"expected square slices, got {h.m}x{h.n}")
    hf = to_fourier(h)
    out = Tensor3(np.stack([mk.expm(x) for x in hf.data]), FOURIER)
    return out if h.domain == FOURIER else idft3(out)


@dataclass(frozen=True)
class SpectrumReport:
    """T-spectrum with optional reflection-matching diagnostics.

    ``slices`` holds 0-based slice indices aligned with ``eigenvalues``.
    ``match_distances[k]`` is the distance from ``-conj(eigenvalues[k])`` to
    its matched spectrum member (``None`` until a symmetry check ran).
    """

    slices: np.ndarray
    eigenvalues: np.ndarray
    match_distances: np.ndarray | None = None

    @property
    def reflected(self) -> np.ndarray:
        return -np.conj(self.eigenvalues)

    @property
    def reflection_match_distance(self) -> float | None:
        if self.match_distances is None:
            return None
        return float(np.max(self.match_distances, initial=0.0))

    @property
    def symmetric(self) -> bool | None:
        d = self.reflection_match_distance
        return None if d is None else d <= SYMMETRY_TOL

    def pairs(self):
        return list(zip(self.slices.tolist(), self.eigenvalues.tolist()))


def t_spectrum(a: Tensor3) -> SpectrumReport:
    """Eigenvalues of every Fourier slice, tagged with the slice index."""
    if a.m != a.n:
        raise ShapeError(f"expected square slices, got {a.m}x{a.n}")
    af = to_fourier(a).data
    eigs = [mk.eig_general(x) for x in af]
    slices = np.repeat(np.arange(a.p), a.m)
    return SpectrumReport(slices, np.concatenate(eigs))


def _lex_order(z: np.ndarray) -> np.ndarray:
    return np.lexsort((z.imag, z.real))


def greedy_reflection_match(eigs: np.ndarray) -> np.ndarray:
    """Match each ``-conj(l)`` to a distinct nearest eigenvalue, greedily.

    Eigenvalues are visited in (real, imag) lexicographic order; ties among
    candidates resolve to the lexicographically smallest. Returns distances
    aligned with ``eigs``.
    """
    eigs = np.asarray(eigs, dtype=np.complex128)
    order = _lex_order(eigs)
    cand = eigs[order]
    used = np.zeros(len(eigs), dtype=bool)
    dist = np.empty(len(eigs))
    for k in order:
        d = np.abs(cand - (-np.conj(eigs[k])))
        d[used] = np.inf
        j = int(np.argmin(d))  # first minimum = lexicographically smallest
        used[j] = True
        dist[k] = d[j]
    return dist


def spectral_symmetry_report(h: Tensor3, tol: float = SYMMETRY_TOL) -> SpectrumReport:
    """T-spectrum of a T-Hamiltonian tensor with slice-wise reflection matching."""
    res = hamiltonian_residual(h)
    if res > tol:
        raise PreconditionError(f"tensor is not T-Hamiltonian (residual {res:.3e} > {tol:.0e})", residual=res)
    spec = t_spectrum(h)
    dist = np.empty(len(spec.eigenvalues))
    for i in range(h.p):
        mask = spec.slices == i
        dist[mask] = greedy_reflection_match(spec.eigenvalues[mask])
    return SpectrumReport(spec.slices, spec.eigenvalues, dist)


@dataclass(frozen=True)
class PDReport:
    ok: bool
    smallest_eigenvalues: np.ndarray
    failing_slices: tuple[int, ...] = ()

    def __bool__(self):
        return self.ok


def t_pd_residual(m: Tensor3) -> PDReport:
    """T-positive-definiteness via :func:`is_hpd` on every Fourier slice."""
    if m.m != m.n:
        raise ShapeError(f"expected square slices, got {m.m}x{m.n}")
    reports = [mk.is_hpd(x) for x in to_fourier(m).data]
    failing = tuple(i for i, r in enumerate(reports) if not r.ok)
    return PDReport(not failing, np.array([r.smallest_eigenvalue for r in reports]), failing)


def t_unitary_residual(u: Tensor3) -> float:
    """``||U^H * U - I|| / ||I||`` in spatial norms."""
    if u.m != u.n:
        raise ShapeError(f"expected square slices, got {u.m}x{u.n}")
    uf = to_fourier(u)
    eye = t_identity(u.m, u.p)
    return frobenius(idft3(tprod(t_conj_transpose(uf), uf)) - eye) / frobenius(eye)
