"""Third-order tensors and the T-product.

A :class:`Tensor3` stores an ``m x n x p`` complex tensor slice-major, i.e.
as a numpy array of shape ``(p, m, n)`` where ``data[k]`` is the k-th frontal
slice. The ``domain`` tag records whether the slices are spatial or Fourier
slices; it is metadata only and no operation re-transforms silently.

The mode-3 transform uses the convention::

    hat(A)[i] = sum_j  w**(i*j) A[j],      w = exp(+2*pi*1j/p)
    A[j]      = (1/p) sum_i w**(-i*j) hat(A)[i]

which is the *conjugate* of numpy's forward FFT. Hence ``dft3`` is
``p * ifft`` and ``idft3`` is ``fft / p`` along the slice axis.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import DomainError, ShapeError

SPATIAL = "spatial"
FOURIER = "fourier"
Domain = Literal["spatial", "fourier"]


@dataclass(frozen=True, eq=False)
class Tensor3:
    """Dense complex ``m x n x p`` tensor with a domain tag.

    Parameters
    ----------
    data : array_like, shape (p, m, n)
        Frontal slices, slice index first.
    domain : {"spatial", "fourier"}
    """

    data: np.ndarray
    domain: Domain = SPATIAL

    def __post_init__(self):
        arr = np.array(self.data, dtype=np.complex128)
        if arr.ndim != 3 or min(arr.shape) < 1:
            raise ShapeError(f"tensor data must have shape (p, m, n) with all sizes >= 1, got {arr.shape}")
        if self.domain not in (SPATIAL, FOURIER):
            raise DomainError(f"unknown domain tag {self.domain!r}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("tensor entries must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @classmethod
    def from_slices(cls, slices, domain: Domain = SPATIAL) -> Tensor3:
        return cls(np.stack([np.asarray(s) for s in slices]), domain)

    @property
    def m(self) -> int:
        return self.data.shape[1]

    @property
    def n(self) -> int:
        return self.data.shape[2]

    @property
    def p(self) -> int:
        return self.data.shape[0]

    @property
    def shape(self) -> tuple[int, int, int]:
        """``(m, n, p)`` in the mathematical index order."""
        return (self.m, self.n, self.p)

    def slice(self, k: int) -> np.ndarray:
        """0-based frontal slice ``k``."""
        return self.data[k]

    def with_data(self, data, domain: Domain | None = None) -> Tensor3:
        return Tensor3(data, self.domain if domain is None else domain)

    def __neg__(self) -> Tensor3:
        return self.with_data(-self.data)

    def __add__(self, other: Tensor3) -> Tensor3:
        _check_same(self, other)
        return self.with_data(self.data + other.data)

    def __sub__(self, other: Tensor3) -> Tensor3:
        _check_same(self, other)
        return self.with_data(self.data - other.data)

    def __mul__(self, scalar) -> Tensor3:
        return self.with_data(self.data * scalar)

    __rmul__ = __mul__

    def __matmul__(self, other: Tensor3) -> Tensor3:
        return tprod(self, other)

    def __repr__(self):
        return f"Tensor3(m={self.m}, n={self.n}, p={self.p}, domain={self.domain!r})"


def _check_same(a: Tensor3, b: Tensor3):
    if a.domain != b.domain:
        raise DomainError(f"mixed domain tags: {a.domain} and {b.domain}")
    if a.data.shape != b.data.shape:
        raise ShapeError(f"shape mismatch: {a.shape} vs {b.shape}")


def _require(t: Tensor3, domain: str):
    if t.domain != domain:
        raise DomainError(f"expected a {domain}-domain tensor, got {t.domain}")


def dft3(t: Tensor3) -> Tensor3:
    """Mode-3 DFT, spatial -> Fourier."""
    _require(t, SPATIAL)
    return Tensor3(t.p * np.fft.ifft(t.data, axis=0), FOURIER)


def idft3(t: Tensor3) -> Tensor3:
    """Inverse mode-3 DFT, Fourier -> spatial."""
    _require(t, FOURIER)
    return Tensor3(np.fft.fft(t.data, axis=0) / t.p, SPATIAL)


def to_fourier(t: Tensor3) -> Tensor3:
    return t if t.domain == FOURIER else dft3(t)


def to_spatial(t: Tensor3) -> Tensor3:
    return t if t.domain == SPATIAL else idft3(t)


def to_domain(t: Tensor3, domain: str) -> Tensor3:
    return to_fourier(t) if domain == FOURIER else to_spatial(t)


def tprod(a: Tensor3, b: Tensor3) -> Tensor3:
    """T-product ``a * b``.

    Fourier inputs are multiplied slice by slice; spatial inputs go through
    the transform and come back. The result carries the inputs' domain tag.
    """
    if a.domain != b.domain:
        raise DomainError(f"mixed domain tags: {a.domain} and {b.domain}")
    if a.n != b.m:
        raise ShapeError(f"inner dimensions differ: a is {a.m}x{a.n}, b is {b.m}x{b.n}")
    if a.p != b.p:
        raise ShapeError(f"slice counts differ: {a.p} vs {b.p}")
    if a.domain == FOURIER:
        return Tensor3(np.matmul(a.data, b.data), FOURIER)
    return idft3(Tensor3(np.matmul(dft3(a).data, dft3(b).data), FOURIER))


def t_conj_transpose(a: Tensor3) -> Tensor3:
    """T-conjugate transpose.

    Spatial: slice 1 -> slice 1^H, slice k -> slice (p-k+2)^H. This is the
    permutation that makes ``bcirc(a^H) == bcirc(a)^H``. Fourier slices are
    simply conjugate-transposed one by one.
    """
    h = np.conj(np.swapaxes(a.data, 1, 2))
    if a.domain == SPATIAL:
        h = h[(-np.arange(a.p)) % a.p]
    return Tensor3(h, a.domain)


def t_identity(n: int, p: int, domain: Domain = SPATIAL) -> Tensor3:
    if n < 1 or p < 1:
        raise ShapeError("n and p must be >= 1")
    data = np.zeros((p, n, n), dtype=np.complex128)
    if domain == SPATIAL:
        data[0] = np.eye(n)
    else:
        data[:] = np.eye(n)
    return Tensor3(data, domain)


def t_zero(m: int, n: int, p: int, domain: Domain = SPATIAL) -> Tensor3:
    return Tensor3(np.zeros((p, m, n), dtype=np.complex128), domain)


def inner(a: Tensor3, b: Tensor3) -> complex:
    """``sum conj(a_ijk) b_ijk``, accumulated in storage order."""
    if a.data.shape != b.data.shape:
        raise ShapeError(f"shape mismatch: {a.shape} vs {b.shape}")
    return complex(np.vdot(a.data.ravel(), b.data.ravel()))


def frobenius(a: Tensor3) -> float:
    return float(np.sqrt(inner(a, a).real))


def bcirc(a: Tensor3) -> np.ndarray:
    """Block-circulant matrix (mp x np) with block (r, c) = slice (r - c) mod p.

    Only meant as a brute-force oracle.
    """
    _require(a, SPATIAL)
    m, n, p = a.shape
    out = np.empty((m * p, n * p), dtype=np.complex128)
    for r in range(p):
        for c in range(p):
            out[r * m:(r + 1) * m, c * n:(c + 1) * n] = a.data[(r - c) % p]
    return out


def t_trace(a: Tensor3) -> complex:
    """``tr(bcirc(a))``: ``p * tr(A1)`` in space, sum of slice traces in Fourier."""
    if a.m != a.n:
        raise ShapeError(f"trace needs square slices, got {a.m}x{a.n}")
    if a.domain == SPATIAL:
        return complex(a.p * np.trace(a.data[0]))
    return complex(np.trace(a.data, axis1=1, axis2=2).sum())


def conjugate_symmetry_residual(f: Tensor3) -> float:
    """Max over slices of ``||F[p-i+2] - conj(F[i])||_F`` (1-based indices).

    Zero exactly when the inverse transform of ``f`` is real.
    """
    _require(f, FOURIER)
    partner = f.data[(-np.arange(f.p)) % f.p]
    diff = partner - np.conj(f.data)
    return float(np.max(np.linalg.norm(diff, axis=(1, 2))))
