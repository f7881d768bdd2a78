"""Hamiltonian and symplectic tensors in the T-product algebra."""

from .errors import (
    ConjugateSymmetryError,
    DefinitenessError,
    DomainError,
    NumericError,
    PreconditionError,
    ShapeError,
    TSympError,
)
from .structured import (
    HamiltonianBlocks,
    SpectrumReport,
    assemble_hamiltonian,
    hamiltonian_residual,
    make_t_J,
    random_t_hamiltonian,
    spectral_symmetry_report,
    symplectic_residual,
    t_expm,
    t_pd_residual,
    t_spectrum,
    t_symplectic_inverse,
)
from .tcore import (
    Tensor3,
    bcirc,
    conjugate_symmetry_residual,
    dft3,
    frobenius,
    idft3,
    inner,
    t_conj_transpose,
    t_identity,
    t_trace,
    t_zero,
    tprod,
)
from .williamson import (
    WilliamsonFactors,
    hermitian_feasibility_check,
    real_symmetrize_factors,
    symplectic_eigs_oracle,
    t_williamson,
    williamson_matrix,
)

__version__ = "0.1.0"
