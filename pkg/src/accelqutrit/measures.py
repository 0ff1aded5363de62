"""Entanglement, coherence and entropy of bipartite states.

Entropies are in bits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    DensityMatrix,
    InvalidStateError,
    PSD_TOL,
    hermitian_eigenvalues,
    partial_transpose,
    realign,
    trace_norm,
)

EIGEN_FLOOR = 1e-12


@dataclass(frozen=True)
class MeasureConventions:
    """``m_override`` fixes the dimension in the concurrence prefactor;
    otherwise the smaller local dimension of the measured state is used."""

    m_override: int | None = None
    log_base: int = 2

    def __post_init__(self):
        if self.m_override is not None and self.m_override < 2:
            raise ValueError(f"m_override must be at least 2, got {self.m_override}")
        if self.log_base != 2:
            raise ValueError("only base-2 logarithms are supported")

    def m_for(self, rho: DensityMatrix) -> int:
        return self.m_override if self.m_override is not None else min(rho.dims)


def entropy_of_spectrum(eigenvalues) -> float:
    """``-sum p log2 p`` over a spectrum, treating tiny negatives as zero.

    Raises
    ------
    InvalidStateError
        If any eigenvalue is below ``-1e-12``.
    """
    lam = np.asarray(eigenvalues, dtype=float)
    if lam.size and lam.min() < -EIGEN_FLOOR:
        raise InvalidStateError(f"eigenvalue {lam.min():.3e} is too negative for an entropy")
    lam = lam[lam > 0.0]
    return float(-np.sum(lam * np.log2(lam)))


def von_neumann_entropy(rho) -> float:
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho)
    return entropy_of_spectrum(hermitian_eigenvalues(m))


def ppt_norm(rho: DensityMatrix) -> float:
    return trace_norm(partial_transpose(rho))


def ccnr_value(rho: DensityMatrix) -> float:
    """Trace norm of the realigned matrix."""
    return trace_norm(realign(rho))


def concurrence(rho: DensityMatrix, conv: MeasureConventions = MeasureConventions()) -> float:
    """``max(0, sqrt(2 / (m (m - 1))) * (max(||rho^T||, ||rho^R||) - 1))``."""
    m = conv.m_for(rho)
    excess = max(ppt_norm(rho), ccnr_value(rho)) - 1.0
    return max(0.0, np.sqrt(2.0 / (m * (m - 1))) * excess)


def rel_entropy_coherence(rho, spectrum=None) -> float:
    """``S(diag(rho)) - S(rho)``.

    ``spectrum`` may carry precomputed eigenvalues of ``rho``.
    """
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho)
    s_rho = entropy_of_spectrum(hermitian_eigenvalues(m) if spectrum is None else spectrum)
    return entropy_of_spectrum(np.diag(m).real) - s_rho


def nonlocal_information(rho, spectrum=None) -> float:
    """Von Neumann entropy of the joint state."""
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho)
    return entropy_of_spectrum(hermitian_eigenvalues(m) if spectrum is None else spectrum)


def is_ppt(rho: DensityMatrix) -> bool:
    return bool(hermitian_eigenvalues(partial_transpose(rho))[-1] >= -PSD_TOL)
