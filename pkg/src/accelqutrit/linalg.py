"""Dense linear algebra for bipartite density matrices.

Composite indices follow the convention ``|ab> <-> a * dim_b + b``. Partial
transpose and realignment are both defined through this ordering:

* partial transpose acts on the first factor,
  ``rho^T[(i, j), (k, l)] = rho[(k, j), (i, l)]``;
* realignment reshuffles ``rho^R[(i, j), (k, l)] = rho[(i, k), (j, l)]``,
  giving a ``dim_a**2 x dim_b**2`` matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10


class InvalidStateError(ValueError):
    """Raised when a matrix fails a density-matrix invariant."""


class ShapeError(ValueError):
    """Raised when matrix dimensions disagree with the bipartite shape."""


@dataclass(frozen=True)
class BipartiteShape:
    dim_a: int
    dim_b: int

    def __post_init__(self):
        if self.dim_a < 1 or self.dim_b < 1:
            raise ShapeError(f"local dimensions must be positive, got {self.dim_a}x{self.dim_b}")

    @property
    def size(self) -> int:
        return self.dim_a * self.dim_b


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A bipartite state: a square complex matrix with its local dimensions.

    The stored array is read-only. Construction checks only the shape;
    call :meth:`check` (or use :func:`density_matrix`) to enforce
    Hermiticity, unit trace and positivity.
    """

    matrix: np.ndarray
    shape: BipartiteShape

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ShapeError(f"density matrix must be square, got {m.shape}")
        if m.shape[0] != self.shape.size:
            raise ShapeError(
                f"matrix side {m.shape[0]} does not match {self.shape.dim_a}x{self.shape.dim_b}"
            )
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dims(self) -> tuple[int, int]:
        return self.shape.dim_a, self.shape.dim_b

    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def hermiticity_drift(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T)))

    def min_eigenvalue(self) -> float:
        return float(hermitian_eigenvalues(self.matrix)[-1])

    def check(self, normalized: bool = True) -> "DensityMatrix":
        """Raise :class:`InvalidStateError` unless this is a valid state."""
        drift = self.hermiticity_drift()
        if drift > HERMITIAN_TOL:
            raise InvalidStateError(f"not Hermitian (drift {drift:.3e})")
        if normalized and abs(self.trace() - 1.0) > TRACE_TOL:
            raise InvalidStateError(f"trace {self.trace():.15g} differs from 1")
        lam = self.min_eigenvalue()
        if lam < -PSD_TOL:
            raise InvalidStateError(f"negative eigenvalue {lam:.3e}")
        return self


def density_matrix(matrix, dims: tuple[int, int], normalized: bool = True) -> DensityMatrix:
    """Build and validate a :class:`DensityMatrix`."""
    return DensityMatrix(matrix, BipartiteShape(*dims)).check(normalized=normalized)


def _as_bipartite(rho, dims):
    if isinstance(rho, DensityMatrix):
        return rho.matrix, rho.dims
    m = np.asarray(rho)
    if dims is None:
        raise ShapeError("dims are required for a bare array")
    da, db = dims
    if m.ndim != 2 or m.shape != (da * db, da * db):
        raise ShapeError(f"matrix of shape {m.shape} is not {da}x{db} bipartite")
    return m, (da, db)


def kron(a, b) -> np.ndarray:
    return np.kron(np.asarray(a), np.asarray(b))


def partial_trace(rho, which: Literal["A", "B"], dims=None) -> np.ndarray:
    """Trace out subsystem ``which`` and return the reduced matrix of the other."""
    m, (da, db) = _as_bipartite(rho, dims)
    t = m.reshape(da, db, da, db)
    if which == "B":
        return np.einsum("ijkj->ik", t)
    if which == "A":
        return np.einsum("ijil->jl", t)
    raise ValueError(f"which must be 'A' or 'B', got {which!r}")


def partial_transpose(rho, dims=None) -> np.ndarray:
    """Transpose the first subsystem's indices."""
    m, (da, db) = _as_bipartite(rho, dims)
    return m.reshape(da, db, da, db).transpose(2, 1, 0, 3).reshape(da * db, da * db)


def realign(rho, dims=None) -> np.ndarray:
    m, (da, db) = _as_bipartite(rho, dims)
    return m.reshape(da, db, da, db).transpose(0, 2, 1, 3).reshape(da * da, db * db)


def is_hermitian(m, tol: float = 1e-10) -> bool:
    m = np.asarray(m)
    return m.ndim == 2 and m.shape[0] == m.shape[1] and bool(np.all(np.abs(m - m.conj().T) <= tol))


def jacobi_eigh(m, tol: float = 1e-13, max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns ``(w, v)`` with eigenvalues in ascending order and eigenvectors
    in the columns of ``v``. Iterates until the off-diagonal Frobenius norm
    drops below ``tol`` (relative to the matrix norm when that exceeds 1).

    Raises
    ------
    RuntimeError
        If ``max_sweeps`` sweeps do not reach the threshold.
    """
    a = np.array(m, dtype=complex)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    threshold = tol * max(1.0, float(np.linalg.norm(a)))

    def off(x):
        return float(np.linalg.norm(x - np.diag(np.diag(x))))

    for _ in range(max_sweeps):
        if off(a) <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                # rotate the phase of q so that a[p, q] becomes real and positive
                u = np.conj(apq) / mag
                a[:, q] *= u
                a[q, :] *= np.conj(u)
                v[:, q] *= u
                app, aqq = a[p, p].real, a[q, q].real
                theta = (aqq - app) / (2.0 * mag)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                ap, aq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap, aq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    else:
        if off(a) > threshold:
            raise RuntimeError(f"Jacobi did not converge in {max_sweeps} sweeps")
    w = np.diag(a).real
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def hermitian_eigh(m, method: Literal["lapack", "jacobi"] = "lapack") -> tuple[np.ndarray, np.ndarray]:
    """Eigenpairs of a Hermitian matrix, eigenvalues in descending order."""
    m = np.asarray(m)
    if not is_hermitian(m):
        raise ValueError("matrix is not Hermitian within 1e-10")
    if method == "jacobi":
        w, v = jacobi_eigh(m)
    elif method == "lapack":
        w, v = np.linalg.eigh(m)
    else:
        raise ValueError(f"unknown eigensolver {method!r}")
    return w[::-1], v[:, ::-1]


def hermitian_eigenvalues(m, method: Literal["lapack", "jacobi"] = "lapack") -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix in descending order."""
    m = np.asarray(m)
    if not is_hermitian(m):
        raise ValueError("matrix is not Hermitian within 1e-10")
    if method == "jacobi":
        w = jacobi_eigh(m)[0]
    elif method == "lapack":
        w = np.linalg.eigvalsh(m)
    else:
        raise ValueError(f"unknown eigensolver {method!r}")
    return w[::-1]


def singular_values_gram(m) -> np.ndarray:
    """Singular values as square roots of the eigenvalues of ``m^dagger m``.

    Loses roughly half the digits for singular values near zero; kept as an
    independent cross-check for :func:`trace_norm`.
    """
    m = np.asarray(m)
    w = hermitian_eigenvalues(m.conj().T @ m)
    w = np.where((w < 0) & (w > -1e-12), 0.0, w)
    return np.sqrt(np.clip(w, 0.0, None))


def trace_norm(m) -> float:
    """Sum of singular values; uses the eigenvalues directly for Hermitian input."""
    m = np.asarray(m)
    if m.ndim == 2 and m.shape[0] == m.shape[1] and is_hermitian(m, tol=1e-14):
        return float(np.sum(np.abs(np.linalg.eigvalsh(m))))
    return float(np.sum(np.linalg.svd(m, compute_uv=False)))
