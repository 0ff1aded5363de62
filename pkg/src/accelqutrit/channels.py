"""Dephasing and amplitude-damping Kraus channels on qutrits.

The accelerated state has local dimension 4 (levels ``0, 1, 2, P``). The
qutrit channels are extended to that space by acting as the identity on
``P`` through the first Kraus operator; the other operators vanish there.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .linalg import DensityMatrix, ShapeError

COMPLETENESS_TOL = 1e-12
ANNIHILATION_TOL = 1e-12


class ChannelKind(enum.Enum):
    DEPHASING = "dephasing"
    AMPLITUDE_DAMPING = "amplitude"


class Locality(enum.Enum):
    NONE = "none"
    MULTI_LOCAL = "multi-local"
    GLOBAL = "global"


class GlobalMode(enum.Enum):
    LITERAL = "literal"
    COMPOSED = "composed"


@dataclass(frozen=True, eq=False)
class KrausChannel:
    kind: ChannelKind
    gamma: float
    operators: tuple[np.ndarray, ...]

    @property
    def local_dim(self) -> int:
        return self.operators[0].shape[0]

    def completeness_error(self) -> float:
        total = sum(e.conj().T @ e for e in self.operators)
        return float(np.max(np.abs(total - np.eye(self.local_dim))))

    def apply(self, rho: np.ndarray) -> np.ndarray:
        """Act on a single-party matrix of side ``local_dim``."""
        return sum(e @ rho @ e.conj().T for e in self.operators)


def check_gamma(gamma: float) -> float:
    gamma = float(gamma)
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"noise strength must lie in [0, 1], got {gamma}")
    return gamma


def _frozen(ops):
    out = []
    for e in ops:
        e = np.asarray(e, dtype=complex)
        e.setflags(write=False)
        out.append(e)
    return tuple(out)


def dephasing_kraus(gamma: float) -> KrausChannel:
    g = check_gamma(gamma)
    k = np.sqrt(1.0 - g)
    return KrausChannel(
        ChannelKind.DEPHASING,
        g,
        _frozen([np.diag([1.0, k, k]), np.diag([0.0, np.sqrt(g), 0.0]), np.diag([0.0, 0.0, np.sqrt(g)])]),
    )


def amplitude_damping_kraus(gamma: float) -> KrausChannel:
    g = check_gamma(gamma)
    k = np.sqrt(1.0 - g)
    e2 = np.zeros((3, 3))
    e2[0, 1] = np.sqrt(g)
    e3 = np.zeros((3, 3))
    e3[0, 2] = np.sqrt(g)
    return KrausChannel(ChannelKind.AMPLITUDE_DAMPING, g, _frozen([np.diag([1.0, k, k]), e2, e3]))


def make_channel(kind: ChannelKind, gamma: float, local_dim: int = 4) -> KrausChannel:
    build = dephasing_kraus if kind is ChannelKind.DEPHASING else amplitude_damping_kraus
    ch = build(gamma)
    return extend_to_acc_space(ch) if local_dim == 4 else ch


def extend_to_acc_space(ch: KrausChannel) -> KrausChannel:
    """Extend a qutrit channel to the ``{0, 1, 2, P}`` space."""
    if ch.local_dim != 3:
        raise ShapeError(f"expected a qutrit channel, got local dimension {ch.local_dim}")
    ops = []
    for n, e in enumerate(ch.operators):
        big = np.zeros((4, 4), dtype=complex)
        big[:3, :3] = e
        if n == 0:
            big[3, 3] = 1.0
        ops.append(big)
    return KrausChannel(ch.kind, ch.gamma, _frozen(ops))


def _check(rho: DensityMatrix, *channels: KrausChannel) -> None:
    da, db = rho.dims
    for ch, d in zip(channels, (da, db)):
        if ch.local_dim != d:
            raise ShapeError(f"channel acts on dimension {ch.local_dim}, state has {d}")
    for ch in channels:
        err = ch.completeness_error()
        if err > COMPLETENESS_TOL:
            raise ValueError(f"Kraus set is not complete (error {err:.3e})")


def _sandwich(ops, m: np.ndarray) -> np.ndarray:
    """``sum_k K_k m K_k^dagger`` in a fixed summation order."""
    out = np.zeros_like(m, dtype=complex)
    for k in ops:
        out += k @ m @ k.conj().T
    return out


def apply_multilocal(rho: DensityMatrix, ch_a: KrausChannel, ch_b: KrausChannel | None = None) -> DensityMatrix:
    """Independent channels on each party: ``sum_ij (E_i x F_j) rho (E_i x F_j)^dagger``."""
    ch_b = ch_a if ch_b is None else ch_b
    _check(rho, ch_a, ch_b)
    ops = [np.kron(ea, eb) for ea in ch_a.operators for eb in ch_b.operators]
    return DensityMatrix(_sandwich(ops, rho.matrix), rho.shape)


def global_kraus_operators(ch: KrausChannel) -> list[np.ndarray]:
    """The 27 products ``(E_i x E_i)(E_j x I)(I x E_k)`` used by the global channel."""
    eye = np.eye(ch.local_dim)
    return [
        np.kron(ei, ei) @ np.kron(ej, eye) @ np.kron(eye, ek)
        for ei in ch.operators
        for ej in ch.operators
        for ek in ch.operators
    ]


def apply_global(
    rho: DensityMatrix, ch: KrausChannel, mode: GlobalMode = GlobalMode.LITERAL
) -> tuple[DensityMatrix, float]:
    """Correlated channel acting on both parties; returns ``(state, pre_norm_trace)``.

    ``LITERAL`` sums the 27 products of :func:`global_kraus_operators`.
    ``COMPOSED`` applies the two local channels and then the correlated
    part ``sum_i (E_i x E_i) . (E_i x E_i)^dagger``. Since
    ``(E_j x I)(I x E_k) = E_j x E_k`` the two are the same map evaluated in
    a different order; keeping both gives a floating-point cross-check.
    Neither set satisfies
    the completeness relation, so the output is renormalized and the trace
    before renormalization is returned alongside it.

    Raises
    ------
    ValueError
        If the unnormalized trace is at most 1e-12.
    """
    _check(rho, ch, ch)
    if mode is GlobalMode.LITERAL:
        sigma = _sandwich(global_kraus_operators(ch), rho.matrix)
    elif mode is GlobalMode.COMPOSED:
        local = apply_multilocal(rho, ch, ch).matrix
        sigma = _sandwich([np.kron(e, e) for e in ch.operators], local)
    else:
        raise ValueError(f"unknown global mode {mode!r}")
    t = float(np.trace(sigma).real)
    if t <= ANNIHILATION_TOL:
        raise ValueError(f"global channel annihilated the state (trace {t:.3e})")
    return DensityMatrix(sigma / t, rho.shape), t
