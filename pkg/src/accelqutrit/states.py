"""The two-qutrit Horodecki family and reference states."""

from __future__ import annotations

import enum
from typing import Literal

import numpy as np

from .linalg import BipartiteShape, DensityMatrix

ALPHA_MIN, ALPHA_MAX = 2.0, 5.0

Labeling = Literal["standard", "rob-swapped"]
LABELINGS = ("standard", "rob-swapped")


class EntanglementClass(enum.Enum):
    SEPARABLE = "Separable"
    BOUND_ENTANGLED = "BoundEntangled"
    FREE_ENTANGLED = "FreeEntangled"


def check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not ALPHA_MIN <= alpha <= ALPHA_MAX:
        raise ValueError(f"alpha must lie in [2, 5], got {alpha}")
    return alpha


def max_entangled(d: int) -> DensityMatrix:
    """Projector onto ``(1/sqrt(d)) sum_i |ii>``."""
    if d < 2:
        raise ValueError(f"d must be at least 2, got {d}")
    psi = np.zeros(d * d)
    psi[[i * d + i for i in range(d)]] = 1.0 / np.sqrt(d)
    return DensityMatrix(np.outer(psi, psi), BipartiteShape(d, d))


def rob_swap01() -> np.ndarray:
    """Permutation exchanging levels 0 and 1 of the second qutrit."""
    return np.kron(np.eye(3), np.eye(3)[[1, 0, 2]])


def horodecki_state(alpha: float, labeling: Labeling = "standard") -> DensityMatrix:
    """Two-qutrit state ``2/7 |psi+><psi+| + alpha/7 s_plus + (5-alpha)/7 s_minus``.

    ``s_plus`` is uniform on ``{|01>, |12>, |20>}`` and ``s_minus`` on
    ``{|02>, |10>, |21>}``. Free entangled for alpha in (4, 5], bound
    entangled on (3, 4], separable on [2, 3].

    Parameters
    ----------
    alpha : float
        Mixing weight in [2, 5].
    labeling : {"standard", "rob-swapped"}
        ``"rob-swapped"`` relabels levels 0 and 1 of the second qutrit. The
        published closed-form matrix elements of the accelerated state are
        written in that labeling; at zero acceleration the two are related
        by a local permutation and share every entanglement property.
    """
    alpha = check_alpha(alpha)
    psi = max_entangled(3).matrix.real
    s_plus = np.zeros(9)
    s_plus[[1, 5, 6]] = 1.0 / 3.0
    s_minus = np.zeros(9)
    s_minus[[2, 3, 7]] = 1.0 / 3.0
    rho = 2.0 / 7.0 * psi + alpha / 7.0 * np.diag(s_plus) + (5.0 - alpha) / 7.0 * np.diag(s_minus)
    if labeling == "rob-swapped":
        p = rob_swap01()
        rho = p @ rho @ p.T
    elif labeling != "standard":
        raise ValueError(f"unknown labeling {labeling!r}")
    return DensityMatrix(rho, BipartiteShape(3, 3))


def classify(alpha: float) -> EntanglementClass:
    alpha = check_alpha(alpha)
    if alpha <= 3.0:
        return EntanglementClass.SEPARABLE
    if alpha <= 4.0:
        return EntanglementClass.BOUND_ENTANGLED
    return EntanglementClass.FREE_ENTANGLED
