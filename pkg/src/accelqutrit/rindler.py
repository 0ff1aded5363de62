"""Uniform acceleration of both qutrits and the closed-form accelerated state.

Each Minkowski qutrit level is mapped into region I (x) region II, each with
the ordered local basis ``{0, 1, 2, P}`` (``P`` is the pair state, index 3).
Region II is traced out, so the accelerated two-party state lives on
``4 (x) 4``.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .linalg import BipartiteShape, DensityMatrix, ShapeError
from .states import Labeling, horodecki_state

R_MAX = math.pi / 4
LEVELS = "012P"
P = 3

# 1-based ordering used by the closed-form element labels
CLOSED_FORM_BASIS = (
    "00", "01", "02", "10", "11", "12", "20", "21", "22",
    "0P", "1P", "2P", "P0", "P1", "P2", "PP",
)  # fmt: skip


def check_r(r: float) -> float:
    r = float(r)
    if not 0.0 <= r <= R_MAX:
        raise ValueError(f"acceleration parameter must lie in [0, pi/4], got {r}")
    return r


def label_index(label: str) -> int:
    """Position of a two-level label such as ``"1P"`` in the ``4 (x) 4`` basis."""
    return LEVELS.index(label[0]) * 4 + LEVELS.index(label[1])


@dataclass(frozen=True)
class RindlerIsometry:
    r: float
    matrix: np.ndarray  # 16 x 3, rows indexed by (region I level) * 4 + (region II level)

    def tensor(self) -> np.ndarray:
        """The isometry as ``V[region_I, region_II, minkowski]``."""
        return self.matrix.reshape(4, 4, 3)


def rindler_isometry(r: float) -> RindlerIsometry:
    r = check_r(r)
    c, s = math.cos(r), math.sin(r)
    v = np.zeros((4, 4, 3))
    v[0, 0, 0] = c * c
    v[1, 2, 0] = c * s
    v[2, 1, 0] = c * s
    v[P, P, 0] = s * s
    v[1, 0, 1] = c
    v[P, 1, 1] = s
    v[2, 0, 2] = c
    v[P, 2, 2] = -s
    m = v.reshape(16, 3)
    m.setflags(write=False)
    return RindlerIsometry(r, m)


def accelerate(rho: DensityMatrix, r_a: float, r_b: float | None = None) -> DensityMatrix:
    """Accelerate both parties and trace out region II.

    ``r_b`` defaults to ``r_a`` (simultaneous acceleration).
    """
    if rho.dims != (3, 3):
        raise ShapeError(f"expected a 3x3 two-qutrit state, got {rho.dims}")
    va = rindler_isometry(r_a).tensor()
    vb = rindler_isometry(r_a if r_b is None else r_b).tensor()
    t = rho.matrix.reshape(3, 3, 3, 3)
    # a, c: region I of each party; b, d: region II, summed out
    out = np.einsum("abi,cdj,ijkl,xbk,ydl->acxy", va, vb, t, va.conj(), vb.conj(), optimize=True)
    return DensityMatrix(out.reshape(16, 16), BipartiteShape(4, 4))


def embed(rho: DensityMatrix) -> DensityMatrix:
    """Place a two-qutrit state into the ``4 (x) 4`` space with empty ``P`` levels."""
    iso = np.zeros((4, 3))
    iso[:3, :3] = np.eye(3)
    k = np.kron(iso, iso)
    return DensityMatrix(k @ rho.matrix @ k.T, BipartiteShape(4, 4))


@dataclass(frozen=True)
class ClosedFormEntry:
    """One printed matrix element of the accelerated state.

    ``ket`` and ``bra`` name the operator position ``|ket><bra|``. Entries
    with ``ambiguous`` set come from duplicated symbol assignments in the
    published operator expansion; ``alternatives`` holds every printed value
    for the symbol, ``value`` the first.
    """

    symbol: str
    ket: str
    bra: str
    value: float
    ambiguous: bool = False
    alternatives: tuple[float, ...] = ()

    @property
    def row(self) -> int:
        return label_index(self.ket)

    @property
    def col(self) -> int:
        return label_index(self.bra)


def closed_form_elements(alpha: float, r: float) -> list[ClosedFormEntry]:
    """Printed closed-form elements of the accelerated Horodecki state.

    The formulas are written in the ``"rob-swapped"`` labeling of
    :func:`~accelqutrit.states.horodecki_state`. Only the upper triangle is
    listed; the lower triangle follows by Hermiticity.
    """
    a = float(alpha)
    c, s = math.cos(check_r(r)), math.sin(r)
    c2, s2 = c * c, s * s
    diag = {
        1: a / 21 * c**8,
        2: c**6 / 21 * (2 + a * s2),
        3: c**6 / 21 * (5 - a * c2),
        5: c**4 / 21 * (a * s2**2 + 4 * s2 - a + 5),
        6: c**4 / 21 * (a * c2 + s2 * (7 + a * s2)),
        9: c**4 / 21 * (a * s2**2 + 2 * (5 - a) * s2 + 2),
        10: c**4 * s2 / 21 * (7 - a * c2),
        11: c2 * s2 / 21 * (a * s2**2 + (9 - a) * s2 + 5),
        12: c2 * s2 / 21 * (a * s2**2 + (12 - 2 * a) * s2 + a + 2),
        16: s2**2 / 21 * (a * s2**2 + (14 - 2 * a) * s2 + (7 + a)),
    }
    for twin, src in ((4, 2), (7, 3), (8, 6), (13, 10), (14, 11), (15, 12)):
        diag[twin] = diag[src]

    entries = [
        ClosedFormEntry(f"e{k},{k}", CLOSED_FORM_BASIS[k - 1], CLOSED_FORM_BASIS[k - 1], v)
        for k, v in sorted(diag.items())
    ]
    entries += [
        ClosedFormEntry("e2,4", "01", "10", 2 * c**6 / 21),
        ClosedFormEntry("e2,9", "01", "22", 2 * c**5 / 21),
        ClosedFormEntry("e4,9", "10", "22", 2 * c**5 / 21),
        ClosedFormEntry("e12,15", "2P", "P2", 2 * s2**2 * c2 / 21),
    ]
    e6_10 = 2 * s2 * c**4 / 21
    e8_13 = (2 * s2 * c**4 / 21, -2 * c**3 * s2 / 21)
    entries += [
        ClosedFormEntry("e6,10", "12", "0P", e6_10, True, (e6_10,)),
        ClosedFormEntry("e8,13", "21", "P0", e8_13[0], True, e8_13),
        ClosedFormEntry("e6,10", "11", "P2", e6_10, True, (e6_10,)),
        ClosedFormEntry("e8,13", "11", "2P", e8_13[0], True, e8_13),
    ]
    return entries


def closed_form_matrix(alpha: float, r: float) -> tuple[np.ndarray, np.ndarray]:
    """Dense 16x16 matrix of the closed forms plus a boolean ambiguity mask.

    Positions not listed are zero.
    """
    m = np.zeros((16, 16))
    amb = np.zeros((16, 16), dtype=bool)
    for e in closed_form_elements(alpha, r):
        for i, j in ((e.row, e.col), (e.col, e.row)):
            m[i, j] = e.value
            amb[i, j] = e.ambiguous
    return m, amb


@dataclass(frozen=True)
class Discrepancy:
    row_index: int
    col_index: int
    generic: float
    closed_form: float
    abs_diff: float
    ambiguous: bool

    @property
    def position(self) -> str:
        return f"|{basis_label(self.row_index)}><{basis_label(self.col_index)}|"


def basis_label(index: int) -> str:
    return LEVELS[index // 4] + LEVELS[index % 4]


def cross_check(
    alpha: float,
    r: float,
    labeling: Labeling = "rob-swapped",
    tol: float = 1e-12,
) -> list[Discrepancy]:
    """Compare the generic accelerated state against the closed forms.

    Every entry whose difference exceeds ``tol`` is reported, including
    entries the closed forms omit. The default labeling is the one the
    closed forms are written in; ``"standard"`` shows how far the printed
    formulas are from the as-written initial state.
    """
    generic = accelerate(horodecki_state(alpha, labeling), r, r).matrix
    closed, amb = closed_form_matrix(alpha, r)
    diff = np.abs(generic - closed)
    rows, cols = np.nonzero(diff > tol)
    return [
        Discrepancy(int(i), int(j), float(generic[i, j].real), float(closed[i, j]), float(diff[i, j]), bool(amb[i, j]))
        for i, j in zip(rows, cols)
    ]


REPORT_COLUMNS = ("row_index", "col_index", "generic", "closed_form", "abs_diff", "ambiguous_flag")


def write_report(report: list[Discrepancy], stream) -> None:
    """Write a discrepancy report as CSV to an open text stream."""
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(REPORT_COLUMNS)
    for d in report:
        w.writerow([d.row_index, d.col_index, f"{d.generic:.12g}", f"{d.closed_form:.12g}", f"{d.abs_diff:.3e}", int(d.ambiguous)])
