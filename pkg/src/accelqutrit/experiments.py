"""Parameter sweeps over (alpha, r, gamma) and the figure presets.

Pipeline per grid point: build the Horodecki state, accelerate both
parties, pass through the configured channel, then evaluate measures.
Rows are produced in grid order ``alpha`` (outer), ``r``, ``gamma`` (inner).
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .channels import (
    ChannelKind,
    GlobalMode,
    Locality,
    apply_global,
    apply_multilocal,
    check_gamma,
    make_channel,
)
from .linalg import DensityMatrix, hermitian_eigenvalues
from .measures import MeasureConventions, concurrence, nonlocal_information, rel_entropy_coherence
from .rindler import R_MAX, accelerate, check_r
from .states import LABELINGS, check_alpha, horodecki_state

MEASURES = ("concurrence", "coherence", "entropy")
MEASURE_COLUMNS = {
    "concurrence": "concurrence",
    "coherence": "rel_entropy_coherence",
    "entropy": "nonlocal_information",
}
COLUMNS = (
    "alpha", "r", "gamma", "channel", "locality",
    "concurrence", "rel_entropy_coherence", "nonlocal_information",
    "pre_norm_trace", "min_eigenvalue",
)  # fmt: skip
PARAMETERS = ("alpha", "r", "gamma")
FIGURES = tuple(f"fig{n}" for n in range(1, 9))


class SweepError(RuntimeError):
    """A pipeline failure at a specific grid point."""


def grid(start: float, stop: float, step: float) -> tuple[float, ...]:
    """Inclusive evenly spaced grid, rounded to 12 decimals to keep endpoints exact."""
    if step <= 0:
        raise ValueError(f"step must be positive, got {step}")
    n = int(round((stop - start) / step))
    if n < 0 or not math.isclose(start + n * step, stop, rel_tol=0, abs_tol=1e-9 * max(1.0, abs(stop))):
        raise ValueError(f"range {start}:{stop}:{step} does not land on its endpoint")
    return tuple(float(x) for x in np.round(np.linspace(start, stop, n + 1), 12))


def r_grid(n: int = 16) -> tuple[float, ...]:
    pts = [float(x) for x in np.linspace(0.0, R_MAX, n)]
    pts[-1] = R_MAX
    return tuple(pts)


ALPHA_GRID = grid(2.0, 5.0, 0.1)
GAMMA_GRID = grid(0.0, 1.0, 0.1)
R_GRID = r_grid()


@dataclass(frozen=True)
class ScenarioConfig:
    alpha: tuple[float, ...]
    r: tuple[float, ...] = (0.0,)
    gamma: tuple[float, ...] = (0.0,)
    channel: ChannelKind | None = None
    locality: Locality = Locality.NONE
    global_mode: GlobalMode = GlobalMode.LITERAL
    conventions: MeasureConventions = field(default_factory=MeasureConventions)
    measures: tuple[str, ...] = MEASURES
    labeling: str = "standard"

    def __post_init__(self):
        for name, check in (("alpha", check_alpha), ("r", check_r), ("gamma", check_gamma)):
            values = tuple(float(check(v)) for v in getattr(self, name))
            if any(b <= a for a, b in zip(values, values[1:])):
                raise ValueError(f"{name} grid must be strictly increasing")
            object.__setattr__(self, name, values)
        if (self.channel is None) != (self.locality is Locality.NONE):
            raise ValueError("a channel requires a locality and vice versa")
        if self.channel is None and self.gamma not in ((), (0.0,)):
            raise ValueError("gamma has no meaning without a channel")
        unknown = set(self.measures) - set(MEASURES)
        if unknown:
            raise ValueError(f"unknown measures: {sorted(unknown)}")
        if self.labeling not in LABELINGS:
            raise ValueError(f"unknown labeling {self.labeling!r}")

    @property
    def gamma_points(self) -> tuple[float | None, ...]:
        return (None,) if self.channel is None else self.gamma

    def size(self) -> int:
        return len(self.alpha) * len(self.r) * len(self.gamma_points)

    def echo(self) -> dict:
        d = asdict(self)
        d["channel"] = self.channel.value if self.channel else "none"
        d["locality"] = self.locality.value
        d["global_mode"] = self.global_mode.value
        return d


@dataclass(frozen=True)
class PointResult:
    alpha: float
    r: float
    gamma: float | None
    state: DensityMatrix
    pre_norm_trace: float
    values: dict


@dataclass
class SweepTable:
    config: ScenarioConfig
    rows: list[dict]

    def metadata(self) -> dict:
        return {
            "config": self.config.echo(),
            "concurrence_m": self.config.conventions.m_override or "min(local dims)",
            "log_base": self.config.conventions.log_base,
            "version": __version__,
        }


def evaluate_point(cfg: ScenarioConfig, alpha: float, r: float, gamma: float | None) -> PointResult:
    rho = accelerate(horodecki_state(alpha, cfg.labeling), r, r)
    pre_norm_trace = 1.0
    if cfg.channel is not None:
        ch = make_channel(cfg.channel, gamma, local_dim=rho.dims[0])
        if cfg.locality is Locality.MULTI_LOCAL:
            rho = apply_multilocal(rho, ch, ch)
            pre_norm_trace = rho.trace()
        else:
            rho, pre_norm_trace = apply_global(rho, ch, cfg.global_mode)
    spectrum = hermitian_eigenvalues(rho.matrix)
    values = {}
    if "concurrence" in cfg.measures:
        values["concurrence"] = concurrence(rho, cfg.conventions)
    if "coherence" in cfg.measures:
        values["rel_entropy_coherence"] = rel_entropy_coherence(rho, spectrum)
    if "entropy" in cfg.measures:
        values["nonlocal_information"] = nonlocal_information(rho, spectrum)
    values["min_eigenvalue"] = float(spectrum[-1])
    return PointResult(alpha, r, gamma, rho, pre_norm_trace, values)


def iter_points(cfg: ScenarioConfig):
    for alpha in cfg.alpha:
        for r in cfg.r:
            for gamma in cfg.gamma_points:
                try:
                    yield evaluate_point(cfg, alpha, r, gamma)
                except Exception as exc:
                    raise SweepError(f"alpha={alpha}, r={r}, gamma={gamma}: {exc}") from exc


def run_scenario(cfg: ScenarioConfig) -> SweepTable:
    rows = []
    channel = cfg.channel.value if cfg.channel else "none"
    for p in iter_points(cfg):
        row = dict.fromkeys(COLUMNS)
        row.update(alpha=p.alpha, r=p.r, gamma=p.gamma, channel=channel, locality=cfg.locality.value)
        row.update(p.values)
        row["pre_norm_trace"] = p.pre_norm_trace
        rows.append(row)
    return SweepTable(cfg, rows)


def figure_preset(name: str) -> ScenarioConfig:
    """Grid configuration reproducing one of the eight published figures."""
    both = (3.5, 4.5)
    noisy = dict(alpha=both, r=R_GRID, gamma=GAMMA_GRID, measures=("coherence", "entropy"))
    presets = {
        "fig1": dict(alpha=ALPHA_GRID, r=R_GRID, measures=("concurrence",)),
        "fig2": dict(alpha=ALPHA_GRID, r=R_GRID, measures=("coherence", "entropy")),
        "fig3": dict(alpha=ALPHA_GRID, r=R_GRID, measures=("entropy",)),
        "fig4": dict(noisy, channel=ChannelKind.DEPHASING, locality=Locality.MULTI_LOCAL),
        "fig5": dict(
            alpha=ALPHA_GRID,
            r=(0.0, 0.15, 0.3),
            gamma=(0.1,),
            channel=ChannelKind.AMPLITUDE_DAMPING,
            locality=Locality.MULTI_LOCAL,
            measures=MEASURES,
        ),
        "fig6": dict(noisy, channel=ChannelKind.DEPHASING, locality=Locality.GLOBAL),
        "fig7": dict(noisy, channel=ChannelKind.AMPLITUDE_DAMPING, locality=Locality.MULTI_LOCAL),
        "fig8": dict(noisy, channel=ChannelKind.AMPLITUDE_DAMPING, locality=Locality.GLOBAL),
    }
    try:
        return ScenarioConfig(**presets[name])
    except KeyError:
        raise ValueError(f"unknown figure {name!r}; expected one of {', '.join(FIGURES)}") from None


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def emit_csv(table: SweepTable, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(COLUMNS)
        for row in table.rows:
            w.writerow([_fmt(row[c]) for c in COLUMNS])


def read_csv(path) -> list[dict]:
    """Parse a file written by :func:`emit_csv`; empty cells become ``None``."""
    text_cols = {"channel", "locality"}
    with open(path, newline="") as fh:
        return [
            {k: (v if k in text_cols else (float(v) if v else None)) for k, v in rec.items()}
            for rec in csv.DictReader(fh)
        ]


def emit_metadata(table: SweepTable, path) -> None:
    Path(path).write_text(json.dumps(table.metadata(), indent=2) + "\n")


def plot_axes(table: SweepTable) -> tuple[list[str], list[str]]:
    """Split the varying parameters into plot axes and panel selectors.

    Parameters with at least four distinct values become axes (at most
    two, longest first); the remaining varying parameters select panels
    or line series.
    """
    counts = {p: len({row[p] for row in table.rows}) for p in PARAMETERS}
    varying = sorted((p for p in PARAMETERS if counts[p] > 1), key=lambda p: -counts[p])
    axes = [p for p in varying if counts[p] >= 4][:2] or varying[:1]
    return axes, [p for p in varying if p not in axes]


_PLOT_TEMPLATE = '''\
"""Plot {csv_name}; regenerate the CSV to change the data."""
import csv
import os
import sys
from collections import defaultdict

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

HERE = os.path.dirname(os.path.abspath(__file__))
CSV_PATH = os.path.join(HERE, {csv_name!r})
AXES = {axes!r}
SELECTORS = {selectors!r}
MEASURES = {measures!r}

with open(CSV_PATH, newline="") as fh:
    rows = [r for r in csv.DictReader(fh)]

groups = defaultdict(list)
for r in rows:
    groups[tuple(r[s] for s in SELECTORS)].append(r)

for column in MEASURES:
    keys = sorted(groups) if len(AXES) == 2 else [None]
    fig = plt.figure(figsize=(5 * len(keys), 4))
    for n, key in enumerate(keys, start=1):
        if len(AXES) == 2:
            sel = groups[key]
            ax = fig.add_subplot(1, len(keys), n, projection="3d")
            xs = [float(r[AXES[0]]) for r in sel]
            ys = [float(r[AXES[1]]) for r in sel]
            zs = [float(r[column]) for r in sel]
            ax.plot_trisurf(xs, ys, zs, cmap="viridis")
            ax.set_xlabel(AXES[0])
            ax.set_ylabel(AXES[1])
            ax.set_zlabel(column)
            if SELECTORS:
                ax.set_title(", ".join(f"{{s}}={{v}}" for s, v in zip(SELECTORS, key)))
        else:
            ax = fig.add_subplot(1, 1, 1)
            for k in sorted(groups):
                sel = groups[k]
                label = ", ".join(f"{{s}}={{v}}" for s, v in zip(SELECTORS, k)) or None
                ax.plot([float(r[AXES[0]]) for r in sel], [float(r[column]) for r in sel], label=label)
            ax.set_xlabel(AXES[0])
            ax.set_ylabel(column)
            if SELECTORS:
                ax.legend()
    fig.tight_layout()
    out = os.path.join(HERE, {stem!r} + "_" + column + ".png")
    fig.savefig(out, dpi=100)
    plt.close(fig)
    print(out, file=sys.stderr)
'''


def emit_plot_script(table: SweepTable, path, csv_name: str | None = None) -> None:
    """Write a matplotlib script that reads the sibling CSV and plots each measure.

    The script holds only column names and the file name, never data.
    Two varying axes give surface plots (one panel per selector value);
    one gives line plots (one series per selector value).
    """
    if not table.rows:
        raise ValueError("cannot plot an empty table")
    path = Path(path)
    csv_name = csv_name or path.with_suffix(".csv").name
    axes, selectors = plot_axes(table)
    measures = [MEASURE_COLUMNS[m] for m in MEASURES if m in table.config.measures]
    path.write_text(
        _PLOT_TEMPLATE.format(
            csv_name=csv_name, axes=axes, selectors=selectors, measures=measures, stem=Path(csv_name).stem
        )
    )


def describe(cfg: ScenarioConfig) -> str:
    channel = cfg.channel.value if cfg.channel else "none"
    return (
        f"{len(cfg.alpha)} alpha x {len(cfg.r)} r x {len(cfg.gamma_points)} gamma, "
        f"channel={channel}, locality={cfg.locality.value}"
    )
