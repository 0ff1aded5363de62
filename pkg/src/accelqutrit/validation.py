"""Acceptance checks shared by ``sim validate`` and the test suite.

Each check returns a :class:`CheckResult`; none of them raise on a
numerical failure.
"""

from __future__ import annotations

import filecmp
import math
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .channels import (
    ChannelKind,
    GlobalMode,
    Locality,
    amplitude_damping_kraus,
    apply_multilocal,
    dephasing_kraus,
    extend_to_acc_space,
    make_channel,
)
from .experiments import (
    ALPHA_GRID,
    COLUMNS,
    FIGURES,
    GAMMA_GRID,
    R_GRID,
    ScenarioConfig,
    emit_csv,
    figure_preset,
    iter_points,
    run_scenario,
)
from .linalg import BipartiteShape, DensityMatrix, hermitian_eigenvalues, partial_trace, partial_transpose
from .measures import MeasureConventions, concurrence, nonlocal_information, rel_entropy_coherence
from .rindler import P, accelerate, cross_check
from .states import horodecki_state, max_entangled


@dataclass(frozen=True)
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d} {self.name}: {self.detail}"


def _alpha_grid_31():
    return [float(a) for a in np.round(np.linspace(2.0, 5.0, 31), 12)]


def rindler_oracle() -> CheckResult:
    worst, outside = 0.0, []
    for alpha in _alpha_grid_31():
        for r in R_GRID:
            for d in cross_check(alpha, r):
                if d.ambiguous:
                    continue
                worst = max(worst, d.abs_diff)
                outside.append((alpha, r, d.position))
    return CheckResult(
        1,
        "Rindler oracle equivalence",
        not outside,
        f"{len(outside)} unambiguous mismatches over 31x16 grid (worst {worst:.2e})",
    )


def state_validity() -> CheckResult:
    worst_trace = worst_herm = 0.0
    min_eig = math.inf
    for name in FIGURES:
        for p in iter_points(figure_preset(name)):
            worst_trace = max(worst_trace, abs(p.state.trace() - 1.0))
            worst_herm = max(worst_herm, p.state.hermiticity_drift())
            min_eig = min(min_eig, p.values["min_eigenvalue"])
    ok = worst_trace <= 1e-12 and worst_herm <= 1e-12 and min_eig >= -1e-10
    return CheckResult(
        2,
        "state validity across presets",
        ok,
        f"trace drift {worst_trace:.1e}, hermiticity drift {worst_herm:.1e}, min eigenvalue {min_eig:.1e}",
    )


def channel_completeness() -> CheckResult:
    worst = worst_identity = 0.0
    for build in (dephasing_kraus, amplitude_damping_kraus):
        for g in GAMMA_GRID:
            ch = build(g)
            for c in (ch, extend_to_acc_space(ch)):
                worst = max(worst, c.completeness_error())
        for c in (build(0.0), extend_to_acc_space(build(0.0))):
            rng = np.random.default_rng(0)
            x = rng.normal(size=(c.local_dim,) * 2) + 1j * rng.normal(size=(c.local_dim,) * 2)
            worst_identity = max(worst_identity, float(np.max(np.abs(c.apply(x) - x))))
    ok = worst <= 1e-12 and worst_identity <= 1e-14
    return CheckResult(
        3, "channel completeness", ok, f"completeness error {worst:.1e}, gamma=0 identity error {worst_identity:.1e}"
    )


def concurrence_anchors() -> CheckResult:
    bell = concurrence(max_entangled(2), MeasureConventions(2))
    psi3 = concurrence(max_entangled(3), MeasureConventions(3))
    problems = []
    if abs(bell - 1.0) > 1e-9:
        problems.append(f"Bell {bell:.12g}")
    if abs(psi3 - 2 / math.sqrt(3)) > 1e-9:
        problems.append(f"psi+ {psi3:.12g}")
    for alpha in ALPHA_GRID:
        c = concurrence(horodecki_state(alpha), MeasureConventions(3))
        if alpha <= 4.0 and c > 1e-9:
            problems.append(f"alpha={alpha:g} C={c:.4g} (expected 0)")
        if alpha >= 4.1 - 1e-9 and c <= 1e-6:
            problems.append(f"alpha={alpha:g} C={c:.4g} (expected > 1e-6)")
    return CheckResult(4, "concurrence anchors", not problems, "; ".join(problems) or "all anchors hold")


def coherence_anchor() -> CheckResult:
    target = 2 / 7 * math.log2(3)
    worst = max(abs(rel_entropy_coherence(accelerate(horodecki_state(a), 0.0)) - target) for a in ALPHA_GRID)
    return CheckResult(5, "coherence anchor", worst <= 1e-9, f"max deviation from (2/7)log2(3): {worst:.1e}")


def entropy_anchors() -> CheckResult:
    pure = nonlocal_information(max_entangled(3))
    mixed = nonlocal_information(DensityMatrix(np.eye(9) / 9, BipartiteShape(3, 3)))
    s5 = nonlocal_information(horodecki_state(5.0))
    # spectrum of rho(5) is {2/7, 5/21 (x3), 0 (x5)}
    expected = -(2 / 7) * math.log2(2 / 7) - 3 * (5 / 21) * math.log2(5 / 21)
    ok = abs(pure) <= 1e-10 and abs(mixed - math.log2(9)) <= 1e-10 and abs(s5 - expected) <= 1e-6
    return CheckResult(6, "entropy anchors", ok, f"S(pure)={pure:.2e}, S(I/9)={mixed:.12f}, S(rho(5))={s5:.7f}")


def ppt_boundary() -> CheckResult:
    problems = []
    for alpha in ALPHA_GRID:
        lam = hermitian_eigenvalues(partial_transpose(accelerate(horodecki_state(alpha), 0.0)))[-1]
        if alpha <= 4.0 and lam < -1e-10:
            problems.append(f"alpha={alpha:g} min eig {lam:.2e}")
        if alpha >= 4.1 - 1e-9 and lam >= -1e-6:
            problems.append(f"alpha={alpha:g} min eig {lam:.2e}")
    return CheckResult(7, "PPT boundary at alpha=4", not problems, "; ".join(problems) or "boundary reproduced")


def monotone_decoherence() -> CheckResult:
    table = run_scenario(ScenarioConfig(alpha=ALPHA_GRID, r=R_GRID, measures=("coherence",)))
    worst = 0.0
    by_alpha = {}
    for row in table.rows:
        by_alpha.setdefault(row["alpha"], []).append(row["rel_entropy_coherence"])
    for values in by_alpha.values():
        worst = max([worst] + [b - a for a, b in zip(values, values[1:])])
    return CheckResult(8, "coherence non-increasing in r", worst <= 1e-9, f"largest increase {worst:.1e}")


def extreme_noise() -> CheckResult:
    worst_coh = worst_pop = worst_p = 0.0
    for alpha in (2.0, 3.5, 4.5, 5.0):
        for r in (0.0, 0.3, R_GRID[-1]):
            rho = accelerate(horodecki_state(alpha), r)
            out = apply_multilocal(rho, make_channel(ChannelKind.DEPHASING, 1.0), None).matrix.reshape(4, 4, 4, 4)
            for a, b, c, d in np.ndindex(4, 4, 4, 4):
                kills = (a != c and {a, c} - {0, P}) or (b != d and {b, d} - {0, P})
                if kills:
                    worst_coh = max(worst_coh, abs(out[a, b, c, d]))
            damped = apply_multilocal(rho, make_channel(ChannelKind.AMPLITUDE_DAMPING, 1.0), None)
            for party in ("B", "A"):
                before = partial_trace(rho, party).real
                after = partial_trace(damped, party).real
                worst_pop = max(worst_pop, abs(after[1, 1]), abs(after[2, 2]))
                worst_p = max(worst_p, abs(after[P, P] - before[P, P]))
    ok = worst_coh <= 1e-12 and worst_pop <= 1e-12 and worst_p <= 1e-12
    return CheckResult(
        9,
        "extreme-noise limits",
        ok,
        f"dephasing residual coherence {worst_coh:.1e}, damped populations {worst_pop:.1e}, P drift {worst_p:.1e}",
    )


EXPECTED_ROWS = {"fig1": 496, "fig2": 496, "fig3": 496, "fig4": 352, "fig5": 93, "fig6": 352, "fig7": 352, "fig8": 352}


def figure_smoke() -> CheckResult:
    problems = []
    with tempfile.TemporaryDirectory() as tmp:
        for name in FIGURES:
            paths = [Path(tmp) / f"{name}_{k}.csv" for k in (1, 2)]
            for path in paths:
                emit_csv(run_scenario(figure_preset(name)), path)
            lines = paths[0].read_text().splitlines()
            if lines[0].split(",") != list(COLUMNS):
                problems.append(f"{name} header")
            if len(lines) - 1 != EXPECTED_ROWS[name]:
                problems.append(f"{name} has {len(lines) - 1} rows")
            if not filecmp.cmp(paths[0], paths[1], shallow=False):
                problems.append(f"{name} not bit-identical")
    return CheckResult(10, "figure reproduction smoke", not problems, "; ".join(problems) or "row counts, schema, determinism")


def global_bookkeeping() -> CheckResult:
    problems = []
    for name in ("fig6", "fig8"):
        base = figure_preset(name)
        for mode in GlobalMode:
            cfg = ScenarioConfig(
                alpha=base.alpha, r=base.r, gamma=base.gamma, channel=base.channel,
                locality=Locality.GLOBAL, global_mode=mode, measures=(),
            )  # fmt: skip
            for p in iter_points(cfg):
                t = p.pre_norm_trace
                if p.gamma == 0.0 and abs(t - 1.0) > 1e-12:
                    problems.append(f"{name}/{mode.value} gamma=0 trace {t!r}")
                if t > 1.0 + 1e-12:
                    problems.append(f"{name}/{mode.value} trace {t!r} > 1")
                if p.values["min_eigenvalue"] < -1e-10 or abs(p.state.trace() - 1.0) > 1e-12:
                    problems.append(f"{name}/{mode.value} invalid state at alpha={p.alpha}, r={p.r:.3f}")
    return CheckResult(11, "global-channel bookkeeping", not problems, "; ".join(problems[:5]) or "both modes valid")


CHECKS = (
    rindler_oracle,
    state_validity,
    channel_completeness,
    concurrence_anchors,
    coherence_anchor,
    entropy_anchors,
    ppt_boundary,
    monotone_decoherence,
    extreme_noise,
    figure_smoke,
    global_bookkeeping,
)


def run_all() -> list[CheckResult]:
    return [check() for check in CHECKS]
