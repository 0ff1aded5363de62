"""Command line entry point ``sim``.

Exit codes: 0 success, 1 validation failure, 2 bad arguments, 3 I/O error.
"""

from __future__ import annotations

import argparse
import dataclasses
import logging
import math
import re
import sys
from pathlib import Path

from .channels import ChannelKind, GlobalMode, Locality
from .experiments import (
    FIGURES,
    MEASURES,
    ScenarioConfig,
    describe,
    emit_csv,
    emit_metadata,
    emit_plot_script,
    figure_preset,
    grid,
    run_scenario,
)
from .measures import MeasureConventions
from .rindler import cross_check, write_report
from .states import LABELINGS

log = logging.getLogger("accelqutrit")

EXIT_OK, EXIT_VALIDATION, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

CHANNELS = {"dephasing": ChannelKind.DEPHASING, "amplitude": ChannelKind.AMPLITUDE_DAMPING, "none": None}
RUN_KEYS = ("alpha", "r", "gamma", "channel", "locality", "global_mode", "m_override", "measures", "labeling", "out")
RUN_DEFAULTS = {
    "alpha": "2:5:0.1",
    "r": "0",
    "gamma": "0",
    "channel": "none",
    "locality": None,
    "global_mode": "literal",
    "m_override": None,
    "measures": ",".join(MEASURES),
    "labeling": "standard",
    "out": "sweep.csv",
}

_PI = re.compile(r"^(?P<num>[-+]?\d*\.?\d*)\*?pi(?:/(?P<den>\d*\.?\d+))?$")


class UsageError(ValueError):
    pass


def parse_number(text: str) -> float:
    """A float, or a multiple of pi such as ``pi/4`` or ``0.5pi``."""
    text = text.strip()
    m = _PI.match(text)
    if m:
        num = m.group("num")
        value = (float(num) if num not in ("", "+", "-") else float(num + "1")) * math.pi
        return value / float(m.group("den")) if m.group("den") else value
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"not a number: {text!r}") from None


def parse_values(text: str) -> tuple[float, ...]:
    """A single value, a comma list, or an inclusive ``start:stop:step`` range."""
    text = str(text).strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise UsageError(f"range must be start:stop:step, got {text!r}")
        start, stop, step = (parse_number(p) for p in parts)
        try:
            values = grid(start, stop, step)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        # keep an endpoint such as pi/4 exact rather than rounded
        return values[:-1] + (stop,)
    return tuple(parse_number(t) for t in text.split(","))


def read_config(path: str) -> dict:
    """Flat ``key = value`` file; ``#`` starts a comment, dashes in keys are allowed."""
    out = {}
    for n, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{n}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in RUN_KEYS:
            raise UsageError(f"{path}:{n}: unknown key {key!r}")
        out[key] = value
    return out


def build_run_config(opts: dict) -> ScenarioConfig:
    channel_name = opts["channel"].lower()
    if channel_name not in CHANNELS:
        raise UsageError(f"unknown channel {opts['channel']!r}")
    channel = CHANNELS[channel_name]
    locality = opts["locality"] or ("none" if channel is None else "multi-local")
    try:
        locality = Locality(locality)
        global_mode = GlobalMode(opts["global_mode"])
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    measures = tuple(m.strip() for m in opts["measures"].split(",") if m.strip())
    m_override = opts["m_override"]
    try:
        return ScenarioConfig(
            alpha=parse_values(opts["alpha"]),
            r=parse_values(opts["r"]),
            gamma=parse_values(opts["gamma"]) if channel is not None else (0.0,),
            channel=channel,
            locality=locality,
            global_mode=global_mode,
            conventions=MeasureConventions(int(m_override) if m_override is not None else None),
            measures=measures,
            labeling=opts["labeling"],
        )
    except UsageError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_run(args) -> int:
    opts = dict(RUN_DEFAULTS)
    if args.config:
        opts.update(read_config(args.config))
    opts.update({k: v for k in RUN_KEYS if (v := getattr(args, k)) is not None})
    cfg = build_run_config(opts)
    log.info("running %s", describe(cfg))
    table = run_scenario(cfg)
    out = Path(opts["out"])
    emit_csv(table, out)
    emit_metadata(table, out.with_suffix(".meta.json"))
    log.info("wrote %d rows to %s", len(table.rows), out)
    return EXIT_OK


def cmd_figure(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name in FIGURES if args.name == "all" else [args.name]:
        cfg = figure_preset(name)
        if args.m_override is not None or args.labeling != "standard":
            cfg = dataclasses.replace(cfg, conventions=MeasureConventions(args.m_override), labeling=args.labeling)
        log.info("%s: %s", name, describe(cfg))
        table = run_scenario(cfg)
        emit_csv(table, out / f"{name}.csv")
        emit_metadata(table, out / f"{name}.meta.json")
        emit_plot_script(table, out / f"{name}.py")
    return EXIT_OK


def cmd_validate(args) -> int:
    from .validation import run_all

    results = run_all()
    for res in results:
        print(res.line())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return EXIT_VALIDATION if failed else EXIT_OK


def cmd_crosscheck(args) -> int:
    try:
        alpha, r = parse_number(args.alpha), parse_number(args.r)
        report = cross_check(alpha, r, labeling=args.labeling)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    write_report(report, sys.stdout)
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    parser = argparse.ArgumentParser(prog="sim", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", parents=[common], help="sweep a parameter grid and write a CSV")
    run.add_argument("--config", help="key = value file; flags override it")
    run.add_argument("--alpha", help="value, list or start:stop:step (default 2:5:0.1)")
    run.add_argument("--r", help="acceleration parameter(s); pi/4 style accepted (default 0)")
    run.add_argument("--gamma", help="noise strength(s) (default 0)")
    run.add_argument("--channel", choices=sorted(CHANNELS))
    run.add_argument("--locality", choices=[loc.value for loc in Locality])
    run.add_argument("--global-mode", dest="global_mode", choices=[m.value for m in GlobalMode])
    run.add_argument("--m-override", dest="m_override", type=int)
    run.add_argument("--measures", help=f"comma list from {','.join(MEASURES)}")
    run.add_argument("--labeling", choices=LABELINGS)
    run.add_argument("--out", help="CSV path (default sweep.csv)")
    run.set_defaults(func=cmd_run)

    fig = sub.add_parser("figure", parents=[common], help="emit CSV and plot script for a figure preset")
    fig.add_argument("name", choices=FIGURES + ("all",))
    fig.add_argument("--out", default=".", help="output directory")
    fig.add_argument("--m-override", dest="m_override", type=int)
    fig.add_argument("--labeling", choices=LABELINGS, default="standard")
    fig.set_defaults(func=cmd_figure)

    val = sub.add_parser("validate", parents=[common], help="run the acceptance checks")
    val.set_defaults(func=cmd_validate)

    cc = sub.add_parser("crosscheck", parents=[common], help="compare the accelerated state with the closed forms")
    cc.add_argument("--alpha", required=True)
    cc.add_argument("--r", required=True)
    cc.add_argument("--labeling", choices=LABELINGS, default="rob-swapped")
    cc.set_defaults(func=cmd_crosscheck)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"sim: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"sim: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
