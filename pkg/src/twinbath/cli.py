"""Command line: evolutions, phase-diagram sweeps, steady states, presets.

Output files are byte-deterministic for a fixed configuration: fixed-width
scientific notation, LF newlines, no timestamps.

Exit codes: 0 success, 1 configuration error, 2 physicality abort.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from .dynamics import PhysicalityError, build_generator, evolve, steady_state
from .phasescan import scan_boundaries, scan_phase_diagram
from .presets import PRESETS, ConfigError, RunConfig, parse_config
from .quantifiers import indicators
from .states import symplectic_eigenvalues, tms_state

_DEFAULT_T_RANGE = (0.01, 2.0)
_DEFAULT_R_RANGE = (0.0, 3.0)
_DEFAULT_GRID = (60, 60)


def _fmt(value: float) -> str:
    """Fixed 12-significant-digit scientific notation."""
    return f"{value:.11e}"


class _Parser(argparse.ArgumentParser):
    """argparse variant whose usage errors exit with the config-error code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise ConfigError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="twinbath")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_config_flags(p):
        p.add_argument("--config", metavar="PATH", help="JSON run configuration")
        p.add_argument("--preset", metavar="NAME", help="named parameter set")
        p.add_argument("--out", metavar="PATH", help="output file")

    p_evolve = sub.add_parser("evolve", help="integrate and write indicators")
    add_config_flags(p_evolve)

    p_phase = sub.add_parser(
        "phase-diagram", help="sweep temperature and squeezing"
    )
    add_config_flags(p_phase)
    p_phase.add_argument(
        "--grid",
        metavar="TxR",
        default=None,
        help="grid sizes, temperatures x squeezings (default 60x60)",
    )
    p_phase.add_argument(
        "--threads",
        metavar="N",
        type=int,
        default=None,
        help="parallel map width (default TWINBATH_THREADS or 1)",
    )

    p_steady = sub.add_parser("steady", help="algebraic stationary state")
    add_config_flags(p_steady)

    p_presets = sub.add_parser("presets", help="preset utilities")
    p_presets.add_argument("action", choices=["list"])
    return parser


def _load_config(args) -> RunConfig:
    if (args.config is None) == (args.preset is None):
        raise ConfigError("exactly one of --config or --preset is required")
    if args.preset is not None:
        try:
            return PRESETS[args.preset]
        except KeyError:
            known = ", ".join(PRESETS)
            raise ConfigError(
                f"unknown preset '{args.preset}' (known: {known})"
            ) from None
    return parse_config(args.config)


def _output_path(args, config: RunConfig) -> Path:
    if args.out is not None:
        return Path(args.out)
    if config.output_path is not None:
        return Path(config.output_path)
    raise ConfigError("no output path: pass --out or set output_path")


def _parse_grid(text: str | None) -> tuple[int, int]:
    if text is None:
        return _DEFAULT_GRID
    parts = text.lower().split("x")
    try:
        n_t, n_r = (int(p) for p in parts)
    except ValueError:
        raise ConfigError(f"--grid must look like 60x60, got '{text}'") from None
    if len(parts) != 2 or n_t < 2 or n_r < 2:
        raise ConfigError(f"--grid must be two sizes >= 2, got '{text}'")
    return n_t, n_r


def _resolve_threads(args) -> int:
    if args.threads is not None:
        workers = args.threads
    else:
        raw = os.environ.get("TWINBATH_THREADS", "1")
        try:
            workers = int(raw)
        except ValueError:
            raise ConfigError(
                f"TWINBATH_THREADS must be an integer, got '{raw}'"
            ) from None
    if workers < 1:
        raise ConfigError("thread count must be >= 1")
    return workers


def _run_evolve(args) -> int:
    config = _load_config(args)
    out = _output_path(args, config)
    gen = build_generator(config.pair, config.bath)
    trajectory = evolve(
        tms_state(config.initial_r),
        gen,
        config.t_end,
        config.dt,
        config.sample_stride,
    )
    lines = ["t,EN,discord,mutual_info,d,d_display"]
    for time, state in zip(trajectory.times, trajectory.states):
        rec = indicators(state)
        d_display = max(0.0, -rec.twin_d / 4.0)
        lines.append(
            ",".join(
                _fmt(v)
                for v in (
                    time,
                    rec.log_negativity,
                    rec.discord,
                    rec.mutual_information,
                    rec.twin_d,
                    d_display,
                )
            )
        )
    out.write_text("\n".join(lines) + "\n")
    return 0


def _boundary_path(out: Path) -> Path:
    return out.with_name(out.stem + "_boundary" + (out.suffix or ".csv"))


def _run_phase_diagram(args) -> int:
    config = _load_config(args)
    out = _output_path(args, config)
    n_t, n_r = _parse_grid(args.grid)
    workers = _resolve_threads(args)
    t_grid = np.linspace(*_DEFAULT_T_RANGE, n_t)
    r_grid = np.linspace(*_DEFAULT_R_RANGE, n_r)
    diagram = scan_phase_diagram(
        t_grid, r_grid, config.pair, config.bath, workers=workers
    )
    lines = ["T,r,entangled,twin,min_d,asymptotic_EN"]
    for row in diagram.points:
        for point in row:
            lines.append(
                ",".join(
                    (
                        _fmt(point.temperature),
                        _fmt(point.squeezing),
                        "1" if point.entangled else "0",
                        "1" if point.twin else "0",
                        _fmt(point.min_d),
                        _fmt(point.asymptotic_EN),
                    )
                )
            )
    out.write_text("\n".join(lines) + "\n")

    boundary_lines = ["r,T_entangled_boundary,T_twin_boundary"]
    for brow in scan_boundaries(diagram, config.pair, config.bath):
        t_ent = "" if brow.t_entangled is None else _fmt(brow.t_entangled)
        t_twin = "" if brow.t_twin is None else _fmt(brow.t_twin)
        boundary_lines.append(f"{_fmt(brow.squeezing)},{t_ent},{t_twin}")
    _boundary_path(out).write_text("\n".join(boundary_lines) + "\n")
    return 0


def _run_steady(args) -> int:
    config = _load_config(args)
    gen = build_generator(config.pair, config.bath)
    try:
        state = steady_state(gen)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    nu_minus, nu_plus = symplectic_eigenvalues(state)
    doc = {
        "sigma": [[float(x) for x in row] for row in state.sigma],
        "symplectic_eigenvalues": [nu_minus, nu_plus],
    }
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if args.out is not None or config.output_path is not None:
        _output_path(args, config).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _run_presets(args) -> int:
    for name, config in PRESETS.items():
        pair, bath = config.pair, config.bath
        sys.stdout.write(
            f"{name}: omega2={pair.omega2:g} lambda={pair.lam:g} "
            f"{bath.topology.value} T={bath.temperature:g} "
            f"r={config.initial_r:g}\n"
        )
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "evolve":
            return _run_evolve(args)
        if args.command == "phase-diagram":
            return _run_phase_diagram(args)
        if args.command == "steady":
            return _run_steady(args)
        return _run_presets(args)
    except PhysicalityError as exc:
        sys.stderr.write(f"physicality abort: {exc}\n")
        return 2
    except (ConfigError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
