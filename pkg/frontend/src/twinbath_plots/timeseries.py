"""Render indicator time series from an evolution CSV.

Curve convention: logarithmic negativity in gray, discord in black, the
displayed twin indicator max(0, -d/4) in light gray.
"""

from __future__ import annotations

import argparse
import io
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .common import FigureKind, FigureSpec, InputFormatError, check_header

HEADER = "t,EN,discord,mutual_info,d,d_display"

_CURVES = (
    ("EN", 1, "0.5"),
    ("discord", 2, "black"),
    ("d_display", 5, "0.75"),
)


def load_timeseries(path: Path) -> dict[str, np.ndarray]:
    """Columns of an evolution CSV, validated against the header contract."""
    path = Path(path)
    with path.open() as handle:
        check_header(handle.readline(), HEADER, path)
        body = handle.read()
    if not body.strip():
        raise InputFormatError(f"{path}: no data rows")
    try:
        data = np.loadtxt(io.StringIO(body), delimiter=",", ndmin=2)
    except ValueError as exc:
        raise InputFormatError(f"{path}: malformed data row: {exc}") from exc
    if data.shape[1] != 6:
        raise InputFormatError(
            f"{path}: expected 6 columns, got {data.shape[1]}"
        )
    columns = {"t": data[:, 0]}
    for name, index, _ in _CURVES:
        columns[name] = data[:, index]
    return columns


def build_figure(columns: dict[str, np.ndarray], title: str = ""):
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    for name, _, color in _CURVES:
        ax.plot(columns["t"], columns[name], color=color, label=name)
    ax.set_xlabel("t  [1/omega1]")
    ax.set_ylabel("indicator value")
    ax.legend(frameon=False)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    return fig


def render(spec: FigureSpec):
    if spec.kind is not FigureKind.TIMESERIES:
        raise InputFormatError(f"not a timeseries spec: kind={spec.kind}")
    columns = load_timeseries(spec.input_csv)
    fig = build_figure(columns, spec.title)
    try:
        fig.savefig(spec.output_image, dpi=150)
    finally:
        plt.close(fig)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--in", dest="input", required=True, metavar="CSV")
    parser.add_argument("--out", dest="output", required=True, metavar="IMG")
    parser.add_argument("--title", default="")
    args = parser.parse_args(argv)
    try:
        render(
            FigureSpec(
                input_csv=args.input,
                kind=FigureKind.TIMESERIES,
                output_image=args.output,
                title=args.title,
            )
        )
    except (InputFormatError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
