"""Render phase boundaries from a boundary CSV.

Two critical-temperature curves over the (T, r) plane: entanglement in
black, twin correlations in gray.  Rows where a boundary was not bracketed
carry an empty field and are rendered as gaps.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .common import FigureKind, FigureSpec, InputFormatError, check_header

HEADER = "r,T_entangled_boundary,T_twin_boundary"


def load_boundary(path: Path) -> dict[str, np.ndarray]:
    """Boundary columns with NaN marking absent (unbracketed) entries."""
    path = Path(path)
    with path.open() as handle:
        check_header(handle.readline(), HEADER, path)
        rows = []
        for number, line in enumerate(handle, start=2):
            if not line.strip():
                continue
            parts = line.strip().split(",")
            if len(parts) != 3:
                raise InputFormatError(
                    f"{path}:{number}: expected 3 fields, got {len(parts)}"
                )
            try:
                rows.append(
                    [float(p) if p != "" else np.nan for p in parts]
                )
            except ValueError as exc:
                raise InputFormatError(
                    f"{path}:{number}: malformed value: {exc}"
                ) from exc
    if not rows:
        raise InputFormatError(f"{path}: no data rows")
    data = np.array(rows)
    return {
        "r": data[:, 0],
        "t_entangled": data[:, 1],
        "t_twin": data[:, 2],
    }


def build_figure(columns: dict[str, np.ndarray], title: str = ""):
    fig, ax = plt.subplots(figsize=(5.6, 4.4))
    # NaN entries break the lines, rendering unbracketed rows as gaps.
    ax.plot(
        columns["t_entangled"], columns["r"], color="black", label="entangled"
    )
    ax.plot(columns["t_twin"], columns["r"], color="0.5", label="twin")
    ax.set_xlabel("T  [omega1]")
    ax.set_ylabel("r")
    ax.legend(frameon=False)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    return fig


def render(spec: FigureSpec):
    if spec.kind is not FigureKind.PHASE:
        raise InputFormatError(f"not a phase spec: kind={spec.kind}")
    columns = load_boundary(spec.input_csv)
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
                kind=FigureKind.PHASE,
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
