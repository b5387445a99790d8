"""Shared figure plumbing: specs, kinds, and input validation errors."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path


class InputFormatError(ValueError):
    """The input CSV does not match the expected layout for its kind."""


class FigureKind(str, Enum):
    TIMESERIES = "timeseries"
    PHASE = "phase"


@dataclass(frozen=True)
class FigureSpec:
    """One figure to render: input CSV, kind, output image, and labels.

    The header contract of the input is checked when the file is loaded;
    existence is checked here so a bad path fails before any rendering
    state is created.
    """

    input_csv: Path
    kind: FigureKind
    output_image: Path
    title: str = ""
    labels: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "input_csv", Path(self.input_csv))
        object.__setattr__(self, "output_image", Path(self.output_image))
        object.__setattr__(self, "kind", FigureKind(self.kind))
        if not self.input_csv.is_file():
            raise InputFormatError(f"input CSV not found: {self.input_csv}")


def check_header(line: str, expected: str, path: Path):
    if line.strip() != expected:
        raise InputFormatError(
            f"{path}: expected header '{expected}', got '{line.strip()}'"
        )
