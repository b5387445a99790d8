"""Figure rendering for twinbath CSV outputs.

Consumes the CSV files written by the ``twinbath`` command line — indicator
time series and phase-boundary tables — and renders them with a fixed
gray/black/light-gray style.  This package never imports the simulation
library; the CSV contract is the only coupling.
"""

from .common import FigureKind, FigureSpec, InputFormatError
from .phase import load_boundary
from .phase import render as render_phase
from .timeseries import load_timeseries
from .timeseries import render as render_timeseries

__all__ = [
    "FigureKind",
    "FigureSpec",
    "InputFormatError",
    "load_boundary",
    "load_timeseries",
    "render_phase",
    "render_timeseries",
]
