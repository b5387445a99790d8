#!/usr/bin/env python3
"""Render a phase-boundary figure from a boundary CSV.

Usage: plot_phase.py --in phase_boundary.csv --out figure.png [--title TEXT]
"""

import sys

from twinbath_plots.phase import main

if __name__ == "__main__":
    sys.exit(main())
