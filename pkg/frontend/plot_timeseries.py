#!/usr/bin/env python3
"""Render an indicator time-series figure from an evolution CSV.

Usage: plot_timeseries.py --in trace.csv --out figure.png [--title TEXT]
"""

import sys

from twinbath_plots.timeseries import main

if __name__ == "__main__":
    sys.exit(main())
