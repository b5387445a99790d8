"""Shared fixtures: input CSVs generated through the simulation CLI.

The rendering package is coupled to the simulator only through CSV files,
so every input here is produced by invoking the installed ``twinbath``
command in a subprocess — never by importing the simulation library.
"""

import shutil
import subprocess
import sys

import pytest


def run_simulation_cli(args):
    executable = shutil.which("twinbath")
    if executable is not None:
        command = [executable]
    else:
        command = [sys.executable, "-m", "twinbath.cli"]
    return subprocess.run(command + args, capture_output=True, text=True)


@pytest.fixture(scope="session")
def artifacts(tmp_path_factory):
    """Preset CSVs: three evolution traces plus the default phase scan."""
    base = tmp_path_factory.mktemp("csv")
    paths = {}
    for preset in ("fig1_right", "fig2_left", "fig3"):
        out = base / f"{preset}.csv"
        result = run_simulation_cli(
            ["evolve", "--preset", preset, "--out", str(out)]
        )
        assert result.returncode == 0, result.stderr
        paths[preset] = out
    phase_out = base / "phase.csv"
    result = run_simulation_cli(
        [
            "phase-diagram",
            "--preset",
            "fig4",
            "--out",
            str(phase_out),
            "--threads",
            "4",
        ]
    )
    assert result.returncode == 0, result.stderr
    paths["phase"] = phase_out
    paths["boundary"] = base / "phase_boundary.csv"
    assert paths["boundary"].is_file()
    return paths
