"""Run configurations: JSON parsing with strict schema, and named presets."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

from .dynamics import BathConfig
from .states import OscillatorPair


class ConfigError(ValueError):
    """Configuration rejected; the message carries the offending key path."""


@dataclass(frozen=True)
class RunConfig:
    """One evolution run: system, bath, initial squeezing, and sampling."""

    pair: OscillatorPair
    bath: BathConfig
    initial_r: float
    t_end: float
    dt: float
    sample_stride: int
    output_path: str | None = None

    def __post_init__(self):
        if not (math.isfinite(self.initial_r) and self.initial_r >= 0.0):
            raise ValueError("initial_r must be non-negative and finite")
        if not (math.isfinite(self.t_end) and self.t_end > 0.0):
            raise ValueError("t_end must be positive and finite")
        if not (math.isfinite(self.dt) and self.dt > 0.0):
            raise ValueError("dt must be positive and finite")
        stride = self.sample_stride
        if not isinstance(stride, int) or isinstance(stride, bool) or stride < 1:
            raise ValueError("sample_stride must be an integer >= 1")


_GAMMA0 = 2e-2 / math.pi
_CUTOFF = 20.0
_T_END = 30.0 / _GAMMA0
_STRIDE = 200


def _preset(
    omega2: float, lam: float, topology: str, temperature: float
) -> RunConfig:
    pair = OscillatorPair(1.0, omega2, lam)
    omega_plus = math.sqrt(max(pair.omega1, pair.omega2) ** 2 + abs(lam))
    return RunConfig(
        pair=pair,
        bath=BathConfig(topology, _GAMMA0, temperature, _CUTOFF),
        initial_r=2.0,
        t_end=_T_END,
        dt=0.005 / omega_plus,
        sample_stride=_STRIDE,
    )


#: Parameter sets behind the bundled figures.  All frequencies are in units
#: of the first oscillator; every preset shares the weak coupling gamma0,
#: the cutoff, the initial squeezing r = 2, and a run long enough for
#: plateaus and deaths to be unambiguous (t_end = 30 / gamma0).
PRESETS: dict[str, RunConfig] = {
    "fig1_left": _preset(1.2, 0.0, "common", 1.0),
    "fig1_right": _preset(1.0, 0.0, "separate", 1.0),
    "fig2_left": _preset(1.0, 0.0, "common", 0.1),
    "fig2_right": _preset(1.0, 0.0, "common", 1.0),
    "fig3": _preset(1.0, 0.2, "common", 0.1),
    "fig4": _preset(1.0, 0.0, "common", 1.0),
}

_PAIR_KEYS = ("omega1", "omega2", "lambda")
_BATH_KEYS = ("topology", "gamma0", "temperature", "cutoff")
_TOP_REQUIRED = ("pair", "bath", "initial_r", "t_end", "dt", "sample_stride")
_TOP_OPTIONAL = ("output_path",)


def _check_keys(mapping: dict, required, optional, path: str):
    for key in mapping:
        if key not in required and key not in optional:
            raise ConfigError(f"unknown key '{path}{key}'")
    for key in required:
        if key not in mapping:
            raise ConfigError(f"missing required key '{path}{key}'")


def _mapping(value, path: str) -> dict:
    if not isinstance(value, dict):
        raise ConfigError(f"'{path}' must be an object")
    return value


def _number(mapping: dict, key: str, path: str) -> float:
    value = mapping[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"'{path}{key}' must be a number")
    value = float(value)
    if not math.isfinite(value):
        raise ConfigError(f"'{path}{key}' must be finite")
    return value


def _integer(mapping: dict, key: str, path: str) -> int:
    value = mapping[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"'{path}{key}' must be an integer")
    return value


def parse_config(path) -> RunConfig:
    """Parse a JSON run configuration, rejecting anything off-schema.

    Frequencies are in units of the first oscillator.  Physical invariants
    are enforced by the domain types; their messages are surfaced with the
    key path of the offending section.
    """
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"not valid JSON: {exc}") from exc
    doc = _mapping(doc, "<config>")
    _check_keys(doc, _TOP_REQUIRED, _TOP_OPTIONAL, "")

    pair_doc = _mapping(doc["pair"], "pair")
    _check_keys(pair_doc, _PAIR_KEYS, (), "pair.")
    try:
        pair = OscillatorPair(
            omega1=_number(pair_doc, "omega1", "pair."),
            omega2=_number(pair_doc, "omega2", "pair."),
            lam=_number(pair_doc, "lambda", "pair."),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"pair: {exc}") from exc

    bath_doc = _mapping(doc["bath"], "bath")
    _check_keys(bath_doc, _BATH_KEYS, (), "bath.")
    topology = bath_doc["topology"]
    if not isinstance(topology, str):
        raise ConfigError("'bath.topology' must be a string")
    try:
        bath = BathConfig(
            topology=topology,
            gamma0=_number(bath_doc, "gamma0", "bath."),
            temperature=_number(bath_doc, "temperature", "bath."),
            cutoff=_number(bath_doc, "cutoff", "bath."),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"bath: {exc}") from exc

    output_path = doc.get("output_path")
    if output_path is not None and not isinstance(output_path, str):
        raise ConfigError("'output_path' must be a string")

    try:
        return RunConfig(
            pair=pair,
            bath=bath,
            initial_r=_number(doc, "initial_r", ""),
            t_end=_number(doc, "t_end", ""),
            dt=_number(doc, "dt", ""),
            sample_stride=_integer(doc, "sample_stride", ""),
            output_path=output_path,
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
