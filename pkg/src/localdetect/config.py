"""Run configuration: a line-oriented ``key = value`` file with one scenario section.

Example::

    seed = 7
    metrics = trace, hs
    t_min = 0
    t_max = 12.566370614359172
    n_points = 200

    [scenario.jc]
    n_max = 4
    nbar = 0
    g = 1
    t_prep = 0.7853981633974483

Top-level keys configure the run; keys in the section are scenario
parameters. Lines starting with ``#`` or ``;`` are comments.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ConfigError

SCENARIOS = ("jc", "qubit_qubit", "chain", "chain_validation", "continuum", "ensemble")
METRIC_NAMES = ("trace", "hs", "bures", "hellinger", "jsd")


def _bool(text: str) -> bool:
    low = text.lower()
    if low in ("true", "yes", "1"):
        return True
    if low in ("false", "no", "0"):
        return False
    raise ValueError(f"expected a boolean, got {text!r}")


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in _split(text))


def _split(text: str) -> list[str]:
    items = [x.strip() for x in text.split(",")]
    if not all(items):
        raise ValueError(f"empty item in list {text!r}")
    return items


# key -> (parser, required, default)
TOP_LEVEL = {
    "seed": (int, True, None),
    "metrics": (lambda s: tuple(_split(s)), False, METRIC_NAMES),
    "t_min": (float, False, None),
    "t_max": (float, False, None),
    "n_points": (int, False, None),
    "output": (str, False, None),
}

SCENARIO_KEYS = {
    "jc": {
        "n_max": (int, True, None),
        "nbar": (float, True, None),
        "g": (float, True, None),
        "t_prep": (float, True, None),
        "excited": (_bool, False, None),
    },
    "qubit_qubit": {
        "family": (str, True, None),
        "visibility": (float, False, 1.0),
        "g": (float, False, 1.0),
        "coupling": (str, False, "cross"),
    },
    "chain": {
        "n_ions": (int, True, None),
        "kappa": (float, True, None),
        "nbar": (float, False, 0.0),
        "mode": (str, False, "power_law"),
        "exponent": (float, False, 3.0),
    },
    "chain_validation": {
        "kappa": (float, True, None),
        "nbar": (float, True, None),
        "n_max": (int, False, None),
        "g_sideband": (float, False, 1.0),
        "t_pulse": (float, False, None),
    },
    "continuum": {
        "width": (float, True, None),
        "delta_n": (float, True, None),
        "n_modes": (int, False, 201),
        "center": (float, False, 0.0),
        "correlation": (str, False, "correlated"),
        "theta": (float, False, None),
        "tau0": (float, False, None),
    },
    "ensemble": {
        "d_S": (int, False, 2),
        "d_E": (_int_list, True, None),
        "n_samples": (int, True, None),
        "evolution": (str, False, "gue"),
    },
}

_SECTION = re.compile(r"^\[\s*scenario\.([A-Za-z_][A-Za-z0-9_]*)\s*\]$")
_ENTRY = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.*)$")


@dataclass
class RawConfig:
    """Parsed but unvalidated document; keeps the raw value text and line numbers."""

    top: dict[str, tuple[str, int]] = field(default_factory=dict)
    scenario: str | None = None
    scenario_line: int | None = None
    params: dict[str, tuple[str, int]] = field(default_factory=dict)


@dataclass(frozen=True)
class RunConfig:
    scenario: str
    params: dict
    metrics: tuple[str, ...]
    grid: tuple[float, float, int] | None
    seed: int
    output: str | None = None


def _unquote(text: str) -> str:
    if len(text) >= 2 and text[0] == text[-1] and text[0] in "\"'":
        return text[1:-1]
    return text


def parse_raw(text: str) -> RawConfig:
    raw = RawConfig()
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped[0] in "#;":
            continue
        m = _SECTION.match(stripped)
        if m:
            if raw.scenario is not None:
                raise ConfigError("only one [scenario.<name>] section is allowed", lineno)
            raw.scenario, raw.scenario_line = m.group(1), lineno
            continue
        if stripped.startswith("["):
            raise ConfigError(f"malformed section header {stripped!r}", lineno)
        m = _ENTRY.match(stripped)
        if not m:
            raise ConfigError(f"expected 'key = value', got {stripped!r}", lineno)
        key, value = m.group(1), _unquote(m.group(2).strip())
        if not value:
            raise ConfigError(f"missing value for key '{key}'", lineno, key)
        target = raw.top if raw.scenario is None else raw.params
        if key in target:
            raise ConfigError(f"duplicate key '{key}'", lineno, key)
        target[key] = (value, lineno)
    return raw


def _convert(entries: dict, schema: dict, where: str) -> dict:
    for key, (_, lineno) in entries.items():
        if key not in schema:
            raise ConfigError(f"unknown key '{key}' in {where}", lineno, key)
    missing = [k for k, (_, req, _) in schema.items() if req and k not in entries]
    if missing:
        names = ", ".join(f"'{k}'" for k in missing)
        raise ConfigError(f"missing required key(s) {names} in {where}", key=missing[0])
    out = {}
    for key, (conv, _, default) in schema.items():
        if key not in entries:
            out[key] = default
            continue
        value, lineno = entries[key]
        try:
            out[key] = conv(value)
        except ValueError as exc:
            raise ConfigError(f"invalid value for '{key}': {exc}", lineno, key) from None
    return out


def validate(raw: RawConfig) -> RunConfig:
    if raw.scenario is None:
        raise ConfigError("missing [scenario.<name>] section")
    if raw.scenario not in SCENARIOS:
        raise ConfigError(
            f"unknown scenario '{raw.scenario}'; choose from {', '.join(SCENARIOS)}",
            raw.scenario_line, "scenario",
        )
    top = _convert(raw.top, TOP_LEVEL, "the run settings")
    params = _convert(raw.params, SCENARIO_KEYS[raw.scenario], f"[scenario.{raw.scenario}]")

    def line_of(key):
        return raw.top.get(key, (None, None))[1]

    for name in top["metrics"]:
        if name not in METRIC_NAMES:
            raise ConfigError(f"unknown metric '{name}'", line_of("metrics"), "metrics")

    grid_keys = ("t_min", "t_max", "n_points")
    given = [k for k in grid_keys if top[k] is not None]
    grid = None
    if given:
        if len(given) != 3:
            absent = [k for k in grid_keys if top[k] is None]
            raise ConfigError(f"incomplete time grid, missing {', '.join(absent)}", key=absent[0])
        t_min, t_max, n_points = top["t_min"], top["t_max"], top["n_points"]
        if n_points < 2:
            raise ConfigError("n_points ≥ 2 required", line_of("n_points"), "n_points")
        if t_min < 0:
            raise ConfigError("t_min ≥ 0 required", line_of("t_min"), "t_min")
        if not t_max > t_min:
            raise ConfigError("t_max > t_min required", line_of("t_max"), "t_max")
        grid = (t_min, t_max, n_points)
    if not 0 <= top["seed"] < 2**64:
        raise ConfigError("seed must be a 64-bit unsigned integer", line_of("seed"), "seed")
    return RunConfig(raw.scenario, params, top["metrics"], grid, top["seed"], top["output"])


def parse_config(text: str) -> RunConfig:
    """Parse and validate a configuration document."""
    return validate(parse_raw(text))


def format_raw(raw: RawConfig) -> str:
    lines = [f"{k} = {v}" for k, (v, _) in raw.top.items()]
    lines.append("")
    lines.append(f"[scenario.{raw.scenario}]")
    lines.extend(f"{k} = {v}" for k, (v, _) in raw.params.items())
    return "\n".join(lines) + "\n"
