"""Run configuration parsed from a single JSON document with a strict schema.

Example::

    {
      "model": {"omega_q": 3.0, "coupling": [1.3, 2.0]},
      "basis": {"n_max": "auto"},
      "grid": {"q_min": -6.0, "q_max": 6.0, "points": 601},
      "times": {"mode": "period-fractions", "samples": 101, "stop": 1.0},
      "levels": 20,
      "states": 6,
      "floor": 1e-4,
      "physical": [{"preset": "dilatational-3GHz"}],
      "output": {"format": "csv", "path": "out"}
    }
"""

import json
from dataclasses import dataclass, field

import numpy as np

from rabitunnel.errors import ConfigError
from rabitunnel.feasibility import PRESETS, PhysicalContext, Scenario
from rabitunnel.model import ModelParams


@dataclass
class GridConfig:
    q_min: float = -6.0
    q_max: float = 6.0
    points: int = 601

    def array(self):
        return np.linspace(self.q_min, self.q_max, self.points)


@dataclass
class TimesConfig:
    mode: str = "period-fractions"
    samples: int = 101
    stop: float = 1.0


@dataclass
class OutputConfig:
    format: str = "csv"
    path: str = "."


@dataclass
class RunConfig:
    omega_q: float = 3.0
    couplings: list = field(default_factory=lambda: [1.3])
    n_max: int | None = None  # None means automatic convergence
    grid: GridConfig = field(default_factory=GridConfig)
    times: TimesConfig = field(default_factory=TimesConfig)
    levels: int = 20
    states: int = 4
    floor: float = 1e-4
    physical: list = field(default_factory=list)  # list of Scenario
    output: OutputConfig = field(default_factory=OutputConfig)

    def models(self):
        return [ModelParams(self.omega_q, lam) for lam in self.couplings]


_SECTIONS = {"model", "basis", "grid", "times", "levels", "states", "floor", "physical", "output"}


def _check_keys(obj, allowed, where):
    if not isinstance(obj, dict):
        raise ConfigError(f"{where}: expected an object, got {type(obj).__name__}")
    extra = set(obj) - set(allowed)
    if extra:
        raise ConfigError(f"{where}: unknown keys {sorted(extra)}")


def _number(value, where, integer=False):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where}: expected a number, got {value!r}")
    if integer and int(value) != value:
        raise ConfigError(f"{where}: expected an integer, got {value!r}")
    return int(value) if integer else float(value)


def _scenario(obj, index, model_omega, model_coupling):
    where = f"physical[{index}]"
    _check_keys(obj, {"name", "preset", "omega0_phys", "T_env", "quality_factor", "omega_q", "coupling"}, where)
    if "preset" in obj:
        if obj["preset"] not in PRESETS:
            raise ConfigError(f"{where}: unknown preset {obj['preset']!r}; choose from {sorted(PRESETS)}")
        base = PRESETS[obj["preset"]]
        name, params, ctx = base.name, base.params, base.context
    else:
        if "omega0_phys" not in obj:
            raise ConfigError(f"{where}: needs either 'preset' or 'omega0_phys'")
        name, params, ctx = f"scenario-{index}", ModelParams(model_omega, model_coupling), None
    omega0 = _number(obj["omega0_phys"], where + ".omega0_phys") if "omega0_phys" in obj else ctx.omega0_phys
    t_env = _number(obj["T_env"], where + ".T_env") if "T_env" in obj else (ctx.T_env if ctx else 0.0)
    q = obj.get("quality_factor", ctx.quality_factor if ctx else None)
    q = None if q is None else _number(q, where + ".quality_factor")
    if "omega_q" in obj or "coupling" in obj:
        params = ModelParams(
            _number(obj.get("omega_q", params.omega_q), where + ".omega_q"),
            _number(obj.get("coupling", params.coupling), where + ".coupling"),
        )
    try:
        context = PhysicalContext(omega0, t_env, q)
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from exc
    return Scenario(str(obj.get("name", name)), params, context)


def parse_config(doc) -> RunConfig:
    """Validate a decoded JSON object and build a :class:`RunConfig`."""
    _check_keys(doc, _SECTIONS, "config")
    cfg = RunConfig()

    model = doc.get("model", {})
    _check_keys(model, {"omega_q", "coupling"}, "model")
    if "omega_q" in model:
        cfg.omega_q = _number(model["omega_q"], "model.omega_q")
    if "coupling" in model:
        lam = model["coupling"]
        lams = lam if isinstance(lam, list) else [lam]
        if not lams:
            raise ConfigError("model.coupling: empty sweep list")
        cfg.couplings = [_number(v, "model.coupling") for v in lams]
    try:
        cfg.models()
    except ValueError as exc:
        raise ConfigError(f"model: {exc}") from exc

    basis = doc.get("basis", {})
    _check_keys(basis, {"n_max"}, "basis")
    n_max = basis.get("n_max", "auto")
    if n_max != "auto":
        cfg.n_max = _number(n_max, "basis.n_max", integer=True)
        if cfg.n_max < 2:
            raise ConfigError("basis.n_max must be at least 2")

    grid = doc.get("grid", {})
    _check_keys(grid, {"q_min", "q_max", "points"}, "grid")
    cfg.grid = GridConfig(
        _number(grid.get("q_min", -6.0), "grid.q_min"),
        _number(grid.get("q_max", 6.0), "grid.q_max"),
        _number(grid.get("points", 601), "grid.points", integer=True),
    )
    if cfg.grid.q_max <= cfg.grid.q_min or cfg.grid.points < 5:
        raise ConfigError("grid: need q_max > q_min and at least 5 points")

    times = doc.get("times", {})
    _check_keys(times, {"mode", "samples", "stop"}, "times")
    cfg.times = TimesConfig(
        times.get("mode", "period-fractions"),
        _number(times.get("samples", 101), "times.samples", integer=True),
        _number(times.get("stop", 1.0), "times.stop"),
    )
    if cfg.times.mode not in ("period-fractions", "absolute"):
        raise ConfigError(f"times.mode must be 'period-fractions' or 'absolute', got {cfg.times.mode!r}")
    if cfg.times.samples < 0:
        raise ConfigError("times.samples must be non-negative")

    if "levels" in doc:
        cfg.levels = _number(doc["levels"], "levels", integer=True)
    if "states" in doc:
        cfg.states = _number(doc["states"], "states", integer=True)
    if "floor" in doc:
        cfg.floor = _number(doc["floor"], "floor")
        if not cfg.floor > 0:
            raise ConfigError("floor must be positive")

    physical = doc.get("physical", [])
    if isinstance(physical, dict):
        physical = [physical]
    if not isinstance(physical, list):
        raise ConfigError("physical: expected an object or a list of objects")
    cfg.physical = [_scenario(p, i, cfg.omega_q, cfg.couplings[0]) for i, p in enumerate(physical)]

    output = doc.get("output", {})
    _check_keys(output, {"format", "path"}, "output")
    cfg.output = OutputConfig(output.get("format", "csv"), str(output.get("path", ".")))
    if cfg.output.format not in ("csv", "json"):
        raise ConfigError(f"output.format must be 'csv' or 'json', got {cfg.output.format!r}")
    return cfg


def load_config(path) -> RunConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: malformed JSON: {exc}") from exc
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror}") from exc
    return parse_config(doc)
