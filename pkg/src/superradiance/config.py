"""
Run configuration: a flat ``key = value`` file.

Example::

    # width-trajectory run for the 4-in-8 model
    n-particles = 4
    n-orbitals = 8
    delta-eps = 0.5
    seed = 7
    gamma-points = 200
    emit = trajectories, occupations, segregation, figures

Keys may be written with ``-`` or ``_``.  Lists are comma separated.
Unknown keys are rejected.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Optional, Tuple

from .errors import ConfigError
from .hamiltonian import ModelSpec
from .sweep import GammaGrid

__all__ = ["EMIT_CHOICES", "RunConfig", "parse_config", "load_config", "dump_config"]

EMIT_CHOICES = ("trajectories", "occupations", "segregation", "spectra", "figures")
MODES = ("many-body", "two-spin")
DEFAULT_EMIT = ("trajectories", "occupations", "segregation")

_MODEL_KEYS = {f.name for f in fields(ModelSpec)}


@dataclass(frozen=True)
class RunConfig:
    model: ModelSpec = field(default_factory=ModelSpec)
    mode: str = "many-body"
    gamma_min: float = 1e-2
    gamma_max: float = 1e2
    gamma_points: int = 200
    gamma_scale: str = "log"
    include_zero: bool = True
    out: str = "out"
    emit: Tuple[str, ...] = DEFAULT_EMIT
    segre_sigma: float = 0.1
    segre_kernel: str = "distance"
    delta_eps_list: Optional[Tuple[float, ...]] = None
    spectrum_gammas: Tuple[float, ...] = ()
    alpha: float = 1.0
    epsilon: float = 0.0

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}", key="mode")
        bad = set(self.emit) - set(EMIT_CHOICES)
        if bad:
            raise ConfigError(f"unknown emit targets {sorted(bad)}", key="emit")
        # canonical order makes the round trip exact
        object.__setattr__(self, "emit", tuple(e for e in EMIT_CHOICES if e in self.emit))
        if self.segre_kernel not in ("distance", "literal"):
            raise ConfigError("segre-kernel must be 'distance' or 'literal'", key="segre-kernel")
        if self.segre_sigma <= 0:
            raise ConfigError("segre-sigma must be positive", key="segre-sigma")
        if self.gamma_points < 1:
            raise ConfigError("gamma-points must be >= 1", key="gamma-points")
        if not 0 < self.gamma_min <= self.gamma_max and self.gamma_scale == "log":
            raise ConfigError("log grid needs 0 < gamma-min <= gamma-max", key="gamma-min")
        try:
            self.grid
        except ValueError as exc:
            raise ConfigError(str(exc), key="gamma-min") from None

    @property
    def grid(self) -> GammaGrid:
        if self.gamma_scale == "log":
            return GammaGrid.log(self.gamma_min, self.gamma_max, self.gamma_points, self.include_zero)
        if self.gamma_scale == "linear":
            grid = GammaGrid.linear(self.gamma_min, self.gamma_max, self.gamma_points)
            if self.include_zero and self.gamma_min > 0:
                grid = GammaGrid([0.0, *grid.values], "linear")
            return grid
        raise ConfigError(f"unknown gamma-scale {self.gamma_scale!r}", key="gamma-scale")

    @property
    def delta_eps_values(self) -> Tuple[float, ...]:
        return self.delta_eps_list if self.delta_eps_list else (self.model.delta_eps,)

    def to_dict(self) -> dict:
        """Flat, JSON-friendly mapping with hyphenated keys."""
        d = {}
        for k, v in asdict(self.model).items():
            d[k.replace("_", "-")] = v
        for f in fields(self):
            if f.name == "model":
                continue
            v = getattr(self, f.name)
            if isinstance(v, tuple):
                v = list(v)
            d[f.name.replace("_", "-")] = v
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        model, rest = {}, {}
        for raw, value in d.items():
            key = raw.replace("-", "_")
            if key in _MODEL_KEYS:
                model[key] = value
            elif key in _RUN_KEYS:
                rest[key] = value
            else:
                raise ConfigError("unknown key", key=raw)
        try:
            model = ModelSpec(**{k: _coerce(k, v) for k, v in model.items()})
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(str(exc)) from None
        return cls(model=model, **{k: _coerce(k, v) for k, v in rest.items()})

    def with_overrides(self, **changes) -> "RunConfig":
        """Replace run or model fields; ``None`` values are ignored."""
        d = self.to_dict()
        for k, v in changes.items():
            if v is not None:
                d[k.replace("_", "-")] = v
        return RunConfig.from_dict(d)


_RUN_KEYS = {f.name for f in fields(RunConfig)} - {"model"}

_INT = {"n_particles", "n_orbitals", "seed", "nu", "gamma_points"}
_FLOAT = {"delta_eps", "v_scale", "gamma", "gamma_min", "gamma_max", "segre_sigma", "alpha", "epsilon"}
_STR = {"mode", "gamma_scale", "out", "segre_kernel"}
_FLOAT_LIST = {"delta_eps_list", "spectrum_gammas"}


def _split(value):
    if isinstance(value, str):
        return [p.strip() for p in value.split(",") if p.strip()]
    return list(value)


def _coerce(key, value):
    try:
        if key == "nu" and (value is None or value == "" or value == "none"):
            return None
        if key in _INT:
            if isinstance(value, float) and not value.is_integer():
                raise ValueError(value)
            return int(value)
        if key in _FLOAT:
            return float(value)
        if key in _STR:
            return str(value)
        if key == "include_zero":
            if isinstance(value, bool):
                return value
            v = str(value).strip().lower()
            if v in ("true", "yes", "1"):
                return True
            if v in ("false", "no", "0"):
                return False
            raise ValueError(value)
        if key == "emit":
            return tuple(_split(value))
        if key in _FLOAT_LIST:
            if value is None or value == "" or value == "none":
                return None if key == "delta_eps_list" else ()
            return tuple(float(x) for x in _split(value))
    except (TypeError, ValueError):
        raise ConfigError(f"cannot parse value {value!r}", key=key.replace("_", "-")) from None
    raise ConfigError("unknown key", key=key)


def parse_config(text: str) -> RunConfig:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    d, seen = {}, set()
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError("expected 'key = value'", line=lineno)
        key, value = (s.strip() for s in line.split("=", 1))
        norm = key.replace("-", "_")
        if norm not in _MODEL_KEYS and norm not in _RUN_KEYS:
            raise ConfigError("unknown key", line=lineno, key=key)
        if norm in seen:
            raise ConfigError("duplicate key", line=lineno, key=key)
        seen.add(norm)
        try:
            d[key] = _coerce(norm, value)
        except ConfigError as exc:
            raise ConfigError(f"cannot parse value {value!r}", line=lineno, key=key) from exc
    return RunConfig.from_dict(d)


def load_config(path) -> RunConfig:
    return parse_config(Path(path).read_text())


def dump_config(config: RunConfig) -> str:
    lines = []
    for key, value in config.to_dict().items():
        if isinstance(value, list):
            value = ", ".join(repr(v) if isinstance(v, float) else str(v) for v in value)
        elif value is None:
            value = "none"
        elif isinstance(value, bool):
            value = "true" if value else "false"
        elif isinstance(value, float):
            value = repr(value)
        lines.append(f"{key} = {value}")
    return "\n".join(lines) + "\n"

