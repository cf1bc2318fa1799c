"""Run configuration: grids, cache location, windows, and tolerances.

All empirical constants that gate the finite-x checks live here in one
block: the acceptance windows for asymptotic ratios (the o(1) rates
behind them are unquantified, so the windows are explicit configuration,
not derived bounds) and the residual tolerances for the truncated
explicit formulas together with the zero budget they assume.

Config files are flat ``key = value`` text; command-line flags override
file values. The cache directory resolves from ``PRIME_BIAS_LAB_CACHE``,
falling back to the platform cache directory plus ``prime-bias-lab``.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

import numpy as np

ENV_CACHE = "PRIME_BIAS_LAB_CACHE"


def cache_dir() -> Path:
    """Cache directory for sieve tables and zero files (not created here)."""
    env = os.environ.get(ENV_CACHE)
    if env:
        return Path(env)
    xdg = os.environ.get("XDG_CACHE_HOME")
    base = Path(xdg) if xdg else Path.home() / ".cache"
    return base / "prime-bias-lab"


@dataclass(frozen=True)
class GridSpec:
    """Evaluation grid: start, stop, point count, and spacing."""

    start: float
    stop: float
    points: int
    spacing: str = "log"  # log | linear

    def __post_init__(self):
        if self.points < 1:
            raise ValueError("grid needs at least one point")
        if not 0 < self.start <= self.stop:
            raise ValueError("grid bounds must satisfy 0 < start <= stop")
        if self.spacing not in ("log", "linear"):
            raise ValueError(f"unknown spacing {self.spacing!r}")

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        """Parse ``start:stop:points[:spacing]`` (e.g. ``10:1e6:50:log``)."""
        parts = text.split(":")
        if len(parts) not in (3, 4):
            raise ValueError(f"grid spec {text!r} is not start:stop:points[:spacing]")
        spacing = parts[3] if len(parts) == 4 else "log"
        return cls(float(parts[0]), float(parts[1]), int(parts[2]), spacing)

    def values(self) -> np.ndarray:
        if self.points == 1:
            return np.array([self.start])
        if self.spacing == "log":
            return np.logspace(
                math.log10(self.start), math.log10(self.stop), self.points
            )
        return np.linspace(self.start, self.stop, self.points)


@dataclass(frozen=True)
class AsymptoticWindows:
    """Acceptance windows for finite-x ratio and limit checks.

    Each window is the interval the measured quantity must land in at the
    stated scale; violations are findings, not errors.
    """

    # |measured - central log-derivative limit| for the Riesz-type sums.
    riesz_limit: float = 0.5
    # Modulus-average values over their leading asymptotic term.
    modulus_avg_plain: tuple[float, float] = (0.7, 1.3)
    modulus_avg_shifted: tuple[float, float] = (0.7, 1.3)
    # Character race with sqrt(x/p) log(x/p) weight over -(sqrt(x)/4) log(x)^2.
    race_sqrtlog: tuple[float, float] = (0.7, 1.3)
    # Prime-square block over (1/4) log(x)^2.
    prime_square: tuple[float, float] = (0.8, 1.2)
    # |sqrt-weight race over (1/2) sqrt(x) loglog x|: the magnitude is
    # checked and the sign recorded, because the measured drift is toward
    # minus infinity at reachable scales.
    sqrt_race_abs: tuple[float, float] = (0.5, 1.5)
    # Divisor-twisted sum against its two-term prediction.
    titchmarsh: tuple[float, float] = (0.9, 1.1)


@dataclass(frozen=True)
class ResidualTolerances:
    """Expected truncated-explicit-formula residuals.

    Measured with the bundled zero set (2000 ordinates, heights to
    ~2515); the absolutely convergent power-2 assemblies sit orders of
    magnitude below these caps, while power-1 assemblies carry
    conditionally convergent truncation noise of r.m.s. about 0.03.
    """

    zero_budget: int = 2000
    log_weighted: float = 0.02  # power-2 zero sum; measured ~1e-5
    character_log_weighted: float = 0.02
    sqrt_scale: float = 0.05  # power-1 zero sum at the 1e4 reference scale
    character_power_sum: float = 0.05
    shifted_riesz: float = 0.05
    # The s=0 prime-power formula residual grows like sqrt(x) noise; this
    # cap holds for x up to ~2000.
    power_sum_low_s: float = 0.5


@dataclass(frozen=True)
class RunConfig:
    """One CLI invocation's resolved settings."""

    sieve_limit: int = 10**6
    zero_source: str = "bundled"  # bundled | compute:<T> | <path>
    grid: GridSpec = field(default_factory=lambda: GridSpec(100.0, 1e6, 20, "log"))
    output_format: str = "csv"  # csv | json
    output_path: str | None = None  # None writes to stdout
    workers: int = 1
    strict_boundary: bool = False
    windows: AsymptoticWindows = field(default_factory=AsymptoticWindows)
    tolerances: ResidualTolerances = field(default_factory=ResidualTolerances)

    def __post_init__(self):
        if self.sieve_limit < 10:
            raise ValueError("sieve limit too small")
        if self.output_format not in ("csv", "json"):
            raise ValueError(f"unknown output format {self.output_format!r}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


_BOOL_KEYS = {"strict_boundary"}
_INT_KEYS = {"sieve_limit", "workers"}


def parse_key_values(text: str) -> dict[str, str]:
    """Parse flat ``key = value`` lines; ``#`` starts a comment."""
    out: dict[str, str] = {}
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {i}: expected key = value, got {raw!r}")
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def _coerce(key: str, value: str):
    if key in _BOOL_KEYS:
        low = value.lower()
        if low in ("1", "true", "yes", "on"):
            return True
        if low in ("0", "false", "no", "off"):
            return False
        raise ValueError(f"{key}: not a boolean: {value!r}")
    if key in _INT_KEYS:
        return int(float(value))
    if key == "grid":
        return GridSpec.parse(value)
    return value


def config_from_sources(
    file_path: str | Path | None = None, overrides: dict | None = None
) -> RunConfig:
    """Build a RunConfig from an optional file plus flag overrides.

    ``overrides`` values that are None are ignored, so unset flags never
    mask file values.
    """
    settings: dict = {}
    if file_path is not None:
        mapping = parse_key_values(Path(file_path).read_text())
        known = {f.name for f in fields(RunConfig)}
        for key, value in mapping.items():
            if key not in known:
                raise ValueError(f"unknown config key {key!r}")
            settings[key] = _coerce(key, value)
    cfg = RunConfig(**settings)
    if overrides:
        clean = {k: v for k, v in overrides.items() if v is not None}
        for k, v in clean.items():
            if isinstance(v, str):
                clean[k] = _coerce(k, v)
        cfg = replace(cfg, **clean)
    return cfg
