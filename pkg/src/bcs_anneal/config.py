"""Run configuration shared by the CLI and the experiment scripts."""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .hamiltonians import (
    BCSModel,
    EnergyLevels,
    ThreeBodyCouplings,
    ThreeBodyModel,
    generate_levels,
)
from .sector import build_sector

COMMANDS = ("spectrum", "evolve", "gibbs", "eta-dist", "entropy", "qgroup", "verify", "figure")
MODELS = ("bcs", "three-body")

DEFAULT_SEED = 7
# "variance 0.1" for the per-spin three-body factors is read as Var(J_i) = 0.1
THREE_BODY_VARIANCE = 0.1


class ValidationError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    n: int = 12
    two_sz: int = 0
    g: float | None = None
    g_list: list[float] = field(default_factory=list)
    model: str = "bcs"
    seed: int | None = DEFAULT_SEED
    levels_file: str | None = None
    equidistant: bool = False
    t0: float = 1e-3
    t1: float = 1e3
    tol: float = 1e-8
    readout: str = "asymptotic"
    out: str | None = None
    format: str = "csv"
    figure_id: str | None = None
    extra: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return asdict(self)

    @property
    def couplings(self) -> list[float]:
        if self.g_list:
            return list(self.g_list)
        return [self.g] if self.g is not None else []

    def validate(self) -> "RunConfig":
        if self.command not in COMMANDS:
            raise ValidationError(f"unknown command {self.command!r}")
        if self.model not in MODELS:
            raise ValidationError(f"unknown model {self.model!r}")
        if self.format not in ("csv", "json"):
            raise ValidationError("format must be csv or json")
        if self.n < 2:
            raise ValidationError("n must be at least 2")
        if (self.n + self.two_sz) % 2 or abs(self.two_sz) > self.n:
            raise ValidationError(f"two_sz={self.two_sz} is inconsistent with n={self.n}")
        for g in self.couplings:
            if not g >= 0:
                raise ValidationError("g must be nonnegative")
        if not 0 < self.t0 < self.t1:
            raise ValidationError("need 0 < t0 < t1")
        if self.tol <= 0:
            raise ValidationError("tol must be positive")
        if self.levels_file is not None and not Path(self.levels_file).is_file():
            raise ValidationError(f"levels file {self.levels_file} does not exist")
        return self

    def levels(self) -> EnergyLevels:
        if self.levels_file is not None:
            lv = EnergyLevels.from_file(self.levels_file)
            if lv.n != self.n:
                raise ValidationError(f"{self.levels_file} has {lv.n} levels, expected {self.n}")
            return lv
        if self.equidistant:
            return generate_levels(self.n, None)
        return generate_levels(self.n, self.seed)

    def build_model(self, g: float, sector=None):
        sector = sector or build_sector(self.n, self.two_sz)
        if self.model == "bcs":
            return BCSModel(self.levels(), g, sector)
        seed = DEFAULT_SEED if self.seed is None else self.seed
        return ThreeBodyModel(ThreeBodyCouplings.random(self.n, seed, THREE_BODY_VARIANCE), g, sector)


def max_workers() -> int:
    """Sweep parallelism, capped by ``ANNEAL_THREADS`` (default 1)."""
    try:
        return max(1, int(os.environ.get("ANNEAL_THREADS", "1")))
    except ValueError:
        return 1
