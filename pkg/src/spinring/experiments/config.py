"""Experiment configuration: JSON file form and validation."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

from ..eigensolve import DEFAULT_MAX_ITER, DEFAULT_TOL
from ..lattice import MAX_SITES, ModulationProfile

EXPERIMENTS = ("fig1", "table1", "fig3", "longrange", "properties", "sweep")
LARGE_SIZES = (22, 24)


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SolverSettings:
    tol: float = DEFAULT_TOL
    max_iter: int = DEFAULT_MAX_ITER
    seed: int = 0

    def kwargs(self) -> dict:
        return {"tol": self.tol, "max_iter": self.max_iter, "seed": self.seed}


@dataclass
class ExperimentConfig:
    experiment: str
    Ns: list[int] = field(default_factory=list)
    profile: dict = field(default_factory=lambda: {"kind": "uniform", "J": 1.0})
    delta: float = 1.0
    solver: SolverSettings = field(default_factory=SolverSettings)
    amplitudes: list[float] = field(default_factory=list)
    large: bool = False
    quick: bool = False
    output: str | None = None

    def validate(self) -> "ExperimentConfig":
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(f"unknown experiment {self.experiment!r}")
        for N in self.Ns:
            if int(N) != N or N < 2 or N % 2:
                raise ConfigError(f"N must be even and >= 2, got {N}")
            if N > MAX_SITES:
                raise ConfigError(f"N={N} exceeds the {MAX_SITES}-site limit")
            if N in LARGE_SIZES and not self.large and self.experiment == "table1":
                raise ConfigError(f"N={N} needs --large")
        for A in self.amplitudes:
            if not 0.0 <= A <= 1.0:
                raise ConfigError(f"amplitude {A} outside [0, 1]")
        try:
            prof = self.profile_obj()
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if prof.kind == "cosine" and prof.J and not 0.0 <= prof.amplitude <= 1.0:
            raise ConfigError(f"amplitude J'/J = {prof.amplitude} outside [0, 1]")
        if self.solver.tol <= 0 or self.solver.max_iter < 1:
            raise ConfigError("solver needs tol > 0 and max_iter >= 1")
        return self

    def profile_obj(self) -> ModulationProfile:
        return ModulationProfile.from_dict(self.profile)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["solver"] = asdict(self.solver)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        try:
            solver = SolverSettings(**d.get("solver", {}))
            return cls(
                experiment=d["experiment"],
                Ns=[int(n) for n in d.get("Ns", [])],
                profile=dict(d.get("profile", {"kind": "uniform", "J": 1.0})),
                delta=float(d.get("delta", 1.0)),
                solver=solver,
                amplitudes=[float(a) for a in d.get("amplitudes", [])],
                large=bool(d.get("large", False)),
                quick=bool(d.get("quick", False)),
                output=d.get("output"),
            ).validate()
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"malformed config: {exc}") from exc


def load_config(path: str | Path) -> ExperimentConfig:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    return ExperimentConfig.from_dict(data)
