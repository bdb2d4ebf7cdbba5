"""Experiment configuration and seeded instance generation."""

from __future__ import annotations

import dataclasses

from .errors import ConfigError
from .geometry import PathLossModel, PlacementModel, sample_nodes
from .seeding import as_generator
from .sinr import CAPACITY_GAUSSIAN, CAPACITY_R0, NetworkInstance, PowerModel, SinrParams


@dataclasses.dataclass(frozen=True)
class RoleSpec:
    """How many sources, relays and destinations a campaign uses.

    By default the first h sampled nodes become sources, the next m relays
    and the next l destinations; since sampled nodes are exchangeable this is
    equivalent to a random assignment. Explicit index tuples override it.
    """

    h: int = 1
    m: int = 50
    l: int = 1
    sources: tuple[int, ...] | None = None
    relays: tuple[int, ...] | None = None
    destinations: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.h < 1 or self.m < 1 or self.l < 1:
            raise ConfigError(f"roles need h, m, l >= 1, got ({self.h}, {self.m}, {self.l})")
        explicit = (self.sources, self.relays, self.destinations)
        if any(x is not None for x in explicit) and not all(x is not None for x in explicit):
            raise ConfigError("explicit role indices must be given for all three roles or none")

    def assign(self, n: int) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
        if self.sources is not None:
            return tuple(self.sources), tuple(self.relays), tuple(self.destinations)
        needed = self.h + self.m + self.l
        if needed > n:
            raise ConfigError(f"roles need {needed} nodes but the instance has only {n}")
        return (
            tuple(range(self.h)),
            tuple(range(self.h, self.h + self.m)),
            tuple(range(self.h + self.m, needed)),
        )


@dataclasses.dataclass(frozen=True)
class ExperimentConfig:
    """Everything a seeded Monte Carlo campaign needs, defaults materialized."""

    placement: PlacementModel = dataclasses.field(default_factory=PlacementModel)
    power: PowerModel = dataclasses.field(default_factory=lambda: PowerModel.constant(0.01))
    params: SinrParams = dataclasses.field(default_factory=SinrParams)
    loss: PathLossModel = dataclasses.field(default_factory=PathLossModel)
    roles: RoleSpec = dataclasses.field(default_factory=RoleSpec)
    capacity_model: str = CAPACITY_R0
    trials: int = 10
    seed: int = 0
    cut_size: int = 50
    tail_exp: float = 1.0  # tail exponent of the capacity bands (not the path-loss exponent)
    eta: float = 1.0
    cbar_trials: int = 200
    cbar_pairs: int | None = None
    threads: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")
        if self.cut_size < 0 or self.cut_size > self.roles.m:
            raise ConfigError(f"cut size must lie in [0, m={self.roles.m}], got {self.cut_size}")
        if self.tail_exp <= 0:
            raise ConfigError(f"tail exponent must be positive, got {self.tail_exp}")
        if self.eta < 0:
            raise ConfigError(f"eta must be nonnegative, got {self.eta}")
        if self.cbar_trials < 1:
            raise ConfigError(f"cbar_trials must be >= 1, got {self.cbar_trials}")
        if self.threads < 1:
            raise ConfigError(f"threads must be >= 1, got {self.threads}")
        if self.capacity_model not in (CAPACITY_R0, CAPACITY_GAUSSIAN):
            raise ConfigError(f"unknown capacity model {self.capacity_model!r}")

    @classmethod
    def baseline(cls, **overrides) -> "ExperimentConfig":
        """The canonical simulation setup: 2000 nodes on the unit torus,
        L(x) = (1e-3/64) x^-3 clamped below 0.01, N0 = 0.02, beta = 0.2,
        gamma = 0.02, constant power 0.01, threshold capacity at rate 1.
        """
        base = cls()
        if "roles" in overrides and "cut_size" not in overrides:
            overrides["cut_size"] = min(base.cut_size, overrides["roles"].m)
        return dataclasses.replace(base, **overrides) if overrides else base

    def to_dict(self) -> dict:
        """Fully resolved configuration for report sidecars."""
        power: dict = {"kind": self.power.kind, "p_min": self.power.p_min, "p_max": self.power.p_max}
        if self.power.kind == "discrete":
            power["atoms"] = list(self.power.atoms)
            power["probs"] = list(self.power.probs)
        roles: dict = {"h": self.roles.h, "m": self.roles.m, "l": self.roles.l}
        if self.roles.sources is not None:
            roles["sources"] = list(self.roles.sources)
            roles["relays"] = list(self.roles.relays)
            roles["destinations"] = list(self.roles.destinations)
        return {
            "placement": {"mode": self.placement.mode, "n": self.placement.n},
            "power": power,
            "params": {
                "n0": self.params.n0,
                "gamma": self.params.gamma,
                "beta": self.params.beta,
                "rate": self.params.rate,
            },
            "path_loss": {"c": self.loss.c, "alpha": self.loss.alpha, "d0": self.loss.d0},
            "roles": roles,
            "capacity_model": self.capacity_model,
            "trials": self.trials,
            "seed": self.seed,
            "cut_size": self.cut_size,
            "tail_exp": self.tail_exp,
            "eta": self.eta,
            "cbar_trials": self.cbar_trials,
            "cbar_pairs": self.cbar_pairs,
            "threads": self.threads,
        }


def build_instance(cfg: ExperimentConfig, seed) -> NetworkInstance:
    """Sample one network realization from the configuration.

    Draw order (positions, then powers) is fixed so a seed fully determines
    the instance.
    """
    rng = as_generator(seed)
    positions = sample_nodes(cfg.placement, rng)
    powers = cfg.power.sample(len(positions), rng)
    sources, relays, destinations = cfg.roles.assign(len(positions))
    return NetworkInstance(
        positions=positions,
        powers=powers,
        sources=sources,
        relays=relays,
        destinations=destinations,
        params=cfg.params,
        path_loss=cfg.loss,
        power_model=cfg.power,
        capacity_model=cfg.capacity_model,
    )
