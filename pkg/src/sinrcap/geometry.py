"""Unit-torus geometry and the distance-based signal attenuation law.

Node positions are (x, y) pairs in [0, 1)^2; point sets are float arrays of
shape (n, 2). Distances wrap around the square's edges (periodic boundary),
so the largest possible separation is sqrt(2)/2.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from .errors import ConfigError, DomainError
from .seeding import as_generator

TORUS_DIAMETER = math.sqrt(0.5)


@dataclasses.dataclass(frozen=True)
class PathLossModel:
    """Signal attenuation as a function of distance.

    L(x) = c * max(x, d0) ** -alpha

    The near-field clamp d0 keeps L bounded (and every moment finite) for
    receivers arbitrarily close to a transmitter. d0 = 0 recovers the pure
    power law, which diverges at x = 0; callers accepting that singularity
    must avoid evaluating at zero distance.
    """

    c: float = 1e-3 / 64.0
    alpha: float = 3.0
    d0: float = 0.01

    def __post_init__(self):
        if not self.c > 0:
            raise ConfigError(f"path-loss gain c must be positive, got {self.c}")
        if not 2.0 < self.alpha < 4.0:
            raise ConfigError(f"path-loss exponent must lie in (2, 4), got {self.alpha}")
        if self.d0 < 0:
            raise ConfigError(f"clamp distance d0 must be >= 0, got {self.d0}")

    @property
    def max_attenuation(self) -> float:
        """L(0); infinite when d0 = 0."""
        if self.d0 == 0.0:
            return math.inf
        return self.c * self.d0 ** -self.alpha

    def attenuation(self, x):
        """L(x) for a scalar or array of nonnegative distances."""
        arr = np.asarray(x, dtype=float)
        if np.any(arr < 0):
            raise DomainError("distance must be nonnegative")
        if self.d0 == 0.0 and np.any(arr == 0.0):
            raise DomainError("attenuation diverges at zero distance when d0 = 0")
        out = self.c * np.maximum(arr, self.d0) ** -self.alpha
        if arr.ndim == 0:
            return float(out)
        return out

    def inverse(self, y: float) -> float:
        """The unique x >= d0 with L(x) = y.

        Defined for 0 < y <= L(0); larger values have no pre-image because of
        the clamp.
        """
        y = float(y)
        if y <= 0:
            raise DomainError(f"attenuation must be positive, got {y}")
        if y > self.max_attenuation:
            raise DomainError(
                f"attenuation {y} exceeds the clamp ceiling L(d0) = {self.max_attenuation}; no pre-image"
            )
        return (self.c / y) ** (1.0 / self.alpha)


@dataclasses.dataclass(frozen=True)
class PlacementModel:
    """How many nodes to place: an exact count or a Poisson-distributed one."""

    mode: str = "fixed"  # "fixed" | "poisson"
    n: float = 2000

    def __post_init__(self):
        if self.mode not in ("fixed", "poisson"):
            raise ConfigError(f"unknown placement mode {self.mode!r}")
        if self.n < 2:
            raise ConfigError(f"placement needs n >= 2, got {self.n}")
        if self.mode == "fixed" and int(self.n) != self.n:
            raise ConfigError("fixed-count placement needs an integer n")

    @classmethod
    def fixed(cls, n: int) -> "PlacementModel":
        return cls("fixed", int(n))

    @classmethod
    def poisson(cls, mean: float) -> "PlacementModel":
        return cls("poisson", float(mean))


def sample_nodes(placement: PlacementModel, seed) -> np.ndarray:
    """Sample node positions uniformly on the unit torus.

    Fixed mode places exactly n points. Poisson mode draws the count from
    Poisson(n), redrawing until it is at least 2 (a network needs at least a
    transmitter and a receiver). Deterministic given the seed.
    """
    rng = as_generator(seed)
    if placement.mode == "fixed":
        count = int(placement.n)
    else:
        count = 0
        while count < 2:
            count = int(rng.poisson(placement.n))
    return rng.random((count, 2))


def torus_distance(a, b) -> float:
    """Distance between two points with periodic boundary conditions."""
    dx = abs(float(a[0]) - float(b[0]))
    dy = abs(float(a[1]) - float(b[1]))
    dx = min(dx, 1.0 - dx)
    dy = min(dy, 1.0 - dy)
    return math.hypot(dx, dy)


def torus_distance_matrix(points: np.ndarray) -> np.ndarray:
    """All pairwise torus distances for an (n, 2) point array."""
    p = np.asarray(points, dtype=float)
    dx = np.abs(p[:, 0, None] - p[None, :, 0])
    np.minimum(dx, 1.0 - dx, out=dx)
    dy = np.abs(p[:, 1, None] - p[None, :, 1])
    np.minimum(dy, 1.0 - dy, out=dy)
    return np.hypot(dx, dy)
