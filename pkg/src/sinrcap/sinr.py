"""Directed SINR link-capacity graphs.

A link (i, j) exists when the signal-to-interference-plus-noise ratio at j
clears the decoding threshold:

    sinr(i, j) = P_i * L(d_ij) / (N0 + gamma * (I(j) - P_i * L(d_ij)))

with I(j) the power-weighted attenuation sum over every other node (all nodes
transmit all the time; subtracting the i-term excludes the sender itself).
Besides the actual graph, two coupled variants freeze the interference term
at (1 +/- eps) times a mean value, which sandwiches the actual link set from
both sides while making link events independent across receivers.
"""

from __future__ import annotations

import dataclasses
import math
from typing import NamedTuple

import numpy as np

from .errors import ConfigError, DomainError
from .geometry import PathLossModel, torus_distance, torus_distance_matrix

CAPACITY_R0 = "R0"
CAPACITY_GAUSSIAN = "gaussian"

VARIANT_ACTUAL = "actual"
VARIANT_INFLATED = "inflated-mean"  # interference frozen at (1 + eps_up) * mean
VARIANT_DEFLATED = "deflated-mean"  # interference frozen at (1 - eps_down) * mean
_COUPLED_VARIANTS = (VARIANT_INFLATED, VARIANT_DEFLATED)


@dataclasses.dataclass(frozen=True)
class SinrParams:
    """Receiver-side SINR parameters.

    n0: background noise power; gamma: inverse processing gain (0 removes
    interference, 1 is a narrow-band system); beta: decoding threshold;
    rate: packets/sec carried by a link in the threshold capacity model.
    """

    n0: float = 0.02
    gamma: float = 0.02
    beta: float = 0.2
    rate: float = 1.0

    def __post_init__(self):
        if not self.n0 > 0:
            raise ConfigError(f"noise power must be positive, got {self.n0}")
        if not 0.0 <= self.gamma <= 1.0:
            raise ConfigError(f"gamma must lie in [0, 1], got {self.gamma}")
        if not self.beta > 0:
            raise ConfigError(f"decoding threshold must be positive, got {self.beta}")
        if not self.rate > 0:
            raise ConfigError(f"link rate must be positive, got {self.rate}")


@dataclasses.dataclass(frozen=True)
class PowerModel:
    """Per-node transmission power distribution on [p_min, p_max]."""

    kind: str  # "constant" | "uniform" | "discrete"
    p_min: float
    p_max: float
    atoms: tuple = ()
    probs: tuple = ()

    def __post_init__(self):
        if self.kind not in ("constant", "uniform", "discrete"):
            raise ConfigError(f"unknown power model kind {self.kind!r}")
        if not 0 < self.p_min <= self.p_max < math.inf:
            raise ConfigError(f"need 0 < p_min <= p_max < inf, got [{self.p_min}, {self.p_max}]")
        if self.kind == "discrete":
            atoms = np.asarray(self.atoms, dtype=float)
            probs = np.asarray(self.probs, dtype=float)
            if atoms.size == 0 or atoms.size != probs.size:
                raise ConfigError("discrete power model needs matching atoms and probabilities")
            if np.any(np.diff(atoms) <= 0):
                raise ConfigError("discrete power atoms must be strictly increasing")
            if np.any(probs <= 0):
                raise ConfigError("discrete power probabilities must all be positive")
            if abs(probs.sum() - 1.0) > 1e-9:
                raise ConfigError(f"discrete power probabilities sum to {probs.sum()}, not 1")
            if atoms[0] != self.p_min or atoms[-1] != self.p_max:
                raise ConfigError("discrete power atoms must span [p_min, p_max] with positive mass at both ends")

    @classmethod
    def constant(cls, p0: float) -> "PowerModel":
        return cls("constant", float(p0), float(p0))

    @classmethod
    def uniform(cls, p_min: float, p_max: float) -> "PowerModel":
        return cls("uniform", float(p_min), float(p_max))

    @classmethod
    def discrete(cls, atoms, probs) -> "PowerModel":
        atoms = tuple(float(a) for a in atoms)
        probs = tuple(float(p) for p in probs)
        return cls("discrete", min(atoms), max(atoms), atoms, probs)

    def sample(self, count: int, rng: np.random.Generator) -> np.ndarray:
        if self.kind == "constant":
            return np.full(count, self.p_min)
        if self.kind == "uniform":
            return rng.uniform(self.p_min, self.p_max, count)
        return rng.choice(np.asarray(self.atoms), size=count, p=np.asarray(self.probs))

    def mean(self) -> float:
        """E[P]."""
        if self.kind == "constant":
            return self.p_min
        if self.kind == "uniform":
            return 0.5 * (self.p_min + self.p_max)
        return float(np.dot(self.atoms, self.probs))


def _frozen_array(values, dtype=float) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclasses.dataclass(frozen=True, eq=False)
class NetworkInstance:
    """A realized network: positions, powers, roles, and channel parameters.

    Roles partition a subset of the nodes into sources, relays and
    destinations; leftover nodes carry no traffic but still transmit and
    therefore interfere. Immutable after construction.
    """

    positions: np.ndarray  # (n, 2) in [0, 1)^2
    powers: np.ndarray  # (n,)
    sources: np.ndarray  # (h,) node indices
    relays: np.ndarray  # (m,)
    destinations: np.ndarray  # (l,)
    params: SinrParams
    path_loss: PathLossModel
    power_model: PowerModel
    capacity_model: str = CAPACITY_R0

    def __post_init__(self):
        object.__setattr__(self, "positions", _frozen_array(self.positions))
        object.__setattr__(self, "powers", _frozen_array(self.powers))
        object.__setattr__(self, "sources", _frozen_array(self.sources, dtype=np.int64))
        object.__setattr__(self, "relays", _frozen_array(self.relays, dtype=np.int64))
        object.__setattr__(self, "destinations", _frozen_array(self.destinations, dtype=np.int64))
        n = len(self.positions)
        if n < 2:
            raise ConfigError(f"a network needs at least 2 nodes, got {n}")
        if self.positions.ndim != 2 or self.positions.shape[1] != 2:
            raise ConfigError("positions must have shape (n, 2)")
        if len(self.powers) != n:
            raise ConfigError("powers and positions must have matching length")
        if self.capacity_model not in (CAPACITY_R0, CAPACITY_GAUSSIAN):
            raise ConfigError(f"unknown capacity model {self.capacity_model!r}")
        for name, idx in (("sources", self.sources), ("relays", self.relays), ("destinations", self.destinations)):
            if len(idx) < 1:
                raise ConfigError(f"{name} must contain at least one node")
            if np.any(idx < 0) or np.any(idx >= n):
                raise ConfigError(f"{name} contains out-of-range node indices")
        combined = np.concatenate([self.sources, self.relays, self.destinations])
        if len(np.unique(combined)) != len(combined):
            raise ConfigError("sources, relays and destinations must be disjoint")
        if np.any(self.powers < self.power_model.p_min) or np.any(self.powers > self.power_model.p_max):
            raise ConfigError("node powers fall outside the power model's [p_min, p_max]")
        if not self.power_model.p_min > self.params.beta * self.params.n0:
            raise ConfigError(
                f"need p_min > beta * N0 ({self.params.beta * self.params.n0}), got {self.power_model.p_min}"
            )

    @property
    def n(self) -> int:
        return len(self.positions)

    @property
    def h(self) -> int:
        return len(self.sources)

    @property
    def m(self) -> int:
        return len(self.relays)

    @property
    def l(self) -> int:
        return len(self.destinations)

    @property
    def constant_power(self) -> bool:
        return self.power_model.kind == "constant"


@dataclasses.dataclass(frozen=True, eq=False)
class SinrGraph:
    """Directed link-capacity matrix for one network realization.

    cap[i, j] is the capacity of link i -> j (diagonal zero). interference_j
    and interference_i hold the unweighted and power-weighted attenuation
    sums at each receiver. Coupled variants record the mean value and
    (eps_down, eps_up) pair they were built with.
    """

    cap: np.ndarray
    interference_j: np.ndarray
    interference_i: np.ndarray
    variant: str
    capacity_model: str
    mean_interference_used: float | None = None
    eps_pair_used: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "cap", _frozen_array(self.cap))
        object.__setattr__(self, "interference_j", _frozen_array(self.interference_j))
        object.__setattr__(self, "interference_i", _frozen_array(self.interference_i))

    @property
    def n(self) -> int:
        return len(self.cap)

    def edge_count(self) -> int:
        return int(np.count_nonzero(self.cap))


class AnnulusCheck(NamedTuple):
    """Per-node occupancy of the annulus (r_inner, r_outer]."""

    r_inner: float
    r_outer: float
    counts: np.ndarray
    eta: float
    satisfied: bool


class CouplingRadii(NamedTuple):
    """Connection radii of the frozen-interference variants.

    Inside min_* every node pair is bidirectionally connected; outside max_*
    no link exists. The inflated variant assumes more interference, hence
    smaller radii.
    """

    min_inflated: float
    max_inflated: float
    min_deflated: float
    max_deflated: float


def attenuation_matrix(inst: NetworkInstance) -> np.ndarray:
    """Pairwise L(d_ij) with a zeroed diagonal (no self-interference)."""
    d = torus_distance_matrix(inst.positions)
    np.fill_diagonal(d, 1.0)  # placeholder; the diagonal is zeroed below
    att = inst.path_loss.attenuation(d)
    np.fill_diagonal(att, 0.0)
    return att


def interference_sums(inst: NetworkInstance, att: np.ndarray | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Per-receiver interference sums (J, I).

    J(j) sums L(d_kj) over every other node; I(j) weights each term by the
    transmitter's power. Every node interferes regardless of role. With
    constant power, I = P0 * J holds exactly.
    """
    if att is None:
        att = attenuation_matrix(inst)
    j_sum = att.sum(axis=0)
    if inst.constant_power:
        i_sum = inst.powers[0] * j_sum
    else:
        i_sum = inst.powers @ att
    return j_sum, i_sum


def sinr_ratio(inst: NetworkInstance, i: int, j: int, total_interference: np.ndarray) -> float:
    """SINR of link i -> j given the per-receiver weighted sums I."""
    if i == j:
        raise ConfigError("a node cannot link to itself")
    received = inst.powers[i] * inst.path_loss.attenuation(torus_distance(inst.positions[i], inst.positions[j]))
    denom = inst.params.n0 + inst.params.gamma * (float(total_interference[j]) - received)
    if denom <= 0:
        raise DomainError("nonpositive SINR denominator; interference vector is inconsistent")
    return received / denom


def link_capacity(beta_ij: float, params: SinrParams, capacity_model: str = CAPACITY_R0) -> float:
    """Capacity of a link with the given SINR (0 below the threshold).

    Threshold model: rate R when beta_ij >= beta. Gaussian model:
    0.5 * log2(1 + beta_ij), again gated by the threshold.
    """
    if beta_ij < 0:
        raise DomainError(f"SINR must be nonnegative, got {beta_ij}")
    if beta_ij < params.beta:
        return 0.0
    if capacity_model == CAPACITY_R0:
        return params.rate
    if capacity_model == CAPACITY_GAUSSIAN:
        return 0.5 * math.log2(1.0 + beta_ij)
    raise ConfigError(f"unknown capacity model {capacity_model!r}")


def build_graph(
    inst: NetworkInstance,
    variant: str = VARIANT_ACTUAL,
    mean_interference: float | None = None,
    eps_pair: tuple[float, float] | None = None,
) -> SinrGraph:
    """Build the full n x n capacity matrix for one graph variant.

    The actual variant uses each receiver's realized interference. Coupled
    variants replace gamma * (I(j) - P_i L(d_ij)) with
    gamma * (f * mean - P_i L(d_ij)) where f is (1 + eps_up) or
    (1 - eps_down); they require mean_interference and eps_pair.
    mean_interference is the unweighted mean sum (J-style) for constant-power
    instances and the power-weighted mean (I-style) otherwise, matching the
    two ways the coupled graphs are defined.

    Entries where the frozen denominator is nonpositive are treated as
    meeting the threshold (the sandwich is vacuous there).
    """
    att = attenuation_matrix(inst)
    j_sum, i_sum = interference_sums(inst, att)
    params = inst.params
    received = inst.powers[:, None] * att  # (i, j): signal power of i at j

    if variant == VARIANT_ACTUAL:
        denom = params.n0 + params.gamma * (i_sum[None, :] - received)
    elif variant in _COUPLED_VARIANTS:
        if mean_interference is None or eps_pair is None:
            raise ConfigError(f"variant {variant!r} requires mean_interference and eps_pair")
        eps_down, eps_up = float(eps_pair[0]), float(eps_pair[1])
        factor = (1.0 + eps_up) if variant == VARIANT_INFLATED else (1.0 - eps_down)
        frozen = float(mean_interference) * (inst.powers[0] if inst.constant_power else 1.0)
        denom = params.n0 + params.gamma * (factor * frozen - received)
    else:
        raise ConfigError(f"unknown graph variant {variant!r}")

    positive = denom > 0
    beta = np.where(positive, received / np.where(positive, denom, 1.0), np.inf)
    meets = beta >= params.beta
    if inst.capacity_model == CAPACITY_R0:
        cap = np.where(meets, params.rate, 0.0)
    else:
        with np.errstate(over="ignore"):
            cap = np.where(meets, 0.5 * np.log2(1.0 + np.where(meets, beta, 0.0)), 0.0)
    np.fill_diagonal(cap, 0.0)
    return SinrGraph(
        cap=cap,
        interference_j=j_sum,
        interference_i=i_sum,
        variant=variant,
        capacity_model=inst.capacity_model,
        mean_interference_used=mean_interference,
        eps_pair_used=tuple(eps_pair) if eps_pair is not None else None,
    )


def coupling_radii(
    params: SinrParams,
    loss: PathLossModel,
    p_min: float,
    p_max: float,
    mean_interference: float,
    eps_pair: tuple[float, float],
) -> CouplingRadii:
    """Connection radii of the frozen-interference variants.

    Each radius solves p * L(r) / (N0 + gamma * f * mean - gamma * p * L(r))
    = beta for L(r), i.e. L(r) = beta / (1 + gamma * beta) *
    (N0 + gamma * f * mean) / p, then inverts the attenuation law.
    mean_interference here is always the power-weighted mean (I-style).
    """
    if not 0 < p_min <= p_max:
        raise ConfigError(f"need 0 < p_min <= p_max, got [{p_min}, {p_max}]")
    if mean_interference < 0:
        raise ConfigError("mean interference must be nonnegative")
    eps_down, eps_up = float(eps_pair[0]), float(eps_pair[1])
    base = params.beta / (1.0 + params.gamma * params.beta)

    def solve(factor: float, p: float, label: str) -> float:
        target = base * (params.n0 + params.gamma * factor * mean_interference) / p
        try:
            return loss.inverse(target)
        except DomainError as exc:
            raise DomainError(f"{label} radius undefined: {exc}") from exc

    return CouplingRadii(
        min_inflated=solve(1.0 + eps_up, p_min, "min_inflated"),
        max_inflated=solve(1.0 + eps_up, p_max, "max_inflated"),
        min_deflated=solve(1.0 - eps_down, p_min, "min_deflated"),
        max_deflated=solve(1.0 - eps_down, p_max, "max_deflated"),
    )


def annulus_check(inst: NetworkInstance, radii: tuple[float, float], eta: float) -> AnnulusCheck:
    """Count, per node, how many others fall in the annulus (r_in, r_out].

    The counts bound how many links per node are ambiguous between the two
    frozen-interference variants; the check passes when every count is at
    most eta.
    """
    r_inner, r_outer = float(radii[0]), float(radii[1])
    if r_inner > r_outer:
        raise ConfigError(f"need r_inner <= r_outer, got ({r_inner}, {r_outer})")
    d = torus_distance_matrix(inst.positions)
    np.fill_diagonal(d, -1.0)  # exclude self
    inside = (d > r_inner) & (d <= r_outer)
    counts = inside.sum(axis=1)
    return AnnulusCheck(r_inner, r_outer, counts, float(eta), bool(np.all(counts <= eta)))
