"""Layered cut capacities and Monte Carlo estimation of the mean link capacity.

A cut of size k puts k of the m relays on the source side (set V). Its
capacity sums exactly three link classes: source(s) -> off-side relays,
on-side relays -> off-side relays, and on-side relays -> destination. There
is never a direct source-destination term in the layered model.
"""

from __future__ import annotations

import dataclasses
import math
from typing import NamedTuple

import numpy as np

from .config import ExperimentConfig, build_instance
from .errors import ConfigError
from .seeding import as_generator, derive_rng
from .sinr import NetworkInstance, SinrGraph, build_graph

_CBAR_BRANCH = 5


@dataclasses.dataclass(frozen=True)
class CutSpec:
    """A relay partition: `members` are positional relay indices (0..m-1)
    on the source side."""

    members: frozenset

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(int(i) for i in self.members))
        if any(i < 0 for i in self.members):
            raise ConfigError("cut members must be nonnegative relay positions")

    @property
    def k(self) -> int:
        return len(self.members)


class CbarEstimate(NamedTuple):
    mean: float
    std_error: float
    trials: int


def sample_random_cut(m: int, k: int, seed) -> CutSpec:
    """Uniformly random k-subset of the m relay positions."""
    if not 0 <= k <= m:
        raise ConfigError(f"cut size must lie in [0, {m}], got {k}")
    rng = as_generator(seed)
    members = rng.choice(m, size=k, replace=False)
    return CutSpec(frozenset(int(i) for i in members))


def _resolve_cut(inst: NetworkInstance, cut: CutSpec) -> tuple[np.ndarray, np.ndarray]:
    m = inst.m
    if any(i >= m for i in cut.members):
        raise ConfigError(f"cut references relay positions beyond m={m}")
    side = np.zeros(m, dtype=bool)
    side[list(cut.members)] = True
    return inst.relays[side], inst.relays[~side]


def cut_capacity(graph: SinrGraph, inst: NetworkInstance, cut: CutSpec, s: int, t: int) -> float:
    """Capacity of the cut for a single source s and destination t."""
    if s not in inst.sources:
        raise ConfigError(f"node {s} is not a source")
    if t not in inst.destinations:
        raise ConfigError(f"node {t} is not a destination")
    on_side, off_side = _resolve_cut(inst, cut)
    cap = graph.cap
    total = float(cap[s, off_side].sum())
    if len(on_side) and len(off_side):
        total += float(cap[np.ix_(on_side, off_side)].sum())
    total += float(cap[on_side, t].sum())
    return total


def multi_source_cut_capacity(graph: SinrGraph, inst: NetworkInstance, cut: CutSpec, sources, t: int) -> float:
    """Capacity of the cut between a source set and one destination."""
    sources = np.asarray(list(sources), dtype=np.int64)
    if len(sources) < 1:
        raise ConfigError("need at least one source")
    for s in sources:
        if s not in inst.sources:
            raise ConfigError(f"node {s} is not a source")
    if t not in inst.destinations:
        raise ConfigError(f"node {t} is not a destination")
    on_side, off_side = _resolve_cut(inst, cut)
    cap = graph.cap
    total = float(cap[np.ix_(sources, off_side)].sum())
    if len(on_side) and len(off_side):
        total += float(cap[np.ix_(on_side, off_side)].sum())
    total += float(cap[on_side, t].sum())
    return total


def expected_cut_capacity(m: int, k: int, cbar: float, h: int = 1) -> float:
    """Expected capacity of a size-k cut with mean link capacity cbar.

    The link-count coefficient is (m-k)h + k(m-k) + k, which reduces to
    m + k(m-k) for a single source. With h >= 2 the symmetry in k is lost and
    the minimum sits at k = m: the only bottleneck is the destination end.
    """
    if not 0 <= k <= m:
        raise ConfigError(f"cut size must lie in [0, {m}], got {k}")
    if h < 1:
        raise ConfigError(f"need h >= 1, got {h}")
    if cbar < 0:
        raise ConfigError(f"mean link capacity must be nonnegative, got {cbar}")
    return ((m - k) * h + k * (m - k) + k) * cbar


def estimate_cbar(cfg: ExperimentConfig, trials: int, seed: int, pairs_per_trial: int | None = None) -> CbarEstimate:
    """Monte Carlo estimate of the mean link capacity.

    Generates a fresh instance per trial and averages relay-to-relay ordered
    link capacities (all ordered pairs by default, a random subsample when
    pairs_per_trial is given). The standard error treats per-trial means as
    i.i.d., which they are; links within one trial are not.
    """
    if trials < 1:
        raise ConfigError(f"trials must be >= 1, got {trials}")
    if cfg.roles.m < 2 and pairs_per_trial is None:
        raise ConfigError("cbar estimation over relay pairs needs m >= 2")
    per_trial = np.empty(trials)
    for trial in range(trials):
        rng = derive_rng(seed, _CBAR_BRANCH, trial)
        inst = build_instance(cfg, rng)
        graph = build_graph(inst)
        relays = inst.relays
        block = graph.cap[np.ix_(relays, relays)]
        m = len(relays)
        if pairs_per_trial is None:
            per_trial[trial] = block.sum() / (m * (m - 1))  # diagonal is zero
        else:
            i = rng.integers(0, m, size=pairs_per_trial)
            j = rng.integers(0, m - 1, size=pairs_per_trial)
            j = np.where(j >= i, j + 1, j)  # ordered pairs with i != j
            per_trial[trial] = block[i, j].mean()
    mean = float(per_trial.mean())
    std_error = float(per_trial.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    return CbarEstimate(mean=mean, std_error=std_error, trials=trials)
