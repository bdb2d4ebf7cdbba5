"""Shared fixtures: synthetic instances and hand-built capacity graphs."""

import numpy as np
import pytest

from sinrcap import (
    ExperimentConfig,
    NetworkInstance,
    PathLossModel,
    PlacementModel,
    PowerModel,
    RoleSpec,
    SinrGraph,
    SinrParams,
)
from sinrcap.sinr import CAPACITY_R0, VARIANT_ACTUAL


def synthetic_instance(h=1, m=2, l=1, extra=0, p0=0.01, seed=0, **param_overrides):
    """An instance with arbitrary (seeded) positions, used when only the
    role structure matters because the capacity matrix is supplied by hand."""
    n = h + m + l + extra
    rng = np.random.default_rng(seed)
    params = SinrParams(**param_overrides) if param_overrides else SinrParams()
    return NetworkInstance(
        positions=rng.random((n, 2)),
        powers=np.full(n, p0),
        sources=list(range(h)),
        relays=list(range(h, h + m)),
        destinations=list(range(h + m, h + m + l)),
        params=params,
        path_loss=PathLossModel(),
        power_model=PowerModel.constant(p0),
        capacity_model=CAPACITY_R0,
    )


def graph_from_matrix(inst, cap, capacity_model=CAPACITY_R0):
    cap = np.asarray(cap, dtype=float)
    zeros = np.zeros(inst.n)
    return SinrGraph(
        cap=cap,
        interference_j=zeros,
        interference_i=zeros,
        variant=VARIANT_ACTUAL,
        capacity_model=capacity_model,
    )


def full_connectivity_graph(inst, rate=1.0):
    """Every allowed link class (source->relay, relay->relay, relay->dest)
    at capacity `rate`; nothing else."""
    cap = np.zeros((inst.n, inst.n))
    for s in inst.sources:
        cap[s, inst.relays] = rate
    cap[np.ix_(inst.relays, inst.relays)] = rate
    for r in inst.relays:
        cap[r, r] = 0.0
    for t in inst.destinations:
        cap[inst.relays, t] = rate
    return graph_from_matrix(inst, cap)


@pytest.fixture
def diamond():
    """s -> u1, s -> u2, u1 -> t, u2 -> t at rate 1; no relay-relay link."""
    inst = synthetic_instance(h=1, m=2, l=1)
    cap = np.zeros((4, 4))
    cap[0, 1] = cap[0, 2] = cap[1, 3] = cap[2, 3] = 1.0
    return inst, graph_from_matrix(inst, cap)


def small_dense_config(m, seed_power=10.0, n_extra=3, **overrides):
    """Dense-enough random config for oracle-style tests: baseline SINR
    parameters but higher power so desk-scale graphs have nontrivial flows."""
    defaults = dict(
        placement=PlacementModel.fixed(m + 2 + n_extra),
        roles=RoleSpec(h=1, m=m, l=1),
        power=PowerModel.constant(seed_power),
    )
    defaults.update(overrides)
    return ExperimentConfig.baseline(**defaults)
