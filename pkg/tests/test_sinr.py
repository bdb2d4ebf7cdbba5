import math

import numpy as np
import pytest

from sinrcap import (
    ConfigError,
    ExperimentConfig,
    NetworkInstance,
    PathLossModel,
    PlacementModel,
    PowerModel,
    RoleSpec,
    SinrParams,
    annulus_check,
    build_graph,
    build_instance,
    coupling_radii,
    interference_sums,
    link_capacity,
    sinr_ratio,
)
from sinrcap.sinr import (
    CAPACITY_GAUSSIAN,
    CAPACITY_R0,
    VARIANT_ACTUAL,
    VARIANT_DEFLATED,
    VARIANT_INFLATED,
)

SECTION_C = 1e-3 / 64.0


def two_node_instance(d=0.25, p0=0.01, gamma=0.0, d0=0.0, extra_params=None):
    """Source and destination at torus distance d, plus one far relay so the
    role invariants hold; the relay sits at distance 0.5 from both."""
    params = extra_params or SinrParams(n0=0.02, gamma=gamma, beta=0.2, rate=1.0)
    positions = np.array([[0.1, 0.1], [0.1 + d, 0.1], [0.1, 0.6]])
    return NetworkInstance(
        positions=positions,
        powers=np.full(3, p0),
        sources=[0],
        relays=[2],
        destinations=[1],
        params=params,
        path_loss=PathLossModel(c=SECTION_C, alpha=3.0, d0=d0),
        power_model=PowerModel.constant(p0),
        capacity_model=CAPACITY_R0,
    )


class TestPowerModel:
    def test_bounds_and_means(self):
        assert PowerModel.constant(0.01).mean() == 0.01
        assert PowerModel.uniform(0.01, 0.02).mean() == pytest.approx(0.015)
        disc = PowerModel.discrete([0.01, 0.02], [0.25, 0.75])
        assert disc.mean() == pytest.approx(0.0175)

    def test_discrete_validation(self):
        with pytest.raises(ConfigError):
            PowerModel.discrete([0.01, 0.02], [0.6, 0.6])
        with pytest.raises(ConfigError):
            PowerModel.discrete([0.02, 0.01], [0.5, 0.5])
        with pytest.raises(ConfigError):
            PowerModel.uniform(0.02, 0.01)
        with pytest.raises(ConfigError):
            PowerModel.uniform(0.0, 0.01)

    def test_power_threshold_coupling(self):
        # p_min must exceed beta * N0 = 0.004
        with pytest.raises(ConfigError):
            two_node_instance(p0=0.004)


class TestInterferenceSums:
    def test_two_nodes_single_term(self):
        from sinrcap import torus_distance

        inst = two_node_instance(d=0.25)
        j_sum, i_sum = interference_sums(inst)
        loss = inst.path_loss
        # pair term L(0.25) = 1e-3 plus each node's own relay term
        relay0 = loss.attenuation(torus_distance(inst.positions[0], inst.positions[2]))
        relay1 = loss.attenuation(torus_distance(inst.positions[1], inst.positions[2]))
        assert j_sum[0] == pytest.approx(1.0e-3 + relay0, rel=1e-12)
        assert j_sum[1] == pytest.approx(1.0e-3 + relay1, rel=1e-12)
        assert np.array_equal(i_sum, 0.01 * j_sum)

    def test_constant_power_identity_is_exact(self):
        cfg = ExperimentConfig.baseline(placement=PlacementModel.fixed(60), roles=RoleSpec(h=1, m=10, l=1))
        inst = build_instance(cfg, 5)
        j_sum, i_sum = interference_sums(inst)
        assert np.array_equal(i_sum, inst.powers[0] * j_sum)

    def test_single_node_rejected(self):
        with pytest.raises(ConfigError):
            NetworkInstance(
                positions=np.array([[0.5, 0.5]]),
                powers=np.array([0.01]),
                sources=[0],
                relays=[0],
                destinations=[0],
                params=SinrParams(),
                path_loss=PathLossModel(),
                power_model=PowerModel.constant(0.01),
            )


class TestSinrRatio:
    def test_no_interference_formula(self):
        inst = two_node_instance(d=0.25, gamma=0.0)
        _, i_sum = interference_sums(inst)
        # P0 * L(0.25) / N0 = 0.01 * 1e-3 / 0.02
        assert sinr_ratio(inst, 0, 1, i_sum) == pytest.approx(5e-4, rel=1e-12)

    def test_sender_term_excluded(self):
        # with only one interferer (the sender itself), gamma is irrelevant
        inst_g = two_node_instance(d=0.2, gamma=0.9)
        inst_0 = two_node_instance(d=0.2, gamma=0.0)
        del_relay = np.array([0.1, 0.6])
        # move the relay to the antipode so its contribution is the same for both
        _, i_g = interference_sums(inst_g)
        _, i_0 = interference_sums(inst_0)
        received = 0.01 * inst_g.path_loss.attenuation(0.2)
        relay_term = 0.01 * inst_g.path_loss.attenuation(
            float(np.hypot(*np.minimum(np.abs(del_relay - inst_g.positions[1]), 1 - np.abs(del_relay - inst_g.positions[1]))))
        )
        expected = received / (0.02 + 0.9 * relay_term)
        assert sinr_ratio(inst_g, 0, 1, i_g) == pytest.approx(expected, rel=1e-12)
        assert sinr_ratio(inst_0, 0, 1, i_0) == pytest.approx(received / 0.02, rel=1e-12)

    def test_self_link_rejected(self):
        inst = two_node_instance()
        _, i_sum = interference_sums(inst)
        with pytest.raises(ConfigError):
            sinr_ratio(inst, 1, 1, i_sum)


class TestLinkCapacity:
    def test_threshold_boundary_inclusive(self):
        params = SinrParams(beta=0.2, rate=1.0)
        assert link_capacity(0.19999, params, CAPACITY_R0) == 0.0
        assert link_capacity(0.2, params, CAPACITY_R0) == 1.0

    def test_gaussian_value(self):
        params = SinrParams(beta=0.2)
        assert link_capacity(1.0, params, CAPACITY_GAUSSIAN) == pytest.approx(0.5, rel=1e-15)
        assert link_capacity(0.1, params, CAPACITY_GAUSSIAN) == 0.0


class TestBuildGraph:
    def test_deflated_with_exact_mean_matches_actual(self):
        # four-node square lattice: every node sees the same interference
        positions = np.array([[0.0, 0.0], [0.0, 0.5], [0.5, 0.0], [0.5, 0.5]])
        inst = NetworkInstance(
            positions=positions,
            powers=np.full(4, 0.01),
            sources=[0],
            relays=[1, 2],
            destinations=[3],
            params=SinrParams(n0=0.02, gamma=0.5, beta=0.2, rate=1.0),
            path_loss=PathLossModel(c=SECTION_C, alpha=3.0, d0=0.01),
            power_model=PowerModel.constant(0.01),
        )
        actual = build_graph(inst)
        common_j = float(actual.interference_j[0])
        assert np.allclose(actual.interference_j, common_j)
        frozen = build_graph(inst, VARIANT_DEFLATED, mean_interference=common_j, eps_pair=(0.0, 0.0))
        assert np.array_equal(actual.cap, frozen.cap)

    def test_inflated_never_exceeds_deflated(self):
        cfg = ExperimentConfig.baseline(
            placement=PlacementModel.fixed(80),
            roles=RoleSpec(h=1, m=20, l=1),
            power=PowerModel.uniform(0.01, 0.02),
        )
        for seed in range(5):
            inst = build_instance(cfg, seed)
            mean_i = float(np.mean(interference_sums(inst)[1]))
            up = build_graph(inst, VARIANT_INFLATED, mean_i, (0.3, 0.3))
            down = build_graph(inst, VARIANT_DEFLATED, mean_i, (0.3, 0.3))
            assert np.all(up.cap <= down.cap)

    def test_coupling_sandwich_when_band_holds(self):
        cfg = ExperimentConfig.baseline(
            placement=PlacementModel.fixed(60),
            roles=RoleSpec(h=1, m=10, l=1),
            power=PowerModel.uniform(0.01, 0.02),
        )
        for seed in range(5):
            inst = build_instance(cfg, seed)
            i_sum = interference_sums(inst)[1]
            mean_i = float(i_sum.mean())
            eps_up = float(i_sum.max() / mean_i - 1.0) + 1e-9
            eps_down = float(1.0 - i_sum.min() / mean_i) + 1e-9
            actual = build_graph(inst)
            up = build_graph(inst, VARIANT_INFLATED, mean_i, (eps_down, eps_up))
            down = build_graph(inst, VARIANT_DEFLATED, mean_i, (eps_down, eps_up))
            assert np.all(up.cap <= actual.cap)
            assert np.all(actual.cap <= down.cap)

    def test_threshold_model_entries(self):
        cfg = ExperimentConfig.baseline(placement=PlacementModel.fixed(100), roles=RoleSpec(h=1, m=30, l=1))
        graph = build_graph(build_instance(cfg, 2))
        assert set(np.unique(graph.cap)) <= {0.0, 1.0}
        assert np.all(np.diag(graph.cap) == 0.0)

    def test_gaussian_entries_bounded_below(self):
        cfg = ExperimentConfig.baseline(
            placement=PlacementModel.fixed(100),
            roles=RoleSpec(h=1, m=30, l=1),
            power=PowerModel.constant(10.0),
            capacity_model=CAPACITY_GAUSSIAN,
        )
        graph = build_graph(build_instance(cfg, 2))
        positive = graph.cap[graph.cap > 0]
        assert positive.size > 0
        assert np.all(positive >= 0.5 * math.log2(1.2) - 1e-12)

    def test_directionality_under_heterogeneous_power(self):
        # strong transmitter reaches a weak one but not vice versa
        positions = np.array([[0.1, 0.1], [0.2, 0.1], [0.7, 0.7]])
        inst = NetworkInstance(
            positions=positions,
            powers=np.array([1.0, 0.01, 0.01]),
            sources=[0],
            relays=[1],
            destinations=[2],
            params=SinrParams(n0=0.02, gamma=0.0, beta=0.2, rate=1.0),
            path_loss=PathLossModel(c=SECTION_C, alpha=3.0, d0=0.01),
            power_model=PowerModel.discrete([0.01, 1.0], [0.5, 0.5]),
        )
        graph = build_graph(inst)
        assert graph.cap[0, 1] > 0.0
        assert graph.cap[1, 0] == 0.0

    def test_no_interference_equals_disk_graph(self):
        p0 = 0.01
        cfg = ExperimentConfig.baseline(
            placement=PlacementModel.fixed(200),
            roles=RoleSpec(h=1, m=50, l=1),
            params=SinrParams(n0=0.02, gamma=0.0, beta=0.2, rate=1.0),
        )
        for seed in range(3):
            inst = build_instance(cfg, seed)
            graph = build_graph(inst)
            r_star = inst.path_loss.inverse(inst.params.beta * inst.params.n0 / p0)
            from sinrcap import torus_distance_matrix

            d = torus_distance_matrix(inst.positions)
            disk = d <= r_star
            np.fill_diagonal(disk, False)
            assert np.array_equal(graph.cap > 0, disk)

    def test_coupled_variant_requires_mean(self):
        inst = two_node_instance()
        with pytest.raises(ConfigError):
            build_graph(inst, VARIANT_INFLATED)

    def test_frozen_variant_link_events_uncorrelated(self):
        # with frozen interference and constant power, links out of one node
        # depend only on independent distances
        cfg = ExperimentConfig.baseline(
            placement=PlacementModel.fixed(4),
            roles=RoleSpec(h=1, m=2, l=1),
            power=PowerModel.constant(10.0),
        )
        trials = 10_000
        hits = np.empty((trials, 2), dtype=bool)
        for trial in range(trials):
            inst = build_instance(cfg, trial)
            graph = build_graph(inst, VARIANT_INFLATED, mean_interference=0.2, eps_pair=(0.2, 0.2))
            hits[trial] = graph.cap[0, 1] > 0, graph.cap[0, 2] > 0
        x, y = hits[:, 0], hits[:, 1]
        corr = np.corrcoef(x, y)[0, 1]
        assert abs(corr) < 3.0 / math.sqrt(trials)


class TestCouplingRadii:
    def test_degenerate_power_range(self):
        params = SinrParams(n0=0.02, gamma=0.02, beta=0.2)
        loss = PathLossModel(c=SECTION_C, alpha=3.0, d0=0.0)
        radii = coupling_radii(params, loss, 4.0, 4.0, 0.004, (0.1, 0.1))
        assert radii.min_inflated == radii.max_inflated
        assert radii.min_deflated == radii.max_deflated

    def test_zero_eps_collapses_variants(self):
        params = SinrParams(n0=0.02, gamma=0.02, beta=0.2)
        loss = PathLossModel(c=SECTION_C, alpha=3.0, d0=0.0)
        radii = coupling_radii(params, loss, 4.0, 8.0, 0.004, (0.0, 0.0))
        assert radii.min_inflated == radii.min_deflated
        assert radii.max_inflated == radii.max_deflated

    def test_canonical_radius(self):
        # engineered so the inverse-attenuation argument is exactly 1e-3
        params = SinrParams(n0=0.02, gamma=0.02, beta=0.2)
        loss = PathLossModel(c=SECTION_C, alpha=3.0, d0=0.0)
        radii = coupling_radii(params, loss, 4.0, 4.0, 0.004, (0.0, 0.0))
        assert radii.min_inflated == pytest.approx(0.25, rel=1e-12)

    def test_orderings(self):
        params = SinrParams(n0=0.02, gamma=0.5, beta=0.2)
        loss = PathLossModel(c=SECTION_C, alpha=3.0, d0=0.0)
        radii = coupling_radii(params, loss, 2.0, 10.0, 0.05, (0.4, 0.6))
        assert radii.min_inflated <= radii.max_inflated
        assert radii.min_deflated <= radii.max_deflated
        assert radii.min_inflated <= radii.min_deflated
        assert radii.max_inflated <= radii.max_deflated


class TestAnnulusCheck:
    def test_empty_annulus(self):
        inst = two_node_instance()
        check = annulus_check(inst, (0.3, 0.3), eta=0.0)
        assert np.all(check.counts == 0)
        assert check.satisfied

    def test_full_torus_annulus(self):
        cfg = ExperimentConfig.baseline(placement=PlacementModel.fixed(30), roles=RoleSpec(h=1, m=5, l=1))
        inst = build_instance(cfg, 1)
        check = annulus_check(inst, (0.0, math.sqrt(0.5)), eta=1e9)
        assert np.all(check.counts == inst.n - 1)

    def test_direct_counting(self):
        cfg = ExperimentConfig.baseline(placement=PlacementModel.fixed(50), roles=RoleSpec(h=1, m=5, l=1))
        inst = build_instance(cfg, 9)
        r_in, r_out = 0.1, 0.3
        check = annulus_check(inst, (r_in, r_out), eta=3)
        from sinrcap import torus_distance

        for i in range(inst.n):
            manual = sum(
                1
                for k in range(inst.n)
                if k != i and r_in < torus_distance(inst.positions[i], inst.positions[k]) <= r_out
            )
            assert check.counts[i] == manual
        assert check.satisfied == bool(np.all(check.counts <= 3))
