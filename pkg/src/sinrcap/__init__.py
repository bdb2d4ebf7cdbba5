"""Network-coding capacity of random wireless networks under the SINR model.

The package builds random SINR interference graphs on the unit torus,
computes layered cut capacities and exact min-cut network-coding capacity
for single- and multi-source transmission, evaluates closed-form
concentration bounds, and runs seeded Monte Carlo campaigns that verify the
concentration behavior empirically.
"""

from .bounds import (
    AnnulusGap,
    BoundParams,
    EpsilonPair,
    MincutEpsilons,
    annulus_gap_constant,
    azuma_bound,
    chernoff_tail,
    cut_tail_bound,
    interference_epsilons,
    mincut_epsilons,
    weighted_interference_epsilons,
)
from .config import ExperimentConfig, RoleSpec, build_instance
from .cuts import (
    CbarEstimate,
    CutSpec,
    cut_capacity,
    estimate_cbar,
    expected_cut_capacity,
    multi_source_cut_capacity,
    sample_random_cut,
)
from .errors import ConfigError, DomainError, SinrCapError
from .experiments import (
    ConcentrationReport,
    enumerate_min_cut,
    run_interference_study,
    run_mincut_study,
    run_oracle_suite,
    run_random_cut_study,
)
from .geometry import (
    PathLossModel,
    PlacementModel,
    sample_nodes,
    torus_distance,
    torus_distance_matrix,
)
from .maxflow import (
    CapacityResult,
    FlowNetwork,
    MinCutResult,
    capacity_multi_source,
    capacity_single_source,
    min_cut,
)
from .sinr import (
    AnnulusCheck,
    CouplingRadii,
    NetworkInstance,
    PowerModel,
    SinrGraph,
    SinrParams,
    annulus_check,
    build_graph,
    coupling_radii,
    interference_sums,
    link_capacity,
    sinr_ratio,
)

__version__ = "0.1.0"

__all__ = [
    "AnnulusCheck",
    "AnnulusGap",
    "BoundParams",
    "CapacityResult",
    "CbarEstimate",
    "ConcentrationReport",
    "ConfigError",
    "CouplingRadii",
    "CutSpec",
    "DomainError",
    "EpsilonPair",
    "ExperimentConfig",
    "FlowNetwork",
    "MinCutResult",
    "MincutEpsilons",
    "NetworkInstance",
    "PathLossModel",
    "PlacementModel",
    "PowerModel",
    "RoleSpec",
    "SinrCapError",
    "SinrGraph",
    "SinrParams",
    "annulus_check",
    "annulus_gap_constant",
    "azuma_bound",
    "build_graph",
    "build_instance",
    "capacity_multi_source",
    "capacity_single_source",
    "chernoff_tail",
    "cut_capacity",
    "cut_tail_bound",
    "enumerate_min_cut",
    "estimate_cbar",
    "expected_cut_capacity",
    "interference_epsilons",
    "interference_sums",
    "link_capacity",
    "min_cut",
    "mincut_epsilons",
    "multi_source_cut_capacity",
    "run_interference_study",
    "run_mincut_study",
    "run_oracle_suite",
    "run_random_cut_study",
    "sample_nodes",
    "sample_random_cut",
    "sinr_ratio",
    "torus_distance",
    "torus_distance_matrix",
    "weighted_interference_epsilons",
]
