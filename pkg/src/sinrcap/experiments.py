"""Seeded Monte Carlo campaigns with machine-readable reports.

Each study derives one RNG per trial from (master seed, study branch, trial
index), so any subset of trials reproduces independently of the campaign
size and trials may run concurrently. Reports serialize to a CSV of raw
records plus a JSON sidecar holding the resolved configuration, empirical
statistics, band epsilons and violation counts.
"""

from __future__ import annotations

import dataclasses
import math
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import bounds
from .config import ExperimentConfig, build_instance
from .cuts import estimate_cbar, multi_source_cut_capacity, sample_random_cut
from .errors import ConfigError
from .io import dumps_json, fmt_float, instance_to_text
from .maxflow import FlowNetwork, capacity_multi_source, capacity_single_source
from .seeding import derive_rng
from .sinr import CAPACITY_R0, NetworkInstance, SinrGraph, build_graph

STUDY_INTERFERENCE = "interference"
STUDY_RANDOM_CUT = "random-cut"
STUDY_MINCUT = "mincut"
STUDY_ORACLE = "oracle"

_BRANCH = {STUDY_INTERFERENCE: 1, STUDY_RANDOM_CUT: 2, STUDY_MINCUT: 3, STUDY_ORACLE: 4}

ORACLE_MAX_RELAYS = 12
ORACLE_FLOAT_TOL = 1e-9

_INT_COLUMNS = {"trial", "node_id", "k", "argmin_destination", "destination", "match"}


@dataclasses.dataclass
class ConcentrationReport:
    """Raw per-trial records plus derived statistics for one study."""

    study: str
    columns: tuple
    rows: list
    meta: dict

    def csv_text(self) -> str:
        lines = [",".join(self.columns)]
        for row in self.rows:
            cells = []
            for name, value in zip(self.columns, row):
                cells.append(str(int(value)) if name in _INT_COLUMNS else fmt_float(value))
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"

    def json_text(self) -> str:
        return dumps_json(self.meta)

    def write(self, outdir, basename: str | None = None) -> tuple[Path, Path]:
        """Write <basename>.csv and <basename>.json; returns both paths."""
        outdir = Path(outdir)
        outdir.mkdir(parents=True, exist_ok=True)
        base = basename or self.study.replace("-", "_")
        csv_path = outdir / f"{base}.csv"
        json_path = outdir / f"{base}.json"
        csv_path.write_bytes(self.csv_text().encode())
        json_path.write_bytes(self.json_text().encode())
        return csv_path, json_path

    @classmethod
    def read(cls, csv_path, json_path) -> "ConcentrationReport":
        import json as _json

        meta = _json.loads(Path(json_path).read_text())
        lines = Path(csv_path).read_text().splitlines()
        columns = tuple(lines[0].split(","))
        rows = []
        for line in lines[1:]:
            cells = line.split(",")
            rows.append(tuple(int(c) if name in _INT_COLUMNS else float(c) for name, c in zip(columns, cells)))
        return cls(study=meta.get("study", ""), columns=columns, rows=rows, meta=meta)


def _map_trials(fn, trials: int, threads: int) -> list:
    if threads <= 1:
        return [fn(i) for i in range(trials)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, range(trials)))


def run_interference_study(cfg: ExperimentConfig) -> ConcentrationReport:
    """Record the interference sums at every node over seeded trials.

    The concentration band uses the unweighted sum J for constant power and
    the power-weighted sum I otherwise, with epsilons computed from the
    empirical mean attenuation and mean power of the run itself.
    """
    branch = _BRANCH[STUDY_INTERFERENCE]

    def one_trial(trial: int):
        inst = build_instance(cfg, derive_rng(cfg.seed, branch, trial))
        graph = build_graph(inst)
        return inst, graph

    results = _map_trials(one_trial, cfg.trials, cfg.threads)
    rows = []
    j_values, i_values, node_counts, power_sums, power_counts = [], [], [], 0.0, 0
    for trial, (inst, graph) in enumerate(results):
        for node in range(inst.n):
            rows.append((trial, node, float(graph.interference_j[node]), float(graph.interference_i[node])))
        j_values.append(graph.interference_j)
        i_values.append(graph.interference_i)
        node_counts.append(inst.n)
        power_sums += float(inst.powers.sum())
        power_counts += inst.n

    j_all = np.concatenate(j_values)
    i_all = np.concatenate(i_values)
    n_effective = int(round(float(np.mean(node_counts))))
    # E[L] from the J sums themselves: each J(j) averages (n-1) attenuation draws.
    mean_attenuation = float(np.mean([jv.mean() / (count - 1) for jv, count in zip(j_values, node_counts)]))
    mean_power = power_sums / power_counts

    constant = cfg.power.kind == "constant"
    field = "J" if constant else "I"
    values = j_all if constant else i_all
    if constant:
        pair = bounds.interference_epsilons(n_effective, mean_attenuation)
    else:
        pair = bounds.weighted_interference_epsilons(n_effective, mean_power, mean_attenuation)
    empirical_mean = float(values.mean())
    band_lo = (1.0 - pair.lower) * empirical_mean
    band_hi = (1.0 + pair.upper) * empirical_mean
    below = int(np.count_nonzero(values < band_lo))
    above = int(np.count_nonzero(values > band_hi))
    chernoff_lower = None if pair.lower_vacuous else bounds.chernoff_tail(pair.mean, pair.lower, "lower")
    meta = {
        "study": STUDY_INTERFERENCE,
        "config": cfg.to_dict(),
        "n_effective": n_effective,
        "interference_field": field,
        "empirical_mean": empirical_mean,
        "empirical_std": float(values.std(ddof=1)) if len(values) > 1 else 0.0,
        "empirical_mean_attenuation": mean_attenuation,
        "empirical_mean_power": mean_power,
        "eps_lower": pair.lower,
        "eps_upper": pair.upper,
        "eps_lower_vacuous": pair.lower_vacuous,
        "band_lo": band_lo,
        "band_hi": band_hi,
        "count_below": below,
        "count_above": above,
        "count_inside": len(values) - below - above,
        "values_total": len(values),
        "chernoff_lower": chernoff_lower,
        "chernoff_upper": bounds.chernoff_tail(pair.mean, pair.upper, "upper"),
    }
    return ConcentrationReport(STUDY_INTERFERENCE, ("trial", "node_id", "J", "I"), rows, meta)


def run_random_cut_study(cfg: ExperimentConfig) -> ConcentrationReport:
    """Capacity of a fresh random size-k cut on a fresh instance per trial.

    Uses the single-destination cut sum; with h >= 2 sources the multi-source
    sum (and its asymmetric link-count coefficient) applies automatically.
    """
    branch = _BRANCH[STUDY_RANDOM_CUT]
    k = cfg.cut_size
    h, m = cfg.roles.h, cfg.roles.m

    def one_trial(trial: int) -> float:
        rng = derive_rng(cfg.seed, branch, trial)
        inst = build_instance(cfg, rng)
        graph = build_graph(inst)
        cut = sample_random_cut(inst.m, k, rng)
        return multi_source_cut_capacity(graph, inst, cut, inst.sources, int(inst.destinations[0]))

    values = np.asarray(_map_trials(one_trial, cfg.trials, cfg.threads))
    rows = [(trial, k, float(v)) for trial, v in enumerate(values)]

    cbar = estimate_cbar(cfg, cfg.cbar_trials, cfg.seed, cfg.cbar_pairs)
    coefficient = (m - k) * h + k * (m - k) + k
    expected = coefficient * cbar.mean
    empirical_mean = float(values.mean())
    std = float(values.std(ddof=1)) if len(values) > 1 else 0.0
    std_error = std / math.sqrt(len(values)) if len(values) > 1 else 0.0
    combined = math.hypot(std_error, coefficient * cbar.std_error)
    meta = {
        "study": STUDY_RANDOM_CUT,
        "config": cfg.to_dict(),
        "cut_size": k,
        "coefficient": coefficient,
        "cbar_mean": cbar.mean,
        "cbar_std_error": cbar.std_error,
        "cbar_trials": cbar.trials,
        "expected_cut_capacity": expected,
        "empirical_mean": empirical_mean,
        "empirical_std": std,
        "std_error": std_error,
        "combined_std_error": combined,
        "deviation_sigmas": abs(empirical_mean - expected) / combined if combined > 0 else None,
    }
    return ConcentrationReport(STUDY_RANDOM_CUT, ("trial", "k", "cut_capacity"), rows, meta)


def run_mincut_study(cfg: ExperimentConfig) -> ConcentrationReport:
    """Network-coding capacity per trial against the m * cbar band.

    Single-source configs minimize the exact min-cut over destinations;
    multi-source configs route every source through a super-source. The band
    half-width is the larger of the two independent-link epsilons.
    """
    branch = _BRANCH[STUDY_MINCUT]
    multi = cfg.roles.h >= 2

    def one_trial(trial: int):
        inst = build_instance(cfg, derive_rng(cfg.seed, branch, trial))
        graph = build_graph(inst)
        result = capacity_multi_source(graph, inst) if multi else capacity_single_source(graph, inst)
        return result.value, result.destination

    results = _map_trials(one_trial, cfg.trials, cfg.threads)

    cbar = estimate_cbar(cfg, cfg.cbar_trials, cfg.seed, cfg.cbar_pairs)
    m = cfg.roles.m
    expected = m * cbar.mean
    bands_defined = cbar.mean > 0 and m >= 2
    if bands_defined:
        eps = bounds.mincut_epsilons(m, cbar.mean, cfg.tail_exp, cfg.eta, cfg.params.rate)
        eps_band = max(eps.lower, eps.upper)
        band_lo = (1.0 - eps_band) * expected
        band_hi = (1.0 + eps_band) * expected
    else:
        eps = None
        eps_band, band_lo, band_hi = 0.0, 0.0, 0.0

    rows = [(trial, float(v), int(dest), band_lo, band_hi) for trial, (v, dest) in enumerate(results)]
    values = np.asarray([v for v, _ in results])
    inside = int(np.count_nonzero((values >= band_lo) & (values <= band_hi))) if bands_defined else 0
    meta = {
        "study": STUDY_MINCUT,
        "config": cfg.to_dict(),
        "multi_source": multi,
        "cbar_mean": cbar.mean,
        "cbar_std_error": cbar.std_error,
        "cbar_trials": cbar.trials,
        "expected_mincut": expected,
        "bands_defined": bands_defined,
        "eps_lower": eps.lower if eps else None,
        "eps_upper": eps.upper if eps else None,
        "eps_bounded_difference": eps.bounded_difference if eps else None,
        "eps_lower_vacuous": eps.lower_vacuous if eps else None,
        "eps_band": eps_band,
        "band_lo": band_lo,
        "band_hi": band_hi,
        "count_inside": inside,
        "count_outside": len(values) - inside,
        "values_total": len(values),
        "empirical_mean": float(values.mean()),
    }
    return ConcentrationReport(
        STUDY_MINCUT, ("trial", "value", "argmin_destination", "band_lo", "band_hi"), rows, meta
    )


def enumerate_min_cut(graph: SinrGraph, inst: NetworkInstance, sources, t: int) -> float:
    """Exhaustive minimum over all 2^m relay partitions of the cut sum.

    Independent of the max-flow path: evaluates the three-term partition sum
    for every subset directly. Threshold-model capacities are normalized to
    exact {0, 1} before summing so the minimum is an exact multiple of the
    rate. Only feasible for small m.
    """
    m = inst.m
    if m > ORACLE_MAX_RELAYS:
        raise ConfigError(f"exhaustive enumeration is limited to m <= {ORACLE_MAX_RELAYS}, got {m}")
    sources = np.asarray(list(sources), dtype=np.int64)
    relays = inst.relays
    scale = inst.params.rate if graph.capacity_model == CAPACITY_R0 else 1.0
    source_rows = graph.cap[np.ix_(sources, relays)] / scale
    relay_block = graph.cap[np.ix_(relays, relays)] / scale
    dest_col = graph.cap[relays, int(t)] / scale

    masks = np.arange(2**m, dtype=np.uint32)
    on_side = ((masks[:, None] >> np.arange(m, dtype=np.uint32)) & 1).astype(bool)
    off_side = ~on_side
    term_sources = off_side @ source_rows.sum(axis=0)
    term_relays = np.einsum("sj,sj->s", on_side @ relay_block, off_side)
    term_dest = on_side @ dest_col
    totals = term_sources + term_relays + term_dest
    return float(totals.min()) * scale


def run_oracle_suite(cfg: ExperimentConfig) -> ConcentrationReport:
    """Cross-check max-flow min-cuts against exhaustive partition minima.

    Any disagreement is reported with the full instance serialized for
    replay. Threshold-model comparisons are exact; Gaussian ones use an
    absolute float tolerance.
    """
    if cfg.roles.m > ORACLE_MAX_RELAYS:
        raise ConfigError(f"oracle suite needs m <= {ORACLE_MAX_RELAYS}, got {cfg.roles.m}")
    branch = _BRANCH[STUDY_ORACLE]
    tolerance = 0.0 if cfg.capacity_model == CAPACITY_R0 else ORACLE_FLOAT_TOL

    def one_trial(trial: int):
        inst = build_instance(cfg, derive_rng(cfg.seed, branch, trial))
        graph = build_graph(inst)
        records = []
        for t in inst.destinations:
            if inst.h == 1:
                flow = FlowNetwork.build(graph, inst, (int(inst.sources[0]),), int(t)).solve().value
            else:
                flow = FlowNetwork.build(graph, inst, [int(s) for s in inst.sources], int(t)).solve().value
            enum = enumerate_min_cut(graph, inst, inst.sources, int(t))
            records.append((int(t), flow, enum, abs(flow - enum) <= tolerance, inst, graph))
        return records

    results = _map_trials(one_trial, cfg.trials, cfg.threads)
    rows = []
    mismatches = []
    for trial, records in enumerate(results):
        for t, flow, enum, ok, inst, graph in records:
            rows.append((trial, t, flow, enum, int(ok)))
            if not ok:
                mismatches.append(
                    {
                        "trial": trial,
                        "destination": t,
                        "flow_value": flow,
                        "enumeration_value": enum,
                        "instance": instance_to_text(inst, graph),
                    }
                )
    meta = {
        "study": STUDY_ORACLE,
        "config": cfg.to_dict(),
        "tolerance": tolerance,
        "checks_total": len(rows),
        "mismatch_count": len(mismatches),
        "mismatches": mismatches,
    }
    return ConcentrationReport(
        STUDY_ORACLE, ("trial", "destination", "flow_value", "enumeration_value", "match"), rows, meta
    )


STUDY_RUNNERS = {
    STUDY_INTERFERENCE: run_interference_study,
    STUDY_RANDOM_CUT: run_random_cut_study,
    STUDY_MINCUT: run_mincut_study,
    STUDY_ORACLE: run_oracle_suite,
}
