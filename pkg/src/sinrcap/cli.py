"""Command-line entry point.

Subcommands: generate (sample an instance and its capacity matrix),
capacity (min-cut of a saved instance), experiment (run a study and write
its CSV/JSON report), bounds (print every closed-form constant). Exit codes:
0 success, 1 verification failure (oracle mismatch), 2 usage or
configuration error.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from . import bounds
from .config import ExperimentConfig, RoleSpec, build_instance
from .errors import ConfigError, SinrCapError
from .experiments import STUDY_RUNNERS
from .geometry import PathLossModel, PlacementModel
from .io import fmt_float, load_instance, save_instance
from .maxflow import capacity_multi_source, capacity_single_source
from .sinr import CAPACITY_GAUSSIAN, CAPACITY_R0, PowerModel, SinrParams, build_graph

_CONFIG_KEYS = (
    "placement n power p0 p_min p_max atoms n0 gamma beta rate c alpha_pl d0 "
    "capacity_model h m l trials seed k alpha_exp eta cbar_trials cbar_pairs threads"
).split()
_INT_KEYS = {"n", "h", "m", "l", "trials", "seed", "k", "cbar_trials", "cbar_pairs", "threads"}
_STR_KEYS = {"placement", "power", "capacity_model", "atoms"}


def parse_config_text(text: str) -> dict:
    """Flat key = value lines; '#' starts a comment."""
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"line {lineno}: unknown config key {key!r}")
        try:
            if key in _STR_KEYS:
                values[key] = value
            elif key in _INT_KEYS:
                values[key] = int(value)
            else:
                values[key] = float(value)
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: bad value for {key}: {exc}") from exc
    return values


def config_from_values(values: dict) -> ExperimentConfig:
    base = ExperimentConfig.baseline()
    placement = PlacementModel(values.get("placement", "fixed"), values.get("n", base.placement.n))

    power_kind = values.get("power", "constant")
    if power_kind == "constant":
        power = PowerModel.constant(values.get("p0", 0.01))
    elif power_kind == "uniform":
        if "p_min" not in values or "p_max" not in values:
            raise ConfigError("uniform power needs p_min and p_max")
        power = PowerModel.uniform(values["p_min"], values["p_max"])
    elif power_kind == "discrete":
        if "atoms" not in values:
            raise ConfigError("discrete power needs atoms, e.g. atoms = 0.01:0.5,0.02:0.5")
        atoms, probs = [], []
        for item in values["atoms"].split(","):
            a, _, p = item.partition(":")
            atoms.append(float(a))
            probs.append(float(p))
        power = PowerModel.discrete(atoms, probs)
    else:
        raise ConfigError(f"unknown power kind {power_kind!r}")

    params = SinrParams(
        n0=values.get("n0", base.params.n0),
        gamma=values.get("gamma", base.params.gamma),
        beta=values.get("beta", base.params.beta),
        rate=values.get("rate", base.params.rate),
    )
    loss = PathLossModel(
        c=values.get("c", base.loss.c),
        alpha=values.get("alpha_pl", base.loss.alpha),
        d0=values.get("d0", base.loss.d0),
    )
    roles = RoleSpec(h=values.get("h", 1), m=values.get("m", base.roles.m), l=values.get("l", 1))
    return ExperimentConfig(
        placement=placement,
        power=power,
        params=params,
        loss=loss,
        roles=roles,
        capacity_model=values.get("capacity_model", CAPACITY_R0),
        trials=values.get("trials", base.trials),
        seed=values.get("seed", base.seed),
        cut_size=min(values.get("k", base.cut_size), roles.m) if "k" not in values else values["k"],
        tail_exp=values.get("alpha_exp", base.tail_exp),
        eta=values.get("eta", base.eta),
        cbar_trials=values.get("cbar_trials", base.cbar_trials),
        cbar_pairs=values.get("cbar_pairs", base.cbar_pairs),
        threads=values.get("threads", base.threads),
    )


def _load_config(args) -> ExperimentConfig:
    values: dict = {}
    if args.config:
        path = Path(args.config)
        if not path.is_file():
            raise ConfigError(f"config file not found: {path}")
        values = parse_config_text(path.read_text())
    if getattr(args, "seed", None) is not None:
        values["seed"] = args.seed
    if getattr(args, "k", None) is not None:
        values["k"] = args.k
    if getattr(args, "threads", None) is not None:
        values["threads"] = args.threads
    return config_from_values(values)


def _parse_ids(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise ConfigError(f"expected comma-separated node ids, got {text!r}") from exc


def cmd_generate(args) -> int:
    cfg = _load_config(args)
    inst = build_instance(cfg, cfg.seed)
    graph = build_graph(inst)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    path = outdir / "instance.txt"
    save_instance(path, inst, graph)
    edges = graph.edge_count()
    print(f"instance written to {path}")
    print(f"nodes {inst.n}")
    print(f"edges {edges}")
    print(f"mean_out_degree {fmt_float(edges / inst.n)}")
    return 0


def cmd_capacity(args) -> int:
    inst, graph = load_instance(args.instance)
    sources = _parse_ids(args.sources) if args.sources else [int(s) for s in inst.sources]
    destinations = _parse_ids(args.destinations) if args.destinations else [int(t) for t in inst.destinations]
    if len(sources) > 1:
        result = capacity_multi_source(graph, inst, sources, destinations)
    else:
        result = capacity_single_source(graph, inst, sources[0], destinations)
    side_relays = sorted(set(result.min_cut.source_side) & {int(r) for r in inst.relays})
    print(f"capacity {fmt_float(result.value)}")
    print(f"destination {result.destination}")
    print(f"source_side_relays {','.join(str(r) for r in side_relays) if side_relays else '-'}")
    return 0


def cmd_experiment(args) -> int:
    if args.study not in STUDY_RUNNERS:
        raise ConfigError(f"unknown study {args.study!r}; valid: {', '.join(sorted(STUDY_RUNNERS))}")
    cfg = _load_config(args)
    report = STUDY_RUNNERS[args.study](cfg)
    csv_path, json_path = report.write(args.out)
    print(f"wrote {csv_path}")
    print(f"wrote {json_path}")
    if args.study == "oracle":
        mismatches = report.meta["mismatch_count"]
        print(f"oracle_checks {report.meta['checks_total']}")
        print(f"oracle_mismatches {mismatches}")
        if mismatches:
            return 1
    return 0


def cmd_bounds(args) -> int:
    params = bounds.BoundParams(
        n=args.n,
        m=args.m,
        l=args.l,
        h=args.h,
        mean_attenuation=args.mean_attenuation,
        mean_power=args.mean_power,
        cbar=args.cbar,
        eta=args.eta,
        rate=args.rate,
        tail_exp=args.tail_exp,
    )
    rows = params.table()
    if args.p_min is not None or args.p_max is not None:
        if args.p_min is None or args.p_max is None:
            raise ConfigError("annulus constant needs both --p-min and --p-max")
        gap = bounds.annulus_gap_constant(args.p_min, args.p_max, args.c, args.gamma, args.beta, args.alpha_pl)
        rows.append(("annulus_gap_constant", gap.closed_form, False))
    if args.chernoff is not None:
        mean, eps = args.chernoff
        lower = bounds.chernoff_tail(mean, eps, "lower") if eps <= 1 else None
        if lower is not None:
            rows.append(("chernoff_lower", lower, False))
        rows.append(("chernoff_upper", bounds.chernoff_tail(mean, eps, "upper"), False))
    if args.azuma is not None:
        lam, *cs = args.azuma
        rows.append(("azuma_bound", bounds.azuma_bound(lam, cs), False))
    width = max(len(name) for name, _, _ in rows)
    for name, value, vacuous in rows:
        flag = "vacuous" if vacuous else "ok"
        print(f"{name:<{width}}  {fmt_float(value):<24}  {flag}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sinrcap", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="sample an instance and write it with its capacity matrix")
    gen.add_argument("--config", help="flat key=value config file")
    gen.add_argument("--out", required=True, help="output directory")
    gen.add_argument("--seed", type=int)
    gen.add_argument("--threads", type=int)
    gen.set_defaults(func=cmd_generate)

    cap = sub.add_parser("capacity", help="min-cut capacity of a saved instance")
    cap.add_argument("instance", help="instance file from 'generate'")
    cap.add_argument("--sources", help="comma-separated source node ids (default: from the file)")
    cap.add_argument("--destinations", help="comma-separated destination node ids")
    cap.set_defaults(func=cmd_capacity)

    exp = sub.add_parser("experiment", help="run a study and write CSV + JSON reports")
    exp.add_argument("--study", required=True, help="interference | random-cut | mincut | oracle")
    exp.add_argument("--config", help="flat key=value config file")
    exp.add_argument("--out", required=True, help="output directory")
    exp.add_argument("--seed", type=int)
    exp.add_argument("--k", type=int, help="cut size override for the random-cut study")
    exp.add_argument("--threads", type=int)
    exp.set_defaults(func=cmd_experiment)

    bnd = sub.add_parser("bounds", help="print the closed-form constants")
    bnd.add_argument("--n", type=int, default=2000)
    bnd.add_argument("--m", type=int, default=500)
    bnd.add_argument("--l", type=int, default=1)
    bnd.add_argument("--h", type=int, default=1)
    bnd.add_argument("--mean-attenuation", type=float, required=True, dest="mean_attenuation",
                     help="empirical E[L], e.g. from an interference study sidecar")
    bnd.add_argument("--mean-power", type=float, default=1.0, dest="mean_power")
    bnd.add_argument("--cbar", type=float, default=1.0)
    bnd.add_argument("--eta", type=float, default=1.0)
    bnd.add_argument("--rate", type=float, default=1.0)
    bnd.add_argument("--tail-exp", type=float, default=1.0, dest="tail_exp")
    bnd.add_argument("--p-min", type=float, dest="p_min")
    bnd.add_argument("--p-max", type=float, dest="p_max")
    bnd.add_argument("--c", type=float, default=1e-3 / 64.0)
    bnd.add_argument("--gamma", type=float, default=0.02)
    bnd.add_argument("--beta", type=float, default=0.2)
    bnd.add_argument("--alpha-pl", type=float, default=3.0, dest="alpha_pl")
    bnd.add_argument("--chernoff", type=float, nargs=2, metavar=("MEAN", "EPS"))
    bnd.add_argument("--azuma", type=float, nargs="+", metavar="LAM_AND_INCREMENTS")
    bnd.set_defaults(func=cmd_bounds)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SinrCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())
