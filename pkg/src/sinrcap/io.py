"""Serialization: 17-significant-digit floats, report JSON, instance files.

Every float is written with %.17g so values round-trip bit-exactly through
text; identical inputs therefore produce byte-identical files.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .errors import ConfigError
from .geometry import PathLossModel
from .sinr import (
    CAPACITY_GAUSSIAN,
    CAPACITY_R0,
    NetworkInstance,
    PowerModel,
    SinrGraph,
    SinrParams,
    VARIANT_ACTUAL,
    interference_sums,
)

INSTANCE_HEADER = "sinrcap-instance v1"

_ROLE_NAMES = {"source", "relay", "destination", "none"}


def fmt_float(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ConfigError(f"cannot serialize non-finite float {x}")
    return format(x, ".17g")


def dumps_json(obj) -> str:
    """Deterministic JSON: sorted keys, indent 2, floats at 17 digits.

    Integral floats serialize without a decimal point and load back as ints;
    numerically identical, and the bytes are stable across a re-dump.
    """
    pieces: list[str] = []
    _write_json(obj, pieces, 0)
    return "".join(pieces) + "\n"


def _write_json(obj, out: list[str], depth: int) -> None:
    pad = "  " * depth
    inner = "  " * (depth + 1)
    if obj is None:
        out.append("null")
    elif isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(fmt_float(float(obj)))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        keys = sorted(obj, key=str)
        for idx, key in enumerate(keys):
            out.append(f"{inner}{json.dumps(str(key))}: ")
            _write_json(obj[key], out, depth + 1)
            out.append(",\n" if idx < len(keys) - 1 else "\n")
        out.append(pad + "}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            out.append("[]")
            return
        out.append("[\n")
        for idx, item in enumerate(seq):
            out.append(inner)
            _write_json(item, out, depth + 1)
            out.append(",\n" if idx < len(seq) - 1 else "\n")
        out.append(pad + "]")
    else:
        raise ConfigError(f"cannot serialize {type(obj).__name__} to JSON")


def _power_model_line(model: PowerModel) -> str:
    if model.kind == "constant":
        return f"power constant {fmt_float(model.p_min)}"
    if model.kind == "uniform":
        return f"power uniform {fmt_float(model.p_min)} {fmt_float(model.p_max)}"
    atoms = " ".join(f"{fmt_float(a)}:{fmt_float(p)}" for a, p in zip(model.atoms, model.probs))
    return f"power discrete {atoms}"


def _parse_power_line(parts: list[str]) -> PowerModel:
    kind = parts[0]
    if kind == "constant":
        return PowerModel.constant(float(parts[1]))
    if kind == "uniform":
        return PowerModel.uniform(float(parts[1]), float(parts[2]))
    if kind == "discrete":
        atoms, probs = [], []
        for item in parts[1:]:
            a, p = item.split(":")
            atoms.append(float(a))
            probs.append(float(p))
        return PowerModel.discrete(atoms, probs)
    raise ConfigError(f"unknown power model kind {kind!r} in instance file")


def instance_to_text(inst: NetworkInstance, graph: SinrGraph) -> str:
    """Serialize an instance plus its capacity matrix (sparse triplets)."""
    lines = [INSTANCE_HEADER]
    lines.append(f"capacity_model {inst.capacity_model}")
    p = inst.params
    for name, value in (("n0", p.n0), ("gamma", p.gamma), ("beta", p.beta), ("rate", p.rate)):
        lines.append(f"param {name} {fmt_float(value)}")
    loss = inst.path_loss
    for name, value in (("c", loss.c), ("alpha_pl", loss.alpha), ("d0", loss.d0)):
        lines.append(f"param {name} {fmt_float(value)}")
    lines.append(_power_model_line(inst.power_model))
    role = ["none"] * inst.n
    for i in inst.sources:
        role[i] = "source"
    for i in inst.relays:
        role[i] = "relay"
    for i in inst.destinations:
        role[i] = "destination"
    lines.append(f"nodes {inst.n}")
    for i in range(inst.n):
        x, y = inst.positions[i]
        lines.append(f"node {i} {fmt_float(x)} {fmt_float(y)} {fmt_float(inst.powers[i])} {role[i]}")
    rows, cols = np.nonzero(graph.cap)
    lines.append(f"edges {len(rows)}")
    for i, j in zip(rows, cols):
        lines.append(f"edge {i} {j} {fmt_float(graph.cap[i, j])}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def instance_from_text(text: str) -> tuple[NetworkInstance, SinrGraph]:
    """Parse an instance file; interference vectors are recomputed."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != INSTANCE_HEADER:
        raise ConfigError(f"not an instance file (expected header {INSTANCE_HEADER!r})")
    params_kv: dict[str, float] = {}
    capacity_model = CAPACITY_R0
    power_model: PowerModel | None = None
    n = None
    positions: list[tuple[float, float]] = []
    powers: list[float] = []
    roles: list[str] = []
    edges: list[tuple[int, int, float]] = []
    try:
        for line in lines[1:]:
            parts = line.split()
            tag = parts[0]
            if tag == "capacity_model":
                if parts[1] not in (CAPACITY_R0, CAPACITY_GAUSSIAN):
                    raise ConfigError(f"unknown capacity model {parts[1]!r}")
                capacity_model = parts[1]
            elif tag == "param":
                params_kv[parts[1]] = float(parts[2])
            elif tag == "power":
                power_model = _parse_power_line(parts[1:])
            elif tag == "nodes":
                n = int(parts[1])
            elif tag == "node":
                positions.append((float(parts[2]), float(parts[3])))
                powers.append(float(parts[4]))
                if parts[5] not in _ROLE_NAMES:
                    raise ConfigError(f"unknown role {parts[5]!r}")
                roles.append(parts[5])
            elif tag == "edges":
                pass
            elif tag == "edge":
                edges.append((int(parts[1]), int(parts[2]), float(parts[3])))
            elif tag == "end":
                break
            else:
                raise ConfigError(f"unknown record {tag!r} in instance file")
    except (IndexError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"malformed instance file: {exc}") from exc
    if n is None or n != len(positions):
        raise ConfigError("instance file node count does not match its node records")
    if power_model is None:
        raise ConfigError("instance file is missing its power model")
    for key in ("n0", "gamma", "beta", "rate", "c", "alpha_pl", "d0"):
        if key not in params_kv:
            raise ConfigError(f"instance file is missing param {key!r}")
    sources = [i for i, r in enumerate(roles) if r == "source"]
    relays = [i for i, r in enumerate(roles) if r == "relay"]
    destinations = [i for i, r in enumerate(roles) if r == "destination"]
    if not sources or not relays or not destinations:
        raise ConfigError("instance file must assign at least one source, relay and destination")
    inst = NetworkInstance(
        positions=np.asarray(positions),
        powers=np.asarray(powers),
        sources=sources,
        relays=relays,
        destinations=destinations,
        params=SinrParams(params_kv["n0"], params_kv["gamma"], params_kv["beta"], params_kv["rate"]),
        path_loss=PathLossModel(params_kv["c"], params_kv["alpha_pl"], params_kv["d0"]),
        power_model=power_model,
        capacity_model=capacity_model,
    )
    cap = np.zeros((n, n))
    for i, j, value in edges:
        if not (0 <= i < n and 0 <= j < n):
            raise ConfigError(f"edge ({i}, {j}) references a missing node")
        cap[i, j] = value
    j_sum, i_sum = interference_sums(inst)
    graph = SinrGraph(
        cap=cap,
        interference_j=j_sum,
        interference_i=i_sum,
        variant=VARIANT_ACTUAL,
        capacity_model=capacity_model,
    )
    return inst, graph


def save_instance(path, inst: NetworkInstance, graph: SinrGraph) -> None:
    with open(path, "wb") as fh:
        fh.write(instance_to_text(inst, graph).encode())


def load_instance(path) -> tuple[NetworkInstance, SinrGraph]:
    with open(path, "rb") as fh:
        return instance_from_text(fh.read().decode())
