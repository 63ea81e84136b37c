"""Parsing and serialization: DIMACS edge format, JSON adjacency instances,
trace files, and crown sidecar files.

DIMACS is 1-indexed on disk and converted to 0-indexed at the boundary.
Trace JSON is strict: unknown fields are rejected so fixtures stay bit-stable.
"""

from __future__ import annotations

import json
from typing import Any

from .crown import CrownDecomposition
from .graph import Edge, Graph
from .kernel import CrownReduction, IsolatedRemoval, ReductionStep, ReductionTrace


class FormatError(ValueError):
    """Unparseable or inconsistent on-disk artifact."""


# ---------------------------------------------------------------------------
# Graph instances


def parse_dimacs(text: str) -> Graph:
    n = None
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if fields[0] == "p":
            if n is not None:
                raise FormatError(f"line {lineno}: duplicate problem line")
            if len(fields) != 4 or fields[1] != "edge":
                raise FormatError(f"line {lineno}: expected 'p edge n m'")
            try:
                n = int(fields[2])
                int(fields[3])
            except ValueError as exc:
                raise FormatError(f"line {lineno}: bad problem line") from exc
            if n < 0:
                raise FormatError(f"line {lineno}: negative vertex count")
        elif fields[0] == "e":
            if n is None:
                raise FormatError(f"line {lineno}: edge before problem line")
            if len(fields) != 3:
                raise FormatError(f"line {lineno}: expected 'e u v'")
            try:
                u, v = int(fields[1]), int(fields[2])
            except ValueError as exc:
                raise FormatError(f"line {lineno}: bad edge line") from exc
            if not (1 <= u <= n and 1 <= v <= n) or u == v:
                raise FormatError(f"line {lineno}: edge ({u}, {v}) out of range")
            edges.append((u - 1, v - 1))
        else:
            raise FormatError(f"line {lineno}: unknown record {fields[0]!r}")
    if n is None:
        raise FormatError("missing 'p edge' line")
    return Graph.from_edges(n, edges)  # duplicates collapse in the bitmask


def write_dimacs(g: Graph) -> str:
    lines = [f"p edge {g.n} {g.m}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


_INSTANCE_KEYS = {"n", "adj", "k", "q", "p"}


def parse_instance_json(text: str) -> tuple[Graph, dict[str, int]]:
    """Parse a JSON adjacency instance; returns the graph and optional
    parameters (k, q, p) found alongside it."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise FormatError("instance JSON must be an object")
    unknown = set(obj) - _INSTANCE_KEYS
    if unknown:
        raise FormatError(f"unknown instance fields: {sorted(unknown)}")
    if "n" not in obj or "adj" not in obj:
        raise FormatError("instance JSON needs 'n' and 'adj'")
    n = obj["n"]
    adj = obj["adj"]
    if not isinstance(n, int) or not isinstance(adj, list) or len(adj) != n:
        raise FormatError("'adj' must list one neighbor list per vertex")
    edges: list[Edge] = []
    for u, nbrs in enumerate(adj):
        if not isinstance(nbrs, list):
            raise FormatError(f"adjacency of vertex {u} is not a list")
        for v in nbrs:
            if not isinstance(v, int):
                raise FormatError(f"non-integer neighbor of vertex {u}")
            edges.append((u, v))
    try:
        g = Graph.from_edges(n, edges)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    meta = {key: obj[key] for key in ("k", "q", "p") if key in obj}
    for key, value in meta.items():
        if not isinstance(value, int):
            raise FormatError(f"parameter {key!r} must be an integer")
    return g, meta


def write_instance_json(g: Graph, meta: dict[str, int] | None = None) -> str:
    obj: dict[str, Any] = {"n": g.n, "adj": [g.neighbors(v) for v in range(g.n)]}
    if meta:
        obj.update(meta)
    return json.dumps(obj, indent=2) + "\n"


def load_instance(path: str, fmt: str | None = None) -> tuple[Graph, dict[str, int]]:
    """Load a graph instance; format chosen by flag or file extension."""
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    if fmt is None:
        fmt = "json" if path.endswith(".json") else "dimacs"
    if fmt == "json":
        return parse_instance_json(text)
    if fmt == "dimacs":
        return parse_dimacs(text), {}
    raise FormatError(f"unknown format {fmt!r}")


def dump_graph(g: Graph, fmt: str) -> str:
    if fmt == "json":
        return write_instance_json(g)
    if fmt == "dimacs":
        return write_dimacs(g)
    raise FormatError(f"unknown format {fmt!r}")


# ---------------------------------------------------------------------------
# Trace files


def _require_keys(obj: dict, allowed: set[str], required: set[str], where: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise FormatError(f"{where}: unknown fields {sorted(unknown)}")
    missing = required - set(obj)
    if missing:
        raise FormatError(f"{where}: missing fields {sorted(missing)}")


def trace_to_dict(trace: ReductionTrace, answer: bool | None = None) -> dict:
    steps = []
    for step in trace.steps:
        if isinstance(step, IsolatedRemoval):
            steps.append({"kind": "isolated", "vertices": list(step.vertices)})
        else:
            steps.append(
                {
                    "kind": "crown",
                    "H": list(step.head),
                    "C": list(step.crown),
                    "R": list(step.body),
                }
            )
    obj: dict[str, Any] = {
        "input": {"n": trace.input_n, "m": trace.input_m, "k": trace.input_k, "q": trace.q},
        "steps": steps,
        "short_circuit": trace.short_circuit,
        "kernel": {"n": trace.kernel_n, "k": trace.kernel_k},
        "offsets": {"capacity": trace.capacity_offset, "dual": trace.dual_offset},
    }
    if answer is not None:
        obj["answer"] = answer
    return obj


def trace_from_dict(obj: dict) -> ReductionTrace:
    if not isinstance(obj, dict):
        raise FormatError("trace JSON must be an object")
    _require_keys(
        obj,
        {"input", "steps", "short_circuit", "kernel", "offsets", "answer"},
        {"input", "steps", "short_circuit", "kernel", "offsets"},
        "trace",
    )
    _require_keys(obj["input"], {"n", "m", "k", "q"}, {"n", "m", "k", "q"}, "trace.input")
    _require_keys(obj["kernel"], {"n", "k"}, {"n", "k"}, "trace.kernel")
    _require_keys(obj["offsets"], {"capacity", "dual"}, {"capacity", "dual"}, "trace.offsets")
    steps: list[ReductionStep] = []
    for idx, step in enumerate(obj["steps"]):
        where = f"trace.steps[{idx}]"
        if not isinstance(step, dict) or "kind" not in step:
            raise FormatError(f"{where}: missing kind")
        if step["kind"] == "isolated":
            _require_keys(step, {"kind", "vertices"}, {"kind", "vertices"}, where)
            steps.append(IsolatedRemoval(tuple(step["vertices"])))
        elif step["kind"] == "crown":
            _require_keys(step, {"kind", "H", "C", "R"}, {"kind", "H", "C", "R"}, where)
            steps.append(
                CrownReduction(
                    crown=tuple(step["C"]), head=tuple(step["H"]), body=tuple(step["R"])
                )
            )
        else:
            raise FormatError(f"{where}: unknown kind {step['kind']!r}")
    return ReductionTrace(
        input_n=obj["input"]["n"],
        input_m=obj["input"]["m"],
        input_k=obj["input"]["k"],
        q=obj["input"]["q"],
        steps=tuple(steps),
        short_circuit=obj["short_circuit"],
        kernel_n=obj["kernel"]["n"],
        kernel_k=obj["kernel"]["k"],
        capacity_offset=obj["offsets"]["capacity"],
        dual_offset=obj["offsets"]["dual"],
    )


# ---------------------------------------------------------------------------
# Crown sidecar files


def crown_to_dict(dec: CrownDecomposition) -> dict:
    return {
        "C": sorted(dec.crown),
        "H": sorted(dec.head),
        "R": sorted(dec.body),
        "witness": [list(edge) for edge in dec.witness],
    }


def crown_from_dict(obj: dict) -> CrownDecomposition:
    if not isinstance(obj, dict):
        raise FormatError("crown JSON must be an object")
    _require_keys(obj, {"C", "H", "R", "witness"}, {"C", "H", "R", "witness"}, "crown")
    return CrownDecomposition(
        crown=frozenset(obj["C"]),
        head=frozenset(obj["H"]),
        body=frozenset(obj["R"]),
        witness=tuple(tuple(edge) for edge in obj["witness"]),
    )
