"""Weighted multigraph files.

Text format, one record per line, ``#`` starts a comment::

    graph <num vertices> <num edges>
    vertex <id> <weight>
    edge <id> <u> <v>

JSON format: ``{"vertices": {"<id>": weight, ...}, "edges": {"<id>": [u, v], ...}}``.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Mapping

from .graph import GraphError, MultiGraph


class GraphFormatError(ValueError):
    pass


def parse_text(text: str) -> tuple[MultiGraph, dict[int, int]]:
    header = None
    weights: dict[int, int] = {}
    edges: dict[int, tuple[int, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            nums = [int(p) for p in parts[1:]]
        except ValueError:
            raise GraphFormatError(f"line {lineno}: expected integers") from None
        kind = parts[0]
        if kind == "graph" and len(nums) == 2 and header is None:
            header = tuple(nums)
        elif kind == "vertex" and len(nums) == 2:
            if nums[0] in weights:
                raise GraphFormatError(f"line {lineno}: vertex {nums[0]} repeated")
            weights[nums[0]] = nums[1]
        elif kind == "edge" and len(nums) == 3:
            if nums[0] in edges:
                raise GraphFormatError(f"line {lineno}: edge {nums[0]} repeated")
            edges[nums[0]] = (nums[1], nums[2])
        else:
            raise GraphFormatError(f"line {lineno}: cannot parse {raw.strip()!r}")
    if header is None:
        raise GraphFormatError("missing 'graph' header")
    if header != (len(weights), len(edges)):
        raise GraphFormatError(f"header says {header}, found {len(weights)} vertices and {len(edges)} edges")
    return _build(weights, edges)


def parse_json(text: str) -> tuple[MultiGraph, dict[int, int]]:
    try:
        data = json.loads(text)
        weights = {int(v): int(x) for v, x in data["vertices"].items()}
        edges = {int(g): (int(ab[0]), int(ab[1])) for g, ab in data["edges"].items()}
    except (ValueError, KeyError, TypeError, IndexError, AttributeError) as exc:
        raise GraphFormatError(f"bad JSON graph: {exc}") from None
    return _build(weights, edges)


def _build(weights: dict[int, int], edges: dict[int, tuple[int, int]]) -> tuple[MultiGraph, dict[int, int]]:
    try:
        G = MultiGraph(weights, edges)
    except GraphError as exc:
        raise GraphFormatError(str(exc)) from None
    if any(x < 0 for x in weights.values()):
        raise GraphFormatError("weights must be non-negative")
    return G, weights


def loads(text: str) -> tuple[MultiGraph, dict[int, int]]:
    return parse_json(text) if text.lstrip().startswith("{") else parse_text(text)


def load(path: str | Path) -> tuple[MultiGraph, dict[int, int]]:
    return loads(Path(path).read_text())


def dumps(G: MultiGraph, w: Mapping[int, int], fmt: str = "text") -> str:
    if fmt == "json":
        data = {
            "vertices": {str(v): int(w.get(v, 0)) for v in sorted(G.vertices)},
            "edges": {str(g): list(G.ends(g)) for g in sorted(G.edges)},
        }
        return json.dumps(data, indent=1) + "\n"
    lines = [f"graph {G.order} {G.size}"]
    lines += [f"vertex {v} {w.get(v, 0)}" for v in sorted(G.vertices)]
    lines += [f"edge {g} {a} {b}" for g, (a, b) in sorted(G.edges.items())]
    return "\n".join(lines) + "\n"
