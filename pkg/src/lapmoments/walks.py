"""Closed walks in the Laplacian graph.

These are the combinatorial oracles behind the closed-form moments: walk
weight sums reproduce diagonal entries of ``L^k``, and grouping closed walks
by the shape of the subgraph they cover splits ``m_k`` into per-shape terms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Iterator

from .census import StructuralCensus
from .graph import LaplacianGraph

__all__ = [
    "MAX_WALK_LENGTH",
    "WALK_CLASSES",
    "UnknownWalkClassError",
    "Walk",
    "CoveredSubgraph",
    "closed_walks",
    "closed_walk_weight_sum",
    "moments_via_walks",
    "covered_subgraph",
    "canonical_label",
    "walk_class_sums",
    "class_closed_forms",
]

MAX_WALK_LENGTH = 6


class UnknownWalkClassError(RuntimeError):
    """A closed walk covered a subgraph outside the expected shape list."""


@dataclass(frozen=True)
class Walk:
    nodes: tuple[int, ...]
    weight: int = 1

    @property
    def length(self) -> int:
        return len(self.nodes) - 1

    @property
    def closed(self) -> bool:
        return self.nodes[0] == self.nodes[-1]


@dataclass(frozen=True)
class CoveredSubgraph:
    nodes: frozenset[int]
    edges: frozenset[tuple[int, int]]
    label: str

    @property
    def name(self) -> str | None:
        return _NAMES.get(self.label)


def _check_length(k: int) -> None:
    if not 1 <= k <= MAX_WALK_LENGTH:
        raise ValueError(f"walk length must be in 1..{MAX_WALK_LENGTH}, got {k}")


def closed_walks(lg: LaplacianGraph, i: int, k: int) -> Iterator[Walk]:
    """Every closed walk of length ``k`` from ``i``, loops included, with its weight."""
    _check_length(k)
    path = [i]

    def rec(node: int, depth: int, w: int):
        if depth == k - 1:
            for j, wj in lg.neighbors[node]:
                if j == i:
                    yield Walk(tuple(path) + (i,), w * wj)
            return
        for j, wj in lg.neighbors[node]:
            path.append(j)
            yield from rec(j, depth + 1, w * wj)
            path.pop()

    yield from rec(i, 0, 1)


def closed_walk_weight_sum(lg: LaplacianGraph, i: int, k: int) -> int:
    """Sum of walk weights over the closed ``k``-walks at ``i``; equals ``[L^k]_ii``."""
    _check_length(k)

    def rec(node: int, depth: int) -> int:
        if depth == k - 1:
            return sum(wj for j, wj in lg.neighbors[node] if j == i)
        return sum(wj * rec(j, depth + 1) for j, wj in lg.neighbors[node])

    return rec(i, 0)


def moments_via_walks(lg: LaplacianGraph, k: int) -> Fraction:
    return Fraction(sum(closed_walk_weight_sum(lg, i, k) for i in range(lg.n)), lg.n)


@lru_cache(maxsize=None)
def _canonical(m: int, edges: frozenset[tuple[int, int]]) -> str:
    if m > 6:
        raise ValueError("canonical labels are only computed for up to 6 nodes")
    best = min(
        tuple(sorted((min(pi[a], pi[b]), max(pi[a], pi[b])) for a, b in edges))
        for pi in permutations(range(m))
    )
    return f"{m}:" + ",".join(f"{a}{b}" for a, b in best)


def canonical_label(nodes, edges) -> str:
    """Isomorphism-class certificate of a graph on at most 6 nodes."""
    order = {v: r for r, v in enumerate(sorted(nodes))}
    rel = frozenset(
        (min(order[a], order[b]), max(order[a], order[b])) for a, b in edges
    )
    return _canonical(len(order), rel)


def covered_subgraph(w: Walk | tuple[int, ...]) -> CoveredSubgraph:
    """Nodes touched by the walk and its non-loop steps as undirected edges."""
    nodes = w.nodes if isinstance(w, Walk) else tuple(w)
    edges = frozenset(
        (min(a, b), max(a, b)) for a, b in zip(nodes, nodes[1:]) if a != b
    )
    vs = frozenset(nodes)
    return CoveredSubgraph(vs, edges, canonical_label(vs, edges))


def _shape(m: int, edges) -> str:
    return canonical_label(range(m), edges)


_SHAPES = {
    "single-node": _shape(1, []),
    "edge": _shape(2, [(0, 1)]),
    "two-chain": _shape(3, [(0, 1), (1, 2)]),
    "triangle": _shape(3, [(0, 1), (1, 2), (0, 2)]),
    "quadrangle": _shape(4, [(0, 1), (1, 2), (2, 3), (0, 3)]),
    "tailed-triangle": _shape(4, [(0, 1), (1, 2), (0, 2), (0, 3)]),
    "pentagon": _shape(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]),
}
_NAMES = {v: k for k, v in _SHAPES.items()}

WALK_CLASSES = {
    4: ("single-node", "edge", "two-chain", "triangle", "quadrangle"),
    5: ("single-node", "edge", "two-chain", "triangle", "quadrangle", "tailed-triangle", "pentagon"),
}


def walk_class_sums(lg: LaplacianGraph, k: int) -> dict[str, Fraction]:
    """Split ``m_k`` by the shape of the subgraph each closed walk covers.

    Returns ``{shape: (1/n) * sum of walk weights}`` over every shape that a
    closed ``k``-walk can cover (``k`` in {4, 5}); the values sum to ``m_k``.
    """
    if k not in WALK_CLASSES:
        raise ValueError("walk classes are tabulated for k = 4 and 5 only")
    edge_bit: dict[tuple[int, int], int] = {}
    steps = []
    for u in range(lg.n):
        row = []
        for v, w in lg.neighbors[u]:
            if u == v:
                row.append((v, w, 0))
            else:
                key = (min(u, v), max(u, v))
                bit = edge_bit.setdefault(key, 1 << len(edge_bit))
                row.append((v, w, bit))
        steps.append(row)
    edge_of = {bit: key for key, bit in edge_bit.items()}

    # aggregate weights by (node mask, edge mask) before classifying
    acc: dict[tuple[int, int], int] = {}
    for i in range(lg.n):
        def rec(node: int, depth: int, w: int, vm: int, em: int):
            if depth == k - 1:
                for v, wv, bit in steps[node]:
                    if v == i:
                        key = (vm, em | bit)
                        acc[key] = acc.get(key, 0) + w * wv
                return
            for v, wv, bit in steps[node]:
                rec(v, depth + 1, w * wv, vm | (1 << v), em | bit)

        rec(i, 0, 1, 1 << i, 0)

    out = {name: Fraction(0) for name in WALK_CLASSES[k]}
    for (vm, em), total in acc.items():
        nodes = [v for v in range(lg.n) if vm >> v & 1]
        edges = [edge_of[b] for b in edge_of if em & b]
        name = _NAMES.get(canonical_label(nodes, edges))
        if name not in out:
            raise UnknownWalkClassError(
                f"closed {k}-walk covers an unexpected subgraph on nodes {nodes} with edges {edges}"
            )
        out[name] += total
    return {name: v / lg.n for name, v in out.items()}


def class_closed_forms(c: StructuralCensus, k: int) -> dict[str, Fraction]:
    """Per-shape walk sums predicted from the census alone (``k`` in {4, 5})."""
    n = c.n
    S1, S2, S3, S4, S5 = (Fraction(x) for x in c.S[:5])
    r = c.corr
    if k == 4:
        return {
            "single-node": S4 / n,
            "edge": (S1 + 4 * S3) / n + 4 * r["C_dd"],
            "two-chain": 2 * (S2 - S1) / n,
            "triangle": -8 * r["C_dt"],
            "quadrangle": Fraction(8 * c.Q, n),
        }
    if k == 5:
        return {
            "single-node": S5 / n,
            "edge": 5 * (S2 + S4) / n + 10 * r["C_d2d"],
            "two-chain": 5 * (S3 - 2 * S2) / n + 10 * r["C_dd"],
            "triangle": Fraction(-30 * c.Delta, n) - 10 * r["C_d2t"] - 10 * r["D_dd"],
            "quadrangle": 10 * r["C_dq"],
            "tailed-triangle": -10 * r["C_dt"] + Fraction(60 * c.Delta, n),
            "pentagon": Fraction(-10 * c.P, n),
        }
    raise ValueError("closed forms are tabulated for k = 4 and 5 only")
