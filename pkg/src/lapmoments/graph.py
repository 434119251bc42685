"""Simple undirected graphs: ingestion, generators, and matrix forms."""

from __future__ import annotations

import hashlib
import io
import struct
import warnings
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, TextIO

import numpy as np
import scipy.io

__all__ = [
    "Graph",
    "LaplacianGraph",
    "GraphFormatError",
    "DuplicateEdgeWarning",
    "parse_edge_list",
    "parse_matrix_market",
    "read_graph",
    "to_edge_list",
    "generate",
    "GENERATORS",
    "er_uniform",
    "laplacian_graph",
    "adjacency_matrix",
    "laplacian_matrix",
    "connected_components",
]


class GraphFormatError(ValueError):
    """Malformed graph input. ``line`` is the 1-based offending line, if known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"{message} at line {line}" if line is not None else message)


class DuplicateEdgeWarning(UserWarning):
    """Repeated edges were collapsed while reading a graph."""


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph on nodes ``0..n-1``.

    ``edges`` holds pairs ``(i, j)`` with ``i < j`` in sorted order;
    ``adjacency[i]`` is the sorted neighbour tuple of node ``i``.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 1:
            raise ValueError("a graph needs at least one node")
        canon = set()
        for i, j in edges:
            i, j = int(i), int(j)
            if i == j:
                raise ValueError(f"self-loop on node {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i}, {j}) out of range for n={n}")
            canon.add((i, j) if i < j else (j, i))
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for i, j in canon:
            nbrs[i].append(j)
            nbrs[j].append(i)
        return cls(n, tuple(sorted(canon)), tuple(tuple(sorted(a)) for a in nbrs))

    @classmethod
    def from_adjacency(cls, a) -> "Graph":
        """Build from a square symmetric 0/1 matrix with zero diagonal."""
        a = np.asarray(a)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("adjacency matrix must be square")
        if np.any(np.diag(a) != 0):
            raise ValueError("adjacency matrix has a nonzero diagonal (self-loop)")
        if not np.array_equal(a, a.T):
            raise ValueError("adjacency matrix must be symmetric")
        if not np.all((a == 0) | (a == 1)):
            raise ValueError("adjacency matrix must be 0/1 (unweighted)")
        i, j = np.nonzero(np.triu(a, 1))
        return cls.from_edges(a.shape[0], zip(i.tolist(), j.tolist()))

    @property
    def e(self) -> int:
        return len(self.edges)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adjacency)

    @property
    def d_max(self) -> int:
        return max(self.degrees)

    def relabel(self, perm) -> "Graph":
        """Graph with node ``i`` renamed to ``perm[i]``."""
        perm = list(perm)
        if sorted(perm) != list(range(self.n)):
            raise ValueError("perm must be a permutation of range(n)")
        return Graph.from_edges(self.n, ((perm[i], perm[j]) for i, j in self.edges))


@dataclass(frozen=True)
class LaplacianGraph:
    """Weighted loopy graph whose weighted adjacency matrix is ``L = D - A``.

    Every node ``i`` carries a self-loop of weight ``d_i``; every edge has
    weight ``-1``. ``neighbors[i]`` lists ``(j, weight)`` including the loop.
    """

    n: int
    weights: Mapping[tuple[int, int], int] = field(repr=False)
    neighbors: tuple[tuple[tuple[int, int], ...], ...] = field(repr=False, compare=False)

    def weight(self, i: int, j: int) -> int:
        return self.weights.get((i, j), 0)

    def dense(self) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=np.int64)
        for (i, j), w in self.weights.items():
            m[i, j] = w
        return m


def laplacian_graph(g: Graph) -> LaplacianGraph:
    weights: dict[tuple[int, int], int] = {}
    for i, d in enumerate(g.degrees):
        weights[(i, i)] = d
    for i, j in g.edges:
        weights[(i, j)] = -1
        weights[(j, i)] = -1
    nbrs = tuple(
        ((i, g.degrees[i]),) + tuple((j, -1) for j in g.adjacency[i]) for i in range(g.n)
    )
    return LaplacianGraph(g.n, MappingProxyType(weights), nbrs)


def adjacency_matrix(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n), dtype=np.int64)
    if g.edges:
        idx = np.array(g.edges)
        a[idx[:, 0], idx[:, 1]] = 1
        a[idx[:, 1], idx[:, 0]] = 1
    return a


def laplacian_matrix(g: Graph) -> np.ndarray:
    a = adjacency_matrix(g)
    return np.diag(a.sum(axis=1)) - a


def connected_components(g: Graph) -> tuple[int, list[int]]:
    """Number of components and per-node labels (label = smallest member)."""
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in g.edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            # keep the smaller id as root so the label is the smallest member
            parent[max(ri, rj)] = min(ri, rj)
    labels = [find(i) for i in range(g.n)]
    return len(set(labels)), labels


# -- ingestion ---------------------------------------------------------------


def _read_text(source: str | TextIO) -> str:
    return source if isinstance(source, str) else source.read()


def parse_edge_list(
    source: str | TextIO, *, one_based: bool = False, nodes: int | None = None
) -> Graph:
    """Parse ``"i j"`` lines into a :class:`Graph`.

    Lines starting with ``#`` are comments. A header line ``nodes N`` (or the
    ``nodes`` argument) fixes the node count so trailing isolated nodes are
    kept; otherwise ``n = max id + 1``. Duplicate edges collapse with a
    :class:`DuplicateEdgeWarning`; self-loops raise :class:`GraphFormatError`.
    """
    text = _read_text(source)
    declared = nodes
    seen: set[tuple[int, int]] = set()
    dupes = 0
    max_id = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0].lower() == "nodes":
            if len(parts) != 2:
                raise GraphFormatError("malformed 'nodes N' header", lineno)
            try:
                header_n = int(parts[1])
            except ValueError:
                raise GraphFormatError(f"non-integer node count {parts[1]!r}", lineno) from None
            if declared is None:
                declared = header_n
            continue
        if len(parts) != 2:
            raise GraphFormatError(f"expected two node ids, got {len(parts)} tokens", lineno)
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"non-integer token in {line!r}", lineno) from None
        if one_based:
            i, j = i - 1, j - 1
        if i < 0 or j < 0:
            raise GraphFormatError("negative node id", lineno)
        if i == j:
            raise GraphFormatError("self-loop", lineno)
        key = (i, j) if i < j else (j, i)
        if key in seen:
            dupes += 1
        seen.add(key)
        max_id = max(max_id, j, i)
    n = declared if declared is not None else max_id + 1
    if n < 1:
        raise GraphFormatError("empty edge list; declare the node count with 'nodes N'")
    if max_id >= n:
        raise GraphFormatError(f"node id {max_id} exceeds declared node count {n}")
    if dupes:
        warnings.warn(f"{dupes} duplicate edge line(s) collapsed", DuplicateEdgeWarning, stacklevel=2)
    return Graph.from_edges(n, seen)


def parse_matrix_market(source: str | TextIO) -> Graph:
    """Parse a symmetric coordinate Matrix Market file (pattern or real)."""
    text = _read_text(source)
    try:
        rows, cols, _, fmt, fld, symm = scipy.io.mminfo(io.StringIO(text))
    except Exception as exc:  # scipy raises ValueError/IndexError on bad banners
        raise GraphFormatError(f"bad Matrix Market header: {exc}", 1) from None
    if fmt != "coordinate":
        raise GraphFormatError(f"expected coordinate format, got {fmt!r}", 1)
    if fld not in ("pattern", "real", "integer"):
        raise GraphFormatError(f"unsupported field {fld!r}", 1)
    if symm != "symmetric":
        raise GraphFormatError(f"expected symmetric matrix, got {symm!r}", 1)
    if rows != cols:
        raise GraphFormatError(f"matrix must be square, got {rows}x{cols}")
    # scipy validates index ranges, but locate diagonal entries ourselves
    entry_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if not s or s.startswith("%"):
            continue
        entry_line += 1
        if entry_line == 1:
            continue  # size line
        parts = s.split()
        if len(parts) >= 2 and parts[0] == parts[1]:
            raise GraphFormatError("diagonal entry (self-loop)", lineno)
    try:
        coo = scipy.io.mmread(io.StringIO(text))
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None
    coo = coo.tocoo()
    edges = {(min(i, j), max(i, j)) for i, j in zip(coo.row.tolist(), coo.col.tolist())}
    return Graph.from_edges(rows, edges)


def read_graph(path: str, fmt: str = "auto", *, one_based: bool = False, nodes: int | None = None) -> Graph:
    """Read a graph file; ``fmt`` is ``"edges"``, ``"mtx"`` or ``"auto"`` (by extension)."""
    if fmt == "auto":
        fmt = "mtx" if str(path).endswith(".mtx") else "edges"
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if fmt == "mtx":
        return parse_matrix_market(text)
    if fmt == "edges":
        return parse_edge_list(text, one_based=one_based, nodes=nodes)
    raise ValueError(f"unknown graph format {fmt!r}")


def to_edge_list(g: Graph, header: bool = True) -> str:
    lines = [f"nodes {g.n}"] if header else []
    lines.extend(f"{i} {j}" for i, j in g.edges)
    return "\n".join(lines) + "\n"


# -- generators --------------------------------------------------------------


def er_uniform(seed: int, i: int, j: int) -> float:
    """Uniform draw in [0, 1) keyed by ``(seed, i, j)``.

    BLAKE2b over the little-endian 64-bit encodings of the key, first 8 bytes
    of the digest divided by 2**64. Order-independent and platform-stable.
    """
    key = struct.pack("<QQQ", seed & 0xFFFFFFFFFFFFFFFF, i, j)
    digest = hashlib.blake2b(key, digest_size=8).digest()
    return int.from_bytes(digest, "little") / 2.0**64


def _ring(n: int) -> Graph:
    if n < 3:
        raise ValueError("ring needs n >= 3")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def _path(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def _complete(n: int) -> Graph:
    return Graph.from_edges(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def _star(n: int) -> Graph:
    """Star on ``n`` nodes: centre 0 joined to ``1..n-1``."""
    return Graph.from_edges(n, ((0, j) for j in range(1, n)))


def _erdos_renyi(n: int, p: float, seed: int) -> Graph:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    return Graph.from_edges(
        n, ((i, j) for i in range(n) for j in range(i + 1, n) if er_uniform(seed, i, j) < p)
    )


GENERATORS = ("ring", "path", "complete", "star", "erdos_renyi")


def generate(kind: str, n: int, p: float | None = None, seed: int = 0) -> Graph:
    """Deterministic graph generators: ring, path, complete, star, erdos_renyi (alias er)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if kind == "ring":
        return _ring(n)
    if kind == "path":
        return _path(n)
    if kind == "complete":
        return _complete(n)
    if kind == "star":
        return _star(n)
    if kind in ("erdos_renyi", "er"):
        if p is None:
            raise ValueError("erdos_renyi requires p")
        return _erdos_renyi(n, p, seed)
    raise ValueError(f"unknown generator {kind!r}")
