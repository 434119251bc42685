"""Input validation helpers shared by the estimators and the CLI."""

from __future__ import annotations

from numbers import Integral, Real
from typing import Iterable

import numpy as np

from .graph import Graph

__all__ = ["check_graph", "check_graphs", "check_moments", "check_order", "check_tol"]


def check_graph(obj) -> Graph:
    """Coerce ``obj`` to a :class:`Graph`.

    Accepts a ``Graph`` or a square symmetric 0/1 adjacency array (dense
    or anything with ``toarray()``).
    """
    if isinstance(obj, Graph):
        return obj
    if hasattr(obj, "toarray"):
        obj = obj.toarray()
    try:
        arr = np.asarray(obj)
    except Exception as exc:  # ragged input and the like
        raise TypeError(f"cannot interpret {type(obj).__name__} as a graph") from exc
    if arr.ndim != 2:
        raise TypeError(f"expected a Graph or a 2-d adjacency array, got ndim={arr.ndim}")
    return Graph.from_adjacency(arr)


def check_graphs(X) -> list[Graph]:
    """A single graph or an iterable of graphs, as a non-empty list."""
    if isinstance(X, Graph):
        return [X]
    if isinstance(X, np.ndarray) and X.ndim == 2:
        return [check_graph(X)]
    if not isinstance(X, Iterable):
        raise TypeError("expected a graph or a sequence of graphs")
    graphs = [check_graph(x) for x in X]
    if not graphs:
        raise ValueError("empty collection of graphs")
    return graphs


def check_moments(m, min_length: int = 1) -> np.ndarray:
    arr = np.asarray([float(x) for x in m], dtype=float)
    if arr.ndim != 1 or arr.size < min_length:
        raise ValueError(f"need at least {min_length} moments, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("moments must be finite")
    return arr


def check_order(s) -> int:
    if not isinstance(s, Integral) or isinstance(s, bool) or s < 1:
        raise ValueError(f"relaxation order must be a positive integer, got {s!r}")
    return int(s)


def check_tol(tol) -> float:
    if not isinstance(tol, Real) or not tol > 0:
        raise ValueError(f"tolerance must be a positive number, got {tol!r}")
    return float(tol)
