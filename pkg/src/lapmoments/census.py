"""Local structural measurements: degree power sums, short-cycle counts
touching each node, and the degree/cycle correlation terms."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping

from .graph import Graph
from .numerics import check_wide

__all__ = [
    "CORRELATION_NAMES",
    "StructuralCensus",
    "power_sums",
    "common_neighbors",
    "cycle_census",
    "correlation_terms",
    "compute_census",
    "rational_to_json",
    "rational_from_json",
]

CORRELATION_NAMES = ("C_dd", "C_d2d", "C_dt", "C_d2t", "C_dq", "D_dd")


def rational_to_json(x: Fraction | int) -> dict[str, int]:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


def rational_from_json(obj: Any) -> Fraction:
    """Accept ``{"num", "den"}``, an int, a decimal/ratio string, or a float.

    Floats go through their shortest repr so ``42.58`` means 4258/100.
    """
    if isinstance(obj, Mapping):
        return Fraction(int(obj["num"]), int(obj["den"]))
    if isinstance(obj, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(obj, (int, str)):
        return Fraction(obj)
    if isinstance(obj, float):
        return Fraction(repr(obj))
    raise TypeError(f"cannot read a rational from {obj!r}")


@dataclass(frozen=True)
class StructuralCensus:
    """Everything the closed-form moments need.

    ``S[p-1]`` is the degree power sum ``S_p``. ``corr`` maps the names in
    :data:`CORRELATION_NAMES` to exact rationals. Per-node cycle counts are
    ``None`` when the census was supplied as printed aggregates.
    """

    n: int
    S: tuple[int, ...]
    Delta: int
    Q: int
    P: int
    corr: Mapping[str, Fraction]
    t: tuple[int, ...] | None = field(default=None, repr=False)
    q: tuple[int, ...] | None = field(default=None, repr=False)
    p: tuple[int, ...] | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("census needs n >= 1")
        if len(self.S) < 5:
            raise ValueError("census needs power sums S_1..S_5")
        missing = set(CORRELATION_NAMES) - set(self.corr)
        if missing:
            raise ValueError(f"census is missing correlation terms {sorted(missing)}")

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "n": self.n,
            "S": list(self.S),
            "Delta": self.Delta,
            "Q": self.Q,
            "P": self.P,
            "corr": {k: rational_to_json(self.corr[k]) for k in CORRELATION_NAMES},
        }
        for name in ("t", "q", "p"):
            vals = getattr(self, name)
            out[name] = None if vals is None else list(vals)
        return out

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "StructuralCensus":
        def opt(name):
            v = d.get(name)
            return None if v is None else tuple(int(x) for x in v)

        return cls(
            n=int(d["n"]),
            S=tuple(int(x) for x in d["S"]),
            Delta=int(d["Delta"]),
            Q=int(d["Q"]),
            P=int(d["P"]),
            corr={k: rational_from_json(d["corr"][k]) for k in CORRELATION_NAMES},
            t=opt("t"),
            q=opt("q"),
            p=opt("p"),
        )


def power_sums(g: Graph, pmax: int = 5) -> tuple[int, ...]:
    """``(S_1, ..., S_pmax)`` with ``S_p = sum_i d_i**p``."""
    if pmax < 1:
        raise ValueError("pmax must be >= 1")
    degs = g.degrees
    return tuple(check_wide(sum(d**k for d in degs), f"S_{k}") for k in range(1, pmax + 1))


def common_neighbors(g: Graph, i: int, j: int) -> int:
    """``|N_i & N_j|`` by merging the two sorted neighbour lists."""
    if not (0 <= i < g.n and 0 <= j < g.n):
        raise IndexError(f"node out of range for n={g.n}")
    if i == j:
        raise ValueError("common_neighbors needs two distinct nodes")
    a, b = g.adjacency[i], g.adjacency[j]
    x = y = count = 0
    while x < len(a) and y < len(b):
        if a[x] == b[y]:
            count += 1
            x += 1
            y += 1
        elif a[x] < b[y]:
            x += 1
        else:
            y += 1
    return count


def _masks(g: Graph) -> list[int]:
    return [sum(1 << j for j in nb) for nb in g.adjacency]


def _bits(m: int):
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


@dataclass(frozen=True)
class CycleCensus:
    t: tuple[int, ...]
    Delta: int
    q: tuple[int, ...]
    Q: int
    p: tuple[int, ...]
    P: int


def cycle_census(g: Graph) -> CycleCensus:
    """Triangles, quadrangles and pentagons touching each node.

    Every cycle is enumerated once from its smallest node ``s``; of the two
    cycle neighbours of ``s`` the smaller one fixes the direction.
    """
    n = g.n
    nb = _masks(g)
    t = [0] * n
    q = [0] * n
    p = [0] * n
    for s in range(n):
        upper = ~((1 << (s + 1)) - 1)  # nodes > s
        first = nb[s] & upper
        firsts = list(_bits(first))
        for x, a in enumerate(firsts):
            bit_a = 1 << a
            # triangles s-a-b with a < b
            tri = nb[a] & first & ~((1 << (a + 1)) - 1)
            k = tri.bit_count()
            if k:
                t[s] += k
                t[a] += k
                for b in _bits(tri):
                    t[b] += 1
            for d in firsts[x + 1 :]:
                bit_d = 1 << d
                # quadrangles s-a-c-d
                opp = nb[a] & nb[d] & upper
                k = opp.bit_count()
                if k:
                    q[s] += k
                    q[a] += k
                    q[d] += k
                    for c in _bits(opp):
                        q[c] += 1
                # pentagons s-a-b-c-d
                bside = nb[a] & upper & ~bit_d
                cside = nb[d] & upper & ~bit_a
                total = 0
                for b in _bits(bside):
                    k = (nb[b] & cside).bit_count()
                    p[b] += k
                    total += k
                if total:
                    for c in _bits(cside):
                        p[c] += (nb[c] & bside).bit_count()
                    p[s] += total
                    p[a] += total
                    p[d] += total
    return CycleCensus(
        tuple(t), sum(t) // 3, tuple(q), sum(q) // 4, tuple(p), sum(p) // 5
    )


def correlation_terms(g: Graph, t, q) -> dict[str, Fraction]:
    """The six degree/cycle correlation terms as exact rationals.

    ``C_dd`` and ``D_dd`` sum over unordered edges; ``C_d2d`` averages
    ``d_i^2 d_j`` over both orientations of every edge.
    """
    n = g.n
    d = g.degrees
    nb = _masks(g)
    dd = d2d = ddn = 0
    for i, j in g.edges:
        dd += d[i] * d[j]
        d2d += d[i] * d[i] * d[j] + d[j] * d[j] * d[i]
        ddn += d[i] * d[j] * (nb[i] & nb[j]).bit_count()
    dt = sum(di * ti for di, ti in zip(d, t))
    d2t = sum(di * di * ti for di, ti in zip(d, t))
    dq = sum(di * qi for di, qi in zip(d, q))
    return {
        "C_dd": Fraction(dd, n),
        "C_d2d": Fraction(d2d, 2 * n),
        "C_dt": Fraction(dt, n),
        "C_d2t": Fraction(d2t, n),
        "C_dq": Fraction(dq, n),
        "D_dd": Fraction(ddn, n),
    }


def compute_census(g: Graph) -> StructuralCensus:
    cyc = cycle_census(g)
    return StructuralCensus(
        n=g.n,
        S=power_sums(g, 5),
        Delta=cyc.Delta,
        Q=cyc.Q,
        P=cyc.P,
        corr=correlation_terms(g, cyc.t, cyc.q),
        t=cyc.t,
        q=cyc.q,
        p=cyc.p,
    )
