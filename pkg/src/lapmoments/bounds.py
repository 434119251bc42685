"""Bounds on the support of a spectral density from its moments.

Given moments ``M_1..M_{2s+1}`` of a nonnegative measure, the localizing
pencil ``H(x) = R_odd - x R_even`` is positive semidefinite exactly on an
interval ``(-inf, alpha]`` and negative semidefinite on ``[beta, inf)``.
``alpha`` is an upper bound on the smallest support point and ``beta`` a
lower bound on the largest. Both are found by bisection on ``x`` with a
semidefiniteness oracle, since the problem has one scalar variable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

import numpy as np

from .census import compute_census
from .graph import Graph, connected_components, laplacian_matrix
from .moments import moments_structural, moments_trace
from .numerics import ConvergenceError, ldlt_psd, sym_eigenvalues

__all__ = [
    "HankelPair",
    "BoundResult",
    "hankel_pair",
    "localizing_matrix",
    "is_feasible",
    "alpha_bound",
    "beta_bound",
    "pencil_extremes",
    "support_bounds",
    "bound_report",
    "DEFAULT_TOL",
    "EPS_PSD",
]

DEFAULT_TOL = 1e-9
EPS_PSD = 1e-10
PENCIL_AGREEMENT = 1e-6


@dataclass(frozen=True)
class HankelPair:
    s: int
    R_even: np.ndarray
    R_odd: np.ndarray


def hankel_pair(mbar: Sequence[float], s: int, m0: float = 1.0) -> HankelPair:
    """``R_even[r, c] = M_{r+c}`` and ``R_odd[r, c] = M_{r+c+1}`` with ``M_0 = m0``."""
    if s < 1:
        raise ValueError("relaxation order s must be >= 1")
    if len(mbar) < 2 * s + 1:
        raise ValueError(f"order s={s} needs {2 * s + 1} moments, got {len(mbar)}")
    M = np.array([m0] + [float(x) for x in mbar[: 2 * s + 1]])
    idx = np.add.outer(np.arange(s + 1), np.arange(s + 1))
    return HankelPair(s, M[idx], M[idx + 1])


def localizing_matrix(x: float, hp: HankelPair) -> np.ndarray:
    return hp.R_odd - x * hp.R_even


def _scaling(hp: HankelPair) -> np.ndarray:
    d = np.diag(hp.R_even).copy()
    d[d <= 0] = 1.0
    return 1.0 / np.sqrt(d)


def _whitener(hp: HankelPair, rank_tol: float = 1e-9) -> tuple[np.ndarray, np.ndarray | None]:
    """Congruences used before every semidefiniteness test.

    Returns ``(T, D)``. ``T`` maps onto the range of ``R_even`` with
    ``T R_even T^T = I``, so pivots of ``T H(x) T^T`` move at unit rate in
    ``x``. ``D`` is the plain diagonal scaling, returned only when ``R_even``
    is rank-deficient (atomic spectra sit on the cone boundary); the full
    matrix must then pass as well, which rules out mass hiding in the null
    space.
    """
    d = np.diag(_scaling(hp))
    re = d @ hp.R_even @ d
    w, u = np.linalg.eigh(0.5 * (re + re.T))
    keep = w > rank_tol * max(float(w[-1]), 1.0)
    t = (u[:, keep] / np.sqrt(w[keep])).T @ d
    return t, (None if keep.all() else d)


def is_feasible(
    x: float, hp: HankelPair, sign: int = 1, eps: float = EPS_PSD, transform=None
) -> bool:
    """Whether ``sign * H(x)`` is positive semidefinite.

    The pivoted LDL^T test runs on congruent copies of ``H(x)`` (see
    :func:`_whitener`); congruence preserves semidefiniteness and keeps the
    pivot threshold meaningful when moments span many orders of magnitude.
    """
    t, d = _whitener(hp) if transform is None else transform
    h = sign * localizing_matrix(x, hp)
    ht = t @ h @ t.T
    if not ldlt_psd(0.5 * (ht + ht.T), eps)[0]:
        return False
    return d is None or ldlt_psd(d @ h @ d, eps)[0]


def _cap(width: float, tol: float) -> int:
    return 10 * max(1, math.ceil(math.log2(max(width, tol) / tol)))


@dataclass
class _Search:
    value: float
    iterations: int
    bracket: tuple[float, float]


def _alpha_search(hp: HankelPair, tol: float, eps: float) -> _Search:
    m1 = float(hp.R_odd[0, 0])
    t = _whitener(hp)
    if not is_feasible(0.0, hp, 1, eps, t):
        raise ValueError("R_odd is not positive semidefinite; not moments of a measure on [0, inf)")
    # H(x)[0,0] = M_1 - x, so nothing above M_1 is feasible
    if is_feasible(m1, hp, 1, eps, t):
        return _Search(m1, 0, (m1, m1))
    lo, hi = 0.0, m1
    cap = _cap(hi - lo, tol)
    it = 0
    while hi - lo > tol:
        it += 1
        if it > cap:
            raise ConvergenceError(f"alpha bisection exceeded {cap} steps, bracket [{lo}, {hi}]")
        mid = 0.5 * (lo + hi)
        if is_feasible(mid, hp, 1, eps, t):
            lo = mid
        else:
            hi = mid
    return _Search(lo, it, (lo, hi))


def _beta_search(hp: HankelPair, tol: float, eps: float, upper: float | None) -> _Search:
    m1 = float(hp.R_odd[0, 0])
    t = _whitener(hp)
    # -H(x)[0,0] = x - M_1, so nothing below M_1 is feasible
    if is_feasible(m1, hp, -1, eps, t):
        return _Search(m1, 0, (m1, m1))
    if upper is not None:
        hi = float(upper)
        if not is_feasible(hi, hp, -1, eps, t):
            raise ConvergenceError(f"upper cap {hi} is not feasible for the radius bound")
    else:
        hi = max(2.0 * m1, 1.0)
        for _ in range(200):
            if is_feasible(hi, hp, -1, eps, t):
                break
            hi *= 2.0
        else:
            raise ConvergenceError("no feasible upper cap found for the radius bound")
    lo = m1
    cap = _cap(hi - lo, tol)
    it = 0
    while hi - lo > tol:
        it += 1
        if it > cap:
            raise ConvergenceError(f"beta bisection exceeded {cap} steps, bracket [{lo}, {hi}]")
        mid = 0.5 * (lo + hi)
        if is_feasible(mid, hp, -1, eps, t):
            hi = mid
        else:
            lo = mid
    return _Search(hi, it, (lo, hi))


def alpha_bound(mbar: Sequence[float], s: int = 2, tol: float = DEFAULT_TOL, eps: float = EPS_PSD) -> float:
    """Largest ``x`` with ``H_s(x) >= 0``: an upper bound on the smallest support point."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    return _alpha_search(hankel_pair(mbar, s), tol, eps).value


def beta_bound(
    mbar: Sequence[float],
    s: int = 2,
    tol: float = DEFAULT_TOL,
    eps: float = EPS_PSD,
    upper: float | None = None,
) -> float:
    """Smallest ``x`` with ``-H_s(x) >= 0``: a lower bound on the largest support point.

    ``upper`` must be a point known to be feasible (e.g. above every
    eigenvalue); without it the cap is found by doubling.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    return _beta_search(hankel_pair(mbar, s), tol, eps, upper).value


def pencil_extremes(hp: HankelPair) -> tuple[float, float] | None:
    """Extreme generalized eigenvalues of ``(R_odd, R_even)``.

    Returns ``None`` unless ``R_even`` is numerically positive definite.
    """
    t, d = _whitener(hp)
    if d is not None:
        return None
    g = t @ hp.R_odd @ t.T
    eig = sym_eigenvalues(0.5 * (g + g.T))
    return float(eig[0]), float(eig[-1])


@dataclass
class BoundResult:
    s: int
    alpha: float
    beta: float
    tol: float
    iterations: dict[str, int] = field(default_factory=dict)
    bracket: dict[str, list[float]] = field(default_factory=dict)
    pencil: list[float] | None = None
    lambda2: float | None = None
    lambdaN: float | None = None
    warnings: list[dict[str, str]] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {
            "s": self.s,
            "alpha": self.alpha,
            "beta": self.beta,
            "tol": self.tol,
            "lambda2": self.lambda2,
            "lambdaN": self.lambdaN,
            "iterations": dict(self.iterations),
            "bracket": {k: list(v) for k, v in self.bracket.items()},
            "pencil": None if self.pencil is None else list(self.pencil),
            "warnings": [dict(w) for w in self.warnings],
        }

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "BoundResult":
        return cls(
            s=int(d["s"]),
            alpha=float(d["alpha"]),
            beta=float(d["beta"]),
            tol=float(d["tol"]),
            iterations={k: int(v) for k, v in d.get("iterations", {}).items()},
            bracket={k: [float(x) for x in v] for k, v in d.get("bracket", {}).items()},
            pencil=None if d.get("pencil") is None else [float(x) for x in d["pencil"]],
            lambda2=d.get("lambda2"),
            lambdaN=d.get("lambdaN"),
            warnings=[dict(w) for w in d.get("warnings", [])],
        )


def support_bounds(
    mbar: Sequence[float],
    s: int = 2,
    tol: float = DEFAULT_TOL,
    upper: float | None = None,
    eps: float = EPS_PSD,
    m0: float = 1.0,
) -> BoundResult:
    """Both bounds plus the generalized-eigenvalue cross-check."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    hp = hankel_pair(mbar, s, m0)
    if not np.any(hp.R_odd):
        # all moments vanish: the measure is an atom at zero
        return BoundResult(s, 0.0, 0.0, tol, {"alpha": 0, "beta": 0}, {"alpha": [0.0, 0.0], "beta": [0.0, 0.0]})
    a = _alpha_search(hp, tol, eps)
    b = _beta_search(hp, tol, eps, upper)
    res = BoundResult(
        s,
        a.value,
        b.value,
        tol,
        {"alpha": a.iterations, "beta": b.iterations},
        {"alpha": list(a.bracket), "beta": list(b.bracket)},
    )
    ext = pencil_extremes(hp)
    if ext is not None:
        res.pencil = list(ext)
        if abs(ext[0] - a.value) > PENCIL_AGREEMENT or abs(ext[1] - b.value) > PENCIL_AGREEMENT:
            res.warnings.append(
                {
                    "code": "pencil_mismatch",
                    "message": f"bisection ({a.value}, {b.value}) vs pencil eigenvalues {ext}",
                }
            )
    return res


def bound_report(
    g: Graph,
    s: int = 2,
    tol: float = DEFAULT_TOL,
    *,
    oracle_moments: bool = False,
    exact: bool = False,
    include_zero: bool = False,
    backend: str = "jacobi",
) -> BoundResult:
    """Census -> moments -> scaled moments -> bounds for one graph.

    Structural moments stop at order five, so ``s > 2`` requires
    ``oracle_moments`` (exact traces of ``L^k``). ``include_zero`` bounds the
    full spectral distribution (mass 1, zero eigenvalue included) instead of
    the nontrivial part; only ``beta`` keeps its guarantee in that mode.
    """
    if g.n < 2:
        raise ValueError("bounds need a graph with n >= 2")
    K = 2 * s + 1
    if oracle_moments:
        ms = moments_trace(laplacian_matrix(g), K)
    else:
        if K > 5:
            raise ValueError(f"order s={s} needs {K} moments; structural formulas give 5 (use oracle moments)")
        ms = moments_structural(compute_census(g))
    seq = ms.m if include_zero else ms.scaled
    res = support_bounds(seq, s, tol, upper=2 * g.d_max + 1)
    ncomp, _ = connected_components(g)
    if ncomp > 1:
        res.warnings.append(
            {
                "code": "disconnected",
                "message": f"graph has {ncomp} components; lambda2 = 0 and the gap bound says nothing",
            }
        )
    if exact:
        eig = sym_eigenvalues(laplacian_matrix(g), backend=backend)
        res.lambda2 = float(eig[1])
        res.lambdaN = float(eig[-1])
    return res
