"""Laplacian spectral moments: closed forms from a census, exact trace
oracles, and the rescaling to the nontrivial part of the spectrum."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, Mapping, Sequence

import numpy as np

from .census import StructuralCensus, rational_from_json, rational_to_json
from .numerics import int_power_traces

__all__ = [
    "MomentSequence",
    "moments_structural",
    "moments_trace",
    "moments_from_spectrum",
    "scale_nontrivial",
    "MAX_STRUCTURAL_ORDER",
]

MAX_STRUCTURAL_ORDER = 5


@dataclass(frozen=True)
class MomentSequence:
    """Moments ``m_1..m_K`` of a Laplacian on ``n`` nodes.

    Values are :class:`~fractions.Fraction` when exact, floats otherwise.
    """

    n: int
    m: tuple

    @property
    def K(self) -> int:
        return len(self.m)

    @property
    def exact(self) -> bool:
        return all(isinstance(x, (int, Fraction)) for x in self.m)

    @cached_property
    def scaled(self) -> tuple:
        return scale_nontrivial(self)

    def as_floats(self) -> np.ndarray:
        return np.array([float(x) for x in self.m])

    def to_dict(self) -> dict[str, Any]:
        def enc(x):
            return rational_to_json(x) if isinstance(x, (int, Fraction)) else float(x)

        return {
            "n": self.n,
            "moments": [enc(x) for x in self.m],
            "scaled": [enc(x) for x in self.scaled] if self.n >= 2 else None,
        }

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "MomentSequence":
        return cls(
            int(d["n"]),
            tuple(x if isinstance(x, float) else rational_from_json(x) for x in d["moments"]),
        )


def moments_structural(c: StructuralCensus) -> MomentSequence:
    """First five moments from degree power sums, cycle totals and correlations."""
    n = c.n
    S1, S2, S3, S4, S5 = c.S[:5]
    r = c.corr
    m1 = Fraction(S1, n)
    m2 = Fraction(S1 + S2, n)
    m3 = Fraction(3 * S2 + S3 - 6 * c.Delta, n)
    m4 = Fraction(-S1 + 2 * S2 + 4 * S3 + S4 + 8 * c.Q, n) + 4 * r["C_dd"] - 8 * r["C_dt"]
    m5 = Fraction(-5 * S2 + 5 * S3 + 5 * S4 + S5 + 30 * c.Delta - 10 * c.P, n) + 10 * (
        r["C_dd"] + r["C_d2d"] - r["C_dt"] - r["C_d2t"] + r["C_dq"] - r["D_dd"]
    )
    return MomentSequence(n, (m1, m2, m3, m4, m5))


def moments_trace(L, K: int = 5) -> MomentSequence:
    """``m_k = trace(L^k) / n`` for ``k = 1..K``, in exact integer arithmetic."""
    if K < 1:
        raise ValueError("K must be >= 1")
    n = np.asarray(L).shape[0]
    return MomentSequence(n, tuple(Fraction(t, n) for t in int_power_traces(L, K)))


def moments_from_spectrum(eigs: Sequence[float], K: int = 5) -> MomentSequence:
    lam = np.asarray(eigs, dtype=float)
    return MomentSequence(lam.size, tuple(float(np.mean(lam**k)) for k in range(1, K + 1)))


def scale_nontrivial(ms: MomentSequence) -> tuple:
    """Moments of the spectrum with the zero eigenvalue removed: ``n m_k / (n-1)``."""
    if ms.n < 2:
        raise ValueError("nontrivial moments need n >= 2")
    if ms.exact:
        return tuple(Fraction(ms.n, ms.n - 1) * x for x in ms.m)
    return tuple(ms.n * float(x) / (ms.n - 1) for x in ms.m)
