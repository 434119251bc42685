"""The aggregate result the CLI prints: graph summary, census, moments,
bounds, optional spectrum, and coded warnings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Any, Mapping

from .bounds import BoundResult
from .census import CORRELATION_NAMES, StructuralCensus
from .graph import Graph, connected_components
from .moments import MomentSequence

__all__ = ["GraphSummary", "AnalysisReport", "load_schema", "WARNING_CODES"]

WARNING_CODES = ("disconnected", "duplicate_edges", "pencil_mismatch", "gap_not_certified")


@dataclass(frozen=True)
class GraphSummary:
    n: int
    e: int
    components: int
    d_max: int

    @classmethod
    def of(cls, g: Graph) -> "GraphSummary":
        return cls(g.n, g.e, connected_components(g)[0], g.d_max)

    def to_dict(self) -> dict[str, int]:
        return {"n": self.n, "e": self.e, "components": self.components, "d_max": self.d_max}

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "GraphSummary":
        return cls(int(d["n"]), int(d["e"]), int(d["components"]), int(d["d_max"]))


@dataclass
class AnalysisReport:
    command: str
    graph: GraphSummary | None = None
    census: StructuralCensus | None = None
    moments: MomentSequence | None = None
    oracle: MomentSequence | None = None
    verdict: str | None = None
    bounds: list[BoundResult] = field(default_factory=list)
    spectrum: list[float] | None = None
    warnings: list[dict[str, str]] = field(default_factory=list)

    def warn(self, code: str, message: str) -> None:
        if code not in WARNING_CODES:
            raise ValueError(f"unregistered warning code {code!r}")
        if not any(w["code"] == code and w["message"] == message for w in self.warnings):
            self.warnings.append({"code": code, "message": message})

    def all_warnings(self) -> list[dict[str, str]]:
        """Report-level warnings followed by those attached to each bound."""
        out = list(self.warnings)
        for b in self.bounds:
            out.extend(w for w in b.warnings if w not in out)
        return out

    def to_dict(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "graph": None if self.graph is None else self.graph.to_dict(),
            "census": None if self.census is None else self.census.to_dict(),
            "moments": None if self.moments is None else self.moments.to_dict(),
            "oracle": None if self.oracle is None else self.oracle.to_dict(),
            "verdict": self.verdict,
            "bounds": [_bound_dict(b) for b in self.bounds],
            "spectrum": None if self.spectrum is None else list(self.spectrum),
            "warnings": [dict(w) for w in self.warnings],
        }

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "AnalysisReport":
        def opt(key, conv):
            v = d.get(key)
            return None if v is None else conv(v)

        return cls(
            command=d["command"],
            graph=opt("graph", GraphSummary.from_dict),
            census=opt("census", StructuralCensus.from_dict),
            moments=opt("moments", MomentSequence.from_dict),
            oracle=opt("oracle", MomentSequence.from_dict),
            verdict=d.get("verdict"),
            bounds=[BoundResult.from_dict(b) for b in d.get("bounds", [])],
            spectrum=opt("spectrum", lambda v: [float(x) for x in v]),
            warnings=[dict(w) for w in d.get("warnings", [])],
        )

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_json(cls, text: str) -> "AnalysisReport":
        return cls.from_dict(json.loads(text))

    def format_text(self) -> str:
        rows: list[tuple[str, str]] = []
        if self.graph is not None:
            g = self.graph
            rows += [("n", str(g.n)), ("edges", str(g.e)), ("components", str(g.components)), ("d_max", str(g.d_max))]
        if self.census is not None:
            c = self.census
            rows += [(f"S{p}", str(v)) for p, v in enumerate(c.S, start=1)]
            rows += [("Delta", str(c.Delta)), ("Q", str(c.Q)), ("P", str(c.P))]
            rows += [(k, _fmt(c.corr[k])) for k in CORRELATION_NAMES]
        if self.moments is not None:
            rows += [(f"m{k}", _fmt(v)) for k, v in enumerate(self.moments.m, start=1)]
        if self.oracle is not None:
            rows += [(f"trace m{k}", _fmt(v)) for k, v in enumerate(self.oracle.m, start=1)]
        if self.verdict is not None:
            rows.append(("verdict", self.verdict))
        for b in self.bounds:
            rows += [(f"alpha (s={b.s})", f"{b.alpha:.10g}"), (f"beta (s={b.s})", f"{b.beta:.10g}")]
            if b.lambda2 is not None:
                rows += [
                    ("lambda2", f"{b.lambda2:.10g}"),
                    ("lambda_n", f"{b.lambdaN:.10g}"),
                    ("gap slack", f"{b.alpha - b.lambda2:.3g}"),
                    ("radius slack", f"{b.lambdaN - b.beta:.3g}"),
                ]
        if self.spectrum is not None:
            rows.append(("eigenvalues", " ".join(f"{x:.10g}" for x in self.spectrum)))
        for w in self.all_warnings():
            rows.append(("warning", f"[{w['code']}] {w['message']}"))
        width = max((len(k) for k, _ in rows), default=0)
        return "\n".join(f"{k:<{width}}  {v}" for k, v in rows)


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x} (~{float(x):.10g})"
    if isinstance(x, int):
        return str(x)
    return f"{x:.10g}"


def _bound_dict(b: BoundResult) -> dict[str, Any]:
    d = b.to_dict()
    if b.lambda2 is not None and b.lambdaN is not None:
        d["slack"] = {"gap": b.alpha - b.lambda2, "radius": b.lambdaN - b.beta}
    return d


def load_schema() -> dict[str, Any]:
    """JSON schema for ``AnalysisReport.to_dict()`` output."""
    text = resources.files("lapmoments").joinpath("data/report_schema.json").read_text(encoding="utf-8")
    return json.loads(text)
