from __future__ import annotations

import json

import jsonschema
import pytest
from hypothesis import given

from lapmoments.bounds import bound_report
from lapmoments.census import compute_census
from lapmoments.graph import generate, laplacian_matrix
from lapmoments.moments import MomentSequence, moments_structural, moments_trace
from lapmoments.report import WARNING_CODES, AnalysisReport, GraphSummary, load_schema
from strategies import graphs


def full_report(g) -> AnalysisReport:
    rep = AnalysisReport("bounds", graph=GraphSummary.of(g))
    rep.census = compute_census(g)
    rep.moments = moments_structural(rep.census)
    rep.oracle = moments_trace(laplacian_matrix(g), 5)
    rep.verdict = "exact match"
    rep.bounds.append(bound_report(g, exact=True))
    rep.spectrum = [0.0, 1.0]
    if rep.graph.components > 1:
        rep.warn("disconnected", "x")
    return rep


class TestReport:
    @given(graphs(min_n=2, max_n=9))
    def test_round_trip_and_schema(self, g):
        rep = full_report(g)
        d = json.loads(rep.to_json())
        jsonschema.validate(d, load_schema())
        back = AnalysisReport.from_dict(d)
        assert back.to_dict() == rep.to_dict()
        assert back.census == rep.census and back.moments == rep.moments

    def test_minimal_report(self):
        rep = AnalysisReport("spectrum", spectrum=[0.0, 2.0])
        jsonschema.validate(rep.to_dict(), load_schema())
        assert AnalysisReport.from_json(rep.to_json()).spectrum == [0.0, 2.0]

    def test_float_moments(self):
        rep = AnalysisReport("bounds", moments=MomentSequence(98, (3.571, 20.83, 147.33, 1155.5, 9686.6)))
        jsonschema.validate(rep.to_dict(), load_schema())
        assert AnalysisReport.from_json(rep.to_json()).moments == rep.moments

    def test_warning_codes_enforced(self):
        rep = AnalysisReport("census")
        rep.warn("disconnected", "a")
        rep.warn("disconnected", "a")
        assert rep.warnings == [{"code": "disconnected", "message": "a"}]
        with pytest.raises(ValueError):
            rep.warn("oops", "b")

    def test_schema_lists_every_code(self):
        schema = load_schema()
        assert tuple(schema["$defs"]["warning"]["properties"]["code"]["enum"]) == WARNING_CODES

    def test_schema_rejects_junk(self):
        with pytest.raises(jsonschema.ValidationError):
            jsonschema.validate({"command": "census"}, load_schema())

    def test_text_is_aligned(self):
        text = full_report(generate("ring", 12)).format_text()
        lines = text.splitlines()
        width = max(len(line.split("  ")[0]) for line in lines)
        assert len(lines) > 10 and "gap slack" in text
        # every value starts in the same column
        assert all(line[width : width + 2] == "  " and line[width + 2] != " " for line in lines)
        assert "verdict" in text and "exact match" in text
