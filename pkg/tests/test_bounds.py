from __future__ import annotations

import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import connected_family
from lapmoments.bounds import (
    BoundResult,
    alpha_bound,
    beta_bound,
    bound_report,
    hankel_pair,
    is_feasible,
    localizing_matrix,
    pencil_extremes,
    support_bounds,
)
from lapmoments.graph import Graph, generate, laplacian_matrix
from lapmoments.moments import moments_trace
from lapmoments.numerics import ConvergenceError, sym_eigenvalues

R12_SCALED = [12 / 11 * x for x in (2, 6, 20, 70, 252)]


def atoms_moments(points, weights, K):
    p, w = np.asarray(points, float), np.asarray(weights, float)
    return [float(np.sum(w * p**k)) for k in range(1, K + 1)]


class TestHankel:
    def test_layout(self):
        hp = hankel_pair([1, 2, 3, 4, 5], 2)
        assert hp.R_even.tolist() == [[1, 1, 2], [1, 2, 3], [2, 3, 4]]
        assert hp.R_odd.tolist() == [[1, 2, 3], [2, 3, 4], [3, 4, 5]]

    def test_too_few_moments(self):
        with pytest.raises(ValueError):
            hankel_pair([1, 2, 3, 4], 2)
        with pytest.raises(ValueError):
            hankel_pair([1, 2, 3], 0)

    @given(st.floats(-50, 50), st.floats(-50, 50))
    def test_localizing_matrix_is_affine(self, x, y):
        hp = hankel_pair(R12_SCALED, 2)
        lhs = localizing_matrix(0.5 * (x + y), hp)
        rhs = 0.5 * (localizing_matrix(x, hp) + localizing_matrix(y, hp))
        np.testing.assert_allclose(lhs, rhs, rtol=1e-12, atol=1e-9)

    def test_corner_entry(self):
        hp = hankel_pair(R12_SCALED, 2)
        assert localizing_matrix(0.7, hp)[0, 0] == pytest.approx(R12_SCALED[0] - 0.7)


class TestFeasibility:
    def test_monotone_on_grid(self):
        hp = hankel_pair(R12_SCALED, 2)
        a, b = alpha_bound(R12_SCALED), beta_bound(R12_SCALED)
        xs = np.linspace(-2, 8, 401)
        psd = [is_feasible(x, hp, 1) for x in xs]
        nsd = [is_feasible(x, hp, -1) for x in xs]
        # feasible sets are (-inf, alpha] and [beta, inf)
        assert all(p == (x <= a + 1e-9) for x, p in zip(xs, psd) if abs(x - a) > 1e-6)
        assert all(q == (x >= b - 1e-9) for x, q in zip(xs, nsd) if abs(x - b) > 1e-6)

    @given(st.lists(st.floats(0.05, 20), min_size=4, max_size=9, unique=True))
    def test_monotone_random_measures(self, pts):
        m = atoms_moments(pts, np.full(len(pts), 1 / len(pts)), 5)
        hp = hankel_pair(m, 2)
        res = support_bounds(m, 2)
        for x in np.linspace(0, max(pts) * 1.2, 60):
            if abs(x - res.alpha) > 1e-5:
                assert is_feasible(x, hp, 1) == (x < res.alpha)
            if abs(x - res.beta) > 1e-5:
                assert is_feasible(x, hp, -1) == (x > res.beta)

    @given(st.lists(st.floats(0.05, 20), min_size=4, max_size=9, unique=True))
    def test_inner_bounds_on_measures(self, pts):
        m = atoms_moments(pts, np.full(len(pts), 1 / len(pts)), 5)
        res = support_bounds(m, 2)
        assert min(pts) <= res.alpha + 1e-6
        assert res.beta <= max(pts) + 1e-6
        assert res.alpha <= m[0] + 1e-12 <= res.beta + 2e-12

    def test_not_a_measure(self):
        with pytest.raises(ValueError, match="positive semidefinite"):
            alpha_bound([1.0, -5.0, 1.0, 1.0, 1.0])


class TestAtomic:
    @pytest.mark.parametrize(
        "g, lo, hi",
        [(generate("complete", 2), 2, 2), (generate("complete", 3), 3, 3), (generate("complete", 5), 5, 5)]
        + [(generate("star", m + 1), 1 if m > 1 else 2, m + 1) for m in range(1, 7)],
        ids=["K2", "K3", "K5"] + [f"K1,{m}" for m in range(1, 7)],
    )
    def test_recovery(self, g, lo, hi):
        r = bound_report(g)
        assert r.alpha == pytest.approx(lo, abs=1e-6)
        assert r.beta == pytest.approx(hi, abs=1e-6)

    def test_zero_moments(self):
        r = support_bounds([0.0] * 5, 2)
        assert (r.alpha, r.beta) == (0.0, 0.0)


class TestRing:
    def test_nontrivial_bounds(self, ring12):
        r = bound_report(ring12, exact=True)
        assert r.lambda2 == pytest.approx(2 - math.sqrt(3), abs=1e-10)
        assert r.lambdaN == pytest.approx(4, abs=1e-10)
        assert r.lambda2 <= r.alpha and r.beta <= r.lambdaN
        assert r.alpha == pytest.approx(0.4348633, abs=1e-6)
        assert r.beta == pytest.approx(3.7463172, abs=1e-6)

    def test_full_measure_mode(self, ring12):
        # bounding the full distribution (atom at 0 kept) gives the Gauss nodes 2 -+ sqrt(3)
        r = bound_report(ring12, include_zero=True)
        assert r.alpha == pytest.approx(2 - math.sqrt(3), abs=1e-6)
        assert r.beta == pytest.approx(2 + math.sqrt(3), abs=1e-6)

    def test_two_rings_match(self, ring12, two_c6):
        a, b = bound_report(ring12), bound_report(two_c6, exact=True)
        assert abs(a.alpha - b.alpha) <= 1e-9 and abs(a.beta - b.beta) <= 1e-9
        assert b.lambda2 == pytest.approx(0, abs=1e-10)
        assert [w["code"] for w in b.warnings] == ["disconnected"]


class TestValidity:
    @pytest.mark.parametrize("g", connected_family(40, 20, seed0=41), ids=lambda g: f"n{g.n}e{g.e}")
    def test_random_connected(self, g):
        r2 = bound_report(g, exact=True)
        r3 = bound_report(g, 3, oracle_moments=True)
        assert r2.lambda2 <= r2.alpha + 1e-6
        assert r2.beta <= r2.lambdaN + 1e-6
        assert r3.alpha <= r2.alpha + 1e-6
        assert r3.beta >= r2.beta - 1e-6
        assert not r2.warnings

    def test_pencil_cross_check(self):
        hp = hankel_pair(R12_SCALED, 2)
        lo, hi = pencil_extremes(hp)
        assert lo == pytest.approx(alpha_bound(R12_SCALED), abs=1e-8)
        assert hi == pytest.approx(beta_bound(R12_SCALED), abs=1e-8)

    def test_pencil_none_when_singular(self):
        assert pencil_extremes(hankel_pair([3.0] * 5, 2)) is None

    def test_tolerance_respected(self):
        r = support_bounds(R12_SCALED, 2, tol=1e-4)
        assert r.bracket["alpha"][1] - r.bracket["alpha"][0] <= 1e-4
        assert r.iterations["alpha"] <= 20


class TestErrors:
    def test_single_node(self):
        with pytest.raises(ValueError, match="n >= 2"):
            bound_report(Graph.from_edges(1, []))

    def test_high_order_needs_oracle(self, ring12):
        with pytest.raises(ValueError, match="oracle"):
            bound_report(ring12, 3)

    def test_bad_tol(self):
        with pytest.raises(ValueError):
            support_bounds(R12_SCALED, 2, tol=0)
        with pytest.raises(ValueError):
            alpha_bound(R12_SCALED, tol=-1)

    def test_infeasible_upper_cap(self):
        with pytest.raises(ConvergenceError):
            beta_bound(R12_SCALED, upper=3.0)


def test_bound_result_round_trip(ring12):
    r = bound_report(ring12, exact=True)
    back = BoundResult.from_dict(json.loads(json.dumps(r.to_dict())))
    assert back == r
