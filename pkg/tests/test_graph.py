from __future__ import annotations

import io
import warnings

import numpy as np
import pytest
from hypothesis import given

from conftest import fixture_path
from lapmoments.graph import (
    DuplicateEdgeWarning,
    Graph,
    GraphFormatError,
    adjacency_matrix,
    connected_components,
    er_uniform,
    generate,
    laplacian_graph,
    laplacian_matrix,
    parse_edge_list,
    parse_matrix_market,
    read_graph,
    to_edge_list,
)
from strategies import graphs


class TestGraph:
    def test_canonical_edges(self):
        g = Graph.from_edges(3, [(2, 0), (1, 0), (0, 1)])
        assert g.edges == ((0, 1), (0, 2))
        assert g.degrees == (2, 1, 1)
        assert g.adjacency[0] == (1, 2)

    def test_self_loop_rejected(self):
        with pytest.raises(ValueError, match="self-loop"):
            Graph.from_edges(2, [(1, 1)])

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            Graph.from_edges(2, [(0, 2)])

    def test_from_adjacency_validation(self):
        with pytest.raises(ValueError):
            Graph.from_adjacency([[0, 1], [0, 0]])
        with pytest.raises(ValueError):
            Graph.from_adjacency([[1, 0], [0, 0]])
        with pytest.raises(ValueError):
            Graph.from_adjacency([[0, 2], [2, 0]])

    @given(graphs())
    def test_adjacency_round_trip(self, g):
        assert Graph.from_adjacency(adjacency_matrix(g)) == g

    @given(graphs())
    def test_laplacian_rows_sum_to_zero(self, g):
        L = laplacian_matrix(g)
        assert np.all(L.sum(axis=1) == 0)
        assert np.array_equal(L, L.T)
        assert np.array_equal(np.diag(L), g.degrees)

    @given(graphs())
    def test_laplacian_graph_dense_equals_matrix(self, g):
        lg = laplacian_graph(g)
        assert np.array_equal(lg.dense(), laplacian_matrix(g))
        for i in range(g.n):
            assert lg.weight(i, i) == g.degrees[i]

    @given(graphs())
    def test_handshake(self, g):
        assert sum(g.degrees) == 2 * g.e

    def test_relabel(self):
        g = generate("path", 4).relabel([3, 2, 1, 0])
        assert g.edges == ((0, 1), (1, 2), (2, 3))
        with pytest.raises(ValueError):
            g.relabel([0, 0, 1, 2])


class TestComponents:
    def test_two_rings(self, two_c6):
        count, labels = connected_components(two_c6)
        assert count == 2
        assert labels == [0] * 6 + [6] * 6

    def test_isolated(self):
        assert connected_components(Graph.from_edges(4, []))[0] == 4

    @given(graphs())
    def test_matches_laplacian_nullity(self, g):
        count, _ = connected_components(g)
        eig = np.linalg.eigvalsh(laplacian_matrix(g).astype(float))
        assert int(np.sum(eig < 1e-9)) == count


class TestEdgeList:
    def test_comments_and_header(self):
        g = parse_edge_list("# c\nnodes 5\n0 1\n\n1 2\n")
        assert g.n == 5 and g.e == 2

    def test_nodes_argument_wins(self):
        assert parse_edge_list("nodes 3\n0 1\n", nodes=6).n == 6

    def test_one_based(self):
        g = parse_edge_list("1 2\n2 3\n", one_based=True)
        assert g.edges == ((0, 1), (1, 2))

    def test_self_loop_line_number(self):
        with pytest.raises(GraphFormatError, match="self-loop at line 3") as info:
            read_graph(fixture_path("selfloop.edges"))
        assert info.value.line == 3

    def test_duplicates_warn_and_collapse(self):
        with pytest.warns(DuplicateEdgeWarning):
            g = read_graph(fixture_path("dup.edges"))
        assert g.e == 2

    @pytest.mark.parametrize(
        "text, match",
        [
            ("0 1 2\n", "line 1"),
            ("0 x\n", "line 1"),
            ("0 1\n-1 2\n", "line 2"),
            ("nodes 2\n0 5\n", "exceeds"),
            ("", "empty"),
            ("nodes two\n", "line 1"),
        ],
    )
    def test_malformed(self, text, match):
        with pytest.raises(GraphFormatError, match=match):
            parse_edge_list(text)

    def test_file_object(self):
        assert parse_edge_list(io.StringIO("0 1\n")).e == 1

    @given(graphs())
    def test_serialise_round_trip(self, g):
        assert parse_edge_list(to_edge_list(g)) == g


class TestMatrixMarket:
    def test_k3(self):
        g = read_graph(fixture_path("k3.mtx"))
        assert g == generate("complete", 3)

    def test_real_field(self):
        text = "%%MatrixMarket matrix coordinate real symmetric\n3 3 2\n2 1 1.0\n3 2 1.0\n"
        assert parse_matrix_market(text) == generate("path", 3)

    def test_diagonal_entry_line(self):
        text = "%%MatrixMarket matrix coordinate pattern symmetric\n% c\n3 3 2\n2 1\n3 3\n"
        with pytest.raises(GraphFormatError, match="line 5"):
            parse_matrix_market(text)

    def test_general_rejected(self):
        text = "%%MatrixMarket matrix coordinate pattern general\n2 2 1\n2 1\n"
        with pytest.raises(GraphFormatError, match="symmetric"):
            parse_matrix_market(text)

    def test_array_rejected(self):
        text = "%%MatrixMarket matrix array real general\n2 2\n0\n1\n1\n0\n"
        with pytest.raises(GraphFormatError):
            parse_matrix_market(text)

    def test_bad_banner(self):
        with pytest.raises(GraphFormatError):
            parse_matrix_market("hello\n")

    def test_format_override(self, tmp_path):
        p = tmp_path / "g.txt"
        p.write_text("%%MatrixMarket matrix coordinate pattern symmetric\n2 2 1\n2 1\n")
        assert read_graph(str(p), fmt="mtx").e == 1
        with pytest.raises(ValueError):
            read_graph(str(p), fmt="csv")


class TestGenerators:
    def test_ring(self):
        g = generate("ring", 12)
        assert g.e == 12 and set(g.degrees) == {2}

    def test_ring_too_small(self):
        with pytest.raises(ValueError):
            generate("ring", 2)

    def test_path_complete_star(self):
        assert generate("path", 5).e == 4
        assert generate("complete", 6).e == 15
        s = generate("star", 7)
        assert s.degrees == (6, 1, 1, 1, 1, 1, 1)

    def test_er_deterministic(self):
        a = generate("er", 20, 0.3, seed=7)
        b = generate("erdos_renyi", 20, 0.3, seed=7)
        assert a == b
        assert a != generate("er", 20, 0.3, seed=8)

    def test_er_prefix_stable(self):
        # each edge depends only on (seed, i, j)
        small = generate("er", 10, 0.5, seed=3)
        big = generate("er", 20, 0.5, seed=3)
        assert set(small.edges) == {e for e in big.edges if e[1] < 10}

    def test_er_extremes(self):
        assert generate("er", 8, 0.0).e == 0
        assert generate("er", 8, 1.0).e == 28

    def test_er_density(self):
        g = generate("er", 200, 0.3, seed=1)
        assert abs(g.e / (200 * 199 / 2) - 0.3) < 0.02

    def test_uniform_range(self):
        vals = [er_uniform(1, i, j) for i in range(30) for j in range(30)]
        assert 0 <= min(vals) and max(vals) < 1

    @pytest.mark.parametrize("kind, kw", [("er", {"p": 1.5}), ("er", {}), ("blob", {}), ("path", {"n": 0})])
    def test_invalid(self, kind, kw):
        kw = {"n": 5, **kw}
        with pytest.raises(ValueError):
            generate(kind, **kw)
