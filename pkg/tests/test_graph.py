"""graph module: construction, reversal, connectivity screening, I/O."""
import numpy as np
import pytest

from diamest import (DiameterStatus, GraphError, GraphParseError, build_graph,
                     exact_diameter, finite_diameter_check, parse_dimacs,
                     parse_edge_list, parse_graph, write_edge_list)
from helpers import random_graph


def test_build_undirected_symmetry():
    g = build_graph(2, [(0, 1)])
    assert g.neighbors(0).tolist() == [1]
    assert g.neighbors(1).tolist() == [0]
    assert g.m == 1 and g.arc_count == 2


def test_build_collapses_duplicates():
    g = build_graph(2, [(0, 1), (0, 1)], directed=True)
    assert g.m == 1
    assert g.neighbors(0).tolist() == [1]


def test_build_min_weight_merge():
    g = build_graph(2, [(0, 1, 3), (0, 1, 2)], directed=True)
    assert g.m == 1
    assert g.arc_weights(0).tolist() == [2]


def test_build_drops_self_loops():
    g = build_graph(3, [(0, 0), (0, 1)])
    assert g.m == 1


def test_build_rejects_out_of_range():
    with pytest.raises(GraphError, match="out of range"):
        build_graph(2, [(0, 2)])


def test_build_rejects_negative_weight():
    with pytest.raises(GraphError, match="negative weight"):
        build_graph(2, [(0, 1, -1)])


def test_build_rejects_mixed_arity():
    with pytest.raises(GraphError, match="mix"):
        build_graph(3, [(0, 1), (1, 2, 4)])


def test_adjacency_sorted_and_membership():
    g = build_graph(5, [(0, 4), (0, 2), (0, 1), (2, 3)], directed=True)
    assert g.neighbors(0).tolist() == [1, 2, 4]
    assert g.has_edge(0, 2) and not g.has_edge(0, 3)


def test_diameter_status_validation():
    assert DiameterStatus(True, 3).value == 3
    with pytest.raises(ValueError):
        DiameterStatus(True, None)
    with pytest.raises(ValueError):
        DiameterStatus(False, 7)


def test_reverse_undirected_fixed_point():
    g = build_graph(3, [(0, 1), (1, 2)])
    assert g.reverse() is g


def test_reverse_directed_cycle():
    g = build_graph(3, [(0, 1), (1, 2), (2, 0)], directed=True)
    r = g.reverse()
    assert r.neighbors(0).tolist() == [2]
    assert r.neighbors(2).tolist() == [1]
    assert r.neighbors(1).tolist() == [0]


def test_reverse_involution_random():
    rng = np.random.default_rng(7)
    for _ in range(50):
        n = int(rng.integers(2, 30))
        g = random_graph(rng, n, int(rng.integers(1, 3 * n)), directed=True)
        back = g.reverse().reverse()
        assert back == g
        assert g.reverse().m == g.m


def test_reverse_preserves_weights():
    g = build_graph(3, [(0, 1, 5), (1, 2, 7)], directed=True)
    r = g.reverse()
    assert r.has_edge(1, 0) and r.arc_weights(1).tolist() == [5]
    assert r.arc_weights(2).tolist() == [7]


def test_finite_check_isolated_pair():
    assert not finite_diameter_check(build_graph(2, []))


def test_finite_check_one_way_arc():
    assert not finite_diameter_check(build_graph(2, [(0, 1)], directed=True))


def test_finite_check_cycles_and_singleton():
    assert finite_diameter_check(build_graph(4, [(i, (i + 1) % 4) for i in range(4)],
                                             directed=True))
    assert finite_diameter_check(build_graph(1, []))


def test_finite_check_matches_oracle():
    rng = np.random.default_rng(11)
    agree = 0
    for _ in range(120):
        n = int(rng.integers(2, 64))
        directed = bool(rng.integers(0, 2))
        g = random_graph(rng, n, int(rng.integers(0, 2 * n)), directed=directed)
        assert finite_diameter_check(g) == exact_diameter(g).diameter.finite
        agree += 1
    assert agree == 120


def test_parse_edge_list_basic():
    g = parse_edge_list("2 1\n0 1\n")
    assert g == build_graph(2, [(0, 1)])


def test_parse_edge_list_weighted():
    g = parse_edge_list("3 2 w\n0 1 5\n1 2 7\n")
    assert g.weighted
    assert sorted(g.weights.tolist()) == [5, 5, 7, 7]


def test_parse_edge_list_comments_and_errors():
    g = parse_edge_list("# a comment\n2 1\n# another\n0 1\n")
    assert g.m == 1
    with pytest.raises(GraphParseError, match="line 2"):
        parse_edge_list("2 1\n0 x\n")
    with pytest.raises(GraphParseError, match="declares"):
        parse_edge_list("2 2\n0 1\n")
    with pytest.raises(GraphParseError, match="header"):
        parse_edge_list("nope\n")
    with pytest.raises(GraphParseError, match="3 fields"):
        parse_edge_list("2 1 w\n0 1\n")


def test_parse_reports_line_numbers_for_range_errors():
    with pytest.raises(GraphParseError, match="line 3"):
        parse_edge_list("3 2\n0 1\n1 9\n")
    with pytest.raises(GraphParseError, match="line 2"):
        parse_dimacs("p sp 2 1\na 1 5 2\n")
    with pytest.raises(GraphParseError, match="line 2.*negative"):
        parse_dimacs("p sp 2 1\na 1 2 -4\n")


def test_parse_weight_scaling():
    g = parse_edge_list("2 1 w\n0 1 2.5\n", weight_scale=1)
    assert g.weights.tolist() == [25, 25]
    with pytest.raises(GraphParseError, match="not integral"):
        parse_edge_list("2 1 w\n0 1 2.5\n")


def test_round_trip_random_graphs():
    rng = np.random.default_rng(3)
    for i in range(100):
        n = int(rng.integers(1, 40))
        directed = bool(i % 2)
        hi = 9 if i % 3 == 0 else 0
        g = random_graph(rng, n, int(rng.integers(0, 2 * n)),
                         directed=directed, weight_hi=hi)
        text = write_edge_list(g)
        again = parse_edge_list(text, directed=directed)
        assert again == g
        assert write_edge_list(again) == text


def test_parse_dimacs():
    text = "c tiny instance\np sp 3 3\na 1 2 4\na 2 3 1\na 3 1 2\n"
    g = parse_dimacs(text)
    assert g.directed and g.weighted and g.n == 3 and g.m == 3
    assert g.has_edge(0, 1) and g.arc_weights(0).tolist() == [4]
    with pytest.raises(GraphParseError):
        parse_dimacs("a 1 2 3\n")


def test_parse_graph_sniffs_format():
    assert parse_graph("p sp 2 1\na 1 2 3\n").directed
    assert not parse_graph("2 1\n0 1\n").directed
    with pytest.raises(GraphParseError):
        parse_graph("   \n")


def test_n1_graph_is_legal():
    g = build_graph(1, [])
    assert g.n == 1 and g.m == 0
    assert finite_diameter_check(g)
    assert exact_diameter(g).diameter == DiameterStatus(True, 0)


def test_graph_arrays_immutable():
    g = build_graph(2, [(0, 1)])
    with pytest.raises(ValueError):
        g.indices[0] = 0
