import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rdomset.graph import (
    Ball,
    GraphFormatError,
    build_graph,
    from_json_dict,
    generate,
    parse_edge_list,
    peeling_order,
)


def small_graphs():
    """Hypothesis strategy: graphs on up to 8 vertices from random edge sets."""
    def make(n, picks):
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        edges = [pairs[k % len(pairs)] for k in picks] if pairs else []
        return build_graph(edges, vertices=range(n))

    return st.builds(
        make,
        st.integers(min_value=1, max_value=8),
        st.lists(st.integers(min_value=0, max_value=500), max_size=14),
    )


class TestBuildGraph:
    def test_path_from_pairs(self):
        g = build_graph([(1, 2), (2, 3)])
        assert g.n == 3
        assert g.edge_count() == 2

    def test_duplicate_edges_collapse(self):
        g = build_graph([(1, 2), (2, 1)])
        assert g.n == 2
        assert g.edge_count() == 1

    def test_self_loop_rejected(self):
        with pytest.raises(ValueError, match=r"\(1, 1\)"):
            build_graph([(1, 1)])

    def test_isolated_vertices_need_declaration(self):
        g = build_graph([(0, 1)], vertices=[0, 1, 5])
        assert g.n == 3
        assert g.degree(g.index_of(5)) == 0

    def test_indices_follow_external_id_order(self):
        g = build_graph([(30, 10), (20, 10)])
        assert g.external_ids == (10, 20, 30)

    def test_negative_id_rejected(self):
        with pytest.raises(ValueError):
            build_graph([(-1, 2)])


class TestDistanceAndBalls:
    def test_distance_to_self_is_zero(self, p3):
        assert p3.distance(0, 0) == 0

    def test_path_end_to_end(self, p3):
        assert p3.distance(0, 2) == 2

    def test_disconnected_is_infinite(self):
        g = build_graph([(0, 1), (2, 3)])
        assert g.distance(0, g.index_of(3)) == math.inf

    def test_zero_radius_ball(self, p3):
        assert p3.closed_ball(0, 0) == Ball(0, 0, frozenset({0}))

    def test_center_ball_covers_path(self, p3):
        assert p3.closed_ball(1, 1).members == frozenset({0, 1, 2})

    def test_cycle6_radius2_ball_has_five_vertices(self):
        g = generate("cycle", 6)
        # independent count: distances computed directly
        dist = g.bfs_distances(0)
        expected = frozenset(v for v, d in dist.items() if d <= 2)
        ball = g.closed_ball(0, 2)
        assert ball.members == expected
        assert len(ball.members) == 5

    @settings(max_examples=60, deadline=None)
    @given(small_graphs(), st.integers(min_value=0, max_value=3))
    def test_ball_monotone_in_radius(self, g, r):
        for v in range(g.n):
            assert g.closed_ball(v, r).members <= g.closed_ball(v, r + 1).members

    @settings(max_examples=60, deadline=None)
    @given(small_graphs(), st.integers(min_value=0, max_value=3))
    def test_ball_symmetry(self, g, r):
        for u in range(g.n):
            for v in range(g.n):
                assert (u in g.closed_ball(v, r).members) == (
                    v in g.closed_ball(u, r).members
                )

    @settings(max_examples=60, deadline=None)
    @given(small_graphs())
    def test_triangle_inequality(self, g):
        for u in range(g.n):
            for v in range(g.n):
                for w in range(g.n):
                    assert g.distance(u, w) <= g.distance(u, v) + g.distance(v, w)


class TestGenerators:
    def test_path(self):
        g = generate("path", 5)
        assert (g.n, g.edge_count()) == (5, 4)

    def test_grid_counts(self):
        g = generate("grid", 3, 3)
        assert (g.n, g.edge_count()) == (9, 12)

    def test_star(self):
        g = generate("star", 6)
        assert g.degree(0) == 5

    def test_partial_ktree_degeneracy(self):
        g = generate("partial_ktree", 10, 2, 1.0, seed=7)
        _, degeneracy = peeling_order(g)
        assert degeneracy <= 2

    def test_seed_determinism(self):
        a = generate("partial_ktree", 12, 2, 0.8, seed=9)
        b = generate("partial_ktree", 12, 2, 0.8, seed=9)
        assert a.to_json() == b.to_json()

    def test_random_tree_is_tree(self):
        g = generate("random_tree", 10, seed=4)
        assert g.edge_count() == 9
        assert g.is_connected()

    def test_bad_params(self):
        with pytest.raises(ValueError):
            generate("cycle", 2)
        with pytest.raises(ValueError):
            generate("nosuch", 4)


class TestSerialization:
    def test_roundtrip_json(self):
        g = build_graph([(5, 1), (1, 3)], vertices=[5, 1, 3, 9])
        again = from_json_dict(json.loads(g.to_json()))
        assert again.to_json() == g.to_json()

    def test_roundtrip_edge_list(self):
        g = build_graph([(2, 7), (7, 4)], vertices=[2, 7, 4, 11])
        again = parse_edge_list(g.to_edge_list_text())
        assert again.to_json() == g.to_json()

    def test_parse_comments_and_vertices(self):
        g = parse_edge_list("# a comment\nvertices: 1 2 3 9\n1 2\n2 3\n")
        assert g.n == 4
        assert g.edge_count() == 2

    def test_parse_error_carries_line_number(self):
        with pytest.raises(GraphFormatError, match="line 2"):
            parse_edge_list("1 2\n3 fish\n")

    def test_parse_self_loop(self):
        with pytest.raises(GraphFormatError, match="self-loop"):
            parse_edge_list("4 4\n")


class TestPeeling:
    def test_tree_has_at_most_one_smaller_neighbor(self):
        g = generate("random_tree", 12, seed=8)
        seq, degeneracy = peeling_order(g)
        assert degeneracy == 1
        pos = {v: i for i, v in enumerate(seq)}
        for v in range(g.n):
            smaller = [u for u in g.neighbors(v) if pos[u] < pos[v]]
            assert len(smaller) <= 1

    def test_complete_graph_is_id_sorted(self):
        g = generate("complete", 4)
        seq, _ = peeling_order(g)
        assert seq == [0, 1, 2, 3]

    def test_grid_smaller_neighbor_bound(self):
        g = generate("grid", 3, 3)
        seq, degeneracy = peeling_order(g)
        pos = {v: i for i, v in enumerate(seq)}
        worst = max(
            sum(1 for u in g.neighbors(v) if pos[u] < pos[v]) for v in range(g.n)
        )
        assert worst <= 2
        assert worst == degeneracy  # self-consistency of the peeling bound
