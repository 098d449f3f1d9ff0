import pytest

from rdomset.connect import (
    DominationError,
    check_connected_result,
    check_d_partition,
    connect_via_minor,
    connect_via_wreach,
    contract_minor,
    d_partition,
    lex_shortest_path,
)
from rdomset.domset import domset
from rdomset.graph import build_graph, generate
from rdomset.ordering import natural_order, random_order, wreach

from conftest import CORPUS


class TestLexShortestPath:
    def test_zero_length(self, p3):
        assert lex_shortest_path(p3, 1, 1) == (1,)

    def test_triangle_prefers_short(self):
        g = build_graph([(1, 2), (2, 3), (1, 3)])
        a, c = g.index_of(1), g.index_of(3)
        assert lex_shortest_path(g, a, c) == (a, c)

    def test_c4_tie_breaks_by_ids(self):
        g = build_graph([(1, 2), (2, 3), (3, 4), (4, 1)])
        path = lex_shortest_path(g, g.index_of(1), g.index_of(3))
        assert [g.external_id(v) for v in path] == [1, 2, 3]

    def test_max_len_cuts_off(self, p5):
        assert lex_shortest_path(p5, 0, 4, max_len=3) is None
        assert lex_shortest_path(p5, 0, 4, max_len=4) == (0, 1, 2, 3, 4)

    def test_custom_ids_change_ties(self):
        g = build_graph([(1, 2), (2, 3), (3, 4), (4, 1)])
        flipped = {g.index_of(i): -i for i in (1, 2, 3, 4)}
        path = lex_shortest_path(g, g.index_of(1), g.index_of(3), ids=flipped.get)
        assert [g.external_id(v) for v in path] == [1, 4, 3]


class TestDPartition:
    def test_all_vertices_dominating_gives_singletons(self, p5):
        part = d_partition(p5, frozenset(range(5)), 1)
        assert all(part.blocks[v] == frozenset({v}) for v in range(5))

    def test_p5_two_centers(self, p5_ids):
        g = p5_ids
        dominators = frozenset({g.index_of(2), g.index_of(4)})
        part = d_partition(g, dominators, 1)
        ext = lambda s: sorted(g.external_id(v) for v in s)
        assert ext(part.blocks[g.index_of(2)]) == [1, 2, 3]
        assert ext(part.blocks[g.index_of(4)]) == [4, 5]

    def test_star_single_block(self):
        g = generate("star", 6)
        part = d_partition(g, frozenset({0}), 1)
        assert part.blocks[0] == frozenset(range(6))

    def test_rejects_non_dominating(self, p5):
        with pytest.raises(DominationError) as err:
            d_partition(p5, frozenset({0}), 1)
        assert err.value.witness is not None

    def test_obligations_on_corpus(self):
        for _, g in CORPUS:
            for r in (1, 2):
                members = domset(g, natural_order(g), r).members
                part = d_partition(g, members, r)
                assert check_d_partition(g, part) == []


class TestContractMinor:
    def test_single_block_no_edges(self):
        g = generate("star", 5)
        part = d_partition(g, frozenset({0}), 1)
        minor = contract_minor(g, part)
        assert minor.vertices == frozenset({0})
        assert minor.edges == frozenset()

    def test_p5_one_crossing_edge(self, p5_ids):
        g = p5_ids
        dominators = frozenset({g.index_of(2), g.index_of(4)})
        minor = contract_minor(g, d_partition(g, dominators, 1))
        assert minor.edges == frozenset({tuple(sorted(dominators))})

    def test_grid_minor_connected(self):
        g = generate("grid", 3, 3)
        members = domset(g, natural_order(g), 1).members
        minor = contract_minor(g, d_partition(g, members, 1))
        assert minor.is_connected()

    def test_minor_adjacent_centers_close(self):
        for _, g in CORPUS:
            r = 1
            members = domset(g, natural_order(g), r).members
            minor = contract_minor(g, d_partition(g, members, r))
            for u, v in minor.edges:
                assert g.distance(u, v) <= 2 * r + 1


class TestConnectViaWreach:
    def test_single_seed_connected(self):
        g = generate("grid", 3, 3)
        order = natural_order(g)
        # the grid center alone is a distance-2 dominating set
        table = wreach(g, order, 5)
        result = connect_via_wreach(g, order, frozenset({4}), 2, table)
        assert check_connected_result(g, result) == []

    def test_p3_pair_already_adjacent(self, p3):
        order = natural_order(p3)
        table = wreach(p3, order, 3)
        result = connect_via_wreach(p3, order, frozenset({0, 1}), 1, table)
        assert result.members == frozenset({0, 1})
        assert result.added_paths  # paths recorded even when they add nothing

    def test_c6_pipeline(self):
        g = generate("cycle", 6)
        order = natural_order(g)
        members = domset(g, order, 1).members
        result = connect_via_wreach(g, order, members, 1, wreach(g, order, 3))
        assert check_connected_result(g, result) == []
        assert g.is_connected_subset(result.members)

    def test_validates_table_radius(self, p3):
        order = natural_order(p3)
        with pytest.raises(ValueError, match="radius"):
            connect_via_wreach(p3, order, frozenset({0, 1}), 1, wreach(p3, order, 2))

    def test_rejects_non_dominating(self, p5):
        order = natural_order(p5)
        table = wreach(p5, order, 3)
        with pytest.raises(DominationError):
            connect_via_wreach(p5, order, frozenset({0}), 1, table)


class TestConnectViaMinor:
    def test_p5_classic(self, p5_ids):
        g = p5_ids
        dominators = frozenset({g.index_of(2), g.index_of(4)})
        result = connect_via_minor(g, dominators, 1)
        assert sorted(g.external_id(v) for v in result.members) == [2, 3, 4]

    def test_single_center_adds_nothing(self):
        g = generate("star", 6)
        result = connect_via_minor(g, frozenset({0}), 1)
        assert result.members == frozenset({0})

    def test_grid_pipeline_with_bound(self):
        g = generate("grid", 3, 3)
        members = domset(g, natural_order(g), 1).members
        result = connect_via_minor(g, members, 1)
        assert check_connected_result(g, result) == []
        assert len(result.members) <= len(members) + 2 * result.minor.edge_count

    def test_disconnected_components_handled(self):
        g = build_graph([(0, 1), (1, 2), (10, 11), (11, 12)])
        members = domset(g, natural_order(g), 1).members
        result = connect_via_minor(g, members, 1)
        assert result.n_components == 2
        assert check_connected_result(g, result) == []


class TestPathProperties:
    def test_pairs_within_reach_connect_everything(self):
        # For any dominating set, joining every pair at distance <= 2r+1 by a
        # shortest path leaves the union connected with the set.
        for name, g in CORPUS:
            if g.n > 14:
                continue
            r = 1
            members = domset(g, natural_order(g), r).members
            union = set(members)
            from itertools import combinations

            for u, v in combinations(sorted(members), 2):
                if g.distance(u, v) <= 2 * r + 1:
                    union.update(lex_shortest_path(g, u, v))
            for comp in g.connected_components():
                part = union & comp
                if part:
                    assert g.is_connected_subset(part), name

    def test_path_minimum_reaches_both_endpoints(self):
        # the order-minimum of any short path is weakly reachable from both ends
        g = generate("grid", 3, 3)
        order = random_order(g, 4)
        r = 2
        table = wreach(g, order, r)
        for u in range(g.n):
            reach = {v: p for v, p in _paths_within(g, u, r).items()}
            for v, path in reach.items():
                m = min(path, key=order.position)
                assert m in table.starts(u)
                assert m in table.starts(v)


def _paths_within(graph, source, limit):
    """Sample of shortest paths from source up to the limit length."""
    from collections import deque

    parent = {source: None}
    queue = deque([(source, 0)])
    while queue:
        u, d = queue.popleft()
        if d >= limit:
            continue
        for x in graph.neighbors(u):
            if x not in parent:
                parent[x] = u
                queue.append((x, d + 1))
    paths = {}
    for v in parent:
        walk, cur = [], v
        while cur is not None:
            walk.append(cur)
            cur = parent[cur]
        paths[v] = tuple(reversed(walk))
    return paths
