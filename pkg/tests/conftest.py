"""Shared fixtures: the instance corpus and a few canned graphs."""

import pytest

from rdomset.graph import build_graph, generate


def corpus_instances():
    """Deterministic instance list used across the structural tests.

    All sizes stay within the exhaustive-oracle limits (n <= 18).  One entry is
    deliberately disconnected.
    """
    return [
        ("path5", generate("path", 5)),
        ("path9", generate("path", 9)),
        ("cycle6", generate("cycle", 6)),
        ("cycle12", generate("cycle", 12)),
        ("star6", generate("star", 6)),
        ("star13", generate("star", 13)),
        ("complete4", generate("complete", 4)),
        ("complete6", generate("complete", 6)),
        ("grid23", generate("grid", 2, 3)),
        ("grid33", generate("grid", 3, 3)),
        ("grid34", generate("grid", 3, 4)),
        ("grid44", generate("grid", 4, 4)),
        ("rtree10", generate("random_tree", 10, seed=1)),
        ("rtree14", generate("random_tree", 14, seed=2)),
        ("rtree18", generate("random_tree", 18, seed=3)),
        ("ktree12", generate("partial_ktree", 12, 2, 0.6, seed=3)),
        ("ktree16", generate("partial_ktree", 16, 2, 0.8, seed=5)),
        ("ktree18", generate("partial_ktree", 18, 2, 0.9, seed=7)),
        ("twopaths", build_graph([(0, 1), (1, 2), (10, 11), (11, 12)])),
    ]


CORPUS = corpus_instances()


@pytest.fixture(scope="session")
def corpus():
    return CORPUS


@pytest.fixture
def p3():
    return generate("path", 3)


@pytest.fixture
def p5():
    return generate("path", 5)


@pytest.fixture
def p5_ids():
    # external ids 1..5 to mirror hand-worked examples
    return build_graph([(1, 2), (2, 3), (3, 4), (4, 5)])
