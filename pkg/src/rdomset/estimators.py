"""Estimator-style wrappers so the pipeline composes with the sklearn ecosystem.

Each estimator takes its parameters in ``__init__``, computes everything in
``fit(graph)`` and exposes results as trailing-underscore attributes;
``get_params``/``set_params``/``clone`` come from :class:`sklearn.base.BaseEstimator`.
``fit`` accepts a :class:`rdomset.graph.Graph` or any iterable of external-id
edge pairs.
"""

from __future__ import annotations

from typing import Iterable

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .connect import connect_via_minor, connect_via_wreach
from .covers import build_cover, build_rsets
from .domset import domset
from .graph import Graph, build_graph
from .ordering import (
    LinearOrder,
    degeneracy_order,
    natural_order,
    wcol_value,
    wreach,
)

ORDER_CHOICES = ("degeneracy", "natural")


def validate_graph(graph) -> Graph:
    """Accept a Graph or an iterable of (u, v) external-id pairs."""
    if isinstance(graph, Graph):
        return graph
    if isinstance(graph, Iterable):
        return build_graph(list(graph))
    raise TypeError(f"expected Graph or edge iterable, got {type(graph).__name__}")


def _resolve_order(graph: Graph, order) -> LinearOrder:
    if isinstance(order, LinearOrder):
        if len(order) != graph.n:
            raise ValueError("order size does not match graph")
        return order
    if order == "degeneracy":
        return degeneracy_order(graph)
    if order == "natural":
        return natural_order(graph)
    raise ValueError(f"order must be a LinearOrder or one of {ORDER_CHOICES}")


class WeakReachability(BaseEstimator):
    """Fit the weak-reachability table of a graph for a fixed radius.

    Attributes after fit: ``order_``, ``table_``, ``wcol_value_``.
    """

    def __init__(self, radius: int = 2, order="degeneracy"):
        self.radius = radius
        self.order = order

    def fit(self, graph, y=None):
        g = validate_graph(graph)
        if self.radius < 0:
            raise ValueError("radius must be >= 0")
        self.order_ = _resolve_order(g, self.order)
        self.table_ = wreach(g, self.order_, self.radius)
        self.wcol_value_ = wcol_value(self.table_)
        self.n_features_in_ = g.n
        return self

    def transform(self, graph=None):
        """Per-vertex weakly-reachable external-id sets, as a list."""
        check_is_fitted(self, "table_")
        g = self.table_.graph
        return [
            sorted(g.external_id(u) for u in self.table_.starts(v))
            for v in range(g.n)
        ]


class NeighborhoodCover(BaseEstimator):
    """Fit a sparse r-neighborhood cover (radius <= 2r, measured degree).

    Attributes after fit: ``order_``, ``cover_``, ``degree_``, ``radius_``,
    ``rsets_``.
    """

    def __init__(self, r: int = 1, order="degeneracy"):
        self.r = r
        self.order = order

    def fit(self, graph, y=None):
        g = validate_graph(graph)
        self.order_ = _resolve_order(g, self.order)
        self.cover_ = build_cover(g, self.order_, self.r)
        self.degree_ = self.cover_.degree
        self.radius_ = self.cover_.max_measured_radius
        self.rsets_ = build_rsets(g, self.order_, self.r, self.cover_)
        self.n_features_in_ = g.n
        return self


class DominatingSetApproximation(BaseEstimator):
    """Fit an order-driven distance-r dominating set, optionally connected.

    ``connect`` is None, "wreach" (path-closure construction) or "minor"
    (block-minor construction).  Attributes after fit: ``order_``,
    ``dominating_set_``, ``witness_``, ``certificate_c_``, and with connect,
    ``connected_set_`` and ``bounds_``.  ``predict`` maps external ids to
    membership in the fitted (connected) set.
    """

    def __init__(self, r: int = 1, order="degeneracy", connect=None):
        self.r = r
        self.order = order
        self.connect = connect

    def fit(self, graph, y=None):
        g = validate_graph(graph)
        if self.connect not in (None, "wreach", "minor"):
            raise ValueError("connect must be None, 'wreach' or 'minor'")
        self.graph_ = g
        self.order_ = _resolve_order(g, self.order)
        result = domset(g, self.order_, self.r)
        self.result_ = result
        self.dominating_set_ = frozenset(
            g.external_id(v) for v in result.members
        )
        self.witness_ = {
            g.external_id(w): g.external_id(d) for w, d in result.witness.items()
        }
        self.certificate_c_ = result.certificate_c
        if self.connect == "wreach":
            table = wreach(g, self.order_, 2 * self.r + 1)
            conn = connect_via_wreach(g, self.order_, result.members, self.r, table)
        elif self.connect == "minor":
            conn = connect_via_minor(g, result.members, self.r)
        else:
            conn = None
        if conn is not None:
            self.connected_set_ = frozenset(
                g.external_id(v) for v in conn.members
            )
            self.bounds_ = dict(conn.bounds)
        self.n_features_in_ = g.n
        return self

    def predict(self, ids: Iterable[int]) -> list[bool]:
        check_is_fitted(self, "dominating_set_")
        members = getattr(self, "connected_set_", self.dominating_set_)
        return [int(i) in members for i in ids]
