"""Higher-order cartography: hyperdegree x participation, split into tertiles.

Participation uses the normalised Guimera form

    P = C / (C - 1) * (1 - sum_a (k_a / k) ** 2)

which is 0 for a node whose hyperedges all sit in one community and 1 for a
node spread evenly over all ``C`` communities. ``uncorrected=True`` drops the
``1 -`` term; that variant does not stay inside [0, 1] and is kept only for
comparison.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .core import Hypergraph
from .dendrogram import FlatClustering
from .errors import UndefinedError
from .membership import MembershipVector, membership_vectors

log = logging.getLogger(__name__)

DEGREE_CLASSES = ("peripheral", "non-hub", "hub")
PARTICIPATION_CLASSES = ("specialist", "non-generalist", "generalist")


@dataclass(frozen=True)
class CartographyPoint:
    node: int
    hyperdegree: int
    participation: float
    degree_class: str
    participation_class: str
    role: str | None = None


@dataclass(frozen=True)
class Boundaries:
    degree: tuple[float, float]
    participation: tuple[float, float]


def participation_coefficient(mv: MembershipVector, n_communities: int, uncorrected: bool = False) -> float:
    k = mv.hyperdegree
    if k == 0:
        raise UndefinedError(f"participation undefined for node {mv.node} with no hyperedges")
    if n_communities < 1:
        raise ValueError("number of communities must be >= 1")
    if n_communities == 1:
        return 0.0
    # integer numerator/denominator so the 0 and 1 endpoints are exact
    s = sum(c * c for c in mv.counts.values())
    den = (n_communities - 1) * k * k
    if uncorrected:
        return n_communities * s / den
    return n_communities * (k * k - s) / den


def percentile(sorted_values: Sequence[float], q: float) -> float:
    """Nearest-rank percentile of already sorted values."""
    n = len(sorted_values)
    rank = max(1, math.ceil(q / 100.0 * n - 1e-12))
    return sorted_values[min(rank, n) - 1]


def tertile_bounds(values: Sequence[float]) -> tuple[float, float]:
    s = sorted(values)
    return percentile(s, 33), percentile(s, 66)


def _bucket(x: float, bounds: tuple[float, float]) -> int:
    if x <= bounds[0]:
        return 0
    if x <= bounds[1]:
        return 1
    return 2


def classify(points: Sequence[tuple[int, float]], nodes: Sequence[int] | None = None):
    """Assign degree and participation classes to ``(hyperdegree, participation)`` points.

    Returns ``(list[CartographyPoint], Boundaries)``. Values equal to a
    percentile boundary fall into the lower class.
    """
    if len(points) < 3:
        raise UndefinedError(f"classification needs at least 3 points, got {len(points)}")
    nodes = list(range(len(points))) if nodes is None else list(nodes)
    db = tertile_bounds([p[0] for p in points])
    pb = tertile_bounds([p[1] for p in points])
    out = [
        CartographyPoint(v, k, p, DEGREE_CLASSES[_bucket(k, db)], PARTICIPATION_CLASSES[_bucket(p, pb)])
        for v, (k, p) in zip(nodes, points)
    ]
    return out, Boundaries(db, pb)


def cartography_table(
    hg: Hypergraph,
    clustering: FlatClustering,
    uncorrected: bool = False,
    roles: Mapping[int, str] | None = None,
):
    """Cartography of every node with at least one hyperedge.

    Percentile boundaries are computed over the nodes of this hypergraph only.
    Returns ``(list[CartographyPoint], Boundaries)``.
    """
    roles = hg.roles if roles is None else roles
    vectors = membership_vectors(hg, clustering)
    n_comm = clustering.n_communities
    missing = hg.n_nodes - len(vectors)
    if missing:
        log.warning("%d nodes without hyperedges excluded from cartography", missing)
    nodes = sorted(vectors)
    pts = [(vectors[v].hyperdegree, participation_coefficient(vectors[v], n_comm, uncorrected)) for v in nodes]
    classified, bounds = classify(pts, nodes)
    if roles:
        classified = [
            CartographyPoint(p.node, p.hyperdegree, p.participation, p.degree_class, p.participation_class, roles.get(p.node))
            for p in classified
        ]
    return classified, bounds
