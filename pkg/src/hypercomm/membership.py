"""Node-level overlapping communities inherited from a hyperedge clustering."""
from __future__ import annotations

import logging
import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .core import Hypergraph
from .dendrogram import FlatClustering
from .errors import ConsistencyError, UndefinedError

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class MembershipVector:
    node: int
    counts: Mapping[int, int]  # community id -> number of the node's hyperedges in it

    @property
    def hyperdegree(self) -> int:
        return sum(self.counts.values())

    @property
    def communities(self) -> frozenset[int]:
        """Binary membership: the communities the node takes part in."""
        return frozenset(self.counts)


def membership_vectors(hg: Hypergraph, clustering: FlatClustering) -> dict[int, MembershipVector]:
    if len(clustering.labels) != hg.n_edges:
        raise ConsistencyError(
            f"clustering covers {len(clustering.labels)} hyperedges, hypergraph has {hg.n_edges}"
        )
    counts: dict[int, Counter] = defaultdict(Counter)
    for e, c in zip(hg.edges, clustering.labels):
        for v in e:
            counts[v][c] += 1
    return {v: MembershipVector(v, dict(sorted(counts[v].items()))) for v in sorted(counts)}


def binary_memberships(vectors: Mapping[int, MembershipVector]) -> dict[int, frozenset[int]]:
    return {v: mv.communities for v, mv in vectors.items()}


def node_entropy(mv: MembershipVector) -> float:
    """Shannon entropy (natural log) of the node's share of hyperedges per community."""
    k = mv.hyperdegree
    if k == 0:
        raise UndefinedError(f"entropy undefined for node {mv.node} with no hyperedges")
    h = 0.0
    for c in mv.counts.values():
        p = c / k
        h -= p * math.log(p)
    return h if h > 0.0 else 0.0


def role_entropy(vectors: Mapping[int, MembershipVector], roles: Mapping[int, str]) -> dict[str, float]:
    """Mean node entropy per role, over nodes that have a membership vector."""
    by_role: dict[str, list[float]] = defaultdict(list)
    for v, role in roles.items():
        if v in vectors:
            by_role[role].append(node_entropy(vectors[v]))
    for role in sorted(set(roles.values()) - set(by_role)):
        log.warning("role %r has no participating nodes; excluded", role)
    return {r: float(np.mean(hs)) for r, hs in sorted(by_role.items())}


def membership_distributions(vectors: Mapping[int, MembershipVector]) -> tuple[dict[int, int], dict[int, int]]:
    """Histograms of (nodes per community) and (communities per node).

    Both are returned as ``value -> frequency`` maps.
    """
    nodes_per_comm: Counter = Counter()
    for mv in vectors.values():
        for c in mv.counts:
            nodes_per_comm[c] += 1
    size_hist = Counter(nodes_per_comm.values())
    memb_hist = Counter(len(mv.counts) for mv in vectors.values())
    return dict(sorted(size_hist.items())), dict(sorted(memb_hist.items()))


def community_node_sets(vectors: Mapping[int, MembershipVector]) -> dict[int, set[int]]:
    out: dict[int, set[int]] = defaultdict(set)
    for v, mv in vectors.items():
        for c in mv.counts:
            out[c].add(v)
    return dict(out)


@dataclass(frozen=True)
class RoleSimilarityMatrix:
    roles: tuple[str, ...]
    values: np.ndarray  # nan where undefined

    def get(self, a: str, b: str) -> float:
        return float(self.values[self.roles.index(a), self.roles.index(b)])


def _jaccard_similarity(a: frozenset, b: frozenset) -> float:
    union = len(a | b)
    return len(a & b) / union if union else 0.0


def role_similarity_matrix(
    memberships: Mapping[int, frozenset[int]], roles: Mapping[int, str]
) -> RoleSimilarityMatrix:
    """Mean Jaccard similarity of binary memberships between nodes of each role pair.

    Self pairs are excluded; a role with fewer than two nodes has an
    undefined (nan) diagonal entry.
    """
    nodes = sorted(v for v in roles if v in memberships)
    if len(nodes) < 2:
        raise UndefinedError("role similarity needs at least two nodes with roles")
    labels = tuple(sorted({roles[v] for v in nodes}))
    r_index = {r: k for k, r in enumerate(labels)}
    n_r = len(labels)
    total = np.zeros((n_r, n_r))
    count = np.zeros((n_r, n_r))
    for a_pos, u in enumerate(nodes):
        su, ru = memberships[u], r_index[roles[u]]
        for w in nodes[a_pos + 1:]:
            rw = r_index[roles[w]]
            s = _jaccard_similarity(su, memberships[w])
            total[ru, rw] += s
            count[ru, rw] += 1
            if ru != rw:
                total[rw, ru] += s
                count[rw, ru] += 1
    with np.errstate(invalid="ignore", divide="ignore"):
        values = np.where(count > 0, total / np.where(count > 0, count, 1), np.nan)
    return RoleSimilarityMatrix(labels, values)
