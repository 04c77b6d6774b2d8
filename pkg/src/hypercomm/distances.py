"""Hyperedge distances restricted to overlapping pairs.

Only pairs of hyperedges that share at least one node are evaluated; every
other pair sits at the implicit distance 1. Candidates come from an inverted
index (node -> hyperedges) and each pair is emitted once, from the lowest
shared node, so no global pair set is needed.

Hyperedges are held as Python int bitmasks over node indices, which keeps
intersections and popcounts in C.
"""
from __future__ import annotations

import multiprocessing as mp
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import Hyperedge, Hypergraph
from .errors import UndefinedError

METRICS = ("jaccard", "ahn")


@dataclass(frozen=True, eq=False)
class SparseDistances:
    """Distances for overlapping pairs ``i < j``, sorted by ``(i, j)``.

    Unlisted pairs are at ``implicit_distance`` (always 1).
    """

    n_edges: int
    i: np.ndarray
    j: np.ndarray
    d: np.ndarray
    metric: str = "jaccard"
    implicit_distance: float = 1.0

    def __len__(self) -> int:
        return len(self.d)

    def __eq__(self, other):
        if not isinstance(other, SparseDistances):
            return NotImplemented
        return (
            self.n_edges == other.n_edges
            and self.metric == other.metric
            and np.array_equal(self.i, other.i)
            and np.array_equal(self.j, other.j)
            and np.array_equal(self.d, other.d)
        )

    def entries(self):
        return list(zip(self.i.tolist(), self.j.tolist(), self.d.tolist()))

    def as_dict(self) -> dict[tuple[int, int], float]:
        return {(a, b): x for a, b, x in self.entries()}

    def dense(self) -> np.ndarray:
        m = np.full((self.n_edges, self.n_edges), self.implicit_distance)
        m[self.i, self.j] = self.d
        m[self.j, self.i] = self.d
        np.fill_diagonal(m, 0.0)
        return m


def build_inverted_index(hg: Hypergraph) -> list[list[int]]:
    """``index[v]`` lists, in increasing order, the hyperedges containing node ``v``."""
    index: list[list[int]] = [[] for _ in range(hg.n_nodes)]
    for k, e in enumerate(hg.edges):
        for v in e:
            index[v].append(k)
    return index


def jaccard_distance(a: Sequence, b: Sequence) -> float:
    a, b = set(a), set(b)
    inter = len(a & b)
    return 1.0 - inter / (len(a) + len(b) - inter)


def inclusive_neighborhoods(hg: Hypergraph) -> list[frozenset[int]]:
    nbrs = [set([v]) for v in range(hg.n_nodes)]
    for e in hg.edges:
        for v in e:
            nbrs[v].update(e)
    return [frozenset(s) for s in nbrs]


def ahn_generalized_distance(a: Hyperedge, b: Hyperedge, hg: Hypergraph, neighborhoods=None) -> float:
    """Ahn-style link distance generalised to hyperedges.

    Compares the inclusive neighbourhoods of the two sides of the symmetric
    difference. Nested hyperedges (one side empty) are at distance 0.
    """
    nbrs = neighborhoods if neighborhoods is not None else inclusive_neighborhoods(hg)
    only_a = set(a) - set(b)
    only_b = set(b) - set(a)
    if not only_a or not only_b:
        return 0.0
    na = frozenset().union(*(nbrs[v] for v in only_a))
    nb = frozenset().union(*(nbrs[v] for v in only_b))
    return 1.0 - len(na & nb) / len(na | nb)


# Worker state is installed before forking so children inherit it instead of
# receiving pickled copies.
_STATE: dict = {}


def _prepare(hg: Hypergraph, metric: str) -> dict:
    masks = [sum(1 << v for v in e) for e in hg.edges]
    state = {
        "edges": hg.edges,
        "masks": masks,
        "sizes": [len(e) for e in hg.edges],
        "index": build_inverted_index(hg),
        "metric": metric,
    }
    if metric == "ahn":
        nbr = [1 << v for v in range(hg.n_nodes)]
        for e, m in zip(hg.edges, masks):
            for v in e:
                nbr[v] |= m
        state["nbr"] = nbr
    return state


def _join_nodes(nodes: Sequence[int], state: dict | None = None):
    st = state if state is not None else _STATE
    masks, sizes, index, edges = st["masks"], st["sizes"], st["index"], st["edges"]
    ahn = st["metric"] == "ahn"
    nbr = st.get("nbr")
    out_i: list[int] = []
    out_j: list[int] = []
    out_d: list[float] = []
    for v in nodes:
        bucket = index[v]
        below = (1 << v) - 1
        for pos, a in enumerate(bucket):
            ma = masks[a]
            for b in bucket[pos + 1:]:
                mb = masks[b]
                inter = ma & mb
                if inter & below:
                    continue  # pair already emitted from a lower shared node
                if ahn:
                    out_d.append(_ahn_masks(edges[a], edges[b], ma, mb, nbr))
                else:
                    c = inter.bit_count()
                    out_d.append(1.0 - c / (sizes[a] + sizes[b] - c))
                out_i.append(a)
                out_j.append(b)
    return (
        np.array(out_i, dtype=np.int64),
        np.array(out_j, dtype=np.int64),
        np.array(out_d, dtype=np.float64),
    )


def _ahn_masks(ea, eb, ma, mb, nbr) -> float:
    na = 0
    for v in ea:
        if not (mb >> v) & 1:
            na |= nbr[v]
    nb = 0
    for v in eb:
        if not (ma >> v) & 1:
            nb |= nbr[v]
    if not na or not nb:
        return 0.0
    return 1.0 - (na & nb).bit_count() / (na | nb).bit_count()


def _partition(index: list[list[int]], n_chunks: int) -> list[list[int]]:
    """Greedy longest-processing-time split of nodes by quadratic bucket cost."""
    order = sorted(range(len(index)), key=lambda v: (-len(index[v]) ** 2, v))
    loads = [0] * n_chunks
    chunks: list[list[int]] = [[] for _ in range(n_chunks)]
    for v in order:
        k = loads.index(min(loads))
        chunks[k].append(v)
        loads[k] += len(index[v]) ** 2
    return [c for c in chunks if c]


def compute_sparse_distances(hg: Hypergraph, metric: str = "jaccard", workers: int = 1) -> SparseDistances:
    """Distances for every pair of hyperedges sharing a node.

    Output is canonically sorted by ``(i, j)`` and identical for any
    ``workers``.
    """
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}; expected one of {METRICS}")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    state = _prepare(hg, metric)
    if workers == 1 or hg.n_edges < 2:
        parts = [_join_nodes(range(hg.n_nodes), state)]
    else:
        chunks = _partition(state["index"], workers * 4)
        global _STATE
        _STATE = state
        try:
            with mp.get_context("fork").Pool(workers) as pool:
                parts = pool.map(_join_nodes, chunks)
        finally:
            _STATE = {}
    i = np.concatenate([p[0] for p in parts]) if parts else np.empty(0, np.int64)
    j = np.concatenate([p[1] for p in parts]) if parts else np.empty(0, np.int64)
    d = np.concatenate([p[2] for p in parts]) if parts else np.empty(0, np.float64)
    order = np.lexsort((j, i))
    return SparseDistances(hg.n_edges, i[order], j[order], d[order], metric)


def pearson_correlation(first: SparseDistances, second: SparseDistances,
                        all_pairs: bool = False) -> tuple[float, int]:
    """Pearson r between two distance sets on the same hypergraph.

    By default r is taken over the union of listed pairs; a pair listed in
    only one set takes the other's implicit distance. With ``all_pairs`` every
    unordered hyperedge pair counts, unlisted ones at the implicit distances.
    Returns ``(r, n_pairs)``.
    """
    if first.n_edges != second.n_edges:
        raise ValueError("distance sets come from hypergraphs of different size")
    n = max(first.n_edges, 1)
    k1 = first.i * n + first.j
    k2 = second.i * n + second.j
    keys = np.union1d(k1, k2)
    x = np.full(len(keys), first.implicit_distance)
    y = np.full(len(keys), second.implicit_distance)
    x[np.searchsorted(keys, k1)] = first.d
    y[np.searchsorted(keys, k2)] = second.d
    n_pairs = first.n_edges * (first.n_edges - 1) // 2 if all_pairs else len(keys)
    if n_pairs < 2:
        raise UndefinedError(f"correlation needs at least 2 pairs, got {n_pairs}")
    # shift by the implicit distances so unlisted pairs contribute zeros
    xs = x - first.implicit_distance
    ys = y - second.implicit_distance
    sx, sy = xs.sum(), ys.sum()
    qx, qy = float(xs @ xs), float(ys @ ys)
    sxx = qx - sx * sx / n_pairs
    syy = qy - sy * sy / n_pairs
    sxy = float(xs @ ys) - sx * sy / n_pairs
    if sxx <= 1e-12 * qx or syy <= 1e-12 * qy:
        raise UndefinedError("correlation undefined: a distance series has zero variance")
    return sxy / np.sqrt(sxx * syy), int(n_pairs)
