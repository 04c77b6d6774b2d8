"""Single-linkage clustering of hyperedges and flat cuts of the dendrogram.

Cluster ids follow the usual linkage-table convention: leaves are
``0..n-1`` and merge ``k`` creates cluster ``n + k``.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import groupby

import numpy as np

from .distances import SparseDistances
from .errors import EmptyInputError, InvariantViolation


@dataclass(frozen=True)
class Merge:
    left: int
    right: int
    height: float
    size: int


@dataclass(frozen=True)
class Dendrogram:
    leaf_count: int
    merges: tuple[Merge, ...]

    def validate(self) -> None:
        n = self.leaf_count
        if len(self.merges) != max(n - 1, 0):
            raise InvariantViolation(f"expected {n - 1} merges, found {len(self.merges)}")
        sizes = [1] * n
        used = set()
        last = -np.inf
        for k, m in enumerate(self.merges):
            if m.height < last:
                raise InvariantViolation(f"merge {k} height decreases")
            last = m.height
            for c in (m.left, m.right):
                if c in used or c >= n + k:
                    raise InvariantViolation(f"merge {k} reuses or forward-references cluster {c}")
                used.add(c)
            if m.size != sizes[m.left] + sizes[m.right]:
                raise InvariantViolation(f"merge {k} has wrong size")
            sizes.append(m.size)

    def linkage_matrix(self) -> np.ndarray:
        """The merges as an ``(n-1, 4)`` float array, usable with scipy's hierarchy tools."""
        return np.array([[m.left, m.right, m.height, m.size] for m in self.merges], dtype=float).reshape(-1, 4)


@dataclass(frozen=True)
class FlatClustering:
    threshold: float
    labels: tuple[int, ...]  # labels[e] is the community of hyperedge e

    @property
    def n_communities(self) -> int:
        return max(self.labels) + 1 if self.labels else 0

    def communities(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.n_communities)]
        for e, c in enumerate(self.labels):
            out[c].append(e)
        return out

    def as_partition(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(c) for c in self.communities())


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root


def single_linkage(dist: SparseDistances, leaf_count: int | None = None) -> Dendrogram:
    """Single-linkage dendrogram from sparse distances (unlisted pairs at 1).

    Equal-height merges are applied in order of the smallest
    ``(min cluster id, max cluster id)`` among the candidate pairs, so the
    merge table is fully determined by the input.
    """
    n = dist.n_edges if leaf_count is None else leaf_count
    if n < 1:
        raise EmptyInputError("cannot cluster an empty set of hyperedges")
    implicit = dist.implicit_distance

    order = np.lexsort((dist.j, dist.i, dist.d))
    ds = dist.d[order].tolist()
    ii = dist.i[order].tolist()
    jj = dist.j[order].tolist()

    uf = _UnionFind(n)
    cid = list(range(n))  # union-find root -> current cluster id
    sizes = [1] * n
    merges: list[Merge] = []

    def merge(a: int, b: int, h: float) -> int:
        lo, hi = (a, b) if a < b else (b, a)
        new = n + len(merges)
        size = sizes[lo] + sizes[hi]
        merges.append(Merge(lo, hi, h, size))
        sizes.append(size)
        return new

    pos = 0
    for h, group in groupby(range(len(ds)), key=ds.__getitem__):
        if h >= implicit:
            break
        # cluster-level adjacency induced by this height's pairs
        adj: dict[int, set[int]] = {}
        roots_of: dict[int, int] = {}
        for k in group:
            ra, rb = uf.find(ii[k]), uf.find(jj[k])
            if ra == rb:
                continue
            ca, cb = cid[ra], cid[rb]
            roots_of[ca], roots_of[cb] = ra, rb
            adj.setdefault(ca, set()).add(cb)
            adj.setdefault(cb, set()).add(ca)
        if not adj:
            continue
        heap = [(a, b) for a, nb in adj.items() for b in nb if a < b]
        heapq.heapify(heap)
        alive = set(adj)
        while heap:
            a, b = heapq.heappop(heap)
            if a not in alive or b not in alive:
                continue
            new = merge(a, b, h)
            alive.discard(a)
            alive.discard(b)
            na, nb = adj.pop(a), adj.pop(b)
            if len(na) < len(nb):
                na, nb = nb, na
            na |= nb
            na.discard(a)
            na.discard(b)
            for c in na:
                adj[c].discard(a)
                adj[c].discard(b)
                adj[c].add(new)
                heapq.heappush(heap, (c, new))
            adj[new] = na
            alive.add(new)
            ra, rb = roots_of.pop(a), roots_of.pop(b)
            uf.parent[rb] = ra
            cid[ra] = new
            roots_of[new] = ra

    # remaining clusters are pairwise at the implicit distance
    remaining = sorted({cid[uf.find(x)] for x in range(n)})
    heapq.heapify(remaining)
    while len(remaining) > 1:
        a = heapq.heappop(remaining)
        b = heapq.heappop(remaining)
        heapq.heappush(remaining, merge(a, b, implicit))
    return Dendrogram(n, tuple(merges))


def average_linkage(dist: SparseDistances, max_edges: int = 5000) -> Dendrogram:
    """Average-linkage dendrogram on the densified matrix (scipy backend)."""
    from scipy.cluster.hierarchy import linkage
    from scipy.spatial.distance import squareform

    n = dist.n_edges
    if n < 1:
        raise EmptyInputError("cannot cluster an empty set of hyperedges")
    if n > max_edges:
        raise ValueError(f"average linkage is limited to {max_edges} hyperedges (got {n})")
    if n == 1:
        return Dendrogram(1, ())
    z = linkage(squareform(dist.dense(), checks=False), method="average")
    return Dendrogram(n, tuple(Merge(int(a), int(b), float(h), int(s)) for a, b, h, s in z))


def _canonical(roots: list[int]) -> tuple[int, ...]:
    relabel: dict[int, int] = {}
    return tuple(relabel.setdefault(r, len(relabel)) for r in roots)


def cut(dendro: Dendrogram, threshold: float) -> FlatClustering:
    """Apply every merge with height <= threshold.

    Community ids are numbered by the smallest hyperedge they contain.
    """
    n = dendro.leaf_count
    uf = _UnionFind(2 * n)
    for k, m in enumerate(dendro.merges):
        if m.height > threshold:
            continue
        uf.parent[uf.find(m.left)] = n + k
        uf.parent[uf.find(m.right)] = n + k
    return FlatClustering(threshold, _canonical([uf.find(e) for e in range(n)]))


def merge_heights(dendro: Dendrogram) -> list[float]:
    return sorted({m.height for m in dendro.merges})
