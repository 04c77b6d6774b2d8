"""Multiscale summaries of a dendrogram: the community-count fingerprint and
community-size statistics at chosen cuts."""
from __future__ import annotations

from bisect import bisect_right
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .dendrogram import Dendrogram, cut


@dataclass(frozen=True)
class Fingerprint:
    """Step function ``threshold -> number of communities``.

    ``points[k] = (t, c)`` means ``c`` communities on ``[t, t_next)``.
    """

    leaf_count: int
    points: tuple[tuple[float, int], ...]

    def count_at(self, t: float) -> int:
        k = bisect_right([p[0] for p in self.points], t) - 1
        return self.leaf_count if k < 0 else self.points[k][1]

    @property
    def n_merges(self) -> int:
        return self.leaf_count - self.points[-1][1] if self.points else 0


@dataclass(frozen=True)
class CutStatistics:
    threshold: float
    community_sizes: tuple[int, ...]  # indexed by community id


def fingerprint(dendro: Dendrogram) -> Fingerprint:
    n = dendro.leaf_count
    per_height = Counter(m.height for m in dendro.merges)
    points = []
    remaining = n
    if 0.0 not in per_height:
        points.append((0.0, n))
    for h in sorted(per_height):
        remaining -= per_height[h]
        points.append((float(h), remaining))
    return Fingerprint(n, tuple(points))


def resample(fp: Fingerprint, step: float = 0.01) -> list[tuple[float, int]]:
    """Fingerprint evaluated on a uniform grid over [0, 1]."""
    n_steps = int(round(1.0 / step))
    return [(round(k * step, 12), fp.count_at(round(k * step, 12))) for k in range(n_steps + 1)]


def spikiness_profile(fp: Fingerprint) -> tuple[int, float]:
    """``(distinct heights with a count change, largest single drop / leaf_count)``.

    An ad hoc scalar summary: proximity-style hypergraphs collapse in a few
    big steps, affiliation-style ones in many small ones.
    """
    prev = fp.leaf_count
    changes = 0
    max_drop = 0
    for _, c in fp.points:
        if c != prev:
            changes += 1
            max_drop = max(max_drop, prev - c)
        prev = c
    return changes, (max_drop / fp.leaf_count if fp.leaf_count else 0.0)


def suggest_cuts(fp: Fingerprint, k: int = 3) -> list[float]:
    """The ``k`` thresholds with the largest drops in community count, ascending."""
    prev = fp.leaf_count
    drops = []
    for t, c in fp.points:
        if c != prev:
            drops.append((prev - c, t))
        prev = c
    best = sorted(drops, key=lambda x: (-x[0], x[1]))[:k]
    return sorted(t for _, t in best)


def cut_statistics(dendro: Dendrogram, thresholds) -> list[CutStatistics]:
    out = []
    for t in thresholds:
        if not 0.0 <= t <= 1.0:
            raise ValueError(f"threshold {t} outside [0, 1]")
        labels = cut(dendro, t).labels
        sizes = np.bincount(np.asarray(labels, dtype=np.int64)) if labels else np.empty(0, int)
        out.append(CutStatistics(float(t), tuple(sizes.tolist())))
    return out
