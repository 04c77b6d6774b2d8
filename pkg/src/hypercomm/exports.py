"""Delimited-text writers and readers for every artifact the CLI emits.

Floats are written with ``repr`` so that reading a file back gives the
exact same values.
"""
from __future__ import annotations

import csv
import math
from typing import Iterable, Mapping, TextIO

import numpy as np

from .cartography import Boundaries, CartographyPoint
from .core import Hypergraph
from .dendrogram import Dendrogram, FlatClustering, Merge
from .distances import SparseDistances
from .errors import ParseError
from .membership import MembershipVector, RoleSimilarityMatrix
from .scales import CutStatistics, Fingerprint


def _f(x: float) -> str:
    return repr(float(x))


def _rows(fh: TextIO):
    """CSV rows with ``#`` comment lines stripped; returns (comments, header, rows)."""
    comments, body = [], []
    for line in fh:
        if line.startswith("#"):
            comments.append(line[1:].strip())
        elif line.strip():
            body.append(line)
    rows = list(csv.reader(body))
    if not rows:
        raise ParseError("missing header row")
    return comments, rows[0], rows[1:]


def _meta(comments: Iterable[str]) -> dict[str, str]:
    out = {}
    for c in comments:
        for tok in c.split():
            if "=" in tok:
                k, v = tok.split("=", 1)
                out[k] = v
    return out


# distances

def write_distances(fh: TextIO, dist: SparseDistances) -> None:
    fh.write(f"# metric={dist.metric} n_edges={dist.n_edges} implicit_distance={_f(dist.implicit_distance)}\n")
    fh.write("i,j,d\n")
    for a, b, d in dist.entries():
        fh.write(f"{a},{b},{_f(d)}\n")


def read_distances(fh: TextIO) -> SparseDistances:
    comments, header, rows = _rows(fh)
    meta = _meta(comments)
    if header != ["i", "j", "d"]:
        raise ParseError(f"unexpected distance header {header}")
    i = np.array([int(r[0]) for r in rows], dtype=np.int64)
    j = np.array([int(r[1]) for r in rows], dtype=np.int64)
    d = np.array([float(r[2]) for r in rows], dtype=np.float64)
    return SparseDistances(int(meta["n_edges"]), i, j, d, meta.get("metric", "jaccard"),
                           float(meta.get("implicit_distance", 1.0)))


# dendrogram

def write_dendrogram(fh: TextIO, dendro: Dendrogram, key: str = "") -> None:
    fh.write(f"# leaf_count={dendro.leaf_count} key={key}\n")
    fh.write("left,right,height,size\n")
    for m in dendro.merges:
        fh.write(f"{m.left},{m.right},{_f(m.height)},{m.size}\n")


def read_dendrogram(fh: TextIO) -> tuple[Dendrogram, str]:
    comments, header, rows = _rows(fh)
    meta = _meta(comments)
    if header != ["left", "right", "height", "size"]:
        raise ParseError(f"unexpected dendrogram header {header}")
    merges = tuple(Merge(int(r[0]), int(r[1]), float(r[2]), int(r[3])) for r in rows)
    return Dendrogram(int(meta["leaf_count"]), merges), meta.get("key", "")


# flat clustering

def write_clustering(fh: TextIO, fc: FlatClustering) -> None:
    fh.write(f"# threshold={_f(fc.threshold)}\n")
    fh.write("hyperedge_index,community_id\n")
    for e, c in enumerate(fc.labels):
        fh.write(f"{e},{c}\n")


def write_communities(fh: TextIO, fc: FlatClustering, hg: Hypergraph | None = None) -> None:
    """Sidecar listing each community's hyperedges (space separated indices)."""
    fh.write(f"# threshold={_f(fc.threshold)}\n")
    fh.write("community_id,size,hyperedges\n")
    for c, members in enumerate(fc.communities()):
        fh.write(f"{c},{len(members)},{' '.join(map(str, members))}\n")


def read_clustering(fh: TextIO) -> FlatClustering:
    comments, header, rows = _rows(fh)
    if header != ["hyperedge_index", "community_id"]:
        raise ParseError(f"unexpected clustering header {header}")
    labels = [0] * len(rows)
    for r in rows:
        labels[int(r[0])] = int(r[1])
    return FlatClustering(float(_meta(comments)["threshold"]), tuple(labels))


# scales

def write_fingerprint(fh: TextIO, fp: Fingerprint, grid: list[tuple[float, int]] | None = None) -> None:
    fh.write(f"# leaf_count={fp.leaf_count} sampling={'grid' if grid is not None else 'merge_heights'}\n")
    fh.write("threshold,community_count\n")
    for t, c in (grid if grid is not None else fp.points):
        fh.write(f"{_f(t)},{c}\n")


def read_fingerprint(fh: TextIO) -> Fingerprint:
    comments, header, rows = _rows(fh)
    if header != ["threshold", "community_count"]:
        raise ParseError(f"unexpected fingerprint header {header}")
    return Fingerprint(int(_meta(comments)["leaf_count"]), tuple((float(r[0]), int(r[1])) for r in rows))


def write_cut_statistics(fh: TextIO, stats: list[CutStatistics]) -> None:
    fh.write("threshold,community_id,size\n")
    for s in stats:
        for c, size in enumerate(s.community_sizes):
            fh.write(f"{_f(s.threshold)},{c},{size}\n")


def read_cut_statistics(fh: TextIO) -> list[CutStatistics]:
    _, header, rows = _rows(fh)
    if header != ["threshold", "community_id", "size"]:
        raise ParseError(f"unexpected cut statistics header {header}")
    grouped: dict[float, list[tuple[int, int]]] = {}
    for r in rows:
        grouped.setdefault(float(r[0]), []).append((int(r[1]), int(r[2])))
    return [CutStatistics(t, tuple(s for _, s in sorted(v))) for t, v in grouped.items()]


# membership

def write_memberships(fh: TextIO, vectors: Mapping[int, MembershipVector], hg: Hypergraph) -> None:
    fh.write("node,community_id,count\n")
    for v, mv in vectors.items():
        for c, k in mv.counts.items():
            fh.write(f"{hg.labels[v]},{c},{k}\n")


def read_memberships(fh: TextIO, hg: Hypergraph) -> dict[int, MembershipVector]:
    _, header, rows = _rows(fh)
    if header != ["node", "community_id", "count"]:
        raise ParseError(f"unexpected membership header {header}")
    counts: dict[int, dict[int, int]] = {}
    for r in rows:
        counts.setdefault(hg.index_of(r[0]), {})[int(r[1])] = int(r[2])
    return {v: MembershipVector(v, c) for v, c in counts.items()}


def write_histogram(fh: TextIO, hist: Mapping[int, int], value_name: str) -> None:
    fh.write(f"{value_name},frequency\n")
    for k, f in hist.items():
        fh.write(f"{k},{f}\n")


def read_histogram(fh: TextIO) -> dict[int, int]:
    _, _, rows = _rows(fh)
    return {int(r[0]): int(r[1]) for r in rows}


def write_role_matrix(fh: TextIO, m: RoleSimilarityMatrix) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["role", *m.roles])
    for r, row in zip(m.roles, m.values):
        w.writerow([r, *("" if math.isnan(x) else _f(x) for x in row)])


def read_role_matrix(fh: TextIO) -> RoleSimilarityMatrix:
    _, header, rows = _rows(fh)
    roles = tuple(header[1:])
    values = np.array([[float(x) if x != "" else np.nan for x in r[1:]] for r in rows], dtype=float)
    return RoleSimilarityMatrix(roles, values.reshape(len(roles), len(roles)))


def write_entropies(fh: TextIO, per_node: Mapping[int, float], hg: Hypergraph) -> None:
    fh.write("node,role_label,entropy\n")
    for v, h in per_node.items():
        fh.write(f"{hg.labels[v]},{hg.roles.get(v, '')},{_f(h)}\n")


def write_role_entropies(fh: TextIO, by_role: Mapping[str, float], n_nodes: Mapping[str, int]) -> None:
    fh.write("role,mean_entropy,n_nodes\n")
    for r, h in by_role.items():
        fh.write(f"{r},{_f(h)},{n_nodes.get(r, 0)}\n")


def read_role_entropies(fh: TextIO) -> dict[str, float]:
    _, _, rows = _rows(fh)
    return {r[0]: float(r[1]) for r in rows}


# cartography

CARTO_COLUMNS = ["node", "role_label", "hyperdegree", "participation", "degree_class", "participation_class"]


def write_cartography(fh: TextIO, points: list[CartographyPoint], bounds: Boundaries, hg: Hypergraph,
                      threshold: float, uncorrected: bool = False) -> None:
    fh.write(f"# threshold={_f(threshold)} percentiles=per_dataset method=nearest_rank "
             f"participation_form={'uncorrected' if uncorrected else 'normalized'}\n")
    fh.write(f"# degree_p33={_f(bounds.degree[0])} degree_p66={_f(bounds.degree[1])} "
             f"participation_p33={_f(bounds.participation[0])} participation_p66={_f(bounds.participation[1])}\n")
    fh.write(",".join(CARTO_COLUMNS) + "\n")
    for p in points:
        fh.write(f"{hg.labels[p.node]},{p.role or ''},{p.hyperdegree},{_f(p.participation)},"
                 f"{p.degree_class},{p.participation_class}\n")


def read_cartography(fh: TextIO, hg: Hypergraph) -> tuple[list[CartographyPoint], Boundaries]:
    comments, header, rows = _rows(fh)
    if header != CARTO_COLUMNS:
        raise ParseError(f"unexpected cartography header {header}")
    meta = _meta(comments)
    bounds = Boundaries(
        (float(meta["degree_p33"]), float(meta["degree_p66"])),
        (float(meta["participation_p33"]), float(meta["participation_p66"])),
    )
    pts = [
        CartographyPoint(hg.index_of(r[0]), int(r[2]), float(r[3]), r[4], r[5], r[1] or None)
        for r in rows
    ]
    return pts, bounds
