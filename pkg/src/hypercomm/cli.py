"""Command-line entry point: ``hypercomm <subcommand> INPUT [options]``.

Exit codes: 0 success, 1 usage error, 2 input error, 3 internal invariant
violation.
"""
from __future__ import annotations

import argparse
import hashlib
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import exports
from .cartography import cartography_table
from .core import Hypergraph, load, size_profile
from .dendrogram import Dendrogram, average_linkage, cut, merge_heights, single_linkage
from .distances import compute_sparse_distances, pearson_correlation
from .errors import EmptyInputError, HypercommError, InvariantViolation, UndefinedError
from .membership import (
    binary_memberships,
    membership_distributions,
    membership_vectors,
    node_entropy,
    role_entropy,
    role_similarity_matrix,
)
from .scales import cut_statistics, fingerprint, resample, spikiness_profile, suggest_cuts

log = logging.getLogger("hypercomm")

EXIT_USAGE, EXIT_INPUT, EXIT_INVARIANT = 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    input: Path
    roles: Path | None = None
    delimiter: str = ","
    metric: str = "jaccard"
    linkage: str = "single"
    thresholds: list[float] | str | None = None  # list, "all-heights", or None
    out: Path = Path("hypercomm-out")
    workers: int = 1
    min_size: int = 1
    uncorrected_participation: bool = False
    grid_step: float | None = None
    dump_distances: bool = False
    average_limit: int = 5000
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.workers < 1:
            raise UsageError("--workers must be >= 1")
        if isinstance(self.thresholds, list) and any(not 0.0 <= t <= 1.0 for t in self.thresholds):
            raise UsageError("thresholds must lie in [0, 1]")

    def cache_key(self) -> str:
        h = hashlib.sha256(Path(self.input).read_bytes())
        h.update(f"|{self.delimiter}|{self.metric}|{self.linkage}|{self.min_size}".encode())
        return h.hexdigest()[:16]


def _load(cfg: RunConfig) -> Hypergraph:
    hg = load(cfg.input, cfg.delimiter, cfg.roles)
    if cfg.min_size > 1:
        hg = hg.filter_min_size(cfg.min_size)
    if hg.n_edges == 0:
        raise EmptyInputError(f"{cfg.input}: no hyperedges")
    return hg


def _dendrogram(cfg: RunConfig, hg: Hypergraph, write: bool = True) -> Dendrogram:
    """Load the cached dendrogram if its key matches, else compute (and cache) it."""
    path = cfg.out / "dendrogram.csv"
    key = cfg.cache_key()
    if path.exists():
        with open(path) as fh:
            dendro, cached_key = exports.read_dendrogram(fh)
        if cached_key == key and dendro.leaf_count == hg.n_edges:
            log.info("using cached dendrogram %s", path)
            return dendro
    dist = compute_sparse_distances(hg, cfg.metric, cfg.workers)
    if cfg.dump_distances:
        with open(cfg.out / "distances.csv", "w") as fh:
            exports.write_distances(fh, dist)
    if cfg.linkage == "single":
        dendro = single_linkage(dist)
    else:
        dendro = average_linkage(dist, cfg.average_limit)
    dendro.validate()
    if write:
        with open(path, "w") as fh:
            exports.write_dendrogram(fh, dendro, key)
    return dendro


def _one_threshold(cfg: RunConfig, cmd: str) -> float:
    if not isinstance(cfg.thresholds, list) or len(cfg.thresholds) != 1:
        raise UsageError(f"{cmd} requires exactly one --threshold (no default cut is assumed)")
    return cfg.thresholds[0]


def _tag(t: float) -> str:
    return repr(float(t))


def cmd_stats(cfg: RunConfig) -> int:
    hg = _load(cfg)
    sp = size_profile(hg)
    sizes = range(2, 6)
    print("dataset,N,E," + ",".join(f"E{k}" for k in sizes) + ",duplicates_collapsed")
    print(f"{Path(cfg.input).stem},{sp.node_count},{sp.edge_count},"
          + ",".join(str(sp.edges_by_size.get(k, 0)) for k in sizes)
          + f",{hg.n_duplicates}")
    other = {k: v for k, v in sp.edges_by_size.items() if k not in sizes}
    if other:
        print("# other sizes: " + " ".join(f"{k}:{v}" for k, v in other.items()))
    return 0


def cmd_cluster(cfg: RunConfig) -> int:
    hg = _load(cfg)
    path = cfg.out / "dendrogram.csv"
    if path.exists():
        path.unlink()
    dendro = _dendrogram(cfg, hg)
    print(f"wrote {path} ({dendro.leaf_count} leaves, {len(merge_heights(dendro))} distinct heights)")
    return 0


def cmd_cut(cfg: RunConfig) -> int:
    hg = _load(cfg)
    if not isinstance(cfg.thresholds, list) or not cfg.thresholds:
        raise UsageError("cut requires at least one --threshold")
    dendro = _dendrogram(cfg, hg)
    for t in cfg.thresholds:
        fc = cut(dendro, t)
        with open(cfg.out / f"clustering_t{_tag(t)}.csv", "w") as fh:
            exports.write_clustering(fh, fc)
        with open(cfg.out / f"communities_t{_tag(t)}.csv", "w") as fh:
            exports.write_communities(fh, fc)
        print(f"threshold {t}: {fc.n_communities} communities")
    return 0


def cmd_fingerprint(cfg: RunConfig) -> int:
    hg = _load(cfg)
    dendro = _dendrogram(cfg, hg)
    fp = fingerprint(dendro)
    with open(cfg.out / "fingerprint.csv", "w") as fh:
        exports.write_fingerprint(fh, fp)
    if cfg.grid_step:
        with open(cfg.out / "fingerprint_grid.csv", "w") as fh:
            exports.write_fingerprint(fh, fp, resample(fp, cfg.grid_step))
    if cfg.thresholds == "all-heights":
        ts = sorted({0.0, *merge_heights(dendro)})
    elif isinstance(cfg.thresholds, list) and cfg.thresholds:
        ts = cfg.thresholds
    else:
        ts = suggest_cuts(fp)
    with open(cfg.out / "cut_statistics.csv", "w") as fh:
        exports.write_cut_statistics(fh, cut_statistics(dendro, ts))
    distinct, drop = spikiness_profile(fp)
    print(f"merges={fp.n_merges} distinct_heights={distinct} max_drop_fraction={drop:.6f} "
          f"(spikiness is an ad hoc summary) cuts={','.join(_tag(t) for t in ts)}")
    return 0


def _vectors(cfg: RunConfig, cmd: str):
    hg = _load(cfg)
    t = _one_threshold(cfg, cmd)
    fc = cut(_dendrogram(cfg, hg), t)
    return hg, t, fc, membership_vectors(hg, fc)


def cmd_membership(cfg: RunConfig) -> int:
    hg, t, fc, vectors = _vectors(cfg, "membership")
    with open(cfg.out / f"memberships_t{_tag(t)}.csv", "w") as fh:
        exports.write_memberships(fh, vectors, hg)
    sizes, per_node = membership_distributions(vectors)
    with open(cfg.out / f"community_sizes_t{_tag(t)}.csv", "w") as fh:
        exports.write_histogram(fh, sizes, "community_size")
    with open(cfg.out / f"memberships_per_node_t{_tag(t)}.csv", "w") as fh:
        exports.write_histogram(fh, per_node, "memberships")
    print(f"threshold {t}: {fc.n_communities} communities over {len(vectors)} nodes")
    return 0


def _require_roles(hg: Hypergraph, cmd: str) -> None:
    if not hg.roles:
        raise UsageError(f"{cmd} requires --roles")


def cmd_similarity(cfg: RunConfig) -> int:
    hg, t, _, vectors = _vectors(cfg, "similarity")
    _require_roles(hg, "similarity")
    m = role_similarity_matrix(binary_memberships(vectors), hg.roles)
    with open(cfg.out / f"role_similarity_t{_tag(t)}.csv", "w") as fh:
        exports.write_role_matrix(fh, m)
    print(f"wrote {len(m.roles)}x{len(m.roles)} role similarity matrix")
    return 0


def cmd_entropy(cfg: RunConfig) -> int:
    hg, t, _, vectors = _vectors(cfg, "entropy")
    per_node = {v: node_entropy(mv) for v, mv in vectors.items()}
    with open(cfg.out / f"node_entropy_t{_tag(t)}.csv", "w") as fh:
        exports.write_entropies(fh, per_node, hg)
    if hg.roles:
        by_role = role_entropy(vectors, hg.roles)
        n_nodes: dict[str, int] = {}
        for v, r in hg.roles.items():
            if v in vectors:
                n_nodes[r] = n_nodes.get(r, 0) + 1
        with open(cfg.out / f"role_entropy_t{_tag(t)}.csv", "w") as fh:
            exports.write_role_entropies(fh, by_role, n_nodes)
        for r, h in by_role.items():
            print(f"{r}\t{h:.6f}")
    return 0


def cmd_cartography(cfg: RunConfig) -> int:
    hg, t, fc, _ = _vectors(cfg, "cartography")
    points, bounds = cartography_table(hg, fc, cfg.uncorrected_participation)
    with open(cfg.out / f"cartography_t{_tag(t)}.csv", "w") as fh:
        exports.write_cartography(fh, points, bounds, hg, t, cfg.uncorrected_participation)
    print(f"classified {len(points)} nodes; degree tertiles {bounds.degree}, "
          f"participation tertiles {bounds.participation}")
    return 0


def cmd_correlate(cfg: RunConfig) -> int:
    hg = _load(cfg)
    jac = compute_sparse_distances(hg, "jaccard", cfg.workers)
    ahn = compute_sparse_distances(hg, "ahn", cfg.workers)
    r, n = pearson_correlation(jac, ahn)
    r_all, n_all = pearson_correlation(jac, ahn, all_pairs=True)
    print("convention,r,n_pairs")
    print(f"listed_pairs,{r:.6f},{n}")
    print(f"all_pairs,{r_all:.6f},{n_all}")
    return 0


COMMANDS = {
    "stats": cmd_stats,
    "cluster": cmd_cluster,
    "cut": cmd_cut,
    "fingerprint": cmd_fingerprint,
    "membership": cmd_membership,
    "similarity": cmd_similarity,
    "entropy": cmd_entropy,
    "cartography": cmd_cartography,
    "correlate": cmd_correlate,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _threshold(s: str) -> float:
    t = float(s)
    if not 0.0 <= t <= 1.0:
        raise argparse.ArgumentTypeError(f"threshold {s} outside [0, 1]")
    return t


HELP = {
    "stats": "node, hyperedge and size counts",
    "cluster": "build and cache the dendrogram",
    "cut": "flat clusterings at the given thresholds",
    "fingerprint": "community count against threshold",
    "membership": "per-node membership counts and histograms",
    "similarity": "role-by-role membership similarity",
    "entropy": "membership entropy per node and per role",
    "cartography": "hyperdegree/participation classes per node",
    "correlate": "pearson r between jaccard and ahn distances",
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", type=Path, help="hyperedge list, one hyperedge per line")
    common.add_argument("--roles", type=Path, help="node,role file")
    common.add_argument("--delimiter", default=",")
    common.add_argument("--metric", choices=("jaccard", "ahn"), default="jaccard")
    common.add_argument("--linkage", choices=("single", "average"), default="single")
    common.add_argument("--average-limit", type=int, default=5000,
                        help="maximum hyperedges for average linkage (dense matrix)")
    common.add_argument("--threshold", "-t", dest="thresholds", type=_threshold, action="append",
                        help="cut threshold; repeatable")
    common.add_argument("--all-heights", action="store_true",
                        help="fingerprint: cut statistics at every merge height")
    common.add_argument("--out", "-o", type=Path, default=Path("hypercomm-out"))
    common.add_argument("--workers", "-j", type=int, default=1)
    common.add_argument("--min-size", type=int, default=1, help="drop hyperedges smaller than this")
    common.add_argument("--uncorrected-participation", action="store_true",
                        help="participation without the '1 -' term (not bounded by 1)")
    common.add_argument("--grid-step", type=float, help="also write a uniformly resampled fingerprint")
    common.add_argument("--dump-distances", action="store_true", help="write distances.csv (i,j,d)")
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="hypercomm", description="Hyperlink community analysis of hypergraphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=HELP[name])
    return p


def config_from_args(args: argparse.Namespace) -> RunConfig:
    thresholds = "all-heights" if args.all_heights else args.thresholds
    return RunConfig(
        input=args.input, roles=args.roles, delimiter=args.delimiter, metric=args.metric,
        linkage=args.linkage, thresholds=thresholds, out=args.out, workers=args.workers,
        min_size=args.min_size, uncorrected_participation=args.uncorrected_participation,
        grid_step=args.grid_step, dump_distances=args.dump_distances, average_limit=args.average_limit,
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = config_from_args(args)
        cfg.out.mkdir(parents=True, exist_ok=True)
        return COMMANDS[args.command](cfg)
    except UsageError as exc:
        print(f"hypercomm: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantViolation as exc:
        print(f"hypercomm: internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (HypercommError, OSError, ValueError) as exc:
        print(f"hypercomm: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
