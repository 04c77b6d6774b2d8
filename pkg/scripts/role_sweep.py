"""Role-level overlap statistics across every distinct merge height of one fixture.

For each cut prints the role mean entropies, the within/between role
similarity of binary memberships, and how each role spreads over the
cartography classes.

    python scripts/role_sweep.py hospital --focus NUR PAT
"""
from __future__ import annotations

import argparse
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from hypercomm import load
from hypercomm.cartography import cartography_table
from hypercomm.dendrogram import cut, merge_heights, single_linkage
from hypercomm.distances import compute_sparse_distances
from hypercomm.membership import binary_memberships, membership_vectors, role_entropy, role_similarity_matrix

DATA = Path(__file__).resolve().parent.parent / "data"


@dataclass
class Config:
    dataset: str = "hospital"
    focus: tuple[str, str] = ("NUR", "PAT")
    max_cuts: int = 8


def run(cfg: Config) -> None:
    hg = load(DATA / f"{cfg.dataset}.txt", roles_path=DATA / f"{cfg.dataset}_roles.txt")
    d = single_linkage(compute_sparse_distances(hg))
    a, b = cfg.focus
    heights = sorted(set(merge_heights(d)))[: cfg.max_cuts]
    print(f"threshold,communities,H_{a},H_{b},S_{a}{a},S_{a}{b},S_{b}{b}")
    for t in heights:
        fc = cut(d, t)
        vecs = membership_vectors(hg, fc)
        ent = role_entropy(vecs, hg.roles)
        sim = role_similarity_matrix(binary_memberships(vecs), hg.roles)
        print(f"{t:.4f},{fc.n_communities},{ent[a]:.4f},{ent[b]:.4f},"
              f"{sim.get(a, a):.4f},{sim.get(a, b):.4f},{sim.get(b, b):.4f}")
    print()
    print("threshold,role,degree_class,participation_class,nodes")
    for t in heights:
        if t >= 1.0:
            continue
        points, _ = cartography_table(hg, cut(d, t))
        tally = Counter((p.role, p.degree_class, p.participation_class) for p in points)
        for (role, dc, pc), n in sorted(tally.items()):
            print(f"{t:.4f},{role},{dc},{pc},{n}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("dataset", nargs="?", default=Config.dataset)
    ap.add_argument("--focus", nargs=2, default=list(Config.focus))
    ap.add_argument("--max-cuts", type=int, default=Config.max_cuts)
    a = ap.parse_args()
    run(Config(dataset=a.dataset, focus=tuple(a.focus), max_cuts=a.max_cuts))


if __name__ == "__main__":
    main()
