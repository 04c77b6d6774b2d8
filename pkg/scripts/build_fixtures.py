"""Rebuild the hyperedge-list fixtures in data/ from raw SocioPatterns files.

Raw inputs (not redistributed here):

* ``Contacts_Hospital.csv`` and ``Primary_School.csv``: tab/space separated
  ``t i j role_i role_j`` contact lists, as bundled in the ``tnetwork`` wheel
  under ``tnetwork/dyn_graph/toy_data/``.
* ``hs.json``: the high-school hypergraph bundled with ``hypergraphx`` under
  ``tests/test_data/hs/``.

For the contact lists, each 20 s snapshot is turned into its maximal cliques
and the union of all cliques over time (as sets) is the static hypergraph.

Usage::

    python scripts/build_fixtures.py --raw /path/to/raw --out data
"""
from __future__ import annotations

import argparse
import json
from collections import defaultdict
from pathlib import Path

import networkx as nx


def cliques_from_contacts(path: Path) -> tuple[set[tuple[str, ...]], dict[str, str]]:
    by_time: dict[str, list[tuple[str, str]]] = defaultdict(list)
    roles: dict[str, str] = {}
    with open(path) as fh:
        for line in fh:
            parts = line.split()
            if len(parts) < 5:
                continue
            t, a, b, ra, rb = parts[:5]
            by_time[t].append((a, b))
            roles[a] = ra
            roles[b] = rb
    edges = set()
    for contacts in by_time.values():
        g = nx.Graph(contacts)
        for clique in nx.find_cliques(g):
            edges.add(tuple(sorted(clique, key=int)))
    return edges, roles


def hypergraphx_json(path: Path) -> tuple[set[tuple[str, ...]], dict[str, str]]:
    records = json.loads(path.read_text())
    edges = set()
    roles = {}
    for rec in records:
        if rec.get("type") == "edge":
            edges.add(tuple(str(v) for v in sorted(rec["interaction"])))
        elif rec.get("type") == "node" and "class" in rec.get("metadata", {}):
            roles[str(rec["idx"])] = rec["metadata"]["class"]
    return edges, roles


def write(out: Path, name: str, edges, roles) -> None:
    ordered = sorted(edges, key=lambda e: (len(e), [int(v) for v in e]))
    with open(out / f"{name}.txt", "w") as fh:
        fh.write(f"# {name}: {len(ordered)} hyperedges, one per line\n")
        for e in ordered:
            fh.write(",".join(e) + "\n")
    nodes = {v for e in ordered for v in e}
    with open(out / f"{name}_roles.txt", "w") as fh:
        for v in sorted(nodes, key=int):
            if v in roles:
                fh.write(f"{v},{roles[v]}\n")
    print(f"{name}: {len(nodes)} nodes, {len(ordered)} hyperedges")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--raw", type=Path, required=True)
    ap.add_argument("--out", type=Path, default=Path("data"))
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    write(args.out, "hospital", *cliques_from_contacts(args.raw / "Contacts_Hospital.csv"))
    write(args.out, "primary_school", *cliques_from_contacts(args.raw / "Primary_School.csv"))
    write(args.out, "high_school", *hypergraphx_json(args.raw / "hs.json"))


if __name__ == "__main__":
    main()
