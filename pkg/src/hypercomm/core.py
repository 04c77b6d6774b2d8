"""Hypergraph data model, text parsers and size statistics."""
from __future__ import annotations

import io
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, TextIO

from .errors import ParseError

log = logging.getLogger(__name__)

Hyperedge = tuple[int, ...]


@dataclass(frozen=True)
class Hypergraph:
    """Immutable hypergraph over densely indexed nodes.

    ``labels[i]`` is the external label of node ``i``. Hyperedges are sorted
    tuples of node indices with no two equal. ``roles`` maps node index to a
    role label and may be empty.
    """

    labels: tuple[str, ...]
    edges: tuple[Hyperedge, ...]
    roles: Mapping[int, str] = field(default_factory=dict)
    n_duplicates: int = field(default=0, compare=False)

    def __post_init__(self):
        n = len(self.labels)
        seen = set()
        covered = set()
        for e in self.edges:
            if not e:
                raise ValueError("empty hyperedge")
            if any(a >= b for a, b in zip(e, e[1:])):
                raise ValueError(f"hyperedge {e} is not strictly sorted")
            if e[0] < 0 or e[-1] >= n:
                raise ValueError(f"hyperedge {e} references unknown node")
            if e in seen:
                raise ValueError(f"duplicate hyperedge {e}")
            seen.add(e)
            covered.update(e)
        if len(covered) != n:
            raise ValueError("every node must belong to at least one hyperedge")
        if len(set(self.labels)) != n:
            raise ValueError("node labels must be unique")
        for v in self.roles:
            if not 0 <= v < n:
                raise ValueError(f"role assigned to unknown node {v}")

    @classmethod
    def from_edges(cls, edges: Iterable[Iterable], roles: Mapping | None = None) -> "Hypergraph":
        """Build from label collections; labels are stringified, duplicates collapsed."""
        label_sets = []
        seen = set()
        dups = 0
        for e in edges:
            s = frozenset(str(v) for v in e)
            if not s:
                raise ValueError("empty hyperedge")
            if s in seen:
                dups += 1
                continue
            seen.add(s)
            label_sets.append(s)
        labels = tuple(sorted(set().union(*label_sets))) if label_sets else ()
        index = {lab: i for i, lab in enumerate(labels)}
        edge_tuples = tuple(tuple(sorted(index[v] for v in s)) for s in label_sets)
        role_map = {}
        for lab, role in (roles or {}).items():
            lab = str(lab)
            if lab in index:
                role_map[index[lab]] = role
            else:
                log.warning("dropping role for unknown node %r", lab)
        return cls(labels, edge_tuples, role_map, dups)

    @property
    def n_nodes(self) -> int:
        return len(self.labels)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def index_of(self, label: str) -> int:
        try:
            return self._index[label]
        except AttributeError:
            object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(self.labels)})
            return self._index[label]

    def edge_labels(self, k: int) -> tuple[str, ...]:
        return tuple(self.labels[v] for v in self.edges[k])

    def hyperdegrees(self) -> list[int]:
        deg = [0] * self.n_nodes
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return deg

    def with_roles(self, roles: Mapping[str, str]) -> "Hypergraph":
        """Attach roles keyed by node label; unknown labels are dropped with a warning."""
        role_map = {}
        dropped = 0
        for lab, role in roles.items():
            try:
                role_map[self.index_of(lab)] = role
            except KeyError:
                dropped += 1
        if dropped:
            log.warning("dropped %d role entries for nodes absent from the hypergraph", dropped)
        return Hypergraph(self.labels, self.edges, role_map, self.n_duplicates)

    def role_labels(self) -> dict[str, str]:
        return {self.labels[v]: r for v, r in self.roles.items()}

    def filter_min_size(self, min_size: int) -> "Hypergraph":
        kept = [self.edge_labels(k) for k, e in enumerate(self.edges) if len(e) >= min_size]
        return Hypergraph.from_edges(kept, self.role_labels())


@dataclass(frozen=True)
class SizeProfile:
    node_count: int
    edge_count: int
    edges_by_size: dict[int, int]


def size_profile(hg: Hypergraph) -> SizeProfile:
    return SizeProfile(hg.n_nodes, hg.n_edges, dict(sorted(Counter(len(e) for e in hg.edges).items())))


def _lines(source: TextIO | str | Iterable[str]) -> Iterable[str]:
    if isinstance(source, str):
        return io.StringIO(source)
    return source


def parse_hyperedge_list(source, delimiter: str = ",", roles: Mapping[str, str] | None = None) -> Hypergraph:
    """Parse one hyperedge per line.

    ``source`` may be an open text stream, a string, or any iterable of lines.
    Blank lines and lines starting with ``#`` are skipped. Repeated labels on
    one line and repeated hyperedges are collapsed; the number of collapsed
    hyperedges is kept in ``Hypergraph.n_duplicates``.
    """
    edges = []
    for lineno, raw in enumerate(_lines(source), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = [t.strip() for t in line.split(delimiter)]
        tokens = [t for t in tokens if t]
        if not tokens:
            raise ParseError(f"line {lineno}: no node labels", lineno)
        edges.append(tokens)
    hg = Hypergraph.from_edges(edges, roles)
    if hg.n_duplicates:
        log.warning("collapsed %d duplicate hyperedges", hg.n_duplicates)
    return hg


def parse_roles(source, delimiter: str = ",") -> dict[str, str]:
    """Parse ``node<delim>role`` lines into a label -> role map."""
    roles: dict[str, str] = {}
    for lineno, raw in enumerate(_lines(source), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split(delimiter)]
        if len(parts) != 2 or not parts[0] or not parts[1]:
            raise ParseError(f"line {lineno}: expected 'node{delimiter}role'", lineno)
        node, role = parts
        if node in roles and roles[node] != role:
            raise ParseError(f"line {lineno}: conflicting role for {node}: {roles[node]!r} vs {role!r}", lineno)
        roles[node] = role
    return roles


def format_hyperedge_list(hg: Hypergraph, delimiter: str = ",") -> str:
    return "".join(delimiter.join(hg.edge_labels(k)) + "\n" for k in range(hg.n_edges))


def load(path, delimiter: str = ",", roles_path=None) -> Hypergraph:
    roles = None
    if roles_path is not None:
        with open(roles_path) as fh:
            roles = parse_roles(fh, delimiter)
    with open(path) as fh:
        return parse_hyperedge_list(fh, delimiter, roles)
