"""Random hypergraph generators used by tests and experiment scripts."""
from __future__ import annotations

import numpy as np

from .core import Hypergraph


def random_hypergraph(rng: np.random.Generator, max_edges: int = 50, max_nodes: int = 30,
                      min_size: int = 2, max_size: int = 6) -> Hypergraph:
    """Uniform random hyperedges; at most ``max_edges`` after deduplication."""
    n_nodes = int(rng.integers(max(min_size, 2), max_nodes + 1))
    n_edges = int(rng.integers(1, max_edges + 1))
    hi = min(max_size, n_nodes)
    edges = []
    for _ in range(n_edges):
        k = int(rng.integers(min(min_size, hi), hi + 1))
        edges.append(rng.choice(n_nodes, size=k, replace=False).tolist())
    return Hypergraph.from_edges(edges)


def affiliation_hypergraph(rng: np.random.Generator, n_nodes: int = 1161, n_edges: int = 1088,
                           size_exponent: float = 1.6, popularity_exponent: float = 0.9,
                           max_size: int = 40) -> Hypergraph:
    """Bipartite-affiliation style hypergraph (items grouped under shared labels).

    Hyperedge sizes follow a truncated power law and members are drawn with
    Zipf-like node popularity, so hyperedges overlap heavily and with widely
    varying sizes. Meant as a stand-in for class-label data such as NDC
    classes.
    """
    sizes = np.arange(2, max_size + 1)
    p_size = sizes.astype(float) ** -size_exponent
    p_size /= p_size.sum()
    pop = np.arange(1, n_nodes + 1, dtype=float) ** -popularity_exponent
    pop /= pop.sum()
    edges: set[frozenset[int]] = set()
    while len(edges) < n_edges:
        k = int(rng.choice(sizes, p=p_size))
        edges.add(frozenset(rng.choice(n_nodes, size=k, replace=False, p=pop).tolist()))
    return Hypergraph.from_edges(sorted(sorted(e) for e in edges))
