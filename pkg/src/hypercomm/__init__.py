"""Hyperlink communities: hierarchical clustering of hyperedges."""
from .core import Hypergraph, SizeProfile, load, parse_hyperedge_list, parse_roles, size_profile
from .distances import SparseDistances, build_inverted_index, compute_sparse_distances, jaccard_distance
from .dendrogram import Dendrogram, FlatClustering, Merge, cut, merge_heights, single_linkage
from .scales import Fingerprint, cut_statistics, fingerprint, spikiness_profile
from .membership import membership_vectors, node_entropy, role_entropy, role_similarity_matrix
from .cartography import cartography_table, classify, participation_coefficient

__all__ = [
    "Hypergraph", "SizeProfile", "load", "parse_hyperedge_list", "parse_roles", "size_profile",
    "SparseDistances", "build_inverted_index", "compute_sparse_distances", "jaccard_distance",
    "Dendrogram", "FlatClustering", "Merge", "cut", "merge_heights", "single_linkage",
    "Fingerprint", "cut_statistics", "fingerprint", "spikiness_profile",
    "membership_vectors", "node_entropy", "role_entropy", "role_similarity_matrix",
    "cartography_table", "classify", "participation_coefficient",
]
