import io
import math

import numpy as np
import pytest

from hypercomm import exports
from hypercomm.cartography import cartography_table
from hypercomm.core import Hypergraph
from hypercomm.dendrogram import cut, single_linkage
from hypercomm.distances import compute_sparse_distances
from hypercomm.errors import ParseError
from hypercomm.membership import (
    binary_memberships,
    membership_distributions,
    membership_vectors,
    role_entropy,
    role_similarity_matrix,
)
from hypercomm.scales import cut_statistics, fingerprint, resample
from hypercomm.synthetic import random_hypergraph


@pytest.fixture(scope="module")
def pipeline():
    rng = np.random.default_rng(21)
    hg = random_hypergraph(rng, max_edges=60, max_nodes=20)
    roles = {hg.labels[v]: "ab"[v % 2] for v in range(hg.n_nodes)}
    hg = hg.with_roles(roles)
    sd = compute_sparse_distances(hg)
    d = single_linkage(sd)
    return hg, sd, d


def round_trip(write, read, *args, read_args=()):
    buf = io.StringIO()
    write(buf, *args)
    buf.seek(0)
    return read(buf, *read_args), buf.getvalue()


def test_distances(pipeline):
    _, sd, _ = pipeline
    back, text = round_trip(exports.write_distances, exports.read_distances, sd)
    assert back == sd
    assert "i,j,d\n" in text


def test_dendrogram(pipeline):
    *_, d = pipeline
    (back, key), _ = round_trip(lambda fh, x: exports.write_dendrogram(fh, x, "k1"), exports.read_dendrogram, d)
    assert back == d and key == "k1"


def test_clustering_and_sidecar(pipeline):
    *_, d = pipeline
    fc = cut(d, 0.6)
    back, _ = round_trip(exports.write_clustering, exports.read_clustering, fc)
    assert back == fc
    buf = io.StringIO()
    exports.write_communities(buf, fc)
    rows = buf.getvalue().splitlines()[2:]
    assert len(rows) == fc.n_communities
    assert [list(map(int, r.split(",")[2].split())) for r in rows] == fc.communities()


def test_fingerprint_and_cut_stats(pipeline):
    *_, d = pipeline
    fp = fingerprint(d)
    back, _ = round_trip(exports.write_fingerprint, exports.read_fingerprint, fp)
    assert back == fp
    grid = resample(fp, 0.1)
    buf = io.StringIO()
    exports.write_fingerprint(buf, fp, grid)
    buf.seek(0)
    assert exports.read_fingerprint(buf).points == tuple(grid)
    stats = cut_statistics(d, [0.3, 0.7, 1.0])
    back, _ = round_trip(exports.write_cut_statistics, exports.read_cut_statistics, stats)
    assert back == stats


def test_memberships_and_histograms(pipeline):
    hg, _, d = pipeline
    vecs = membership_vectors(hg, cut(d, 0.6))
    back, _ = round_trip(lambda fh, v: exports.write_memberships(fh, v, hg),
                         exports.read_memberships, vecs, read_args=(hg,))
    assert back == vecs
    for hist in membership_distributions(vecs):
        again, _ = round_trip(lambda fh, h: exports.write_histogram(fh, h, "value"), exports.read_histogram, hist)
        assert again == hist


def test_role_matrix_with_missing(pipeline):
    hg, _, d = pipeline
    vecs = membership_vectors(hg, cut(d, 0.6))
    m = role_similarity_matrix(binary_memberships(vecs), {0: "a", 1: "a", 2: "b"})
    assert math.isnan(m.get("b", "b"))
    back, text = round_trip(exports.write_role_matrix, exports.read_role_matrix, m)
    assert back.roles == m.roles
    assert np.array_equal(back.values, m.values, equal_nan=True)
    assert text.splitlines()[-1].endswith(",")


def test_role_entropies(pipeline):
    hg, _, d = pipeline
    vecs = membership_vectors(hg, cut(d, 0.6))
    by_role = role_entropy(vecs, hg.roles)
    back, _ = round_trip(lambda fh, r: exports.write_role_entropies(fh, r, {}), exports.read_role_entropies, by_role)
    assert back == by_role


def test_cartography(pipeline):
    hg, _, d = pipeline
    fc = cut(d, 0.6)
    pts, bounds = cartography_table(hg, fc)
    (back, bback), text = round_trip(
        lambda fh, p: exports.write_cartography(fh, p, bounds, hg, 0.6),
        exports.read_cartography, pts, read_args=(hg,))
    assert back == pts and bback == bounds
    assert "percentiles=per_dataset" in text


def test_bad_header():
    with pytest.raises(ParseError):
        exports.read_dendrogram(io.StringIO("a,b\n1,2\n"))
    with pytest.raises(ParseError):
        exports.read_distances(io.StringIO("# n_edges=2\n"))
