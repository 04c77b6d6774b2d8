import pytest

from hypercomm import exports
from hypercomm.cli import main

from conftest import DATA

TWO_THIRDS = 1 - 1 / 3


@pytest.fixture
def toy(tmp_path):
    p = tmp_path / "toy.txt"
    p.write_text("a,b\nb,c\nc,d\n")
    return p


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr()


def read_dendro(path):
    with open(path) as fh:
        return exports.read_dendrogram(fh)[0]


def test_stats_hospital_row(tmp_path, capsys):
    code, out = run(capsys, "stats", DATA / "hospital.txt", "-o", tmp_path)
    assert code == 0
    assert out.out.splitlines()[1] == "hospital,75,1825,1108,657,58,2,0"


def test_stats_empty_file(tmp_path, capsys):
    empty = tmp_path / "empty.txt"
    empty.write_text("# nothing\n")
    code, out = run(capsys, "stats", empty, "-o", tmp_path)
    assert code == 2
    assert "no hyperedges" in out.err


def test_stats_reports_duplicates(tmp_path, capsys):
    p = tmp_path / "dup.txt"
    p.write_text("a,b\nb,a\nc,d\n")
    code, out = run(capsys, "stats", p, "-o", tmp_path)
    assert code == 0
    assert out.out.splitlines()[1].endswith(",1")


def test_parse_error_exit_code(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("a,b\n,,\n")
    code, out = run(capsys, "stats", p, "-o", tmp_path)
    assert code == 2
    assert "line 2" in out.err


def test_missing_file_and_bad_usage(tmp_path, capsys):
    assert run(capsys, "stats", tmp_path / "nope.txt", "-o", tmp_path)[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["cut", "x.txt", "-t", "1.5"])
    assert exc.value.code == 1


def test_cluster_toy_merge_table(toy, tmp_path, capsys):
    out = tmp_path / "o"
    assert run(capsys, "cluster", toy, "-o", out)[0] == 0
    d = read_dendro(out / "dendrogram.csv")
    assert [(m.left, m.right, m.height, m.size) for m in d.merges] == [
        (0, 1, TWO_THIRDS, 2), (2, 3, TWO_THIRDS, 3)]


def test_cluster_toy_ahn(toy, tmp_path, capsys):
    # N+(a)={a,b}, N+(b)={a,b,c}, N+(c)={b,c,d}, N+(d)={c,d}
    # ab|bc: {a,b} vs {b,c,d} -> 1 - 1/4 ; bc|cd: {a,b,c} vs {c,d} -> 1 - 1/4
    out = tmp_path / "o"
    assert run(capsys, "cluster", toy, "--metric", "ahn", "-o", out)[0] == 0
    d = read_dendro(out / "dendrogram.csv")
    assert [(m.left, m.right, m.height, m.size) for m in d.merges] == [(0, 1, 0.75, 2), (2, 3, 0.75, 3)]


def test_cluster_byte_identical_across_workers(tmp_path, capsys):
    src = DATA / "hospital.txt"
    a, b = tmp_path / "w1", tmp_path / "w4"
    assert run(capsys, "cluster", src, "-o", a, "-j", 1, "--dump-distances")[0] == 0
    assert run(capsys, "cluster", src, "-o", b, "-j", 4, "--dump-distances")[0] == 0
    assert (a / "dendrogram.csv").read_bytes() == (b / "dendrogram.csv").read_bytes()
    assert (a / "distances.csv").read_bytes() == (b / "distances.csv").read_bytes()


def test_cut_and_fingerprint(toy, tmp_path, capsys):
    out = tmp_path / "o"
    code, res = run(capsys, "cut", toy, "-o", out, "-t", 1.0, "-t", 0.5)
    assert code == 0
    with open(out / "clustering_t1.0.csv") as fh:
        assert exports.read_clustering(fh).n_communities == 1
    with open(out / "clustering_t0.5.csv") as fh:
        assert exports.read_clustering(fh).n_communities == 3
    assert run(capsys, "fingerprint", toy, "-o", out, "--grid-step", 0.5)[0] == 0
    text = (out / "fingerprint.csv").read_text().splitlines()
    assert text[1:] == ["threshold,community_count", "0.0,3", f"{TWO_THIRDS!r},1"]
    with open(out / "fingerprint_grid.csv") as fh:
        assert exports.read_fingerprint(fh).points == ((0.0, 3), (0.5, 3), (1.0, 1))


def test_cached_dendrogram_is_reused_and_invalidated(toy, tmp_path, capsys):
    out = tmp_path / "o"
    run(capsys, "cluster", toy, "-o", out)
    path = out / "dendrogram.csv"
    stamp = path.read_text()
    # a forged cache with the right key is trusted
    forged = stamp.replace(repr(TWO_THIRDS), "0.125")
    path.write_text(forged)
    run(capsys, "fingerprint", toy, "-o", out)
    assert "0.125" in (out / "fingerprint.csv").read_text()
    # changing the input changes the key, so the cache is rebuilt
    toy.write_text("a,b\nb,c\nc,d\nd,e\n")
    run(capsys, "fingerprint", toy, "-o", out)
    assert read_dendro(path).leaf_count == 4


def test_threshold_required(toy, tmp_path, capsys):
    for cmd in ("membership", "entropy", "cartography", "similarity"):
        code, res = run(capsys, cmd, toy, "-o", tmp_path)
        assert code == 1, cmd
        assert "threshold" in res.err


def test_node_level_commands_on_hospital(tmp_path, capsys):
    src = DATA / "hospital.txt"
    roles = DATA / "hospital_roles.txt"
    args = ["-o", tmp_path, "--roles", roles, "-t", 0.3]
    for cmd in ("membership", "entropy", "similarity", "cartography"):
        assert run(capsys, cmd, src, *args)[0] == 0, cmd
    names = {p.name for p in tmp_path.iterdir()}
    assert {"memberships_t0.3.csv", "community_sizes_t0.3.csv", "memberships_per_node_t0.3.csv",
            "node_entropy_t0.3.csv", "role_entropy_t0.3.csv", "role_similarity_t0.3.csv",
            "cartography_t0.3.csv"} <= names
    header = (tmp_path / "role_similarity_t0.3.csv").read_text().splitlines()[0]
    assert header == "role,ADM,MED,NUR,PAT"


def test_similarity_needs_roles(toy, tmp_path, capsys):
    code, res = run(capsys, "similarity", toy, "-o", tmp_path, "-t", 0.5)
    assert code == 1 and "--roles" in res.err


def test_correlate_reports_both_conventions(tmp_path, capsys):
    code, res = run(capsys, "correlate", DATA / "hospital.txt", "-o", tmp_path)
    assert code == 0
    lines = res.out.splitlines()
    assert lines[0] == "convention,r,n_pairs"
    assert lines[1].startswith("listed_pairs,") and lines[2].startswith("all_pairs,")
    assert int(lines[2].split(",")[2]) == 1825 * 1824 // 2


def test_end_to_end_rerun_is_byte_identical(tmp_path, capsys):
    src = DATA / "hospital.txt"
    outs = []
    for k in range(2):
        out = tmp_path / f"run{k}"
        run(capsys, "cluster", src, "-o", out)
        run(capsys, "fingerprint", src, "-o", out)
        run(capsys, "cartography", src, "-o", out, "-t", 0.4, "--roles", DATA / "hospital_roles.txt")
        outs.append({p.name: p.read_bytes() for p in out.iterdir()})
    assert outs[0] == outs[1]
