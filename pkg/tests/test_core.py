import io

import pytest
from hypothesis import given, strategies as st

from hypercomm.core import (
    Hypergraph,
    SizeProfile,
    format_hyperedge_list,
    parse_hyperedge_list,
    parse_roles,
    size_profile,
)
from hypercomm.errors import ParseError

from conftest import hypergraphs


def test_parse_basic():
    hg = parse_hyperedge_list(["a,b,c", "b,c,d"])
    assert hg.n_nodes == 4
    assert hg.n_edges == 2
    assert hg.labels == ("a", "b", "c", "d")
    assert hg.edges == ((0, 1, 2), (1, 2, 3))


def test_parse_dedups_permuted_lines():
    hg = parse_hyperedge_list(["a,b", "b,a"])
    assert (hg.n_nodes, hg.n_edges) == (2, 1)
    assert hg.n_duplicates == 1


def test_parse_collapses_repeated_labels_and_skips_comments():
    hg = parse_hyperedge_list("# header\n\na, a ,b\n  \n# x\nc\n")
    assert hg.edges == ((0, 1), (2,))


def test_parse_other_delimiter_and_stream():
    hg = parse_hyperedge_list(io.StringIO("1 2 3\n3 4\n"), delimiter=" ")
    assert hg.labels == ("1", "2", "3", "4")
    assert hg.n_edges == 2


def test_integer_labels_stay_strings():
    hg = parse_hyperedge_list(["10,9", "9,100"])
    # lexicographic, not numeric
    assert hg.labels == ("10", "100", "9")


def test_parse_error_reports_line():
    with pytest.raises(ParseError) as exc:
        parse_hyperedge_list(["a,b", " , ,", "c"])
    assert exc.value.lineno == 2


def test_parse_roles():
    assert parse_roles(["n1,nurse", "n2,patient"]) == {"n1": "nurse", "n2": "patient"}
    assert parse_roles([]) == {}
    with pytest.raises(ParseError, match="conflicting role for n1"):
        parse_roles(["n1,nurse", "n1,medic"])
    with pytest.raises(ParseError) as exc:
        parse_roles(["n1,nurse", "bad"])
    assert exc.value.lineno == 2


def test_roles_for_unknown_nodes_are_dropped(caplog):
    hg = parse_hyperedge_list(["a,b"], roles={"a": "x", "zz": "y"})
    assert hg.roles == {0: "x"}
    assert "zz" in caplog.text


def test_size_profile():
    hg = parse_hyperedge_list(["a,b,c", "b,c,d"])
    assert size_profile(hg) == SizeProfile(4, 2, {3: 2})
    assert size_profile(parse_hyperedge_list([])) == SizeProfile(0, 0, {})


def test_invariants_rejected():
    with pytest.raises(ValueError):
        Hypergraph(("a", "b"), ((0, 1), (0, 1)))
    with pytest.raises(ValueError):
        Hypergraph(("a", "b", "c"), ((0, 1),))
    with pytest.raises(ValueError):
        Hypergraph(("a", "b"), ((1, 0),))


def test_min_size_filter():
    hg = parse_hyperedge_list(["a", "a,b", "b,c,d"], roles={"d": "r"})
    f = hg.filter_min_size(2)
    assert f.n_edges == 2
    assert f.role_labels() == {"d": "r"}


@given(hypergraphs())
def test_round_trip(hg):
    text = format_hyperedge_list(hg)
    again = parse_hyperedge_list(text)
    assert again == hg
    assert parse_hyperedge_list(format_hyperedge_list(again)) == hg


@given(hypergraphs())
def test_node_set_is_union_of_edges(hg):
    assert set().union(*hg.edges) == set(range(hg.n_nodes))


@given(hypergraphs(), st.integers(2, 4))
def test_repeating_lines_is_idempotent(hg, k):
    lines = format_hyperedge_list(hg).splitlines()
    repeated = [line for line in lines for _ in range(k)]
    assert parse_hyperedge_list(repeated) == hg


@given(hypergraphs())
def test_size_profile_sums(hg):
    sp = size_profile(hg)
    assert sum(sp.edges_by_size.values()) == sp.edge_count == hg.n_edges
