from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

from hypercomm import Hypergraph, load

DATA = Path(__file__).resolve().parent.parent / "data"

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def fixture_path(name: str) -> Path:
    return DATA / f"{name}.txt"


@pytest.fixture(scope="session")
def hospital():
    return load(fixture_path("hospital"), roles_path=DATA / "hospital_roles.txt")


@pytest.fixture(scope="session")
def high_school():
    return load(fixture_path("high_school"), roles_path=DATA / "high_school_roles.txt")


@pytest.fixture(scope="session")
def primary_school():
    return load(fixture_path("primary_school"), roles_path=DATA / "primary_school_roles.txt")


@st.composite
def hypergraphs(draw, max_edges=25, max_nodes=15, min_size=1, max_size=5):
    n_nodes = draw(st.integers(2, max_nodes))
    edges = draw(
        st.lists(
            st.frozensets(st.integers(0, n_nodes - 1), min_size=min_size, max_size=max_size),
            min_size=1,
            max_size=max_edges,
        )
    )
    return Hypergraph.from_edges(sorted(e) for e in edges)


# one line per acceptance criterion, echoed at the end of the run
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
