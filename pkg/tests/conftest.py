import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

from hcirc import Circuit, load_netlist

sys.path.insert(0, str(Path(__file__).parent))

NETLISTS = Path(__file__).parent.parent / "netlists"

FIG1_TEXT = """\
# Fig 1 circuit, O'Malley Problem 4.10 values
node v1
node v2
branch e1 v1 v2 R=6 E=40
branch e2 v1 v2 R=4 E=12
branch e3 v1 v2 R=12 E=-24
mesh m1 +e1 -e2
mesh m2 +e2 -e3
"""


@pytest.fixture
def fig1() -> Circuit:
    return load_netlist(NETLISTS / "fig1.net")


@pytest.fixture
def bridge() -> Circuit:
    return load_netlist(NETLISTS / "bridge.net")


rationals = st.builds(Fraction, st.integers(-60, 60), st.integers(1, 12))
resistances = st.builds(Fraction, st.integers(1, 100), st.integers(1, 10))


@st.composite
def circuits(draw, max_nodes=6, max_branches=10, connected=True):
    """Random valid circuits. Connected ones start from a random spanning tree."""
    nv = draw(st.integers(2 if connected else 1, max_nodes))
    names = [f"n{k}" for k in range(nv)]
    pairs = []
    if connected:
        for k in range(1, nv):
            pairs.append((draw(st.integers(0, k - 1)), k))
    if nv > 1:
        extra = draw(st.lists(
            st.tuples(st.integers(0, nv - 1), st.integers(0, nv - 1)).filter(lambda p: p[0] != p[1]),
            min_size=0 if pairs else 1, max_size=max(0, max_branches - len(pairs))))
        pairs += extra
    if not pairs:
        # a lone node cannot carry a branch; add a second one
        names.append("n1")
        pairs = [(0, 1)]
    branches = []
    for k, (a, b) in enumerate(pairs):
        if draw(st.booleans()):
            a, b = b, a
        branches.append((f"e{k + 1}", names[a], names[b], draw(resistances), draw(rationals)))
    return Circuit.build(names, branches)


@st.composite
def parallel_circuits(draw, min_branches=2, max_branches=8):
    n = draw(st.integers(min_branches, max_branches))
    branches = []
    for k in range(n):
        t, h = ("a", "b") if draw(st.booleans()) else ("b", "a")
        branches.append((f"e{k + 1}", t, h, draw(resistances), draw(rationals)))
    return Circuit.build(["a", "b"], branches)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
