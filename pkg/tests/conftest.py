import pytest
from hypothesis import settings, strategies as st

from lincbo import bitset
from lincbo.context import FormalContext, gen_density, read_cxt
from lincbo.implications import Theory

settings.register_profile("ci", deadline=None, max_examples=60)
settings.load_profile("ci")

K1_CXT = """B

3
4

x1
x2
x3
a1
a2
a3
a4
XX..
X.X.
.XXX
"""


def S(*elems):
    """Attribute set from 1-based indices, as written in the examples."""
    return bitset.from_one_based(elems)


def T(n, *pairs):
    """Theory from ``(premise, conclusion)`` tuples of 1-based indices."""
    return Theory(n, [(S(*p), S(*c)) for p, c in pairs])


@pytest.fixture
def k1():
    return read_cxt(K1_CXT)


def random_corpus(count, max_objects=30, max_attributes=12, seed0=0):
    """Seeded contexts with densities spread over 10%..60%."""
    out = []
    for s in range(count):
        nx = 1 + (s * 7) % max_objects
        ny = 1 + (s * 5) % max_attributes
        density = 0.1 + 0.5 * ((s * 3) % 11) / 10
        out.append(gen_density(nx, ny, density, seed=seed0 + s))
    return out


@st.composite
def contexts(draw, max_objects=10, max_attributes=7):
    ny = draw(st.integers(0, max_attributes))
    nx = draw(st.integers(0, max_objects))
    rows = draw(st.lists(st.integers(0, (1 << ny) - 1), min_size=nx, max_size=nx))
    return FormalContext.from_rows(rows, ny)


@st.composite
def theories(draw, n=None, max_size=12, allow_empty_premise=True):
    if n is None:
        n = draw(st.integers(1, 8))
    size = draw(st.integers(0, max_size))
    lo = 0 if allow_empty_premise else 1
    th = Theory(n)
    for _ in range(size):
        p = draw(st.integers(lo, (1 << n) - 1))
        c = draw(st.integers(0, (1 << n) - 1))
        th.add((p, c))
    return th


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
