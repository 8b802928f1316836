from fractions import Fraction

from hypothesis import settings, strategies as st

from liedual.linalg import Matrix

settings.register_profile("exact", deadline=None, max_examples=60)
settings.load_profile("exact")

small_fractions = st.builds(Fraction, st.integers(-4, 4), st.integers(1, 3))


@st.composite
def matrices(draw, rows=None, cols=None, max_dim=5, elements=small_fractions):
    r = draw(st.integers(0, max_dim)) if rows is None else rows
    c = draw(st.integers(0, max_dim)) if cols is None else cols
    return Matrix([[draw(elements) for _ in range(c)] for _ in range(r)], cols=c)


@st.composite
def square_matrices(draw, min_dim=1, max_dim=5, elements=small_fractions):
    n = draw(st.integers(min_dim, max_dim))
    return draw(matrices(rows=n, cols=n, elements=elements))


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: one of the twelve acceptance criteria")


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n][1])
