import sys
from pathlib import Path

from hypothesis import settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from bidiff.jetpoly import DiffPoly, JetVar  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def jets(symbols=("u",), max_t=0, max_x=4):
    return st.builds(
        JetVar.jet,
        st.sampled_from(symbols),
        st.integers(0, max_t),
        st.integers(0, max_x),
    )


def polys(symbols=("u",), max_t=0, max_x=4, max_terms=6, max_degree=3, max_power=2):
    coeff = st.fractions(min_value=-10, max_value=10, max_denominator=12).filter(bool)
    mono = st.tuples(
        st.lists(st.tuples(jets(symbols, max_t, max_x), st.integers(1, max_power)), max_size=max_degree),
        coeff,
    )
    return st.lists(mono, max_size=max_terms).map(DiffPoly.from_monomials)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
