import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from disclab.poly import Polynomial, VarSet

# fixed seeds: every property run is reproducible
settings.register_profile("repro", derandomize=True, deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repro")


@st.composite
def polynomials(draw, varset: VarSet, max_deg: int = 3, max_terms: int = 5, homogeneous_deg=None):
    n = len(varset)
    if homogeneous_deg is None:
        exps = st.tuples(*[st.integers(0, max_deg)] * n).filter(lambda e: sum(e) <= max_deg)
    else:
        d = homogeneous_deg
        exps = st.lists(st.integers(0, d), min_size=n - 1, max_size=n - 1).map(
            lambda cuts: _composition(sorted(cuts), d))
    terms = draw(st.dictionaries(exps, st.integers(-9, 9).filter(bool), max_size=max_terms))
    return Polynomial(varset, terms)


def _composition(cuts, d):
    pts = [0] + cuts + [d]
    return tuple(b - a for a, b in zip(pts[:-1], pts[1:]))


@pytest.fixture
def xy():
    return VarSet(["x1", "x2"])
