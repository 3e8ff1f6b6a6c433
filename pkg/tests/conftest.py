import itertools

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from dfml import formula as fm
from dfml.corpus import fixtures, nle_corpus
from dfml.frame import build_frame

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def formulas(max_var=3, max_leaves=12):
    atoms = st.one_of(st.builds(fm.Var, st.integers(1, max_var)), st.just(fm.TOP), st.just(fm.BOT))

    def extend(children):
        return st.one_of(
            st.builds(fm.And, children, children),
            st.builds(fm.Or, children, children),
            st.builds(fm.Imp, children, children),
            st.builds(fm.Box, children),
            st.builds(fm.Dia, children),
        )

    return st.recursive(atoms, extend, max_leaves=max_leaves)


@st.composite
def small_frames(draw, max1=3, maxd=3, relations=("Rbox", "Rdia", "T")):
    """Arbitrary frames with raw relations (no class assumptions)."""
    n1 = draw(st.integers(1, max1))
    nd = draw(st.integers(1, maxd))
    xs = [f"x{i + 1}" for i in range(n1)]
    ys = [f"y{i + 1}" for i in range(nd)]
    pairs = list(itertools.product(xs, ys))
    I = draw(st.sets(st.sampled_from(pairs)))
    kw = {}
    if "Rbox" in relations:
        kw["rbox"] = draw(st.sets(st.sampled_from(list(itertools.product(ys, ys)))))
    if "Rdia" in relations:
        kw["rdia"] = draw(st.sets(st.sampled_from(list(itertools.product(xs, xs)))))
    if "T" in relations:
        kw["t"] = draw(st.sets(st.sampled_from(list(itertools.product(ys, xs, ys)))))
    return build_frame(xs, ys, I, **kw)


@pytest.fixture(scope="session")
def corpus():
    return nle_corpus()


@pytest.fixture(scope="session")
def fixture_frames():
    return fixtures()


def all_polarities(n1, nd):
    """Every frame (without relations) with the given sort sizes."""
    xs = [f"x{i + 1}" for i in range(n1)]
    ys = [f"y{i + 1}" for i in range(nd)]
    pairs = list(itertools.product(range(n1), range(nd)))
    for mask in range(1 << len(pairs)):
        I = [(xs[x], ys[y]) for k, (x, y) in enumerate(pairs) if (mask >> k) & 1]
        yield build_frame(xs, ys, I)
