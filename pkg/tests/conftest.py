import itertools

import numpy as np
import pytest
from hypothesis import settings, strategies as st

from hyperquasi import new_hypergraph

settings.register_profile("default", max_examples=40, deadline=None, derandomize=True)
settings.load_profile("default")


@st.composite
def hypergraphs(draw, k=None, max_n=5, loops=None):
    k = draw(st.integers(2, 3)) if k is None else k
    loops = draw(st.booleans()) if loops is None else loops
    n = draw(st.integers(1 if loops else k, max_n))
    pool = list(
        itertools.combinations_with_replacement(range(n), k)
        if loops
        else itertools.combinations(range(n), k)
    )
    chosen = draw(st.lists(st.sampled_from(pool), max_size=len(pool))) if pool else []
    return new_hypergraph(n, k, chosen)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
