import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hyperquasi.counting import (
    circuit_count_trace,
    cycle_deviation,
    exact_trace_power,
    hom_count_bruteforce,
    labeled_copy_count_bruteforce,
)
from hyperquasi.errors import BudgetExceeded, LengthTooShort
from hyperquasi.gadgets import cycle
from hyperquasi.hypercore import GenSpec, complete_graph, gen_random, new_hypergraph
from hyperquasi.indexing import OrderedPartition, Partition, orderings, proper_partitions

from conftest import hypergraphs

PI11 = OrderedPartition((1, 1))
EDGE = new_hypergraph(2, 2, [[0, 1]])
C4 = cycle(Partition((1, 1)), 4)


def _naive_hom(f, h):
    edges = h.edge_set
    return sum(
        all(tuple(sorted(m[v] for v in e)) in edges for e in f.edges)
        for m in itertools.product(range(h.n), repeat=f.n)
    )


def test_trace_examples():
    assert circuit_count_trace(complete_graph(3), PI11, 2) == 18
    assert circuit_count_trace(new_hypergraph(4, 2, []), PI11, 2) == 0
    assert circuit_count_trace(EDGE, PI11, 2) == 2
    with pytest.raises(LengthTooShort):
        circuit_count_trace(EDGE, PI11, 1)


def test_hom_examples():
    k3 = complete_graph(3)
    assert hom_count_bruteforce(EDGE, k3) == 6
    assert hom_count_bruteforce(C4, k3) == 18
    assert hom_count_bruteforce(new_hypergraph(3, 2, []), new_hypergraph(4, 2, [])) == 64


def test_labeled_copy_examples():
    assert labeled_copy_count_bruteforce(EDGE, complete_graph(3)) == 6
    assert labeled_copy_count_bruteforce(C4, C4) == 8
    assert labeled_copy_count_bruteforce(complete_graph(3), C4) == 0


@given(hypergraphs(max_n=3), hypergraphs(max_n=3))
def test_hom_matches_naive_enumeration(f, h):
    if f.k != h.k or f.n > 5:
        return
    assert hom_count_bruteforce(f, h) == _naive_hom(f, h)


@pytest.mark.parametrize("k", [2, 3])
@pytest.mark.parametrize("loops", [False, True])
def test_trace_equals_homomorphisms(k, loops):
    hosts = [gen_random(GenSpec(4, k, 0.5, 100 + s, allow_loops=loops)) for s in range(5)]
    for pi in proper_partitions(k):
        for o in orderings(pi):
            c = cycle(o, 4)
            for h in hosts:
                assert circuit_count_trace(h, o, 2) == hom_count_bruteforce(c, h)


def test_trace_equals_homomorphisms_length_six():
    for k in (2, 3):
        h = gen_random(GenSpec(3, k, 0.6, 5, allow_loops=True))
        for pi in proper_partitions(k):
            for o in orderings(pi):
                assert circuit_count_trace(h, o, 3) == hom_count_bruteforce(cycle(o, 6), h)


@given(st.integers(0, 10**6), st.integers(2, 10), st.integers(2, 6))
def test_graph_trace_is_closed_walk_count(seed, n, ell):
    h = gen_random(GenSpec(n, 2, 0.5, seed))
    m = h.adjacency_matrix()
    assert circuit_count_trace(h, PI11, ell) == int(np.trace(np.linalg.matrix_power(m, 2 * ell)))


def test_exact_trace_switches_to_python_ints():
    a = np.full((4, 4), 10**6, dtype=np.int64)
    # trace(a^5) = 4^5 * 10^30 overflows int64
    assert exact_trace_power(a, 5) == 4**5 * 10**30
    assert exact_trace_power(np.array([[2]]), 3) == 8
    with pytest.raises(TypeError):
        exact_trace_power(np.eye(2), 2)


@given(hypergraphs(k=2, max_n=4), hypergraphs(k=2, max_n=4))
def test_copy_hom_sandwich(f, h):
    if f.n > 4:
        return
    homs = hom_count_bruteforce(f, h)
    copies = labeled_copy_count_bruteforce(f, h)
    assert copies <= homs
    assert homs - copies <= math.comb(f.n, 2) * h.n ** max(f.n - 1, 0)


@given(hypergraphs(max_n=4), st.data())
def test_counts_monotone_under_edge_addition(h, data):
    u = tuple(data.draw(st.lists(st.integers(0, h.n - 1), min_size=h.k, max_size=h.k)))
    bigger = h.with_edge(u)
    o = proper_partitions(h.k)[0].canonical_ordering()
    f = cycle(o, 4)
    assert circuit_count_trace(bigger, o, 2) >= circuit_count_trace(h, o, 2)
    assert hom_count_bruteforce(f, bigger) >= hom_count_bruteforce(f, h)
    pat = new_hypergraph(h.k, h.k, [tuple(range(h.k))])
    assert labeled_copy_count_bruteforce(pat, bigger) >= labeled_copy_count_bruteforce(pat, h)


def test_budgets():
    with pytest.raises(BudgetExceeded):
        hom_count_bruteforce(C4, complete_graph(6), budget=10)
    with pytest.raises(BudgetExceeded):
        labeled_copy_count_bruteforce(C4, complete_graph(6), budget=10)


def test_cycle_deviation_complete_graph():
    r = cycle_deviation(complete_graph(30), Partition((1, 1)), 1, 1.0)
    m = np.ones((30, 30), dtype=np.int64) - np.eye(30, dtype=np.int64)
    assert r.circuits == int(np.trace(np.linalg.matrix_power(m, 4)))
    assert (r.m, r.length) == (4, 4)
    assert r.expected == 30.0**4
    assert 0.85 <= r.ratio <= 1.0


def test_cycle_deviation_empty_and_random():
    assert cycle_deviation(new_hypergraph(6, 2, []), PI11, 1, 0.5).ratio == 0
    h = gen_random(GenSpec(40, 2, 0.5, 1))
    r = cycle_deviation(h, PI11, 1, 0.5)
    assert 0.95 <= r.ratio <= 1.15
    # frozen from the first run
    assert r.ratio == pytest.approx(1.1165, abs=5e-5)


def test_cycle_deviation_three_uniform_exponent():
    h = gen_random(GenSpec(6, 3, 0.5, 2))
    r = cycle_deviation(h, Partition((1, 1, 1)), 1, 0.5)
    assert r.m == 2 * 2**2 and r.length == 4
    assert r.expected == pytest.approx(0.5**8 * 6.0**12)
    assert r.to_dict()["circuits"] == circuit_count_trace(h, OrderedPartition((1, 1, 1)), 2)
