import itertools

import numpy as np
import pytest

from hyperquasi.counting import hom_count_bruteforce
from hyperquasi.errors import LengthTooShort
from hyperquasi.gadgets import cycle, path, step
from hyperquasi.hypercore import GenSpec, gen_random
from hyperquasi.indexing import OrderedPartition, Partition, orderings, proper_partitions


def _degrees(h):
    deg = np.zeros(h.n, dtype=int)
    for e in h.edges:
        for v in e:
            deg[v] += 1
    return deg


def _connected(h):
    seen, todo = {0}, [0]
    while todo:
        v = todo.pop()
        for e in h.edges:
            if v in e:
                for u in e:
                    if u not in seen:
                        seen.add(u)
                        todo.append(u)
    return len(seen) == h.n


def test_step_graph_is_two_edge_path():
    g = step(OrderedPartition((1, 1)))
    h = g.hypergraph
    assert (h.n, h.num_edges) == (3, 2)
    assert sorted(_degrees(h)) == [1, 1, 2]
    assert len(g.attach0) == len(g.attach1) == 1


def test_step_sizes():
    h = step(OrderedPartition((1, 1, 1))).hypergraph
    assert (h.n, h.num_edges) == (8, 4)
    g = step(OrderedPartition((1, 2)))
    assert (g.hypergraph.n, g.hypergraph.num_edges, g.hypergraph.k) == (4, 2, 3)


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_step_edge_count_and_attach(k):
    for pi in proper_partitions(k):
        for o in orderings(pi):
            g = step(o)
            assert g.hypergraph.num_edges == 2 ** (o.t - 1)
            assert all(len(e) == k for e in g.hypergraph.edges)
            assert len(g.attach0) == 2 ** (o.t - 2) * o.parts[0]


def test_step_attach_tuples_follow_last_bit():
    g = step(OrderedPartition((1, 1, 1)))
    assert [g.labels[v] for v in g.attach0] == [("A", (0, 0), 0), ("A", (1, 0), 0)]
    assert [g.labels[v] for v in g.attach1] == [("A", (0, 1), 0), ("A", (1, 1), 0)]


def test_step_edges_remove_one_bit_each():
    g = step(OrderedPartition((1, 1, 1)))
    for e in g.hypergraph.edges:
        labs = sorted((g.labels[v] for v in e), key=repr)
        (a,) = [lab for lab in labs if lab[0] == "A"]
        code = a[1]
        assert ("B", 2, code[1:], 0) in labs
        assert ("B", 3, code[:1], 0) in labs


def test_path_examples():
    h = path(OrderedPartition((1, 1)), 2).hypergraph
    assert (h.n, h.num_edges) == (5, 4)
    assert sorted(_degrees(h)) == [1, 1, 2, 2, 2]
    pi = OrderedPartition((1, 1, 1))
    one, st = path(pi, 1), step(pi)
    # path labels are (copy, step label); copy 1 holds the far attach tuple
    far = dict(zip((st.labels[v] for v in st.attach0), (st.labels[v] for v in st.attach1)))
    index = {lab: i for i, lab in enumerate(st.labels)}
    relabel = [index[lab if c == 0 else far[lab]] for c, lab in one.labels]
    mapped = {tuple(sorted(relabel[v] for v in e)) for e in one.hypergraph.edges}
    assert mapped == st.hypergraph.edge_set
    h = path(OrderedPartition((1, 1, 1)), 2).hypergraph
    assert (h.n, h.num_edges) == (14, 8)
    with pytest.raises(LengthTooShort):
        path(OrderedPartition((1, 1)), 0)


def test_cycle_examples():
    c4 = cycle(Partition((1, 1)), 4)
    assert (c4.n, c4.num_edges) == (4, 4)
    assert _connected(c4) and np.all(_degrees(c4) == 2)
    fig = cycle(Partition((1, 1, 1)), 4)
    assert (fig.n, fig.num_edges) == (12, 8)
    c12 = cycle(OrderedPartition((1, 2)), 4)
    assert (c12.n, c12.num_edges) == (6, 4)


def test_cycle_rejects_bad_lengths():
    with pytest.raises(LengthTooShort):
        cycle(Partition((1, 1)), 2)
    with pytest.raises(LengthTooShort):
        cycle(Partition((1, 1)), 5)


def test_unordered_partition_uses_non_increasing_order():
    assert cycle(Partition((1, 2)), 4) == cycle(OrderedPartition((2, 1)), 4)


@pytest.mark.parametrize("k", [2, 3, 4])
@pytest.mark.parametrize("ell", [2, 3, 4])
def test_cycle_census(k, ell):
    for pi in proper_partitions(k):
        for o in orderings(pi):
            c = cycle(o, 2 * ell)
            assert np.all(_degrees(c) == 2)
            assert c.num_edges == ell * 2 ** (o.t - 1)
            assert c.n * 2 == c.num_edges * k
            assert not c.has_loops()


@pytest.mark.parametrize("k", [3, 4])
def test_cycle_counts_do_not_depend_on_ordering(k):
    hosts = [gen_random(GenSpec(4, k, 0.5, seed)) for seed in range(5)]
    for pi in proper_partitions(k):
        ords = orderings(pi)
        if len(ords) < 2:
            continue
        for h in hosts:
            counts = {hom_count_bruteforce(cycle(o, 4), h) for o in ords}
            assert len(counts) == 1, (pi, h, counts)
