"""Step, path and cycle hypergraphs built from binary codes.

Vertices carry structured labels while a gadget is assembled:

* ``("A", code, copy)`` for the 2^(t-1) vertices coded by length-(t-1) bit tuples,
* ``("B", j, code, copy)`` for class ``B_j`` (j = 2..t), coded by length-(t-2) tuples,

and paths prefix each label with the index of its step copy.  Labels are
mapped to dense integers only when the final :class:`Hypergraph` is built.

Conventions fixed here: bits are numbered from the most significant end,
so the edge through ``a`` meets ``B_{j+1}`` at the code of ``a`` with its
j-th leftmost bit removed; attach tuples list A-vertices by code as an
unsigned integer (MSB first), then by copy index.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import LengthTooShort
from .hypercore import Hypergraph, new_hypergraph
from .indexing import OrderedPartition, Partition

__all__ = ["Gadget", "step", "path", "cycle"]


@dataclass(frozen=True)
class Gadget:
    """A hypergraph with two ordered attach tuples of equal length."""

    hypergraph: Hypergraph
    attach0: tuple
    attach1: tuple
    labels: tuple = ()

    def __post_init__(self):
        if len(self.attach0) != len(self.attach1):
            raise ValueError("attach tuples differ in length")
        if set(self.attach0) & set(self.attach1):
            raise ValueError("attach tuples share a vertex")
        n = self.hypergraph.n
        if any(not 0 <= v < n for v in self.attach0 + self.attach1):
            raise ValueError("attach vertex outside the hypergraph")


def _step_structure(pi: OrderedPartition):
    """Labeled edges and attach tuples of the step, before integer relabeling."""
    t = pi.t
    k1 = pi.parts[0]
    codes = list(itertools.product((0, 1), repeat=t - 1))
    edges = []
    for a in codes:
        edge = [("A", a, c) for c in range(k1)]
        for j in range(1, t):
            b = a[: j - 1] + a[j:]
            edge.extend(("B", j + 1, b, c) for c in range(pi.parts[j]))
        edges.append(edge)
    attach0 = [("A", a, c) for a in codes if a[-1] == 0 for c in range(k1)]
    attach1 = [("A", a, c) for a in codes if a[-1] == 1 for c in range(k1)]
    return edges, attach0, attach1


def _build(edges, attach0, attach1, k) -> Gadget:
    labels = sorted({v for e in edges for v in e} | set(attach0) | set(attach1), key=repr)
    index = {lab: i for i, lab in enumerate(labels)}
    h = new_hypergraph(len(labels), k, [[index[v] for v in e] for e in edges])
    if h.num_edges != len(edges):
        raise AssertionError("gadget construction produced duplicate edges")
    return Gadget(
        h,
        tuple(index[v] for v in attach0),
        tuple(index[v] for v in attach1),
        tuple(labels),
    )


def step(pi: OrderedPartition) -> Gadget:
    """The step of type ``pi``: 2^(t-1) edges, each vertex class blown up to its part size."""
    edges, attach0, attach1 = _step_structure(pi)
    return _build(edges, attach0, attach1, pi.k)


def _glued_path(pi: OrderedPartition, ell: int):
    """Labeled edges of ell step copies, with each copy's A1 renamed to the next copy's A0."""
    edges, attach0, attach1 = _step_structure(pi)
    rename = dict(zip(attach1, attach0))

    def lab(i, v):
        # A1 of copy i is the same vertex as A0 of copy i+1
        if v in rename:
            return (i + 1, rename[v])
        return (i, v)

    all_edges = [[lab(i, v) for v in e] for i in range(ell) for e in edges]
    start = [(0, v) for v in attach0]
    end = [(ell, v) for v in attach0]
    return all_edges, start, end


def path(pi: OrderedPartition, ell: int) -> Gadget:
    """``ell`` copies of the step with successive attach tuples identified position-wise."""
    if ell < 1:
        raise LengthTooShort(f"a path needs at least one step, got {ell}")
    edges, start, end = _glued_path(pi, ell)
    return _build(edges, start, end, pi.k)


def cycle(pi, length: int) -> Hypergraph:
    """Cycle of type ``pi`` and the given even length: a path of length/2 steps closed up.

    An unordered :class:`Partition` uses its non-increasing ordering; an
    :class:`OrderedPartition` is used as given.
    """
    if isinstance(pi, Partition):
        pi = pi.canonical_ordering()
    if length % 2:
        raise LengthTooShort(f"cycle length must be even, got {length}")
    ell = length // 2
    if ell < 2:
        raise LengthTooShort(f"cycle needs at least two steps (length >= 4), got length {length}")
    edges, start, end = _glued_path(pi, ell)
    close = dict(zip(end, start))
    edges = [[close.get(v, v) for v in e] for e in edges]
    return _build(edges, [], [], pi.k).hypergraph
