"""Exact circuit counts from traces, and enumeration oracles for homomorphisms and copies."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .config import DEFAULT_ENUM_BUDGET
from .errors import BudgetExceeded, LengthTooShort
from .hypercore import Hypergraph
from .indexing import OrderedPartition, Partition
from .mlmap import a_matrix, flatten

__all__ = [
    "CountReport",
    "exact_trace_power",
    "circuit_count_trace",
    "hom_count_bruteforce",
    "labeled_copy_count_bruteforce",
    "cycle_deviation",
]

_INT64_SAFE = 2**62


def exact_trace_power(a: np.ndarray, ell: int) -> int:
    """``trace(a**ell)`` in exact integer arithmetic for a symmetric integer matrix.

    Uses ``trace(a**ell) = sum(a**i * a**j)`` (elementwise) with ``i + j = ell``.
    Falls back to Python integers when int64 could overflow.
    """
    if ell < 1:
        raise ValueError(f"power must be >= 1, got {ell}")
    a = np.asarray(a)
    if a.dtype.kind not in "iu":
        raise TypeError("exact traces need an integer matrix")
    dim = a.shape[0]
    if dim == 0:
        return 0
    peak = int(np.max(np.abs(a)))
    if peak == 0:
        return 0
    if (peak * dim) ** ell >= _INT64_SAFE:
        a = a.astype(object)
    else:
        a = a.astype(np.int64)
    lo, hi = ell // 2, ell - ell // 2
    p_hi = _matpow(a, hi)
    p_lo = p_hi if lo == hi else (_matpow(a, lo) if lo else None)
    if p_lo is None:
        return int(sum(p_hi[i, i] for i in range(dim)))
    return int((p_hi * p_lo).sum())


def _matpow(a, e):
    out = a
    for _ in range(e - 1):
        out = out @ a
    return out


def circuit_count_trace(h: Hypergraph, pi: OrderedPartition, ell: int, budget=None) -> int:
    """Number of edge-preserving maps of the length-2*ell cycle of type ``pi`` into ``h``.

    Computed as the trace of the ell-th power of the integer A matrix.
    """
    if ell < 2:
        raise LengthTooShort(f"circuits need ell >= 2, got {ell}")
    a = a_matrix(flatten(h, pi, budget=budget), budget=budget)
    return exact_trace_power(a, ell)


def _vertex_order(nv, edges):
    """Greedy order that closes edges as early as possible."""
    incident = [set() for _ in range(nv)]
    for idx, e in enumerate(edges):
        for v in set(e):
            incident[v].add(idx)
    order, placed = [], set()
    remaining = set(range(nv))
    while remaining:
        def score(v):
            closes = sum(1 for idx in incident[v] if set(edges[idx]) - placed <= {v})
            touches = sum(1 for idx in incident[v] if set(edges[idx]) & placed)
            return (closes, touches, len(incident[v]), -v)
        v = max(remaining, key=score)
        order.append(v)
        placed.add(v)
        remaining.discard(v)
    return order


def _edge_lookup(h: Hypergraph) -> np.ndarray:
    return h.adjacency_tensor(np.bool_).reshape(-1)


def hom_count_bruteforce(f: Hypergraph, h: Hypergraph, budget: int = DEFAULT_ENUM_BUDGET) -> int:
    """Count all vertex maps ``V(f) -> V(h)`` sending every edge of ``f`` to an edge of ``h``.

    Maps are enumerated vertex by vertex.  A partial map is discarded as soon
    as one of its fully assigned edges misses ``h``; images of vertices whose
    edges are all checked are then forgotten and identical partial maps are
    merged with multiplicities.  ``budget`` caps the number of partial maps
    examined.

    Raises
    ------
    BudgetExceeded
        If more than ``budget`` partial maps would be examined.
    """
    if f.k != h.k:
        raise ValueError(f"uniformity mismatch: pattern k={f.k}, host k={h.k}")
    n, k = h.n, f.k
    edges = [tuple(e) for e in f.edges]
    if f.n == 0:
        return 1
    if n == 0:
        return 0
    lookup = _edge_lookup(h)
    weights = n ** np.arange(k - 1, -1, -1, dtype=np.int64)
    order = _vertex_order(f.n, edges)
    position = {v: i for i, v in enumerate(order)}
    closes_at = [[] for _ in order]
    last_use = {}
    for e in edges:
        closes_at[max(position[v] for v in e)].append(e)
        for v in e:
            last_use[v] = max(last_use.get(v, -1), max(position[u] for u in e))

    count_dtype = object if n**f.n >= _INT64_SAFE else np.int64
    active = []  # F-vertices whose images are columns of rows
    rows = np.zeros((1, 0), dtype=np.int64)
    counts = np.ones(1, dtype=count_dtype)
    work = 0
    for step_idx, v in enumerate(order):
        work += len(rows) * n
        if work > budget:
            raise BudgetExceeded(f"homomorphism enumeration exceeded {budget} partial maps")
        rows = np.hstack(
            [np.repeat(rows, n, axis=0), np.tile(np.arange(n, dtype=np.int64), len(rows))[:, None]]
        )
        counts = np.repeat(counts, n)
        active = active + [v]
        col = {u: i for i, u in enumerate(active)}
        keep = np.ones(len(rows), dtype=bool)
        for e in closes_at[step_idx]:
            idx = rows[:, [col[u] for u in e]] @ weights
            keep &= lookup[idx]
        rows, counts = rows[keep], counts[keep]
        if not len(rows):
            return 0
        stay = [i for i, u in enumerate(active) if last_use.get(u, -1) > step_idx]
        if len(stay) < len(active):
            active = [active[i] for i in stay]
            rows = rows[:, stay]
            if rows.shape[1] == 0:
                counts = np.array([counts.sum()], dtype=count_dtype)
                rows = np.zeros((1, 0), dtype=np.int64)
            else:
                rows, inverse = np.unique(rows, axis=0, return_inverse=True)
                merged = np.zeros(len(rows), dtype=count_dtype)
                np.add.at(merged, inverse.reshape(-1), counts)
                counts = merged
    return int(counts.sum())


def labeled_copy_count_bruteforce(
    f: Hypergraph, h: Hypergraph, budget: int = DEFAULT_ENUM_BUDGET
) -> int:
    """Count injective edge-preserving maps ``V(f) -> V(h)``."""
    if f.k != h.k:
        raise ValueError(f"uniformity mismatch: pattern k={f.k}, host k={h.k}")
    n = h.n
    if f.n > n:
        return 0
    if math.perm(n, f.n) > budget:
        raise BudgetExceeded(f"{math.perm(n, f.n)} injections exceed budget {budget}")
    if f.n == 0:
        return 1
    lookup = _edge_lookup(h)
    weights = n ** np.arange(f.k - 1, -1, -1, dtype=np.int64)
    edges = [tuple(e) for e in f.edges]
    order = _vertex_order(f.n, edges)
    position = {v: i for i, v in enumerate(order)}
    closes_at = [[] for _ in order]
    for e in edges:
        closes_at[max(position[v] for v in e)].append(e)

    rows = np.zeros((1, 0), dtype=np.int64)
    for step_idx, v in enumerate(order):
        cand = np.arange(n, dtype=np.int64)
        rows = np.hstack([np.repeat(rows, n, axis=0), np.tile(cand, len(rows))[:, None]])
        keep = np.all(rows[:, :-1] != rows[:, -1:], axis=1)
        col = {u: i for i, u in enumerate(order[: step_idx + 1])}
        for e in closes_at[step_idx]:
            keep &= lookup[rows[:, [col[u] for u in e]] @ weights]
        rows = rows[keep]
        if not len(rows):
            return 0
    return len(rows)


@dataclass(frozen=True)
class CountReport:
    """Circuit count of a cycle of length ``length`` against the random baseline ``p**m n**(mk/2)``."""

    circuits: int
    expected: float
    ratio: float
    m: int
    length: int

    def to_dict(self) -> dict:
        return asdict(self)


def cycle_deviation(h: Hypergraph, pi, ell: int, p: float, budget=None) -> CountReport:
    """Compare the circuit count of the length-4*ell cycle with ``p**m n**(mk/2)``.

    Degenerate circuits are included; they stand in for labeled copies.
    """
    if ell < 1:
        raise LengthTooShort(f"ell must be >= 1, got {ell}")
    if isinstance(pi, Partition):
        pi = pi.canonical_ordering()
    circuits = circuit_count_trace(h, pi, 2 * ell, budget=budget)
    m = 2 * ell * 2 ** (pi.t - 1)
    expected = float(p) ** m * float(h.n) ** (m * h.k // 2)
    ratio = circuits / expected if expected > 0 else (0.0 if circuits == 0 else math.inf)
    return CountReport(circuits=circuits, expected=expected, ratio=ratio, m=m, length=4 * ell)
