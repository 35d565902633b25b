"""k-uniform hypergraphs with loops: construction, random generators and text I/O.

Edges are k-element vertex multisets, stored canonically as non-decreasing
tuples, so ``(0, 0, 1)`` is the loop edge containing vertex 0 twice.

Random generators use numpy's PCG64 bit generator seeded with the 64-bit
``seed`` of a :class:`GenSpec`.  Admissible k-sets (or k-multisets when loops
are allowed) are visited in lexicographic order and each one consumes exactly
one ``Generator.random()`` double; an edge is kept when that double is below
its inclusion probability.  This draw order is part of the fixture contract.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    BiasOutOfRange,
    HeaderMismatch,
    InvalidGenSpec,
    OutOfRangeVertex,
    ParseError,
    WrongArity,
)

__all__ = [
    "Hypergraph",
    "GenSpec",
    "new_hypergraph",
    "admissible_edges",
    "gen_random",
    "gen_planted_bias",
    "read_hypergraph",
    "write_hypergraph",
    "load_hypergraph",
    "save_hypergraph",
    "complete_graph",
]

Edge = tuple


@dataclass(frozen=True)
class Hypergraph:
    """Immutable k-uniform hypergraph with loops on vertices ``0..n-1``.

    Build instances through :func:`new_hypergraph`, which validates and
    canonicalizes the edge list.
    """

    n: int
    k: int
    edges: tuple

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def has_edge(self, vertices: Iterable[int]) -> bool:
        return tuple(sorted(vertices)) in self.edge_set

    def has_loops(self) -> bool:
        return any(len(set(e)) < len(e) for e in self.edges)

    def density(self) -> float:
        """Edge count over C(n, k), the normalization used for loop-free hypergraphs."""
        total = math.comb(self.n, self.k)
        return self.num_edges / total if total else 0.0

    def adjacency_tensor(self, dtype=np.int64) -> np.ndarray:
        """Dense order-k array T with T[v1,...,vk] = 1 iff {v1..vk} is an edge."""
        t = np.zeros((self.n,) * self.k, dtype=dtype)
        for e in self.edges:
            for perm in set(itertools.permutations(e)):
                t[perm] = 1
        return t

    def adjacency_matrix(self, dtype=np.int64) -> np.ndarray:
        if self.k != 2:
            raise WrongArity(f"adjacency_matrix needs k=2, got k={self.k}")
        return self.adjacency_tensor(dtype)

    def with_edge(self, edge: Sequence[int]) -> "Hypergraph":
        return new_hypergraph(self.n, self.k, list(self.edges) + [list(edge)])

    def __repr__(self):
        return f"Hypergraph(n={self.n}, k={self.k}, |E|={self.num_edges})"


def new_hypergraph(n: int, k: int, edges: Iterable[Sequence[int]]) -> Hypergraph:
    """Validate and canonicalize an edge list.

    Each edge is sorted and duplicate edges are collapsed.

    Raises
    ------
    WrongArity
        If ``k < 2`` or an edge does not have exactly ``k`` entries.
    OutOfRangeVertex
        If an entry is negative or ``>= n``.
    """
    if k < 2:
        raise WrongArity(f"uniformity must be at least 2, got {k}")
    if n < 0:
        raise OutOfRangeVertex(f"vertex count must be non-negative, got {n}")
    canon = set()
    for edge in edges:
        edge = tuple(int(v) for v in edge)
        if len(edge) != k:
            raise WrongArity(f"edge {edge} has {len(edge)} entries, expected {k}")
        for v in edge:
            if v < 0 or v >= n:
                raise OutOfRangeVertex(f"vertex {v} of edge {edge} not in [0, {n})")
        canon.add(tuple(sorted(edge)))
    return Hypergraph(n=n, k=k, edges=tuple(sorted(canon)))


def complete_graph(n: int) -> Hypergraph:
    return new_hypergraph(n, 2, itertools.combinations(range(n), 2))


@dataclass(frozen=True)
class GenSpec:
    """Parameters of the binomial random hypergraph model.

    ``bias`` is the planted two-block bias; leave it ``None`` for plain
    :func:`gen_random`.
    """

    n: int
    k: int
    p: float
    seed: int = 0
    allow_loops: bool = False
    bias: Optional[float] = None

    def __post_init__(self):
        if self.k < 2:
            raise InvalidGenSpec(f"k must be >= 2, got {self.k}")
        if self.n < 0:
            raise InvalidGenSpec(f"n must be >= 0, got {self.n}")
        if not 0.0 <= self.p <= 1.0:
            raise InvalidGenSpec(f"p must lie in [0, 1], got {self.p}")
        if not self.allow_loops and self.n < self.k:
            raise InvalidGenSpec(f"n={self.n} < k={self.k} without loops")
        if not 0 <= self.seed < 2**64:
            raise InvalidGenSpec(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.bias is not None and self.bias < 0:
            raise InvalidGenSpec(f"bias must be >= 0, got {self.bias}")


def admissible_edges(n: int, k: int, allow_loops: bool = False):
    """All candidate edges in lexicographic order."""
    if allow_loops:
        return itertools.combinations_with_replacement(range(n), k)
    return itertools.combinations(range(n), k)


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _draw(spec: GenSpec, candidates: list, probs: np.ndarray) -> Hypergraph:
    u = _rng(spec.seed).random(len(candidates))
    kept = [e for e, keep in zip(candidates, u < probs) if keep]
    return new_hypergraph(spec.n, spec.k, kept)


def gen_random(spec: GenSpec) -> Hypergraph:
    """Binomial random hypergraph: each admissible edge kept independently with prob ``p``."""
    if spec.bias is not None:
        raise InvalidGenSpec("gen_random expects bias=None; use gen_planted_bias")
    candidates = list(admissible_edges(spec.n, spec.k, spec.allow_loops))
    return _draw(spec, candidates, np.full(len(candidates), spec.p))


def planted_probabilities(spec: GenSpec, candidates: list) -> np.ndarray:
    """Inclusion probability of each candidate under the two-block bias model.

    Vertices ``[0, ceil(n/2))`` form the left block.  Edges inside one block get
    ``p + bias``; crossing edges get ``p - bias*c`` with ``c = N_in / N_cross``
    so that the expected density stays ``p``.
    """
    bias = spec.bias or 0.0
    half = (spec.n + 1) // 2
    inside = np.array(
        [all(v < half for v in e) or all(v >= half for v in e) for e in candidates], dtype=bool
    )
    n_in = int(inside.sum())
    n_cross = len(candidates) - n_in
    c = n_in / n_cross if n_cross else 0.0
    p_in = spec.p + bias
    p_cross = spec.p - bias * c
    if spec.p - bias < 0 or p_in > 1:
        raise BiasOutOfRange(f"need 0 <= p-bias and p+bias <= 1 (p={spec.p}, bias={bias})")
    if not -1e-12 <= p_cross <= 1:
        raise BiasOutOfRange(f"crossing probability {p_cross:.6g} outside [0, 1]")
    return np.where(inside, p_in, max(p_cross, 0.0))


def gen_planted_bias(spec: GenSpec) -> Hypergraph:
    """Random hypergraph with a planted two-block density bias.

    With ``bias`` 0 (or ``None``) this reproduces :func:`gen_random` exactly,
    since both consume the same uniform deviates in the same order.
    """
    candidates = list(admissible_edges(spec.n, spec.k, spec.allow_loops))
    return _draw(spec, candidates, planted_probabilities(spec, candidates))


def write_hypergraph(h: Hypergraph) -> str:
    """Serialize to the text format: header ``"k n"`` then one sorted edge per line."""
    lines = [f"{h.k} {h.n}"]
    lines.extend(" ".join(str(v) for v in e) for e in sorted(h.edges))
    return "\n".join(lines) + "\n"


def read_hypergraph(text: str) -> Hypergraph:
    header = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            nums = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(f"non-integer token in {raw!r}", lineno) from None
        if header is None:
            if len(nums) != 2:
                raise ParseError("header must be 'k n'", lineno)
            k, n = nums
            if k < 2 or n < 0:
                raise ParseError(f"invalid header k={k} n={n}", lineno)
            header = (k, n)
            continue
        k, n = header
        if len(nums) != k:
            raise HeaderMismatch(f"edge has {len(nums)} entries but header declares k={k}", lineno)
        if any(v < 0 or v >= n for v in nums):
            raise HeaderMismatch(f"edge {nums} has a vertex outside [0, {n})", lineno)
        edges.append(nums)
    if header is None:
        raise ParseError("missing header line", None)
    k, n = header
    return new_hypergraph(n, k, edges)


def load_hypergraph(path) -> Hypergraph:
    with open(path, encoding="utf-8") as fh:
        return read_hypergraph(fh.read())


def save_hypergraph(h: Hypergraph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(write_hypergraph(h))
