"""Dense multilinear maps built from hypergraph adjacency.

A t-linear map is stored by its values on standard basis tuples, as a numpy
array of shape ``mode_dims``; everything else follows by linearity.  Modes of
a flattened adjacency map are tensor powers of ``R^n`` and use the row-major
codec from :mod:`hyperquasi.indexing`.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import indexing
from .config import entry_budget
from .errors import (
    ArityMismatch,
    ArityTooSmall,
    BudgetExceeded,
    DimMismatch,
    LevelOutOfRange,
    OutOfRangeVertex,
    ParseError,
)
from .hypercore import Hypergraph
from .indexing import OrderedPartition

__all__ = [
    "MultiMap",
    "DeviationMap",
    "DeviationSpec",
    "adjacency_eval",
    "flatten",
    "all_ones_map",
    "j_eval",
    "star_product",
    "power",
    "power_dims",
    "a_matrix",
    "a_matrix_dim",
    "deviation_map",
    "unit_ones",
    "tensor_power",
]


class MultiMap:
    """Dense real t-linear map ``V_1 x ... x V_t -> R``.

    ``values[i_1, ..., i_t]`` is the value on the standard basis tuple
    ``(e_{i_1}, ..., e_{i_t})``.  Integer arrays are kept integer so that
    products of adjacency maps stay exact.
    """

    __slots__ = ("values", "symmetric_hint")

    def __init__(self, values, symmetric_hint: bool = False):
        values = np.asarray(values)
        if values.ndim < 1:
            raise ArityTooSmall("a multilinear map needs at least one mode")
        if values.dtype.kind == "f" and not np.all(np.isfinite(values)):
            raise ValueError("multilinear map has non-finite entries")
        values.setflags(write=False)
        self.values = values
        self.symmetric_hint = symmetric_hint

    @property
    def mode_dims(self) -> tuple:
        return self.values.shape

    @property
    def t(self) -> int:
        return self.values.ndim

    @property
    def size(self) -> int:
        return self.values.size

    @property
    def is_integer(self) -> bool:
        return self.values.dtype.kind in "iu"

    def _check_args(self, xs, skip=None):
        expected = self.t - (skip is not None)
        if len(xs) != expected:
            raise DimMismatch(f"expected {expected} vectors, got {len(xs)}")
        dims = [d for i, d in enumerate(self.mode_dims) if i != skip]
        for x, d in zip(xs, dims):
            if np.shape(x) != (d,):
                raise DimMismatch(f"vector of shape {np.shape(x)} for a mode of dimension {d}")

    def __call__(self, *xs) -> float:
        self._check_args(xs)
        v = self.values
        for x in reversed(xs):
            v = v @ np.asarray(x)
        return float(v)

    evaluate = __call__

    def partial(self, mode: int, xs: Sequence) -> np.ndarray:
        """Representing vector of the linear map obtained by fixing every mode but ``mode``.

        ``xs`` lists the fixed vectors in mode order, skipping ``mode``.  The
        returned ``w`` satisfies ``self(..., y, ...) == w @ y``.
        """
        self._check_args(xs, skip=mode)
        before, after = xs[:mode], xs[mode:]
        v = self.values
        for x in reversed(after):
            v = v @ np.asarray(x)
        for x in before:
            v = np.tensordot(np.asarray(x), v, axes=(0, 0))
        return np.asarray(v, dtype=float)

    def matrix(self) -> np.ndarray:
        if self.t != 2:
            raise ArityMismatch(f"matrix form needs t=2, got t={self.t}")
        return self.values

    def dense(self, budget=None) -> "MultiMap":
        return self

    def to_bytes(self) -> bytes:
        """Binary dump: little-endian u64 t, u64 mode dims, then float64 values row-major."""
        head = struct.pack(f"<Q{self.t}Q", self.t, *self.mode_dims)
        return head + np.ascontiguousarray(self.values, dtype="<f8").tobytes()

    @classmethod
    def from_bytes(cls, blob: bytes) -> "MultiMap":
        if len(blob) < 8:
            raise ParseError("truncated multilinear map dump")
        (t,) = struct.unpack_from("<Q", blob, 0)
        dims = struct.unpack_from(f"<{t}Q", blob, 8)
        offset = 8 * (1 + t)
        count = math.prod(dims)
        if len(blob) != offset + 8 * count:
            raise ParseError(f"dump length {len(blob)} does not match dims {dims}")
        values = np.frombuffer(blob, dtype="<f8", offset=offset).reshape(dims)
        return cls(values.astype(float))

    def __eq__(self, other):
        if not isinstance(other, MultiMap):
            return NotImplemented
        return self.mode_dims == other.mode_dims and np.array_equal(self.values, other.values)

    def __repr__(self):
        return f"MultiMap(mode_dims={self.mode_dims}, dtype={self.values.dtype})"


def _check_vertex(h: Hypergraph, v):
    if not 0 <= v < h.n:
        raise OutOfRangeVertex(f"vertex {v} not in [0, {h.n})")


def adjacency_eval(h: Hypergraph, vertices: Sequence[int]) -> int:
    """Adjacency map on standard basis vectors: 1 iff the multiset of ``vertices`` is an edge."""
    if len(vertices) != h.k:
        raise ArityMismatch(f"need {h.k} vertices, got {len(vertices)}")
    for v in vertices:
        _check_vertex(h, v)
    return int(h.has_edge(vertices))


def _check_budget(entries, budget, what):
    cap = entry_budget(budget)
    if entries > cap:
        raise BudgetExceeded(f"{what} needs {entries:.3g} entries, budget is {cap:.3g}")


def flatten(h: Hypergraph, pi: OrderedPartition, budget=None) -> MultiMap:
    """The t-linear flattening of the adjacency map along the ordered partition ``pi``.

    Mode i has dimension ``n**k_i``; its basis vector with digits
    ``(v_1..v_{k_i})`` is ``e_{v_1} (x) ... (x) e_{v_{k_i}}``.
    """
    if pi.k != h.k:
        raise ArityMismatch(f"partition {pi} sums to {pi.k}, hypergraph has k={h.k}")
    _check_budget(h.n**h.k, budget, "adjacency tensor")
    values = h.adjacency_tensor(np.int64).reshape(pi.mode_dims(h.n))
    return MultiMap(values, symmetric_hint=len(set(pi.parts)) == 1)


def all_ones_map(mode_dims: Sequence[int]) -> MultiMap:
    return MultiMap(np.ones(tuple(mode_dims), dtype=np.int64), symmetric_hint=True)


def j_eval(*xs) -> float:
    """All-ones map evaluated without materializing it: the product of coordinate sums."""
    out = 1.0
    for x in xs:
        out *= float(np.sum(x))
    return out


def unit_ones(dim: int) -> np.ndarray:
    return np.full(dim, 1.0 / math.sqrt(dim))


def tensor_power(x: np.ndarray, r: int) -> np.ndarray:
    """``x (x) x (x) ... (x) x`` with ``r`` factors, flattened row-major."""
    out = np.asarray(x, dtype=float)
    for _ in range(r - 1):
        out = np.kron(out, x)
    return out


def _interleave(gram: np.ndarray, dims: tuple) -> np.ndarray:
    """Reshape a Gram array over (a_1..a_m, b_1..b_m) into modes (a_i, b_i) of size d_i**2."""
    m = len(dims)
    g = gram.reshape(dims + dims)
    axes = [ax for i in range(m) for ax in (i, m + i)]
    return np.ascontiguousarray(g.transpose(axes)).reshape(tuple(d * d for d in dims))


def star_product(phi: MultiMap, psi: MultiMap, method: str = "matmul", budget=None) -> MultiMap:
    """Contract two t-linear maps over their last mode.

    The result is the (t-1)-linear map on ``V_i (x) V_i`` whose value at
    ``(u_1 (x) v_1, ..., u_{t-1} (x) v_{t-1})`` is
    ``sum_j phi(u_1..u_{t-1}, b_j) * psi(v_1..v_{t-1}, b_j)``.
    Index ``(a, b)`` of a squared mode stores ``a`` (from ``phi``) as the high digit.

    ``method="direct"`` accumulates one outer product per basis vector of the
    contracted mode; ``"matmul"`` does the same contraction as one matrix product.
    """
    if phi.mode_dims != psi.mode_dims:
        raise DimMismatch(f"mode dims differ: {phi.mode_dims} vs {psi.mode_dims}")
    if phi.t < 2:
        raise ArityTooSmall(f"star product needs t >= 2, got t={phi.t}")
    head = phi.mode_dims[:-1]
    width = math.prod(head)
    _check_budget(width * width, budget, "star product")
    dtype = np.result_type(phi.values.dtype, psi.values.dtype)
    if method == "matmul":
        p = phi.values.reshape(width, -1)
        q = psi.values.reshape(width, -1)
        gram = p @ q.T
    elif method == "direct":
        gram = np.zeros((width, width), dtype=dtype)
        for j in range(phi.mode_dims[-1]):
            gram += np.multiply.outer(phi.values[..., j].reshape(-1), psi.values[..., j].reshape(-1))
    else:
        raise ValueError(f"unknown method {method!r}")
    return MultiMap(_interleave(gram, head))


def power_dims(mode_dims: Sequence[int], s: int) -> tuple:
    t = len(mode_dims)
    return tuple(d ** (2**s) for d in mode_dims[: t - s])


def power(phi: MultiMap, s: int, method: str = "matmul", budget=None) -> MultiMap:
    """The ``2**s``-th power: ``phi`` for s=0, else ``power(phi, s-1) * power(phi, s-1)``."""
    if not 0 <= s <= phi.t - 1:
        raise LevelOutOfRange(f"level {s} outside [0, {phi.t - 1}]")
    for level in range(1, s + 1):
        dims = power_dims(phi.mode_dims, level - 1)[:-1]
        _check_budget(math.prod(dims) ** 2, budget, f"power level {level}")
    out = phi
    for _ in range(s):
        out = star_product(out, out, method=method, budget=budget)
    return out


def a_matrix_dim(mode_dims: Sequence[int]) -> int:
    return mode_dims[0] ** (2 ** (len(mode_dims) - 2))


def a_matrix(phi: MultiMap, method: str = "matmul", budget=None) -> np.ndarray:
    """Square symmetric matrix of the top power ``phi^(2^(t-1))``.

    Row index ``(u_1..u_m)`` and column index ``(v_1..v_m)``, ``m = 2**(t-2)``,
    address the power's single mode at the interleaved digits
    ``(u_1, v_1, u_2, v_2, ...)``.

    Raises
    ------
    BudgetExceeded
        When any intermediate power exceeds the entry budget.
    ArithmeticError
        If the result is not symmetric (exactly for integer maps).
    """
    t = phi.t
    if t < 2:
        raise ArityTooSmall(f"a_matrix needs t >= 2, got t={t}")
    top = power(phi, t - 1, method=method, budget=budget).values
    d1 = phi.mode_dims[0]
    half = 2 ** (t - 2)
    dim = d1**half
    digits = top.reshape((d1,) * (2 * half))
    axes = list(range(0, 2 * half, 2)) + list(range(1, 2 * half, 2))
    mat = np.ascontiguousarray(digits.transpose(axes)).reshape(dim, dim)
    if mat.dtype.kind in "iu":
        if not np.array_equal(mat, mat.T):
            raise ArithmeticError("integer A matrix is not symmetric")
        return mat
    scale = max(1.0, float(np.max(np.abs(mat)))) if mat.size else 1.0
    if not np.allclose(mat, mat.T, rtol=0, atol=1e-9 * scale):
        raise ArithmeticError("A matrix is not symmetric")
    return (mat + mat.T) / 2


@dataclass(frozen=True)
class DeviationSpec:
    """Density scalar ``q = k! |E| / n**k`` subtracted along the all-ones map."""

    q: float

    def __post_init__(self):
        if not (math.isfinite(self.q) and self.q >= 0):
            raise ValueError(f"q must be finite and non-negative, got {self.q}")

    @classmethod
    def for_hypergraph(cls, h: Hypergraph) -> "DeviationSpec":
        if h.n == 0:
            return cls(0.0)
        return cls(math.factorial(h.k) * h.num_edges / h.n**h.k)


@dataclass(frozen=True)
class DeviationMap:
    """Lazy ``base - q * J``; ``J`` is only materialized by :meth:`dense`."""

    base: MultiMap
    q: float
    symmetric_hint: bool = field(default=False)

    @property
    def mode_dims(self) -> tuple:
        return self.base.mode_dims

    @property
    def t(self) -> int:
        return self.base.t

    def __call__(self, *xs) -> float:
        return self.base(*xs) - self.q * j_eval(*xs)

    evaluate = __call__

    def partial(self, mode: int, xs: Sequence) -> np.ndarray:
        w = self.base.partial(mode, xs)
        return w - self.q * j_eval(*xs) * np.ones(self.mode_dims[mode])

    def dense(self, budget=None) -> MultiMap:
        _check_budget(self.base.size, budget, "dense deviation map")
        return MultiMap(self.base.values - self.q, symmetric_hint=self.symmetric_hint)


def deviation_map(tau: MultiMap, q) -> DeviationMap:
    if isinstance(q, DeviationSpec):
        q = q.q
    if not math.isfinite(q):
        raise ValueError(f"q must be finite, got {q}")
    return DeviationMap(tau, float(q), tau.symmetric_hint)
