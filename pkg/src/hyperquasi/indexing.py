"""Partitions of k, ordered partitions, flat/multi index codecs and the pair-swap permutation.

Flattening is row-major everywhere: a digit tuple ``(x_1, ..., x_d)`` over base
``n`` maps to ``sum x_i * n**(d-i)``, most significant digit first.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import IndexOutOfRange, InvalidPartition

__all__ = [
    "Partition",
    "OrderedPartition",
    "IndexCodec",
    "proper_partitions",
    "orderings",
    "parse_partition",
    "gamma_apply",
    "gamma_permutation",
    "gamma_vector",
]


def _check_parts(parts):
    if len(parts) < 2:
        raise InvalidPartition(f"a proper partition needs at least two parts, got {parts}")
    if any(int(p) != p or p < 1 for p in parts):
        raise InvalidPartition(f"parts must be positive integers, got {parts}")


@dataclass(frozen=True)
class Partition:
    """Unordered proper partition of k, stored with non-increasing parts."""

    parts: tuple

    def __post_init__(self):
        parts = tuple(sorted((int(p) for p in self.parts), reverse=True))
        _check_parts(parts)
        object.__setattr__(self, "parts", parts)

    @property
    def k(self) -> int:
        return sum(self.parts)

    @property
    def t(self) -> int:
        return len(self.parts)

    def canonical_ordering(self) -> "OrderedPartition":
        return OrderedPartition(self.parts)

    def __str__(self):
        return "+".join(map(str, self.parts))


@dataclass(frozen=True)
class OrderedPartition:
    """Ordered proper partition ``(k_1, ..., k_t)``."""

    parts: tuple

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        _check_parts(parts)
        object.__setattr__(self, "parts", parts)

    @property
    def k(self) -> int:
        return sum(self.parts)

    @property
    def t(self) -> int:
        return len(self.parts)

    def mode_dims(self, n: int) -> tuple:
        return tuple(n**ki for ki in self.parts)

    def unordered(self) -> Partition:
        return Partition(self.parts)

    def __str__(self):
        return "+".join(map(str, self.parts))


def parse_partition(text: str) -> OrderedPartition:
    """Parse ``"2+1"`` into an ordered partition."""
    tokens = text.strip().split("+")
    try:
        return OrderedPartition(tuple(int(tok) for tok in tokens if tok.strip()))
    except ValueError:
        raise InvalidPartition(f"cannot parse partition {text!r}") from None


def _partitions(k, largest):
    if k == 0:
        yield ()
        return
    for first in range(min(k, largest), 0, -1):
        for rest in _partitions(k - first, first):
            yield (first,) + rest


def proper_partitions(k: int) -> list:
    """All partitions of k into at least two parts, in reverse lexicographic order.

    >>> [p.parts for p in proper_partitions(4)]
    [(3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    """
    if k < 2:
        raise InvalidPartition(f"k must be >= 2, got {k}")
    return [Partition(p) for p in _partitions(k, k) if len(p) >= 2]


def orderings(pi: Partition) -> list:
    """Distinct orderings of ``pi`` in first-appearance order of ``itertools.permutations``."""
    seen = dict.fromkeys(itertools.permutations(pi.parts))
    return [OrderedPartition(p) for p in seen]


@dataclass(frozen=True)
class IndexCodec:
    """Bijection between flat indices in ``[0, base**arity)`` and digit tuples."""

    base: int
    arity: int

    @property
    def size(self) -> int:
        return self.base**self.arity

    def encode(self, digits: Sequence[int]) -> int:
        if len(digits) != self.arity:
            raise IndexOutOfRange(f"expected {self.arity} digits, got {len(digits)}")
        flat = 0
        for d in digits:
            if not 0 <= d < self.base:
                raise IndexOutOfRange(f"digit {d} outside [0, {self.base})")
            flat = flat * self.base + int(d)
        return flat

    def decode(self, flat: int) -> tuple:
        if not 0 <= flat < self.size:
            raise IndexOutOfRange(f"flat index {flat} outside [0, {self.size})")
        digits = []
        for _ in range(self.arity):
            flat, d = divmod(flat, self.base)
            digits.append(d)
        return tuple(reversed(digits))

    def decode_all(self) -> np.ndarray:
        """``(size, arity)`` array whose row i is ``decode(i)``."""
        if self.arity == 0:
            return np.zeros((1, 0), dtype=np.int64)
        grids = np.indices((self.base,) * self.arity).reshape(self.arity, -1)
        return grids.T.astype(np.int64)


@lru_cache(maxsize=64)
def _gamma_perm_cached(s: int, mode_dim: int) -> np.ndarray:
    if s == 0:
        perm = np.arange(mode_dim, dtype=np.int64)
    else:
        digits = 2**s
        axes = []
        for pair in range(digits // 2):
            axes.extend((2 * pair + 1, 2 * pair))
        grid = np.arange(mode_dim**digits, dtype=np.int64).reshape((mode_dim,) * digits)
        # grid.transpose(axes)[i...] = grid[swapped i...], i.e. the swapped flat index
        perm = np.ascontiguousarray(grid.transpose(axes)).reshape(-1)
    perm.setflags(write=False)
    return perm


def gamma_permutation(s: int, mode_dim: int) -> np.ndarray:
    """Array ``g`` with ``g[x] = gamma_apply(s, mode_dim, x)`` for every x.

    The digit string of x (``2**s`` digits over ``mode_dim``) is read as pairs
    ``(i1, j1, i2, j2, ...)`` and each pair is swapped.
    """
    if s < 0:
        raise IndexOutOfRange(f"level must be >= 0, got {s}")
    return _gamma_perm_cached(s, mode_dim)


def gamma_apply(s: int, mode_dim: int, x: int) -> int:
    size = mode_dim ** (2**s)
    if not 0 <= x < size:
        raise IndexOutOfRange(f"index {x} outside [0, {size})")
    if s == 0:
        return x
    codec = IndexCodec(mode_dim, 2**s)
    digits = list(codec.decode(x))
    digits[0::2], digits[1::2] = digits[1::2], digits[0::2]
    return codec.encode(digits)


def gamma_vector(s: int, mode_dim: int, x: np.ndarray) -> np.ndarray:
    """Apply the pair-swap isomorphism to a vector ``x`` of ``V^{(x) 2^s}``, ``dim V = mode_dim``."""
    x = np.asarray(x)
    if len(x) != mode_dim ** (2**s):
        raise IndexOutOfRange(f"length {len(x)} is not {mode_dim}**{2**s}")
    perm = gamma_permutation(s, mode_dim)
    out = np.empty_like(x)
    out[perm] = x
    return out
