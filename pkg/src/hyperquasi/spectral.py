"""Symmetric eigendecomposition and spectral norms of multilinear maps.

Norms of t-linear maps with t >= 3 are reported as brackets: the lower end
comes from alternating maximization over unit vectors, the upper end from the
top eigenvalue of the A matrix, ``|mu_1| ** (1 / 2**(t-1))``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import ArityMismatch, BudgetExceeded, DegenerateSpectrum, NoConvergence
from .hypercore import Hypergraph
from .indexing import Partition, orderings
from .mlmap import DeviationSpec, MultiMap, a_matrix, deviation_map, flatten

logger = logging.getLogger(__name__)

__all__ = [
    "SymMatrix",
    "EigenDecomp",
    "NormBracket",
    "AlignmentReport",
    "eig",
    "jacobi_eig",
    "spectral_norm_bilinear",
    "spectral_norm_hopm",
    "spectral_norm",
    "lambda1_pi",
    "lambda2_pi",
    "alignment_check",
]

JACOBI_MAX_SWEEPS = 100
JACOBI_MAX_DIM = 128
HOPM_RESTARTS = 16
HOPM_MAX_ITER = 500
HOPM_TOL = 1e-10


class SymMatrix:
    """Square real symmetric matrix (exact symmetry for integer input, 1e-9 relative otherwise)."""

    __slots__ = ("values",)

    def __init__(self, values):
        values = np.asarray(values)
        if values.ndim != 2 or values.shape[0] != values.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("matrix has non-finite entries")
        if values.dtype.kind in "iu":
            symmetric = np.array_equal(values, values.T)
        else:
            scale = max(1.0, float(np.max(np.abs(values)))) if values.size else 1.0
            symmetric = np.allclose(values, values.T, rtol=0, atol=1e-9 * scale)
        if not symmetric:
            raise ValueError("matrix is not symmetric")
        self.values = values

    @property
    def dim(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class EigenDecomp:
    """Eigenpairs sorted by decreasing ``|mu|``; ``eigenvectors[:, i]`` pairs with ``eigenvalues[i]``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    residual: float

    @property
    def mu1(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def mu2(self) -> float:
        return float(self.eigenvalues[1]) if len(self.eigenvalues) > 1 else 0.0

    @property
    def lambda1(self) -> float:
        return abs(self.mu1)

    @property
    def lambda2(self) -> float:
        return abs(self.mu2)

    @property
    def leading_vector(self) -> np.ndarray:
        return self.eigenvectors[:, 0]

    @property
    def min_eigenvalue(self) -> float:
        return float(np.min(self.eigenvalues))

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.T


def _round_robin(m):
    """Rounds of disjoint index pairs covering every pair of ``range(m)`` once (circle method)."""
    players = list(range(m)) + ([None] if m % 2 else [])
    size = len(players)
    rounds = []
    for _ in range(size - 1):
        pairs = [(players[i], players[size - 1 - i]) for i in range(size // 2)]
        rounds.append([(min(p), max(p)) for p in pairs if None not in p])
        players = [players[0], players[-1]] + players[1:-1]
    return [(np.array([p for p, _ in r]), np.array([q for _, q in r])) for r in rounds if r]


def jacobi_eig(m, tol: float = 1e-14, max_sweeps: int = JACOBI_MAX_SWEEPS):
    """Cyclic Jacobi eigenvalue iteration for a real symmetric matrix.

    Each sweep visits every off-diagonal pair once, in round-robin rounds of
    disjoint pairs so that one round is a single vectorized update.

    Returns unsorted ``(eigenvalues, eigenvectors)``.
    """
    a = np.array(m, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    if n < 2:
        return np.diag(a).copy(), v
    rounds = _round_robin(n)
    scale = np.linalg.norm(a)
    if scale == 0:
        return np.zeros(n), v
    for sweep in range(max_sweeps):
        # direct off-diagonal norm; sum(a*a) - sum(diag**2) cancels catastrophically
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= tol * scale:
            return np.diag(a).copy(), v
        rotated = False
        for p, q in rounds:
            apq = a[p, q]
            # entries below roundoff of their diagonal pair are already zero
            active = np.abs(apq) > 1e-18 * (np.abs(a[p, p]) + np.abs(a[q, q])) + 1e-300
            if not active.any():
                continue
            rotated = True
            p, q, apq = p[active], q[active], apq[active]
            theta = (a[q, q] - a[p, p]) / (2.0 * apq)
            t = np.where(theta >= 0, 1.0, -1.0) / (np.abs(theta) + np.hypot(theta, 1.0))
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            rp, rq = a[p, :].copy(), a[q, :].copy()
            a[p, :] = c[:, None] * rp - s[:, None] * rq
            a[q, :] = s[:, None] * rp + c[:, None] * rq
            cp, cq = a[:, p].copy(), a[:, q].copy()
            a[:, p] = cp * c - cq * s
            a[:, q] = cp * s + cq * c
            a[p, q] = 0.0
            a[q, p] = 0.0
            vp, vq = v[:, p].copy(), v[:, q].copy()
            v[:, p] = vp * c - vq * s
            v[:, q] = vp * s + vq * c
        if not rotated:
            return np.diag(a).copy(), v
    raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps")


def _sort_order(vals):
    scale = max(1.0, float(np.max(np.abs(vals)))) if len(vals) else 1.0
    mag = np.round(np.abs(vals) / scale, 12)
    # ties at equal |mu|: positive first, then original index
    return sorted(range(len(vals)), key=lambda i: (-mag[i], vals[i] < 0, i))


def eig(m, method: str = "auto") -> EigenDecomp:
    """Full eigendecomposition of a symmetric matrix, sorted by decreasing absolute value.

    ``method`` is ``"jacobi"``, ``"lapack"`` (``numpy.linalg.eigh``) or ``"auto"``,
    which uses Jacobi up to dimension 128.  Each eigenvector is signed so its
    largest-magnitude entry is positive.
    """
    if isinstance(m, SymMatrix):
        m = m.values
    m = SymMatrix(m).values.astype(float)
    n = m.shape[0]
    if n < 1:
        raise ValueError("empty matrix")
    if method == "auto":
        method = "jacobi" if n <= JACOBI_MAX_DIM else "lapack"
    if method == "jacobi":
        vals, vecs = jacobi_eig(m)
    elif method == "lapack":
        vals, vecs = np.linalg.eigh(m)
    else:
        raise ValueError(f"unknown method {method!r}")
    order = _sort_order(vals)
    vals, vecs = vals[order], vecs[:, order]
    pivots = np.argmax(np.abs(vecs), axis=0)
    signs = np.sign(vecs[pivots, np.arange(n)])
    signs[signs == 0] = 1.0
    vecs = vecs * signs
    residual = float(np.max(np.linalg.norm(m @ vecs - vecs * vals, axis=0)))
    return EigenDecomp(vals, vecs, residual)


@dataclass
class NormBracket:
    """Certified interval ``[lower, upper]`` for a spectral norm.

    ``witness`` holds unit vectors at which the map evaluates to ``lower``.
    ``upper`` is ``None`` when the A matrix was over budget.
    """

    lower: float
    upper: Optional[float]
    witness: tuple = ()
    exact: bool = False
    mu1: Optional[float] = None
    min_eigenvalue: Optional[float] = None
    per_ordering: dict = field(default_factory=dict)
    note: str = ""

    @property
    def upper_available(self) -> bool:
        return self.upper is not None

    @property
    def width(self) -> Optional[float]:
        return None if self.upper is None else self.upper - self.lower

    def to_dict(self) -> dict:
        out = {
            "lower": self.lower,
            "upper": self.upper,
            "exact": self.exact,
            "upper_available": self.upper_available,
        }
        if self.per_ordering:
            out["per_ordering"] = {k: v.to_dict() for k, v in self.per_ordering.items()}
        if self.note:
            out["note"] = self.note
        return out


def _settle(lower, upper):
    """Enforce lower <= upper; a real violation of the A-matrix bound is an error."""
    if upper is None:
        return upper
    if lower > upper * (1 + 1e-9) + 1e-12:
        raise ArithmeticError(f"lower bound {lower!r} exceeds certified upper bound {upper!r}")
    return max(upper, lower)


def _as_dense(phi, budget):
    return phi.dense(budget) if hasattr(phi, "dense") else phi


def _basis(dim):
    e = np.zeros(dim)
    e[0] = 1.0
    return e


def spectral_norm_bilinear(phi, budget=None) -> NormBracket:
    """Exact norm of a bilinear map: square root of the top eigenvalue of its smaller Gram matrix."""
    if phi.t != 2:
        raise ArityMismatch(f"bilinear norm needs t=2, got t={phi.t}")
    mat = np.asarray(_as_dense(phi, budget).values, dtype=float)
    rows, cols = mat.shape
    left = rows <= cols
    gram = mat @ mat.T if left else mat.T @ mat
    dec = eig(gram)
    sigma = math.sqrt(max(dec.mu1, 0.0))
    if sigma == 0.0:
        witness = (_basis(rows), _basis(cols))
        return NormBracket(0.0, 0.0, witness, exact=True, mu1=0.0)
    top = dec.leading_vector
    if left:
        u = top
        v = mat.T @ u
        v /= np.linalg.norm(v)
    else:
        v = top
        u = mat @ v
        u /= np.linalg.norm(u)
    return NormBracket(sigma, sigma, (u, v), exact=True, mu1=dec.mu1)


def _alternating_max(phi, xs, max_iter, tol):
    t = phi.t
    value = abs(phi(*xs))
    for _ in range(max_iter):
        prev = value
        for i in range(t):
            w = phi.partial(i, xs[:i] + xs[i + 1 :])
            norm = float(np.linalg.norm(w))
            if norm > 0:
                xs[i] = w / norm
        value = abs(phi(*xs))
        if abs(value - prev) < tol:
            break
    return value, xs


def a_matrix_spectrum(phi, budget=None) -> EigenDecomp:
    return eig(a_matrix(_as_dense(phi, budget), budget=budget))


def spectral_norm_hopm(
    phi,
    restarts: int = HOPM_RESTARTS,
    max_iter: int = HOPM_MAX_ITER,
    tol: float = HOPM_TOL,
    seed: int = 0,
    budget=None,
    with_upper: bool = True,
) -> NormBracket:
    """Bracket the spectral norm by alternating maximization and the A-matrix bound.

    Starts from the normalized all-ones tuple and ``restarts`` Gaussian tuples
    drawn from ``numpy.random.default_rng(seed)``.  Each pass replaces one
    vector by the normalized representing vector of the map with the other
    vectors fixed, which never decreases ``|phi|``.  The best start wins, ties
    going to the earliest.
    """
    if phi.t < 2:
        raise ArityMismatch(f"need t >= 2, got t={phi.t}")
    dims = phi.mode_dims
    rng = np.random.default_rng(seed)
    starts = [[np.full(d, 1.0 / math.sqrt(d)) for d in dims]]
    for _ in range(restarts):
        start = []
        for d in dims:
            x = rng.standard_normal(d)
            start.append(x / np.linalg.norm(x))
        starts.append(start)
    best_value, best_xs = -1.0, None
    for start in starts:
        value, xs = _alternating_max(phi, list(start), max_iter, tol)
        if value > best_value:
            best_value, best_xs = value, xs
    xs = [x.copy() for x in best_xs]
    value = phi(*xs)
    if value < 0:
        xs[0] = -xs[0]
    lower = abs(value)
    upper = mu1 = min_eig = None
    note = ""
    if with_upper:
        try:
            dec = a_matrix_spectrum(phi, budget)
            mu1, min_eig = dec.mu1, dec.min_eigenvalue
            upper = abs(mu1) ** (1.0 / 2 ** (phi.t - 1))
        except BudgetExceeded as exc:
            note = f"upper bound unavailable: {exc}"
            logger.warning(note)
    upper = _settle(lower, upper)
    return NormBracket(lower, upper, tuple(xs), mu1=mu1, min_eigenvalue=min_eig, note=note)


def spectral_norm(phi, budget=None, **hopm) -> NormBracket:
    """Exact norm for bilinear maps, HOPM bracket otherwise.

    For t=2 the A matrix spectrum is still computed (when in budget) so that
    ``mu1`` and its minimum eigenvalue are reported alongside the exact norm.
    """
    if phi.t == 2:
        out = spectral_norm_bilinear(phi, budget=budget)
        try:
            dec = a_matrix_spectrum(phi, budget)
            out.mu1, out.min_eigenvalue = dec.mu1, dec.min_eigenvalue
            out.upper = _settle(out.lower, max(out.upper, math.sqrt(max(abs(dec.mu1), 0.0))))
        except BudgetExceeded as exc:
            out.note = f"A matrix unavailable: {exc}"
        return out
    return spectral_norm_hopm(phi, budget=budget, **hopm)


def _combine(per):
    """Intersect brackets of the same norm computed from different orderings."""
    best = max(per.values(), key=lambda b: b.lower)
    uppers = [b.upper for b in per.values() if b.upper is not None]
    upper = min(uppers) if uppers else None
    upper = _settle(best.lower, upper)
    exact = any(b.exact for b in per.values())
    return NormBracket(
        best.lower,
        upper,
        best.witness,
        exact=exact,
        mu1=best.mu1,
        min_eigenvalue=best.min_eigenvalue,
        per_ordering=dict(per),
    )


def _ordered(pi):
    if isinstance(pi, Partition):
        return orderings(pi)
    return orderings(pi.unordered())


def lambda1_pi(h: Hypergraph, pi, ordering=None, budget=None, **hopm) -> NormBracket:
    """Bracket for the largest eigenvalue of ``h`` with respect to ``pi``.

    The norm does not depend on the ordering, so brackets from all orderings
    (or just ``ordering`` if given) are intersected.
    """
    ords = [ordering] if ordering is not None else _ordered(pi)
    per = {str(o): spectral_norm(flatten(h, o, budget=budget), budget=budget, **hopm) for o in ords}
    return _combine(per)


def lambda2_pi(h: Hypergraph, pi, ordering=None, budget=None, **hopm) -> NormBracket:
    """Bracket for the second eigenvalue: the norm of the adjacency map minus ``q J``."""
    q = DeviationSpec.for_hypergraph(h)
    ords = [ordering] if ordering is not None else _ordered(pi)
    per = {}
    for o in ords:
        dev = deviation_map(flatten(h, o, budget=budget), q)
        per[str(o)] = spectral_norm(dev, budget=budget, **hopm)
    return _combine(per)


@dataclass(frozen=True)
class AlignmentReport:
    """How closely a unit vector ``x`` tracks the leading eigenvector of ``M``.

    ``epsilon`` is ``max(1 - |x^T M x| / lambda_1, lambda_2 / lambda_1)`` and
    ``bound = 3 * sqrt(epsilon)``; ``alignment <= bound`` always holds.
    """

    gap_ratio: float
    alignment: float
    quadratic_ratio: float
    max_perp_quadratic: float
    epsilon: float
    bound: float

    @property
    def holds(self) -> bool:
        return self.alignment <= self.bound + 1e-12


def alignment_check(m, x) -> AlignmentReport:
    """Distance from ``x`` to the leading eigenvector and the largest ``|y^T M y| / lambda_1`` over unit ``y`` orthogonal to ``x``.

    The maximum over ``y`` is computed exactly as the spectral radius of ``M``
    compressed to the orthogonal complement of ``x``.
    """
    if isinstance(m, SymMatrix):
        m = m.values
    m = np.asarray(m, dtype=float)
    x = np.asarray(x, dtype=float)
    if abs(np.linalg.norm(x) - 1.0) > 1e-10:
        raise ValueError("x must be a unit vector")
    dec = eig(m)
    lam1 = dec.lambda1
    if lam1 == 0:
        raise DegenerateSpectrum("largest eigenvalue is zero")
    u = dec.leading_vector
    alignment = min(np.linalg.norm(u - x), np.linalg.norm(u + x))
    quad = abs(float(x @ m @ x)) / lam1
    gap = dec.lambda2 / lam1
    proj = np.eye(len(x)) - np.outer(x, x)
    perp = proj @ m @ proj
    max_perp = eig((perp + perp.T) / 2).lambda1 / lam1 if len(x) > 1 else 0.0
    eps = max(1.0 - quad, gap, 0.0)
    return AlignmentReport(
        gap_ratio=gap,
        alignment=float(alignment),
        quadratic_ratio=quad,
        max_perp_quadratic=float(max_perp),
        epsilon=eps,
        bound=3.0 * math.sqrt(eps),
    )
