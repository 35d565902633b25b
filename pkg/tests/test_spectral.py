import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hyperquasi.errors import ArityMismatch, DegenerateSpectrum
from hyperquasi.hypercore import GenSpec, complete_graph, gen_planted_bias, gen_random, new_hypergraph
from hyperquasi.indexing import OrderedPartition, Partition, orderings, proper_partitions
from hyperquasi.mlmap import MultiMap, flatten, unit_ones
from hyperquasi.spectral import (
    SymMatrix,
    alignment_check,
    eig,
    jacobi_eig,
    lambda1_pi,
    lambda2_pi,
    spectral_norm,
    spectral_norm_bilinear,
    spectral_norm_hopm,
)

from conftest import hypergraphs

K3 = np.ones((3, 3)) - np.eye(3)


def test_eig_examples():
    assert np.allclose(eig([[2, 1], [1, 2]]).eigenvalues, [3, 1])
    assert np.allclose(eig(K3).eigenvalues, [2, -1, -1])
    assert np.allclose(eig(np.diag([5.0, -7.0, 1.0])).eigenvalues, [-7, 5, 1])


def test_eig_tie_break_positive_first():
    vals = eig(np.diag([-2.0, 1.0, 2.0])).eigenvalues
    assert vals.tolist() == [2.0, -2.0, 1.0]


def _sym(seed, d):
    a = np.random.default_rng(seed).standard_normal((d, d))
    return (a + a.T) / 2


@given(st.integers(0, 10**6), st.integers(1, 40))
def test_eig_invariants(seed, d):
    m = _sym(seed, d)
    dec = eig(m)
    mags = np.abs(dec.eigenvalues)
    assert np.all(mags[:-1] >= mags[1:] - 1e-12)
    v = dec.eigenvectors
    assert np.max(np.abs(v.T @ v - np.eye(d))) <= 1e-9
    scale = max(1.0, abs(dec.mu1))
    assert dec.residual <= 1e-8 * scale
    assert np.max(np.abs(dec.reconstruct() - m)) <= 1e-8 * scale
    assert np.allclose(np.sort(dec.eigenvalues), np.linalg.eigvalsh(m), atol=1e-9 * scale)


def test_jacobi_residual_regression():
    # cancellation in the off-diagonal norm once stopped this case a sweep early
    m = _sym(999999, 27)
    dec = eig(m, "jacobi")
    assert dec.residual <= 1e-12 * abs(dec.mu1)


def test_jacobi_and_lapack_agree_and_are_deterministic():
    m = _sym(5, 60)
    a, b = eig(m, "jacobi"), eig(m, "lapack")
    assert np.allclose(a.eigenvalues, b.eigenvalues, atol=1e-10)
    assert np.allclose(np.abs(a.eigenvectors.T @ b.eigenvectors).diagonal(), 1, atol=1e-8)
    assert np.array_equal(eig(m).eigenvalues, eig(m).eigenvalues)


def test_jacobi_trivial_inputs():
    vals, vecs = jacobi_eig(np.zeros((3, 3)))
    assert not vals.any() and np.array_equal(vecs, np.eye(3))
    vals, _ = jacobi_eig([[4.0]])
    assert vals.tolist() == [4.0]


def test_symmatrix_rejects_asymmetric():
    with pytest.raises(ValueError):
        SymMatrix([[0, 1], [2, 0]])
    with pytest.raises(ValueError):
        SymMatrix(np.ones((2, 3)))
    assert SymMatrix(K3).dim == 3


def test_bilinear_examples():
    assert spectral_norm_bilinear(MultiMap(np.eye(3))).lower == pytest.approx(1)
    b = spectral_norm_bilinear(MultiMap(K3))
    assert b.lower == pytest.approx(2) and b.upper == pytest.approx(2) and b.exact
    zero = spectral_norm_bilinear(MultiMap(np.zeros((2, 4))))
    assert zero.lower == zero.upper == 0
    u, v = zero.witness
    assert np.linalg.norm(u) == 1 and np.linalg.norm(v) == 1
    with pytest.raises(ArityMismatch):
        spectral_norm_bilinear(MultiMap(np.zeros((2, 2, 2))))


@given(st.integers(0, 10**6), st.integers(1, 6), st.integers(1, 6))
def test_bilinear_matches_svd(seed, r, c):
    mat = np.random.default_rng(seed).standard_normal((r, c))
    b = spectral_norm_bilinear(MultiMap(mat))
    assert b.lower == pytest.approx(np.linalg.norm(mat, 2), rel=1e-10)
    u, v = b.witness
    assert abs(u @ mat @ v - b.lower) <= 1e-9


def test_hopm_rank_one():
    rng = np.random.default_rng(0)
    x, y, z = (v / np.linalg.norm(v) for v in (rng.standard_normal(d) for d in (3, 4, 2)))
    b = spectral_norm_hopm(MultiMap(np.einsum("i,j,k->ijk", x, y, z)))
    assert b.lower == pytest.approx(1, abs=1e-8)
    assert b.upper == pytest.approx(1, abs=1e-8)


def test_hopm_collapses_to_bilinear():
    mat = np.random.default_rng(3).standard_normal((5, 5))
    b = spectral_norm_hopm(MultiMap(mat))
    exact = spectral_norm_bilinear(MultiMap(mat)).lower
    assert b.lower == pytest.approx(exact, abs=1e-8)
    assert b.upper == pytest.approx(exact, abs=1e-8)


def test_hopm_on_triangle():
    b = spectral_norm_hopm(flatten(complete_graph(3), OrderedPartition((1, 1))))
    assert b.lower == pytest.approx(2, abs=1e-8) and b.upper == pytest.approx(2, abs=1e-8)


@pytest.mark.parametrize("dims", [(3, 3, 3), (2, 4, 3), (2, 2, 2, 2)])
def test_hopm_bracket_invariants(dims):
    phi = MultiMap(np.random.default_rng(sum(dims)).standard_normal(dims))
    b = spectral_norm_hopm(phi, restarts=8)
    assert 0 <= b.lower <= b.upper
    assert all(abs(np.linalg.norm(x) - 1) <= 1e-10 for x in b.witness)
    assert abs(phi(*b.witness) - b.lower) <= 1e-9


def test_hopm_upper_absent_over_budget():
    phi = MultiMap(np.random.default_rng(1).standard_normal((4, 4, 4)))
    b = spectral_norm_hopm(phi, restarts=2, budget=100)
    assert b.upper is None and not b.upper_available and "unavailable" in b.note


@pytest.mark.parametrize("n", [3, 10, 30])
def test_complete_graph_eigenvalues(n):
    kn, pi = complete_graph(n), Partition((1, 1))
    l1, l2 = lambda1_pi(kn, pi), lambda2_pi(kn, pi)
    assert l1.lower == pytest.approx(n - 1, abs=1e-6) and l1.upper == pytest.approx(n - 1, abs=1e-6)
    assert l2.lower == pytest.approx(1, abs=1e-6) and l2.upper == pytest.approx(1, abs=1e-6)


@pytest.mark.parametrize("k", [2, 3])
def test_empty_hypergraph_eigenvalues(k):
    h = new_hypergraph(5, k, [])
    for pi in proper_partitions(k):
        for b in (lambda1_pi(h, pi, restarts=2), lambda2_pi(h, pi, restarts=2)):
            assert b.lower == 0 and b.upper == 0


@given(st.integers(0, 10**6), st.integers(2, 12))
def test_graph_lambda1_is_adjacency_norm(seed, n):
    h = gen_random(GenSpec(n, 2, 0.5, seed))
    l1 = lambda1_pi(h, Partition((1, 1)))
    ref = np.max(np.abs(np.linalg.eigvalsh(h.adjacency_matrix().astype(float))))
    assert l1.lower == pytest.approx(ref, abs=1e-9)


@given(hypergraphs(max_n=5, loops=False))
def test_lambda1_above_all_ones_value(h):
    tau_ones = math.factorial(h.k) * h.num_edges / h.n ** (h.k / 2)
    for pi in proper_partitions(h.k):
        b = lambda1_pi(h, pi, restarts=2)
        assert tau_ones <= b.lower + 1e-8
        assert b.lower <= b.upper + 1e-12


@pytest.mark.parametrize("seed", range(3))
def test_two_part_brackets_agree_across_orderings(seed):
    h = gen_random(GenSpec(6, 3, 0.5, seed))
    for fn in (lambda1_pi, lambda2_pi):
        per = fn(h, Partition((2, 1))).per_ordering
        a, b = per["2+1"], per["1+2"]
        assert a.lower == pytest.approx(b.lower, rel=1e-6)
        assert a.upper == pytest.approx(b.upper, rel=1e-6)


def test_multi_part_brackets_overlap_across_orderings():
    h = gen_random(GenSpec(4, 4, 0.5, 1))
    per = lambda1_pi(h, Partition((2, 1, 1)), restarts=4).per_ordering
    assert len(per) == 3
    assert max(b.lower for b in per.values()) <= min(b.upper for b in per.values()) + 1e-9


@given(hypergraphs(max_n=4))
def test_two_part_a_matrix_is_psd(h):
    for pi in proper_partitions(h.k):
        if pi.t != 2:
            continue
        for o in orderings(pi):
            b = spectral_norm(flatten(h, o))
            assert b.min_eigenvalue >= -1e-9 * max(1.0, abs(b.mu1))


def test_alignment_eigenvector_input():
    r = alignment_check(np.diag([1.0, 0.01]), np.array([1.0, 0.0]))
    assert r.alignment == pytest.approx(0, abs=1e-12)
    assert r.gap_ratio == pytest.approx(0.01)
    assert r.holds


def test_alignment_perturbed_construction():
    rng = np.random.default_rng(7)
    q, _ = np.linalg.qr(rng.standard_normal((8, 8)))
    u, v = q[:, 0], q[:, 1]
    perp = q[:, 1:] @ np.diag(rng.uniform(-1, 1, 7)) @ q[:, 1:].T
    m = 5.0 * np.outer(u, u) + 0.01 * perp
    x = u + 0.05 * v
    x /= np.linalg.norm(x)
    r = alignment_check(m, x)
    assert r.alignment <= 3 * math.sqrt(r.epsilon)
    assert r.holds


def test_alignment_orthogonal_input():
    u, x = np.eye(3)[0], np.eye(3)[1]
    m = np.diag([1.0, 0.01, 0.005])
    r = alignment_check(m, x)
    assert r.gap_ratio == pytest.approx(0.01)
    assert r.quadratic_ratio <= 0.01 + 1e-15
    assert r.max_perp_quadratic == pytest.approx(1.0)
    assert r.alignment == pytest.approx(math.sqrt(2))


@given(st.integers(0, 10**6), st.integers(2, 10))
def test_alignment_bound_always_holds(seed, d):
    rng = np.random.default_rng(seed)
    m = _sym(seed, d)
    x = rng.standard_normal(d)
    r = alignment_check(m, x / np.linalg.norm(x))
    assert r.holds


def test_alignment_errors():
    with pytest.raises(DegenerateSpectrum):
        alignment_check(np.zeros((2, 2)), np.array([1.0, 0.0]))
    with pytest.raises(ValueError):
        alignment_check(np.eye(2), np.array([1.0, 1.0]))


def test_to_dict_shape():
    d = lambda1_pi(complete_graph(4), Partition((1, 1))).to_dict()
    assert set(d) >= {"lower", "upper", "exact", "upper_available", "per_ordering"}


@pytest.fixture(scope="module")
def planted_vs_random():
    pi = Partition((2, 1))
    planted = gen_planted_bias(GenSpec(40, 3, 0.5, 1, bias=0.4))
    rand = gen_random(GenSpec(40, 3, 0.5, 1))
    return lambda2_pi(planted, pi).lower, lambda2_pi(rand, pi).lower


def test_planted_second_eigenvalue_exceeds_random(planted_vs_random):
    planted, rand = planted_vs_random
    # frozen from the first run: 41.60 vs 26.95
    assert planted == pytest.approx(41.60, abs=0.01)
    assert rand == pytest.approx(26.95, abs=0.01)
    assert planted > 1.5 * rand


@pytest.mark.xfail(strict=True, reason="measured separation is about 1.54x at n=40, short of 3x")
def test_planted_second_eigenvalue_three_times_random(planted_vs_random):
    planted, rand = planted_vs_random
    assert planted >= 3 * rand
