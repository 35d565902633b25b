"""Self-check suites run by ``hyperquasi verify``.

Each suite returns a :class:`SuiteResult`; a suite fails on the first
violated check and records which one.  ``quick`` covers k <= 3 on four-vertex
hosts; ``full`` adds k = 4 partitions and length-6 cycles.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import indexing
from .counting import circuit_count_trace, hom_count_bruteforce
from .gadgets import cycle
from .hypercore import GenSpec, complete_graph, gen_random, new_hypergraph
from .indexing import IndexCodec, OrderedPartition, Partition, orderings, proper_partitions
from .mlmap import (
    MultiMap,
    a_matrix,
    all_ones_map,
    flatten,
    j_eval,
    power,
    star_product,
    tensor_power,
)
from .spectral import eig, lambda1_pi, lambda2_pi, spectral_norm

__all__ = ["SuiteResult", "SUITES", "run_suites"]


@dataclass
class SuiteResult:
    name: str
    passed: bool = True
    checks: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    def check(self, ok, what):
        self.checks += 1
        if not ok:
            self.passed = False
            if len(self.failures) < 10:
                self.failures.append(what)

    def to_dict(self, timing: bool = False):
        out = {
            "suite": self.name,
            "passed": self.passed,
            "checks": self.checks,
            "failures": self.failures,
        }
        if timing:
            out["seconds"] = round(self.seconds, 3)
        return out


def _unit(rng, d):
    x = rng.standard_normal(d)
    return x / np.linalg.norm(x)


def _random_map(rng, dims):
    return MultiMap(rng.standard_normal(dims))


def _hosts(k, n, count, seed0=0, loops=(False, True)):
    out = []
    for i in range(count):
        allow = loops[i % len(loops)] or n < k
        out.append(gen_random(GenSpec(n, k, 0.5, seed0 + i, allow_loops=allow)))
    return out


def _ks(level):
    return (2, 3, 4) if level == "full" else (2, 3)


def suite_partitions(res, level, rng):
    expected = {2: [(1, 1)], 3: [(2, 1), (1, 1, 1)], 4: [(3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]}
    for k, parts in expected.items():
        res.check([p.parts for p in proper_partitions(k)] == parts, f"partitions of {k}")
    for k in range(2, 8):
        for pi in proper_partitions(k):
            mult = sum(
                math.prod(math.factorial(pi.parts.count(v)) for v in set(pi.parts))
                for _ in orderings(pi)
            )
            res.check(mult == math.factorial(pi.t), f"ordering multiplicities of {pi}")
    for base, arity in [(2, 5), (3, 4), (5, 3), (10, 2)]:
        codec = IndexCodec(base, arity)
        ok = all(codec.encode(codec.decode(i)) == i for i in range(codec.size))
        res.check(ok, f"codec round trip base={base} arity={arity}")


def suite_gamma(res, level, rng):
    for s, dim in [(0, 5), (1, 3), (2, 2), (2, 3), (3, 2)]:
        perm = np.asarray(indexing.gamma_permutation(s, dim))
        size = dim ** (2**s)
        res.check(np.array_equal(np.sort(perm), np.arange(size)), f"bijection s={s} dim={dim}")
        res.check(np.array_equal(perm[perm], np.arange(size)), f"involution s={s} dim={dim}")
    configs = [(2, 2, 2), (2, 3, 2), (3, 2, 2, 2)] if level == "full" else [(2, 2, 2), (2, 3, 2)]
    for dims in configs:
        phi = _random_map(rng, dims)
        for s in range(len(dims)):
            ps = power(phi, s)
            for _ in range(5):
                xs = [rng.standard_normal(d) for d in ps.mode_dims]
                gx = [
                    indexing.gamma_vector(s, dims[i], x) for i, x in enumerate(xs)
                ]
                a, b = ps(*xs), ps(*gx)
                res.check(abs(a - b) <= 1e-10 * max(1.0, abs(a)), f"invariance dims={dims} s={s}")


def suite_representation(res, level, rng):
    for dims in [(3, 4), (2, 3, 4), (2, 2, 2, 3)]:
        phi = _random_map(rng, dims)
        xs = [rng.standard_normal(d) for d in dims[:-1]]
        w = np.array([phi(*xs, e) for e in np.eye(dims[-1])])
        for _ in range(20):
            y = rng.standard_normal(dims[-1])
            res.check(abs(phi(*xs, y) - w @ y) <= 1e-10, f"representation dims={dims}")


def suite_basis_independence(res, level, rng):
    for dims in [(3, 4), (2, 3, 3), (2, 2, 3, 2)]:
        phi, psi = _random_map(rng, dims), _random_map(rng, dims)
        q, _ = np.linalg.qr(rng.standard_normal((dims[-1], dims[-1])))
        rot_phi = MultiMap(phi.values @ q)
        rot_psi = MultiMap(psi.values @ q)
        a = star_product(phi, psi).values
        b = star_product(rot_phi, rot_psi).values
        res.check(np.max(np.abs(a - b)) <= 1e-8, f"basis independence dims={dims}")
        c = star_product(phi, psi, method="direct").values
        res.check(np.max(np.abs(a - c)) <= 1e-12, f"direct vs matmul dims={dims}")


def suite_a_symmetry(res, level, rng):
    for k in _ks(level):
        n = 3 if k < 4 else 2
        for h in _hosts(k, n, 3, seed0=10):
            for pi in proper_partitions(k):
                for o in orderings(pi):
                    a = a_matrix(flatten(h, o))
                    res.check(a.dtype.kind == "i" and np.array_equal(a, a.T), f"A symmetric {o}")


def suite_power_bound(res, level, rng):
    configs = [(3, 3), (2, 3, 2), (3, 2, 2), (2, 2, 2, 2)]
    for dims in configs:
        phi = _random_map(rng, dims)
        powers = [power(phi, s) for s in range(len(dims))]
        for _ in range(100):
            xs = [_unit(rng, d) for d in dims]
            base = abs(phi(*xs))
            for s, ps in enumerate(powers):
                lifted = [tensor_power(x, 2**s) for x in xs[: len(dims) - s]]
                res.check(base ** (2**s) <= abs(ps(*lifted)) + 1e-10, f"power bound dims={dims} s={s}")
            a = a_matrix(phi)
            half = tensor_power(xs[0], 2 ** (len(dims) - 2))
            res.check(base ** (2 ** (len(dims) - 1)) <= abs(half @ a @ half) + 1e-10, f"A bound {dims}")


def suite_bracket(res, level, rng):
    maps = [_random_map(rng, d) for d in [(3, 3), (2, 3, 2), (3, 3, 3)]]
    for k in _ks(level)[:2]:
        for h in _hosts(k, 4, 2, seed0=20, loops=(False,)):
            for pi in proper_partitions(k):
                maps.append(flatten(h, pi.canonical_ordering()))
    for phi in maps:
        b = spectral_norm(phi, restarts=4)
        res.check(b.upper is not None and b.lower <= b.upper + 1e-12, f"bracket {phi}")


def suite_j(res, level, rng):
    for dims in [(3, 4), (2, 3, 4), (4, 4, 2, 2)]:
        dense = all_ones_map(dims)
        for _ in range(10):
            xs = [rng.standard_normal(d) for d in dims]
            a, b = dense(*xs), j_eval(*xs)
            res.check(abs(a - b) <= 1e-12 * max(1.0, abs(a)), f"J factorization {dims}")


def suite_gadgets(res, level, rng):
    c = cycle(Partition((1, 1, 1)), 4)
    res.check((c.n, c.num_edges) == (12, 8), "C_(1,1,1),4 has 12 vertices and 8 edges")
    c4 = cycle(Partition((1, 1)), 4)
    res.check(sorted(np.sum(c4.adjacency_matrix(), axis=0)) == [2, 2, 2, 2] and c4.num_edges == 4, "4-cycle")
    for k in (2, 3, 4):
        for pi in proper_partitions(k):
            for ell in (2, 3):
                g = cycle(pi, 2 * ell)
                deg = np.zeros(g.n, dtype=int)
                for e in g.edges:
                    for v in e:
                        deg[v] += 1
                m = ell * 2 ** (pi.t - 1)
                res.check(np.all(deg == 2), f"2-regular {pi} ell={ell}")
                res.check(g.num_edges == m and g.n * 2 == m * k, f"sizes {pi} ell={ell}")


def suite_circuits(res, level, rng):
    plan = [(2, 4, 2, 10), (3, 4, 2, 10)]
    if level == "full":
        plan += [(2, 3, 3, 4), (3, 3, 3, 4), (4, 3, 2, 1)]
    for k, n, ell, count in plan:
        hosts = _hosts(k, n, count, seed0=100 * k + ell)
        for pi in proper_partitions(k):
            for o in orderings(pi):
                pattern = cycle(o, 2 * ell)
                for h in hosts:
                    a = circuit_count_trace(h, o, ell)
                    b = hom_count_bruteforce(pattern, h, budget=10**9)
                    res.check(a == b, f"trace {a} != homomorphisms {b} for {o}, ell={ell}, {h}")


def suite_graphs(res, level, rng):
    for seed in range(20):
        n = 2 + seed % 9
        h = gen_random(GenSpec(n, 2, 0.5, seed))
        m = h.adjacency_matrix()
        res.check(np.array_equal(a_matrix(flatten(h, OrderedPartition((1, 1)))), m @ m), f"A = M^2 n={n}")
        walks = sum(
            m[a, b] * m[b, c] * m[c, d] * m[d, a] for a, b, c, d in itertools.product(range(n), repeat=4)
        )
        res.check(circuit_count_trace(h, OrderedPartition((1, 1)), 2) == walks, f"closed 4-walks n={n}")
    res.check(circuit_count_trace(complete_graph(3), OrderedPartition((1, 1)), 2) == 18, "K3 fixture")


def suite_spectra(res, level, rng):
    pi = Partition((1, 1))
    for n in (3, 10, 30):
        kn = complete_graph(n)
        l1, l2 = lambda1_pi(kn, pi), lambda2_pi(kn, pi)
        res.check(abs(l1.lower - (n - 1)) <= 1e-6 and abs(l1.upper - (n - 1)) <= 1e-6, f"lambda1 K{n}")
        res.check(abs(l2.lower - 1) <= 1e-6 and abs(l2.upper - 1) <= 1e-6, f"lambda2 K{n}")
    for k in (2, 3):
        empty = new_hypergraph(4, k, [])
        for p in proper_partitions(k):
            res.check(lambda1_pi(empty, p, restarts=2).upper == 0, f"empty lambda1 {p}")
            res.check(lambda2_pi(empty, p, restarts=2).upper == 0, f"empty lambda2 {p}")


def suite_psd(res, level, rng):
    for k in (2, 3, 4):
        for h in _hosts(k, 4 if k < 4 else 3, 3, seed0=40):
            for pi in proper_partitions(k):
                if pi.t != 2:
                    continue
                for o in orderings(pi):
                    dec = eig(a_matrix(flatten(h, o)))
                    res.check(dec.min_eigenvalue >= -1e-9 * max(abs(dec.mu1), 1.0), f"PSD {o}")


SUITES = {
    "partitions-and-codecs": suite_partitions,
    "gamma-invariance": suite_gamma,
    "linear-representation": suite_representation,
    "basis-independence": suite_basis_independence,
    "a-symmetry": suite_a_symmetry,
    "power-upper-bound": suite_power_bound,
    "norm-bracket": suite_bracket,
    "j-factorization": suite_j,
    "gadget-census": suite_gadgets,
    "circuit-oracle": suite_circuits,
    "graph-specialization": suite_graphs,
    "closed-form-spectra": suite_spectra,
    "psd-two-part": suite_psd,
}


def run_suites(level: str = "quick", names=None, seed: int = 0) -> list:
    """Run the named suites (all by default); exceptions count as failures."""
    if level not in ("quick", "full"):
        raise ValueError(f"level must be 'quick' or 'full', got {level!r}")
    results = []
    for name in names or SUITES:
        res = SuiteResult(name)
        rng = np.random.default_rng(seed)
        start = time.perf_counter()
        try:
            SUITES[name](res, level, rng)
        except Exception as exc:  # a crash is a failed suite, not a crashed run
            res.passed = False
            res.failures.append(f"{type(exc).__name__}: {exc}")
        res.seconds = time.perf_counter() - start
        results.append(res)
    return results
