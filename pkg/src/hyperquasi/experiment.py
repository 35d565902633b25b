"""Per-hypergraph quasirandomness reports and the cycle-count vs. eigenvalue separation sweep."""

from __future__ import annotations

import csv
import io
import json
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional, Sequence

from . import __version__
from .counting import cycle_deviation
from .hypercore import GenSpec, Hypergraph, gen_planted_bias, gen_random
from .indexing import Partition, orderings, proper_partitions
from .mlmap import DeviationSpec, flatten, unit_ones
from .spectral import (
    HOPM_MAX_ITER,
    HOPM_RESTARTS,
    HOPM_TOL,
    a_matrix_spectrum,
    lambda1_pi,
    lambda2_pi,
)

__all__ = [
    "ExperimentConfig",
    "analyze",
    "report_schema",
    "validate_report",
    "separation_sweep",
    "sweep_rows_to_csv",
    "summarize_sweep",
]

SCHEMA_VERSION = "1"


@dataclass
class ExperimentConfig:
    partitions: Optional[Sequence[Partition]] = None
    ell: int = 1
    p: Optional[float] = None
    restarts: int = HOPM_RESTARTS
    max_iter: int = HOPM_MAX_ITER
    tol: float = HOPM_TOL
    hopm_seed: int = 0
    budget: Optional[int] = None
    timing: bool = False
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.partitions is not None and not self.partitions:
            raise ValueError("at least one partition is required")
        if self.budget is not None and self.budget <= 0:
            raise ValueError("budget must be positive")
        if self.ell < 1:
            raise ValueError("ell must be >= 1")

    def hopm(self) -> dict:
        return {
            "restarts": self.restarts,
            "max_iter": self.max_iter,
            "tol": self.tol,
            "seed": self.hopm_seed,
        }


def tau_all_ones(h: Hypergraph, pi) -> float:
    """The flattened adjacency map at normalized all-ones inputs."""
    tau = flatten(h, pi)
    return tau(*(unit_ones(d) for d in tau.mode_dims))


def _ordering_record(h, o, budget):
    try:
        dec = a_matrix_spectrum(flatten(h, o, budget=budget), budget)
    except MemoryError as exc:
        return {"ordering": str(o), "error": str(exc)}
    mu1, mu2 = dec.mu1, dec.mu2
    return {
        "ordering": str(o),
        "a_dim": int(len(dec.eigenvalues)),
        "mu1": mu1,
        "mu2": mu2,
        "mu_ratio": abs(mu2) / abs(mu1) if mu1 else 0.0,
        "a_min_eigenvalue": dec.min_eigenvalue,
    }


def analyze_partition(h: Hypergraph, pi: Partition, cfg: ExperimentConfig) -> dict:
    ords = orderings(pi)
    canon = pi.canonical_ordering()
    l1 = lambda1_pi(h, pi, budget=cfg.budget, **cfg.hopm())
    l2 = lambda2_pi(h, pi, budget=cfg.budget, **cfg.hopm())
    p_ref = cfg.p if cfg.p is not None else h.density()
    count = cycle_deviation(h, canon, cfg.ell, p_ref, budget=cfg.budget)
    per = [_ordering_record(h, o, cfg.budget) for o in ords]
    head = per[0]
    l2_up = l2.upper if l2.upper is not None else None
    return {
        "partition": str(pi),
        "orderings": [str(o) for o in ords],
        "lambda1": l1.to_dict(),
        "lambda2": l2.to_dict(),
        "separation_ratio": (l2_up / l1.lower) if (l2_up is not None and l1.lower > 0) else None,
        "mu1": head.get("mu1"),
        "mu2": head.get("mu2"),
        "mu_ratio": head.get("mu_ratio"),
        "a_min_eigenvalue": head.get("a_min_eigenvalue"),
        "per_ordering": per,
        "cycle": count.to_dict(),
        "tau_all_ones": tau_all_ones(h, canon),
        "q": DeviationSpec.for_hypergraph(h).q,
    }


def analyze(h: Hypergraph, cfg: Optional[ExperimentConfig] = None, seed=None) -> dict:
    """Spectral and cycle-count report for every requested partition of ``h.k``."""
    cfg = cfg or ExperimentConfig()
    start = time.perf_counter()
    parts = list(cfg.partitions) if cfg.partitions else proper_partitions(h.k)
    for pi in parts:
        if pi.k != h.k:
            raise ValueError(f"partition {pi} does not sum to k={h.k}")
    records = [analyze_partition(h, pi, cfg) for pi in parts]
    meta = {
        "n": h.n,
        "k": h.k,
        "edges": h.num_edges,
        "density": h.density(),
        "seed": seed,
        "ell": cfg.ell,
        "p_reference": cfg.p if cfg.p is not None else h.density(),
        "hopm": cfg.hopm(),
        "version": __version__,
    }
    meta.update(cfg.extra)
    if cfg.timing:
        meta["wall_time"] = time.perf_counter() - start
    return {"schema_version": SCHEMA_VERSION, "metadata": meta, "partitions": records}


def report_schema() -> dict:
    text = resources.files("hyperquasi").joinpath("schemas/report-v1.json").read_text("utf-8")
    return json.loads(text)


def validate_report(report: dict) -> None:
    """Raise ``jsonschema.ValidationError`` unless ``report`` matches the shipped schema."""
    import jsonschema

    jsonschema.validate(report, report_schema())


# --- separation sweep -------------------------------------------------------


def _instance(args):
    n, k, p, seed, kind, bias, parts, ell, hopm, budget = args
    if kind == "planted":
        h = gen_planted_bias(GenSpec(n, k, p, seed, bias=bias))
    else:
        h = gen_random(GenSpec(n, k, p, seed))
    scale = n ** (k / 2)
    rows = []
    for pi in parts:
        count = cycle_deviation(h, pi.canonical_ordering(), ell, p, budget=budget)
        l1 = lambda1_pi(h, pi, budget=budget, **hopm)
        l2 = lambda2_pi(h, pi, budget=budget, **hopm)
        rows.append(
            {
                "n": n,
                "k": k,
                "p": p,
                "seed": seed,
                "kind": kind,
                "bias": bias if kind == "planted" else 0.0,
                "partition": str(pi),
                "edges": h.num_edges,
                "density": h.density(),
                "cycle_ratio": count.ratio,
                "lambda1_lower_scaled": l1.lower / scale,
                "lambda2_lower_scaled": l2.lower / scale,
                "lambda2_upper_scaled": (l2.upper / scale) if l2.upper is not None else None,
            }
        )
    return rows


def separation_sweep(
    n_list: Sequence[int],
    k: int,
    p: float,
    seeds: Sequence[int],
    bias: Optional[float] = None,
    partitions: Optional[Sequence[Partition]] = None,
    ell: int = 1,
    hopm: Optional[dict] = None,
    budget=None,
    workers: int = 1,
) -> list:
    """One row per (n, seed, kind, partition); kind is ``random`` or ``planted``.

    Rows come back sorted, so the output does not depend on ``workers``.
    """
    parts = list(partitions) if partitions else proper_partitions(k)
    hopm = hopm or {}
    kinds = ["random"] + (["planted"] if bias is not None else [])
    jobs = [
        (n, k, p, seed, kind, bias, parts, ell, hopm, budget)
        for n in n_list
        for seed in seeds
        for kind in kinds
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_instance, jobs))
    else:
        results = [_instance(job) for job in jobs]
    rows = [row for rs in results for row in rs]
    rows.sort(key=lambda r: (r["kind"], r["partition"], r["n"], r["seed"]))
    return rows


SWEEP_COLUMNS = [
    "n",
    "k",
    "p",
    "seed",
    "kind",
    "bias",
    "partition",
    "edges",
    "density",
    "cycle_ratio",
    "lambda1_lower_scaled",
    "lambda2_lower_scaled",
    "lambda2_upper_scaled",
]


def sweep_rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({key: _fmt(row[key]) for key in SWEEP_COLUMNS})
    return buf.getvalue()


def _fmt(value):
    if isinstance(value, float):
        return repr(value)
    return "" if value is None else value


def summarize_sweep(rows) -> dict:
    """Medians of the cycle ratio and scaled second eigenvalue per (kind, partition, n)."""
    groups = {}
    for row in rows:
        groups.setdefault((row["kind"], row["partition"], row["n"]), []).append(row)
    out = []
    for (kind, part, n), rs in sorted(groups.items()):
        uppers = [r["lambda2_upper_scaled"] for r in rs if r["lambda2_upper_scaled"] is not None]
        out.append(
            {
                "kind": kind,
                "partition": part,
                "n": n,
                "instances": len(rs),
                "median_cycle_ratio": statistics.median(r["cycle_ratio"] for r in rs),
                "median_lambda2_upper_scaled": statistics.median(uppers) if uppers else None,
                "median_lambda1_lower_scaled": statistics.median(
                    r["lambda1_lower_scaled"] for r in rs
                ),
            }
        )
    return {"groups": out}

