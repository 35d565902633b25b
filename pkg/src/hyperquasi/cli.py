"""Command-line front end: ``hyperquasi gen | analyze | verify | experiment``.

Exit codes: 0 success, 1 usage or input error, 2 budget exceeded,
3 verification failure.  Errors are reported on stderr as one JSON object.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .errors import BudgetExceeded, HyperquasiError
from .experiment import (
    ExperimentConfig,
    analyze,
    separation_sweep,
    summarize_sweep,
    sweep_rows_to_csv,
)
from .hypercore import GenSpec, gen_planted_bias, gen_random, load_hypergraph, write_hypergraph
from .indexing import parse_partition
from .spectral import HOPM_MAX_ITER, HOPM_RESTARTS, HOPM_TOL
from .verify import SUITES, run_suites

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 by default, which is reserved here for budget errors
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _int_list(text):
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _partitions(text):
    if text is None:
        return None
    out = []
    for tok in text.split(","):
        if tok.strip():
            pi = parse_partition(tok).unordered()
            if pi not in out:
                out.append(pi)
    return out


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def _emit(text: str, out):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _add_gen_flags(p, n_list=False):
    if n_list:
        p.add_argument("--n", type=_int_list, required=True, help="comma list of vertex counts")
        p.add_argument("--seed", type=_int_list, default=[0], help="comma list of seeds")
    else:
        p.add_argument("--n", type=int, help="number of vertices")
        p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k", type=int, help="edge size")
    p.add_argument("--p", type=float, help="edge probability")
    p.add_argument("--bias", type=float, default=None, help="planted two-block bias")


def _add_hopm_flags(p):
    p.add_argument("--pi", default=None, help='comma list of partitions, e.g. "2+1,1+1+1"')
    p.add_argument("--ell", type=int, default=1, help="cycle length is 4*ell")
    p.add_argument("--restarts", type=int, default=HOPM_RESTARTS)
    p.add_argument("--max-iter", type=int, default=HOPM_MAX_ITER)
    p.add_argument("--tol", type=float, default=HOPM_TOL)
    p.add_argument("--budget", type=int, default=None, help="dense entry and enumeration cap")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hyperquasi", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate a random or planted hypergraph")
    _add_gen_flags(g)
    g.add_argument("--loops", action="store_true", help="allow repeated vertices in edges")
    g.add_argument("--out", default=None, help="output file (default stdout)")

    a = sub.add_parser("analyze", help="spectral and cycle-count report as JSON")
    a.add_argument("--input", default=None, help="hypergraph file; otherwise generate from flags")
    _add_gen_flags(a)
    a.add_argument("--loops", action="store_true")
    _add_hopm_flags(a)
    a.add_argument("--timing", action="store_true", help="include wall time in metadata")
    a.add_argument("--out", default=None, help="report file (default stdout)")

    v = sub.add_parser("verify", help="run the self-check suites")
    v.add_argument("--level", choices=("quick", "full"), default="quick")
    v.add_argument("--suite", action="append", choices=sorted(SUITES), default=None)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--timing", action="store_true")
    v.add_argument("--out", default=None)

    e = sub.add_parser("experiment", help="cycle count vs. second eigenvalue sweep")
    _add_gen_flags(e, n_list=True)
    _add_hopm_flags(e)
    e.add_argument("--workers", type=int, default=1)
    e.add_argument("--out", default="separation", help="output prefix for PREFIX.csv and PREFIX.json")
    return parser


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"missing required flags: {' '.join(missing)}")


def _generate(args):
    _need(args, "n", "k", "p")
    spec = GenSpec(args.n, args.k, args.p, args.seed, allow_loops=args.loops, bias=args.bias)
    return gen_planted_bias(spec) if args.bias is not None else gen_random(spec)


def cmd_gen(args) -> int:
    h = _generate(args)
    _emit(write_hypergraph(h), args.out)
    stats = {"n": h.n, "k": h.k, "edges": h.num_edges, "density": h.density()}
    print(json.dumps(stats), file=sys.stderr if args.out is None else sys.stdout)
    return EXIT_OK


def _hopm_cfg(args, **extra):
    return ExperimentConfig(
        partitions=_partitions(args.pi),
        ell=args.ell,
        restarts=args.restarts,
        max_iter=args.max_iter,
        tol=args.tol,
        budget=args.budget,
        **extra,
    )


def cmd_analyze(args) -> int:
    if args.input is not None:
        h, seed, source = load_hypergraph(args.input), None, {"input": str(args.input)}
    else:
        h, seed = _generate(args), args.seed
        source = {"generator": "planted" if args.bias is not None else "random", "bias": args.bias}
    cfg = _hopm_cfg(args, p=args.p if args.input is not None else None, timing=args.timing, extra=source)
    _emit(_dump(analyze(h, cfg, seed=seed)), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_suites(args.level, args.suite, seed=args.seed)
    ok = all(r.passed for r in results)
    summary = {
        "level": args.level,
        "passed": ok,
        "failed_suites": [r.name for r in results if not r.passed],
        "suites": [r.to_dict(timing=args.timing) for r in results],
    }
    _emit(_dump(summary), args.out)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_experiment(args) -> int:
    _need(args, "k", "p")
    cfg = _hopm_cfg(args)
    rows = separation_sweep(
        args.n,
        args.k,
        args.p,
        args.seed,
        bias=args.bias,
        partitions=cfg.partitions,
        ell=cfg.ell,
        hopm=cfg.hopm(),
        budget=cfg.budget,
        workers=args.workers,
    )
    prefix = Path(args.out)
    prefix.with_name(prefix.name + ".csv").write_text(sweep_rows_to_csv(rows), encoding="utf-8")
    doc = {
        "config": {
            "n": args.n,
            "k": args.k,
            "p": args.p,
            "seeds": args.seed,
            "bias": args.bias,
            "ell": cfg.ell,
            "hopm": cfg.hopm(),
            "version": __version__,
        },
        "summary": summarize_sweep(rows)["groups"],
        "rows": rows,
    }
    prefix.with_name(prefix.name + ".json").write_text(_dump(doc), encoding="utf-8")
    for g in doc["summary"]:
        print(
            f"{g['kind']:8s} pi={g['partition']:8s} n={g['n']:4d} "
            f"cycle_ratio={g['median_cycle_ratio']:.4f} "
            f"lambda2_upper_scaled={g['median_lambda2_upper_scaled']:.4f}"
        )
    return EXIT_OK


COMMANDS = {"gen": cmd_gen, "analyze": cmd_analyze, "verify": cmd_verify, "experiment": cmd_experiment}


def _fail(code, kind, exc) -> int:
    print(json.dumps({"error": kind, "type": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
    return code


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        return _fail(EXIT_USAGE, "usage", exc)
    except (BudgetExceeded, MemoryError) as exc:
        return _fail(EXIT_BUDGET, "budget_exceeded", exc)
    except (HyperquasiError, ValueError, OSError) as exc:
        return _fail(EXIT_USAGE, "input", exc)


if __name__ == "__main__":
    sys.exit(main())
