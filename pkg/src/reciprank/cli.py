"""Command-line interface: ``reciprank {analyze,check,simulate,generate}``.

Exit codes: 0 success (``check``: efficient), 1 inefficient (``check``
only), 2 invalid input or usage.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

import numpy as np

from . import __version__
from .core import (
    ReciprocalMatrixError,
    consistent_from_weights,
    geometric_mean_vector,
    is_consistent,
)
from .efficiency import EDGE_TOL, is_efficient
from .simulation import (
    CELLS,
    FIGURE1_DIMS,
    SERIES,
    SimulationConfig,
    emit_report,
    random_reciprocal,
    run_trials,
    trial_rng,
)
from .spectral import DEFAULT_TOL, NoConvergence, perron_vector, singular_vector
from .structured import (
    StructureError,
    build_column_perturbed,
    build_simple_perturbed,
    cone_membership,
    is_column_perturbed_consistent,
)
from .textio import format_matrix, read_matrix, read_vector

SEED_ENV = "RECIP_RANK_SEED"

EXIT_OK = 0
EXIT_INEFFICIENT = 1
EXIT_ERROR = 2


def _g(x: float) -> str:
    return f"{x:.6g}"


def _vec(v) -> str:
    return "[" + " ".join(_g(x) for x in v) + "]"


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _dims(text: str) -> tuple[int, ...]:
    """Parse ``4,5,7`` and ``3-25`` style dimension lists."""
    out: list[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if "-" in part:
                lo, hi = part.split("-", 1)
                out.extend(range(int(lo), int(hi) + 1))
            elif part:
                out.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad dimension list {text!r}")
    if not out:
        raise argparse.ArgumentTypeError("empty dimension list")
    return tuple(out)


def _default_seed() -> int:
    env = os.environ.get(SEED_ENV)
    if env:
        return int(env)
    return int(np.random.SeedSequence().entropy) % 2**64


# --- analyze ---------------------------------------------------------------


def analysis_record(A, tol: float = DEFAULT_TOL, edge_tol: float = EDGE_TOL) -> dict:
    """Everything ``analyze`` reports about a matrix, as a JSON-ready dict."""
    vectors = {}
    p = perron_vector(A, tol)
    s = singular_vector(A, tol)
    for name, v, meta in (
        ("perron", p.vector, p),
        ("singular", s.vector, s),
        ("geometric_mean", geometric_mean_vector(A), None),
    ):
        cone = cone_membership(A, v)
        entry = {"vector": v.tolist()}
        if meta is not None:
            entry.update(
                eigenvalue=meta.eigenvalue, iterations=meta.iterations, residual=meta.residual
            )
        entry["efficiency"] = is_efficient(A, v, edge_tol).to_dict()
        entry["cone"] = {
            "member": cone.member,
            "residual": cone.residual,
            "indeterminate": cone.indeterminate,
        }
        vectors[name] = entry
    return {
        "n": A.n,
        "matrix": np.asarray(A).tolist(),
        "consistent": is_consistent(A),
        "column_perturbed_index": is_column_perturbed_consistent(A),
        "tol": tol,
        "edge_tol": edge_tol,
        "vectors": vectors,
    }


def _print_analysis(rec: dict) -> None:
    print(f"n = {rec['n']}")
    print(f"consistent: {'yes' if rec['consistent'] else 'no'}")
    idx = rec["column_perturbed_index"]
    print(
        "column-perturbed consistent: "
        + ("no" if idx is None else f"yes (consistent after deleting index {idx})")
    )
    for name, e in rec["vectors"].items():
        eff = e["efficiency"]
        cone = e["cone"]
        cone_txt = "indeterminate" if cone["indeterminate"] else ("yes" if cone["member"] else "no")
        print(f"\n{name}: {_vec(e['vector'])}")
        if "eigenvalue" in e:
            print(f"  eigenvalue {_g(e['eigenvalue'])}, {e['iterations']} iterations, "
                  f"residual {_g(e['residual'])}")
        line = f"  efficient: {'yes' if eff['efficient'] else 'no'} ({eff['scc_count']} SCC)"
        if "witness_cut" in eff:
            line += f", witness cut {eff['witness_cut']}"
        print(line)
        print(f"  in column cone: {cone_txt} (residual {_g(cone['residual'])})")


def cmd_analyze(args) -> int:
    A = read_matrix(args.matrix)
    rec = analysis_record(A, args.tol, args.edge_tol)
    if args.output:
        with open(args.output, "w") as fh:
            json.dump(rec, fh, indent=2)
            fh.write("\n")
    if args.json:
        json.dump(rec, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        _print_analysis(rec)
    return EXIT_OK


# --- check -----------------------------------------------------------------


def cmd_check(args) -> int:
    A = read_matrix(args.matrix)
    w = read_vector(args.vector)
    verdict = is_efficient(A, w, args.edge_tol)
    if args.json:
        json.dump(verdict.to_dict(), sys.stdout)
        sys.stdout.write("\n")
    else:
        if verdict.efficient:
            print("efficient: G(A, w) is strongly connected (1 SCC)")
        else:
            print(f"inefficient: G(A, w) has {verdict.scc_count} SCCs")
            print(f"witness cut (no edge enters it): {list(verdict.witness_cut)}")
    return EXIT_OK if verdict.efficient else EXIT_INEFFICIENT


# --- simulate --------------------------------------------------------------


def _print_summary(report) -> None:
    print("Efficiency counts per dimension")
    print(f"{'n':>4} {'trials':>7} " + " ".join(f"{s:>9}" for s in SERIES))
    for n in sorted(report.counts):
        c = report.counts[n]
        print(f"{n:>4} {c.trials:>7} " + " ".join(f"{getattr(c, s):>9}" for s in SERIES))
    print()
    print("Perron (P) / singular (S) cross-tabulation")
    print(f"{'n':>4} " + " ".join(f"{s:>13}" for s in CELLS))
    for n in sorted(report.counts):
        c = report.counts[n]
        print(f"{n:>4} " + " ".join(f"{getattr(c, s):>13}" for s in CELLS))
    bad = sum(c.no_convergence for c in report.counts.values())
    if bad:
        print(f"\nwarning: {bad} trials did not converge and were skipped")


def cmd_simulate(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    cfg = SimulationConfig(
        dims=args.dims,
        trials=args.trials,
        entry_low=args.entry_low,
        entry_high=args.entry_high,
        randvec_low=args.vec_low,
        randvec_high=args.vec_high,
        seed=seed,
        workers=args.workers,
    )
    report = run_trials(cfg)
    paths = emit_report(report, args.out_prefix)
    print(f"seed {seed}")
    _print_summary(report)
    print()
    for p in paths:
        print(f"wrote {p}")
    return EXIT_OK


# --- generate --------------------------------------------------------------


def cmd_generate(args) -> int:
    kind = args.kind
    if kind == "consistent":
        if not args.weights:
            raise ValueError("--kind consistent needs --weights")
        A = consistent_from_weights(args.weights)
    elif kind == "random":
        if args.n is None:
            raise ValueError("--kind random needs --n")
        seed = args.seed if args.seed is not None else _default_seed()
        A = random_reciprocal(args.n, args.low, args.high, trial_rng(seed, args.n, 0))
    elif kind == "column-perturbed":
        if not args.x:
            raise ValueError("--kind column-perturbed needs --x")
        A = build_column_perturbed(args.x)
    else:
        if args.n is None or not args.x or len(args.x) != 1:
            raise ValueError("--kind simple-perturbed needs --n and a single --x")
        A = build_simple_perturbed(args.n, args.x[0])
    text = format_matrix(A)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# --- entry point -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reciprank",
        description="Ranking vectors and Pareto efficiency for reciprocal matrices.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="extract ranking vectors and test their efficiency")
    p.add_argument("matrix", help="matrix text file")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="power iteration tolerance")
    p.add_argument("--edge-tol", type=float, default=EDGE_TOL)
    p.add_argument("--json", action="store_true", help="print the JSON record")
    p.add_argument("-o", "--output", help="also write the JSON record to this file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("check", help="test one vector for efficiency (exit 0/1)")
    p.add_argument("matrix", help="matrix text file")
    p.add_argument("vector", help="vector text file")
    p.add_argument("--edge-tol", type=float, default=EDGE_TOL)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("simulate", help="Monte Carlo efficiency frequencies")
    p.add_argument("--dims", type=_dims, default=FIGURE1_DIMS,
                   help="e.g. 4,5,7 or 3-25 (default 3-25)")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=None,
                   help=f"64-bit seed (default ${SEED_ENV}, else fresh entropy)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out-prefix", default="reciprank")
    p.add_argument("--entry-low", type=float, default=0.1)
    p.add_argument("--entry-high", type=float, default=15.0)
    p.add_argument("--vec-low", type=float, default=0.0)
    p.add_argument("--vec-high", type=float, default=5.0)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("generate", help="write a matrix file")
    p.add_argument("--kind", required=True,
                   choices=["consistent", "random", "column-perturbed", "simple-perturbed"])
    p.add_argument("--n", type=int)
    p.add_argument("--x", type=_float_list, help="border values, descending")
    p.add_argument("--weights", type=_float_list)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--low", type=float, default=0.1)
    p.add_argument("--high", type=float, default=15.0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (ReciprocalMatrixError, StructureError, NoConvergence, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
