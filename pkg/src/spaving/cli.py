"""Command-line front end: check, census, construct, sample, represent, witness.

Exit codes: 0 when every internal check passed, 1 when a verification
assertion failed, 2 for usage or input problems, 3 when a scale bound
refused the computation.  Every run prints an effective-config banner to
stderr so the invocation is reproducible from the transcript alone;
with --jobs 1 repeated runs are byte-identical, with more jobs the
deterministic merge contracts keep the content identical after sorting.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import __version__
from .census import (
    CENSUS_VERSION,
    census_write,
    classify_ingleton,
    verify_excluded_minors,
)
from .constructions import gs_best, gs_class_sizes, gs_matroid, named
from .errors import FormatError, ScaleError, StabilityError
from .ingleton import (
    BRUTE_MAX_N,
    find_all_witnesses,
    ingleton_brute,
    ingleton_fast_sp,
    ingleton_sampled,
    minor_witness,
    witness_to_quadruple,
)
from .matroids import SparsePavingMatroid, basis_to_sp, from_json, sp_new, to_json
from .represent import hall_condition, represent_with_retries
from .sampling import make_params, run_trial, run_trials

EXIT_OK = 0
EXIT_ASSERT = 1
EXIT_USAGE = 2
EXIT_SCALE = 3


def _default_jobs() -> int:
    return int(os.environ.get("SPAVING_JOBS", "1"))


def _parse_ints(text: str, count: int, what: str) -> tuple[int, ...]:
    parts = text.split(",")
    if len(parts) != count:
        raise ValueError(f"{what} wants {count} comma-separated integers, got {text!r}")
    return tuple(int(p) for p in parts)


def _load_source(args):
    """The matroid named by --named/--gs/--matroid, plus a short label."""
    if getattr(args, "named", None):
        return f"named:{args.named}", named(args.named)
    if getattr(args, "gs", None):
        n, r, gamma = _parse_ints(args.gs, 3, "--gs")
        return f"gs:{n},{r},{gamma}", gs_matroid(n, r, gamma)
    path = args.matroid
    with open(path) as fh:
        return path, from_json(fh.read())


def _matroid_doc(m) -> dict:
    return json.loads(to_json(m))


def _emit(doc: dict, args) -> None:
    if args.format == "csv":
        keys = list(doc)
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(keys)
        writer.writerow(
            [
                json.dumps(doc[k]) if isinstance(doc[k], (dict, list)) else doc[k]
                for k in keys
            ]
        )
        text = buf.getvalue().rstrip("\n")
    else:
        text = json.dumps(doc, indent=2, sort_keys=True)
    out = getattr(args, "out", None)
    if out and args.cmd != "census":  # census --out holds the records file
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _require_json(args) -> None:
    if args.format != "json":
        raise ValueError(f"{args.cmd} emits structured records; --format csv is for flat statistics")


def _banner(args) -> None:
    skip = {"func", "cmd"}
    pairs = " ".join(
        f"{key}={value}"
        for key, value in sorted(vars(args).items())
        if key not in skip
    )
    print(f"# spaving {__version__} {args.cmd} {pairs}", file=sys.stderr)


def cmd_check(args) -> int:
    _require_json(args)
    label, m = _load_source(args)
    sparse = isinstance(m, SparsePavingMatroid)
    doc = {"source": label, "n": m.n, "r": m.r, "sparse_paving": sparse}
    status = EXIT_OK
    if sparse:
        witness = ingleton_fast_sp(m)
        doc["checker"] = "fast"
        doc["ingleton"] = witness is None
        if witness is not None:
            doc["witness"] = witness.to_dict()
            doc["quadruple"] = witness_to_quadruple(m, witness).to_dict()
            doc["minor"] = _matroid_doc(minor_witness(m, witness))
        if args.brute:
            if m.n <= BRUTE_MAX_N:
                quad = ingleton_brute(m)
                doc["brute_ingleton"] = quad is None
                agree = (quad is None) == (witness is None)
            else:
                if args.sampled is None:
                    raise ScaleError(
                        f"exhaustive check stops at n = {BRUTE_MAX_N}; "
                        "pass --sampled <budget> beyond that"
                    )
                quad = ingleton_sampled(m, args.sampled, args.seed)
                doc["sampled_ingleton"] = quad is None
                # sampling may miss violations but must never invent one
                agree = not (witness is None and quad is not None)
            if quad is not None:
                doc["cross_quadruple"] = quad.to_dict()
            doc["checkers_agree"] = agree
            if not agree:
                print("spaving check: checkers disagree", file=sys.stderr)
                status = EXIT_ASSERT
    else:
        if m.n <= BRUTE_MAX_N:
            quad = ingleton_brute(m)
            doc["checker"] = "brute"
        else:
            if args.sampled is None:
                raise ScaleError(
                    f"exhaustive check stops at n = {BRUTE_MAX_N}; "
                    "pass --sampled <budget> beyond that"
                )
            quad = ingleton_sampled(m, args.sampled, args.seed)
            doc["checker"] = "sampled"
        doc["ingleton"] = quad is None
        if quad is not None:
            doc["quadruple"] = quad.to_dict()
    _emit(doc, args)
    return status


def cmd_witness(args) -> int:
    _require_json(args)
    label, m = _load_source(args)
    if not isinstance(m, SparsePavingMatroid):
        m = basis_to_sp(m)
    witnesses = find_all_witnesses(m)
    doc = {
        "source": label,
        "n": m.n,
        "r": m.r,
        "count": len(witnesses),
        "witnesses": [
            {"witness": w.to_dict(), "quadruple": witness_to_quadruple(m, w).to_dict()}
            for w in witnesses
        ],
    }
    if args.minor and witnesses:
        doc["minor"] = _matroid_doc(minor_witness(m, witnesses[0]))
    _emit(doc, args)
    return EXIT_OK


def cmd_census(args) -> int:
    ingleton_classes, non_ingleton, records = classify_ingleton(
        args.n, args.r, args.strategy, args.jobs
    )
    doc = {
        "n": args.n,
        "r": args.r,
        "strategy": args.strategy,
        "jobs": args.jobs,
        "classes": len(records),
        "census_format_version": CENSUS_VERSION,
    }
    status = EXIT_OK
    if args.classify:
        doc["ingleton_classes"] = ingleton_classes
        doc["non_ingleton_classes"] = non_ingleton
    if args.verify_excluded_minors:
        if (args.n, args.r) != (8, 4):
            raise ValueError("--verify-excluded-minors is a statement about n=8, r=4")
        report = verify_excluded_minors(records)
        doc["excluded_minors_total"] = report.total
        doc["excluded_minors_checked"] = report.minors_checked
        doc["excluded_minor_failures"] = list(report.failures)
        if not report.ok:
            status = EXIT_ASSERT
    if args.out:
        census_write(records, args.out)
        doc["out"] = args.out
    _emit(doc, args)
    return status


def cmd_construct(args) -> int:
    _require_json(args)
    if args.gs_best is not None:
        n, r = _parse_ints(args.gs_best, 2, "--gs-best")
        gamma, m = gs_best(n, r)
        doc = _matroid_doc(m)
        doc["gamma"] = gamma
        doc["class_sizes"] = list(gs_class_sizes(n, r).class_sizes)
    elif args.gs is not None:
        n, r, gamma = _parse_ints(args.gs, 3, "--gs")
        doc = _matroid_doc(gs_matroid(n, r, gamma))
        doc["gamma"] = gamma
        doc["class_sizes"] = list(gs_class_sizes(n, r).class_sizes)
    else:
        doc = _matroid_doc(named(args.named))
    _emit(doc, args)
    return EXIT_OK


def cmd_sample(args) -> int:
    params = make_params(args.n, args.r, args.c, args.gamma)
    summary = run_trials(params, args.trials, args.seed, args.jobs)
    if args.emit_matroids:
        os.makedirs(args.emit_matroids, exist_ok=True)
        for stat in summary.stats:
            _, kept = run_trial(params, stat.seed)
            path = os.path.join(args.emit_matroids, f"sample-{stat.seed}.json")
            with open(path, "w") as fh:
                fh.write(to_json(sp_new(params.n, params.r, kept)) + "\n")
    _emit(summary.to_dict(), args)
    if not (summary.all_good and summary.pruning_bound_ok):
        print("spaving sample: pruning failed to reach a good set", file=sys.stderr)
        return EXIT_ASSERT
    return EXIT_OK


def cmd_represent(args) -> int:
    _require_json(args)
    label, m = _load_source(args)
    if not isinstance(m, SparsePavingMatroid):
        m = basis_to_sp(m)
    doc = {
        "source": label,
        "n": m.n,
        "r": m.r,
        "hall": hall_condition(sorted(m.ch), m.r),
        "seed": args.seed,
        "bit_width": args.bit_width,
    }
    if not doc["hall"]:
        doc["verified"] = False
        _emit(doc, args)
        return EXIT_ASSERT
    try:
        matrix, attempts = represent_with_retries(m, args.seed, args.bit_width, args.retries)
    except RuntimeError:
        doc["verified"] = False
        doc["attempts"] = args.retries
        _emit(doc, args)
        return EXIT_ASSERT
    doc["verified"] = True
    doc["attempts"] = attempts
    doc["matrix"] = [list(row) for row in matrix.rows]
    _emit(doc, args)
    return EXIT_OK


def _add_source_flags(sub) -> None:
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument("--named", metavar="NAME",
                       help="a named construction, e.g. vamos or uniform:4,8")
    group.add_argument("--gs", metavar="N,R,GAMMA",
                       help="the sum-coloring class GAMMA on N elements at rank R")
    group.add_argument("--matroid", metavar="FILE", help="a matroid JSON file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spaving",
        description="Sparse paving matroids and the Ingleton inequality.",
    )
    parser.add_argument(
        "--version",
        action="version",
        version=f"spaving {__version__} (census file format {CENSUS_VERSION})",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=_default_jobs(),
                        help="worker processes (default: SPAVING_JOBS or 1)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", metavar="PATH",
                        help="write the primary output to PATH instead of stdout")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("check", parents=[common], help="Ingleton verdict for one matroid")
    _add_source_flags(p)
    p.add_argument("--brute", action="store_true",
                   help="cross-check the fast verdict exhaustively")
    p.add_argument("--sampled", type=int, metavar="BUDGET",
                   help="sampled quadruple budget where exhaustion is out of reach")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("witness", parents=[common],
                       help="all violation witnesses of a sparse paving matroid")
    _add_source_flags(p)
    p.add_argument("--minor", action="store_true",
                   help="include the 8-element minor certified by the first witness")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("census", parents=[common],
                       help="isomorphism classes of sparse paving matroids")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--strategy", choices=("dedup", "orderly"), default="dedup")
    p.add_argument("--classify", action="store_true",
                   help="report Ingleton / non-Ingleton class counts")
    p.add_argument("--verify-excluded-minors", action="store_true",
                   help="check minimality of the non-Ingleton classes plus the two direct sums")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("construct", parents=[common], help="emit a built-in matroid as JSON")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--named", metavar="NAME")
    group.add_argument("--gs", metavar="N,R,GAMMA")
    group.add_argument("--gs-best", metavar="N,R",
                       help="largest sum-coloring class (ties to the smallest color)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("sample", parents=[common],
                       help="random vertex families, damage terms, pruning to good sets")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--c", type=float, default=0.95)
    p.add_argument("--gamma", type=float, default=0.486)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--emit-matroids", metavar="DIR",
                   help="write each trial's pruned matroid under DIR")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("represent", parents=[common],
                       help="integer matrix representation via the zero-pattern route")
    _add_source_flags(p)
    p.add_argument("--bit-width", type=int, default=64)
    p.add_argument("--retries", type=int, default=3)
    p.set_defaults(func=cmd_represent)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    _banner(args)
    try:
        return args.func(args)
    except ScaleError as exc:
        print(f"spaving: {exc}", file=sys.stderr)
        return EXIT_SCALE
    except (FormatError, StabilityError, ValueError, OSError) as exc:
        print(f"spaving: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"spaving: {exc}", file=sys.stderr)
        return EXIT_ASSERT


if __name__ == "__main__":
    sys.exit(main())
