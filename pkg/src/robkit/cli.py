"""``robkit`` command line.

JSON results go to stdout and a one-line summary to stderr.  Exit codes:
0 for PASS/YES, 1 for FAIL/NO, 2 for any error.  Indices in output are
1-based.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .bench import growth_ratio, run_bench, to_csv
from .checks import complete_min_rule, diagonal_lint, is_robinson, is_strong_robinson
from .complete import recognize_robinsonian
from .errors import (
    AsymmetryError,
    IncompleteInputError,
    NotStrongRobinsonError,
    ParseError,
    RobkitError,
)
from .fileio import format_matrix, format_scalar, matrix_digest, parse_matrix, parse_scalar
from .generate import PRNG_NAME, gen_no_instance, gen_planted
from .incomplete import (
    default_workers,
    recognize_strong_robinsonian,
    recognize_strong_robinsonian_direct,
)
from .matrix import Completion
from .oracle import brute_robinsonian, brute_strong_robinsonian

EXIT_YES = 0
EXIT_NO = 1
EXIT_ERROR = 2


def _violation_json(v):
    if v is None:
        return None
    return {
        "kind": v.kind.value,
        "indices": [x + 1 for x in v.indices],
        "cells": [[i + 1, j + 1] for i, j in v.cells],
        "values": [format_scalar(x) for x in v.values],
    }


def _describe(v) -> str:
    (i, j), (k, l) = v.cells
    a, b = (format_scalar(x) for x in v.values)
    return f"{v.kind.value}: a[{i + 1},{j + 1}]={a} > a[{k + 1},{l + 1}]={b}"


def _completion_json(c: Completion):
    return [
        {"row": i + 1, "col": j + 1, "value": format_scalar(v)}
        for (i, j), v in c.assignments
    ]


def _document(command, verdict, A, started, **extra):
    doc = {
        "command": command,
        "verdict": verdict,
        "violation": None,
        "tried": None,
        "timing_ms": round((time.perf_counter() - started) * 1000.0, 3),
        "input_digest": matrix_digest(A),
    }
    doc.update(extra)
    return doc


def _emit(doc, summary: str) -> None:
    print(json.dumps(doc, indent=2))
    print(summary, file=sys.stderr)


def cmd_check(args) -> int:
    A = parse_matrix(args.path)
    started = time.perf_counter()
    result = is_robinson(A) if args.mode == "robinson" else is_strong_robinson(A)
    verdict = "PASS" if result else "FAIL"
    doc = _document(
        f"check --mode {args.mode}", verdict, A, started,
        violation=_violation_json(result.violation),
    )
    summary = f"{args.mode}: {verdict}"
    if result.violation is not None:
        summary += f" ({_describe(result.violation)})"
    _emit(doc, summary)
    return EXIT_YES if result else EXIT_NO


def _read_values(path):
    text = Path(path).read_text()
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.lstrip().startswith("#"):
            continue
        for tok in line.split():
            try:
                out.append(parse_scalar(tok))
            except ValueError:
                raise ParseError(f"bad value {tok!r}", lineno, line.index(tok) + 1)
    return out


def cmd_recognize(args) -> int:
    A = parse_matrix(args.path)
    started = time.perf_counter()
    values = _read_values(args.values_file) if args.values_file else None
    if values is not None and not args.incomplete:
        raise RobkitError("--values-file only applies with --incomplete")
    if not args.incomplete:
        if not A.is_complete:
            raise IncompleteInputError(
                "matrix has missing entries; pass --incomplete to search completions"
            )
        lint = diagonal_lint(A)
        if lint:
            print(
                f"warning: diagonal not row-maximal in rows {[i + 1 for i in lint]}",
                file=sys.stderr,
            )
        if args.oracle:
            rep = brute_robinsonian(A)
            yes, order, tried, completion, refutation = (
                bool(rep), rep.witness, rep.permutations_tried, None, None
            )
        else:
            out = recognize_robinsonian(A)
            yes, order, tried, completion = bool(out), out.witness, None, None
            refutation = out.refutation
    else:
        if args.oracle:
            out = recognize_strong_robinsonian_direct(A)
        else:
            out = recognize_strong_robinsonian(
                A,
                values=values,
                exhaustive=args.exhaustive,
                deterministic=args.deterministic,
                workers=args.threads,
            )
        yes, order, tried, completion, refutation = (
            bool(out), out.order, out.tried, out.completion, None
        )
    verdict = "YES" if yes else "NO"
    extra = {"tried": tried}
    if yes:
        extra["witness_order"] = [x + 1 for x in order]
        extra["witness_completion"] = _completion_json(completion or Completion())
    if refutation is not None:
        extra["refutation"] = {
            "reason": refutation.reason,
            "threshold": None if refutation.threshold is None else format_scalar(refutation.threshold),
            "rows": [i + 1 for i in refutation.rows],
        }
    mode = "strong-robinsonian" if args.incomplete else "robinsonian"
    doc = _document(f"recognize {mode}", verdict, A, started, **extra)
    summary = f"{mode}: {verdict}"
    if tried is not None:
        summary += f" (tried {tried})"
    _emit(doc, summary)
    return EXIT_YES if yes else EXIT_NO


def cmd_complete(args) -> int:
    A = parse_matrix(args.path)
    filled = complete_min_rule(A)
    sys.stdout.write(format_matrix(filled))
    return EXIT_YES


def cmd_oracle(args) -> int:
    A = parse_matrix(args.path)
    started = time.perf_counter()
    strong = args.strong or not A.is_complete
    if strong:
        rep = brute_strong_robinsonian(A, prune_reversal=args.prune)
    else:
        rep = brute_robinsonian(A, prune_reversal=args.prune)
    verdict = "YES" if rep else "NO"
    extra = {"tried": rep.permutations_tried}
    if rep:
        extra["witness_order"] = [x + 1 for x in rep.witness]
        extra["witness_completion"] = []
    kind = "strong-robinsonian" if strong else "robinsonian"
    doc = _document(f"oracle {kind}", verdict, A, started, **extra)
    _emit(doc, f"oracle {kind}: {verdict} after {rep.permutations_tried} permutations")
    return EXIT_YES if rep else EXIT_NO


def cmd_gen(args) -> int:
    header = [
        f"robkit gen prng={PRNG_NAME} seed={args.seed} n={args.n} "
        f"values={args.values} free={args.free} kind={args.kind}"
    ]
    side = {
        "prng": PRNG_NAME,
        "seed": args.seed,
        "n": args.n,
        "values": args.values,
        "free": args.free,
        "kind": args.kind,
    }
    if args.kind == "planted":
        inst = gen_planted(args.n, args.values, args.free, args.seed, shuffle=not args.no_shuffle)
        A = inst.matrix
        side["hidden_order"] = [x + 1 for x in inst.hidden_order]
        side["hidden_completion"] = _completion_json(inst.hidden_completion)
    else:
        inst = gen_no_instance(args.n, args.values, args.free, args.seed)
        A = inst.matrix
        side["claw"] = [x + 1 for x in inst.claw]
    out = Path(args.output)
    out.write_text(format_matrix(A, header))
    side["input_digest"] = matrix_digest(A)
    Path(str(out) + ".json").write_text(json.dumps(side, indent=2) + "\n")
    print(f"wrote {out} and {out}.json", file=sys.stderr)
    return EXIT_YES


def _free_range(text: str) -> list[int]:
    if "-" in text:
        lo, hi = text.split("-", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in text.split(",")]


def cmd_bench(args) -> int:
    seeds = list(range(args.seed_base, args.seed_base + args.seeds))
    rows = run_bench(
        args.n,
        args.values,
        _free_range(args.free),
        seeds,
        exhaustive=args.exhaustive,
        kind=args.kind,
        workers=args.threads,
    )
    sys.stdout.write(to_csv(rows))
    if len(rows) > 1:
        print(f"geometric-mean time ratio: {growth_ratio(rows):.3f}", file=sys.stderr)
    return EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="robkit",
        description="Recognize Robinson and Strong-Robinson structure in symmetric matrices.",
    )
    p.add_argument("--version", action="version", version=f"robkit {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="test a matrix in its given order")
    c.add_argument("path")
    c.add_argument("--mode", choices=["robinson", "strong"], default="robinson")
    c.set_defaults(func=cmd_check)

    r = sub.add_parser("recognize", help="search for a reordering (and completion)")
    r.add_argument("path")
    r.add_argument("--incomplete", action="store_true",
                   help="decide Strong-Robinsonian by completion search")
    r.add_argument("--exhaustive", action="store_true",
                   help="test every completion even after a witness is found")
    r.add_argument("--deterministic", action="store_true",
                   help="always report the lexicographically first witness")
    r.add_argument("--oracle", action="store_true",
                   help="use brute-force search over orders (small n only)")
    r.add_argument("--values-file", help="candidate completion values instead of w(A)")
    r.add_argument("--threads", type=int, default=None,
                   help="worker processes (default: ROBKIT_THREADS or 1)")
    r.set_defaults(func=cmd_recognize)

    m = sub.add_parser("complete", help="fill a Strong-Robinson matrix with the min rule")
    m.add_argument("path")
    m.set_defaults(func=cmd_complete)

    o = sub.add_parser("oracle", help="brute force over all n! orders")
    o.add_argument("path")
    o.add_argument("--strong", action="store_true", help="test the Strong-Robinson property instead")
    o.add_argument("--prune", action="store_true", help="skip reversed orders")
    o.set_defaults(func=cmd_oracle)

    g = sub.add_parser("gen", help="generate a seeded instance")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--values", type=int, required=True)
    g.add_argument("--free", type=int, default=0)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--kind", choices=["planted", "no"], default="planted")
    g.add_argument("--no-shuffle", action="store_true")
    g.add_argument("-o", "--output", required=True)
    g.set_defaults(func=cmd_gen)

    b = sub.add_parser("bench", help="time the completion search against hole count")
    b.add_argument("--n", type=int, default=60)
    b.add_argument("--values", type=int, default=3)
    b.add_argument("--free", default="2-6", help="range 'lo-hi' or list 'a,b,c'")
    b.add_argument("--seeds", type=int, default=3)
    b.add_argument("--seed-base", type=int, default=0)
    b.add_argument("--kind", choices=["no", "planted"], default="no")
    b.add_argument("--exhaustive", action="store_true")
    b.add_argument("--threads", type=int, default=None)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "threads", None) is None and hasattr(args, "threads"):
        args.threads = default_workers()
    try:
        return args.func(args)
    except NotStrongRobinsonError as e:
        print(json.dumps({"error": "NotStrongRobinson", "violation": _violation_json(e.violation)}, indent=2))
        print(f"error: not Strong-Robinson in the given order ({_describe(e.violation)})", file=sys.stderr)
        return EXIT_ERROR
    except AsymmetryError as e:
        print(f"error: matrix is not symmetric at ({e.i + 1}, {e.j + 1})", file=sys.stderr)
        return EXIT_ERROR
    except (RobkitError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
