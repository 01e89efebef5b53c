"""Command-line interface: ``lincbo {basis,intents,gen,scale,bench,verify}``.

Exit codes: 0 ok, 1 I/O error, 2 parse error, 3 bad flags, 4 algorithms
disagree (bench), 5 verification failed.
"""

import argparse
import csv
import io
import json
import os
import statistics
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Dict, List, Optional, Sequence

from . import context as C
from .dgbasis import AlgorithmId, BasisResult, compute_basis, verify_basis
from .enumeration import cbo_closed_sets
from .implications import parse_theory
from .scaling import ScalingSpec, read_csv, remove_full_columns, scale, scaling_plan

EXIT_IO, EXIT_PARSE, EXIT_FLAGS, EXIT_DISAGREE, EXIT_VERIFY = 1, 2, 3, 4, 5

BENCH_HEADER = ["dataset", "algorithm", "repeat", "mean_ms", "intents", "pseudo_intents", "closure_calls"]

# name -> callable(ctx) -> BasisResult; tests may patch entries
RUNNERS: Dict[str, Callable[[C.FormalContext], BasisResult]] = {
    a.value: (lambda ctx, _a=a: compute_basis(ctx, _a)) for a in AlgorithmId
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_FLAGS)


def _read_bytes(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _write(path: Optional[str], data: bytes) -> None:
    if path in (None, "-"):
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        with open(path, "wb") as fh:
            fh.write(data)


def load_context(path: str, fmt: Optional[str] = None) -> C.FormalContext:
    """Read a context from a file, or build one from ``gen:contranominal:N`` /
    ``gen:random:NX:NY:D[:SEED]``."""
    if path.startswith("gen:"):
        parts = path.split(":")
        try:
            if parts[1] == "contranominal" and len(parts) == 3:
                return C.gen_contranominal(int(parts[2]))
            if parts[1] == "random" and len(parts) in (5, 6):
                nx, ny, d = map(int, parts[2:5])
                seed = int(parts[5]) if len(parts) == 6 else 0
                return C.gen_random(nx, ny, d, seed)
        except ValueError as e:
            raise UsageError(f"bad generator spec {path!r}: {e}") from None
        raise UsageError(f"bad generator spec {path!r}")
    data = _read_bytes(path)
    if fmt is None:
        fmt = "fimi" if path.endswith((".dat", ".fimi", ".txt")) else "cxt"
    ctx = C.read_fimi(data) if fmt == "fimi" else C.read_cxt(data)
    if not ctx.name and path != "-":
        ctx = C.FormalContext.from_rows(ctx.rows, ctx.n_attributes, ctx.object_names,
                                        ctx.attribute_names, os.path.basename(path))
    return ctx


def _algorithm(name: str) -> AlgorithmId:
    try:
        return AlgorithmId.parse(name)
    except ValueError as e:
        raise UsageError(str(e)) from None


# ---------------------------------------------------------------- subcommands

def cmd_basis(args) -> int:
    alg = _algorithm(args.algorithm)
    ctx = load_context(args.input, args.input_format)
    res = compute_basis(ctx, alg)
    names = ctx.attribute_names
    if args.format == "json":
        doc = res.summary()
        doc["basis"] = [imp.to_json(args.reduced) for imp in res.basis]
        out = json.dumps(doc) + "\n"
    else:
        out = res.basis.format(names, args.reduced)
        out += (f"# intents: {res.intent_count}  pseudo-intents: {res.pseudo_intent_count}"
                f"  closure-calls: {res.closure_calls}  ms: {res.wall_time * 1000:.3f}\n")
    _write(None, out.encode())
    return 0


def cmd_intents(args) -> int:
    ctx = load_context(args.input, args.input_format)
    closure = lambda b: C.closure_downup(ctx, b)  # noqa: E731
    if args.count:
        count = sum(1 for _ in cbo_closed_sets(closure, ctx.n_attributes))
        print(count)
        return 0
    names = ctx.attribute_names
    out = sys.stdout
    for b in cbo_closed_sets(closure, ctx.n_attributes):
        out.write(" ".join(names[a] for a in range(ctx.n_attributes) if b >> a & 1) + "\n")
    return 0


def cmd_gen(args) -> int:
    if args.contranominal is not None:
        ctx = C.gen_contranominal(args.contranominal)
    elif args.random is not None:
        nx, ny, d = args.random
        ctx = C.gen_random(nx, ny, d, args.seed)
    else:
        raise UsageError("gen needs --contranominal N or --random NX NY D")
    _write(args.output, C.write_fimi(ctx) if args.format == "fimi" else C.write_cxt(ctx))
    return 0


def cmd_scale(args) -> int:
    try:
        spec = ScalingSpec(args.method, args.k, drop_missing=not args.keep_missing)
    except ValueError as e:
        raise UsageError(str(e)) from None
    table = read_csv(_read_bytes(args.input), header=not args.no_header, missing=args.missing)
    name = f"{args.method}{args.k}{os.path.splitext(os.path.basename(args.input))[0]}"
    ctx = scale(table, spec, name=name)
    if not args.keep_full_columns:
        ctx = remove_full_columns(ctx)
    if args.cutpoints:
        with open(args.cutpoints, "w") as fh:
            json.dump(scaling_plan(table, spec), fh, indent=1)
    _write(args.output, C.write_cxt(ctx))
    return 0


def _bench_one(job):
    path, fmt, alg, repeat = job
    ctx = load_context(path, fmt)
    runner = RUNNERS[alg]
    times = []
    res = None
    for _ in range(repeat):
        res = runner(ctx)
        times.append(res.wall_time)
    return {
        "dataset": ctx.name or path,
        "algorithm": alg,
        "repeat": repeat,
        "mean_ms": statistics.fmean(times) * 1000.0,
        "intents": res.intent_count,
        "pseudo_intents": res.pseudo_intent_count,
        "closure_calls": res.closure_calls,
        "basis": frozenset(res.basis),
    }


def run_bench(inputs: Sequence[str], algorithms: Sequence[str], repeat: int = 10,
              jobs: int = 1, input_format: Optional[str] = None):
    """Run every algorithm on every input; returns (records, disagreements)."""
    if repeat < 1:
        raise UsageError("--repeat must be >= 1")
    algs = [_algorithm(a).value for a in algorithms]
    work = [(p, input_format, a, repeat) for p in inputs for a in algs]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_bench_one, work))
    else:
        records = [_bench_one(w) for w in work]
    problems = []
    for k in range(0, len(records), len(algs)):
        group = records[k:k + len(algs)]
        ref = group[0]
        for r in group[1:]:
            if (r["basis"] != ref["basis"] or r["intents"] != ref["intents"]
                    or r["pseudo_intents"] != ref["pseudo_intents"]):
                problems.append(f"{r['dataset']}: {r['algorithm']} disagrees with {ref['algorithm']}")
    for r in records:
        del r["basis"]
    return records, problems


def format_bench(records, fmt: str = "csv") -> str:
    if fmt == "json":
        return json.dumps(records, indent=1) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(BENCH_HEADER)
    for r in records:
        w.writerow([r["dataset"], r["algorithm"], r["repeat"], f"{r['mean_ms']:.3f}",
                    r["intents"], r["pseudo_intents"], r["closure_calls"]])
    return buf.getvalue()


def cmd_bench(args) -> int:
    jobs = args.jobs if args.jobs is not None else int(os.environ.get("LINCBO_JOBS", "1"))
    algs = [a for a in args.algorithms.split(",") if a]
    records, problems = run_bench(args.inputs, algs, args.repeat, jobs, args.input_format)
    _write(None, format_bench(records, args.format).encode())
    for p in problems:
        print(f"disagreement: {p}", file=sys.stderr)
    return EXIT_DISAGREE if problems else 0


def cmd_verify(args) -> int:
    ctx = load_context(args.input, args.input_format)
    if args.basis:
        theory = parse_theory(_read_bytes(args.basis).decode(), ctx.attribute_names)
    else:
        theory = compute_basis(ctx, _algorithm(args.algorithm)).basis
    report = verify_basis(ctx, theory, args.limit)
    print(report.format())
    return 0 if report.ok else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lincbo", description="Duquenne-Guigues basis of formal contexts.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    algs = ", ".join(a.value for a in AlgorithmId)

    def with_input(sp):
        sp.add_argument("input", help="CXT or FIMI file, '-' for stdin, or gen:... spec")
        sp.add_argument("--input-format", choices=["cxt", "fimi"], default=None)

    sp = sub.add_parser("basis", help="compute the canonical basis")
    with_input(sp)
    sp.add_argument("-a", "--algorithm", default="lincbo", help=f"one of {algs}")
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.add_argument("--reduced", action="store_true", help="print R minus L as right sides")
    sp.set_defaults(func=cmd_basis)

    sp = sub.add_parser("intents", help="enumerate intents with CbO")
    with_input(sp)
    sp.add_argument("--count", action="store_true", help="only print the number of intents")
    sp.set_defaults(func=cmd_intents)

    sp = sub.add_parser("gen", help="generate a synthetic context")
    sp.add_argument("--contranominal", type=int, metavar="N")
    sp.add_argument("--random", type=int, nargs=3, metavar=("NX", "NY", "D"))
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--format", choices=["cxt", "fimi"], default="cxt")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("scale", help="binarise a CSV table")
    sp.add_argument("input")
    sp.add_argument("--method", choices=["nom", "ord", "inter"], default="nom")
    sp.add_argument("-k", type=int, default=5)
    sp.add_argument("--no-header", action="store_true")
    sp.add_argument("--missing", default="?")
    sp.add_argument("--keep-missing", action="store_true",
                    help="keep rows with missing cells (the cell yields no attribute)")
    sp.add_argument("--keep-full-columns", action="store_true")
    sp.add_argument("--cutpoints", metavar="JSON", help="write cutpoints/categories here")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_scale)

    sp = sub.add_parser("bench", help="time algorithms on datasets")
    sp.add_argument("inputs", nargs="+")
    sp.add_argument("-a", "--algorithms", default=",".join(a.value for a in AlgorithmId))
    sp.add_argument("--repeat", type=int, default=10)
    sp.add_argument("--format", choices=["csv", "json"], default="csv")
    sp.add_argument("--jobs", type=int, default=None)
    sp.add_argument("--input-format", choices=["cxt", "fimi"], default=None)
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("verify", help="check a basis against brute force")
    with_input(sp)
    sp.add_argument("--basis", help="implication file (text or JSON); default: compute one")
    sp.add_argument("-a", "--algorithm", default="lincbo")
    sp.add_argument("--limit", type=int, default=12, help="max |Y| for exhaustive checks")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"lincbo: {e}", file=sys.stderr)
        return EXIT_FLAGS
    except OSError as e:
        print(f"lincbo: {e}", file=sys.stderr)
        return EXIT_IO
    except ValueError as e:
        print(f"lincbo: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
