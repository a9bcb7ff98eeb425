"""Command-line interface: ``tuckercur {gen,decompose,bound,figures}``.

Modes are 1-based on the command line. Exit status is 0 on success, 2 for
usage, parse, shape and rank errors, 3 for rank-deficient selections.
"""
import argparse
import os
import sys

from . import bounds, decomp, experiments, tnsr
from .exceptions import RankDeficiencyError, TuckerCurError

EXIT_USAGE = 2
EXIT_NUMERIC = 3


class UsageError(Exception):
    pass


def parse_int_list(text, what):
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"{what}: expected comma-separated integers, got {text!r}") from None
    if not values:
        raise UsageError(f"{what}: empty list")
    return values


def parse_shape(text):
    try:
        shape = tuple(int(v) for v in text.lower().split("x"))
    except ValueError:
        raise UsageError(f"--shape: expected e.g. 4x4x4, got {text!r}") from None
    if any(n < 1 for n in shape):
        raise UsageError(f"--shape: dimensions must be positive, got {text!r}")
    return shape


def resolve_ranks(text, shape):
    ranks = parse_int_list(text, "--ranks")
    if len(ranks) == 1:
        ranks = ranks * len(shape)
    if len(ranks) != len(shape):
        raise UsageError(f"--ranks: got {len(ranks)} values for an order-{len(shape)} tensor")
    total = 1
    for n in shape:
        total *= n
    for mode, (r, n) in enumerate(zip(ranks, shape), start=1):
        limit = min(n, total // n)
        if not 1 <= r <= limit:
            raise UsageError(f"--ranks: rank {r} for mode {mode} outside [1, {limit}]")
    return tuple(ranks)


def resolve_fiber_modes(text, order):
    if text.strip().lower() == "all":
        return tuple(range(order))
    if text.strip() in ("", "none"):
        return ()
    modes = parse_int_list(text, "--fiber-modes")
    for m in modes:
        if not 1 <= m <= order:
            raise UsageError(f"--fiber-modes: mode {m} outside [1, {order}]")
    if len(set(modes)) != len(modes):
        raise UsageError("--fiber-modes: duplicate modes")
    return tuple(sorted(m - 1 for m in modes))


def _load(path):
    if not os.path.isfile(path):
        raise UsageError(f"--input: no such file {path!r}")
    return tnsr.read(path)


def _method_modes(args, order):
    if args.method == "hybrid":
        if args.fiber_modes is None:
            raise UsageError("--fiber-modes is required with --method hybrid")
        return resolve_fiber_modes(args.fiber_modes, order)
    if args.fiber_modes is not None:
        raise UsageError(f"--fiber-modes only applies to --method hybrid, not {args.method}")
    return {"thosvd": (), "hoid": tuple(range(order))}[args.method]


def cmd_gen(args):
    if args.kind in ("A", "B"):
        if args.d is None or args.n is None:
            raise UsageError(f"--kind {args.kind} requires --d and --n")
        if args.d < 1 or args.n < 1:
            raise UsageError("--d and --n must be positive")
        gen = experiments.gen_tensor_A if args.kind == "A" else experiments.gen_tensor_B
        X = gen(args.d, args.n)
    else:
        if args.shape is not None:
            shape = parse_shape(args.shape)
        elif args.d is not None and args.n is not None:
            shape = (args.n,) * args.d
        else:
            raise UsageError("--kind random requires --shape or --d/--n")
        X = experiments.gen_random(shape, args.seed)
    parent = os.path.dirname(args.out)
    if parent:
        os.makedirs(parent, exist_ok=True)
    tnsr.write(args.out, X)
    print(f"wrote {args.out} shape={'x'.join(map(str, X.shape))}")
    return 0


def cmd_decompose(args):
    X = _load(args.input)
    ranks = resolve_ranks(args.ranks, X.shape)
    modes = _method_modes(args, X.ndim)
    F = decomp.hybrid(X, ranks, modes)
    rep = decomp.error_report(X, F)
    tnsr.write_factorization(args.out, F, method=args.method)
    print(f"method={args.method} rel_error={rep.rel_error:.17g} "
          f"abs_error={rep.abs_error:.17g} bound_sq={rep.bound:.17g}")
    return 0


def cmd_bound(args):
    X = _load(args.input)
    ranks = resolve_ranks(args.ranks, X.shape)
    modes = resolve_fiber_modes(args.fiber_modes, X.ndim)
    bd = bounds.hybrid_bound(X, ranks, modes)
    for t, s in zip(bd.terms, bd.sigma_next):
        print(f"mode={t.mode + 1} kind={t.kind} sigma_next={s:.17g} term={t.value:.17g}")
    print(f"total={bd.total:.17g}")
    return 0


def cmd_figures(args):
    result = experiments.run_figure(args.which, seed=args.seed, scale=args.scale)
    os.makedirs(args.out, exist_ok=True)
    path = os.path.join(args.out, f"fig{args.which}.csv")
    with open(path, "w", newline="") as fh:
        fh.write(experiments.to_csv(result, timings=args.timings))
    print(f"wrote {path} ({len(result.rows)} rows)")
    if args.svg:
        svg = os.path.join(args.out, f"fig{args.which}.svg")
        experiments.write_svg(result, svg)
        print(f"wrote {svg}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="tuckercur",
                                     description="Hybrid CUR-type Tucker approximations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a test tensor to a TNSR file")
    p.add_argument("--kind", choices=["A", "B", "random"], required=True)
    p.add_argument("--d", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--shape", help="e.g. 4x4x4 (random only)")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", required=True, help="output .tns file")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("decompose", help="approximate a TNSR tensor in Tucker format")
    p.add_argument("--input", required=True)
    p.add_argument("--method", choices=["thosvd", "hoid", "hybrid"], required=True)
    p.add_argument("--ranks", required=True, help="comma-separated; one value broadcasts")
    p.add_argument("--fiber-modes", help="1-based comma-separated modes, or 'all'")
    p.add_argument("--out", default="./results")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("bound", help="evaluate the squared-error bound")
    p.add_argument("--input", required=True)
    p.add_argument("--ranks", required=True)
    p.add_argument("--fiber-modes", default="", help="1-based modes, 'all', or empty")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("figures", help="reproduce an experiment as CSV (and SVG)")
    p.add_argument("--which", type=int, choices=[1, 2, 3, 4], required=True)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--scale", choices=list(experiments.SCALES), default="desk")
    p.add_argument("--out", default="./results")
    p.add_argument("--svg", action="store_true")
    p.add_argument("--timings", action="store_true", help="record wall times in the CSV")
    p.set_defaults(func=cmd_figures)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except RankDeficiencyError as exc:
        print(f"tuckercur: rank deficiency: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (UsageError, TuckerCurError, OSError) as exc:
        print(f"tuckercur: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
