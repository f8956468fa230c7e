"""Command-line front end: compute rules, compare against the oracle,
report sweep statistics, and check moment exactness.

Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 failed check.
"""
from __future__ import annotations

import argparse
import sys

from .core import DEFAULT_CONFIG, PrecisionConfig, make_params
from .errors import QuadratureError
from .gegenbauer import gegenbauer_rule
from .jacobi import jacobi_rule
from .oracle import compare_rules, exactness_check, golub_welsch

CHECK_THRESHOLD = 1e-10


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _fmt(v: float) -> str:
    """17 significant digits: enough for exact binary64 round-trip."""
    return format(float(v), ".17g")


def _build_parser() -> _Parser:
    p = _Parser(prog="gjquad", description="Gauss-Jacobi quadrature rules")
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("compute", "compare", "stats", "check"):
        q = sub.add_parser(name)
        q.add_argument("--n", type=int, required=True)
        q.add_argument("--alpha", type=float, required=True)
        q.add_argument("--beta", type=float, required=True)
        q.add_argument("--method", choices=("fixedpoint", "gw"), default="fixedpoint")
        q.add_argument("--refine", choices=("auto", "on", "off"), default="auto")
        q.add_argument("--normalization", choices=("auto", "mu0", "moments"), default="auto")
        q.add_argument("--format", choices=("text", "json", "csv"), default="text")
        q.add_argument("--out", default="-")
        q.add_argument("--tol", type=float, default=None)
    return p


def _config(args) -> PrecisionConfig:
    if args.tol is None:
        return DEFAULT_CONFIG
    return PrecisionConfig(fp_tol=args.tol)


def _compute_rule(args, cfg):
    """Build the requested rule; returns (nodes, weights, scheme, stats, flushed)."""
    if args.method == "gw":
        rule = golub_welsch(make_params(args.n, args.alpha, args.beta))
        return rule.nodes, rule.weights, "gw", None, 0
    if args.alpha == args.beta and args.refine == "off":
        # the plain symmetric algorithm, with its last-weight correction
        rule = gegenbauer_rule(args.n, args.alpha, cfg)
        scheme = "mu0-corrected" if rule.corrected_last else "mu0"
        return rule.nodes, rule.weights, scheme, rule.stats, rule.flushed_underflow
    rule = jacobi_rule(args.n, args.alpha, args.beta, cfg,
                       refine=args.refine, normalization=args.normalization)
    return rule.nodes, rule.weights, rule.scheme.value, rule.stats, rule.flushed_underflow


def _render(args, nodes, weights, scheme, stats, flushed) -> str:
    if args.format == "text":
        return "".join(f"{_fmt(x)} {_fmt(w)}\n" for x, w in zip(nodes, weights))
    if args.format == "csv":
        return "x,w\n" + "".join(f"{_fmt(x)},{_fmt(w)}\n" for x, w in zip(nodes, weights))
    st = stats
    stats_json = (
        "{"
        f'"mean_iters": {_fmt(st.mean_fp_iters if st else 0.0)}, '
        f'"max_iters": {st.max_fp_iters if st else 0}, '
        f'"mean_terms": {_fmt(st.mean_taylor_terms if st else 0.0)}, '
        f'"max_terms": {st.max_taylor_terms if st else 0}'
        "}"
    )
    nodes_json = "[" + ", ".join(_fmt(x) for x in nodes) + "]"
    weights_json = "[" + ", ".join(_fmt(w) for w in weights) + "]"
    return (
        "{"
        f'"n": {args.n}, "alpha": {_fmt(args.alpha)}, "beta": {_fmt(args.beta)}, '
        f'"method": "{args.method}", "scheme": "{scheme}", '
        f'"nodes": {nodes_json}, "weights": {weights_json}, '
        f'"stats": {stats_json}, "flushed_underflow_count": {flushed}'
        "}\n"
    )


def _emit(args, text: str):
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)


def _run_compute(args) -> int:
    cfg = _config(args)
    nodes, weights, scheme, stats, flushed = _compute_rule(args, cfg)
    _emit(args, _render(args, nodes, weights, scheme, stats, flushed))
    return 0


def _run_compare(args) -> int:
    cfg = _config(args)
    nodes, weights, _, _, _ = _compute_rule(args, cfg)
    baseline = golub_welsch(make_params(args.n, args.alpha, args.beta))
    class _R:  # minimal rule view
        pass
    mine = _R()
    mine.nodes, mine.weights = nodes, weights
    e_nodes, e_rm, e_mr = compare_rules(mine, baseline)
    _emit(args, f"{_fmt(e_nodes)} {_fmt(e_rm)} {_fmt(e_mr)}\n")
    return 0


def _run_stats(args) -> int:
    if args.method != "fixedpoint":
        raise _UsageError("stats requires --method fixedpoint")
    cfg = _config(args)
    _, _, _, stats, _ = _compute_rule(args, cfg)
    _emit(args, (f"iters mean={_fmt(stats.mean_fp_iters)} max={stats.max_fp_iters} "
                 f"terms mean={_fmt(stats.mean_taylor_terms)} max={stats.max_taylor_terms}\n"))
    return 0


def _run_check(args) -> int:
    if args.n > 40:
        raise _UsageError("check is limited to n <= 40 (cancellation control)")
    cfg = _config(args)
    nodes, weights, _, _, _ = _compute_rule(args, cfg)
    params = make_params(args.n, args.alpha, args.beta)
    class _R:
        pass
    rule = _R()
    rule.nodes, rule.weights = nodes, weights
    defect = exactness_check(rule, params, 2 * args.n - 1)
    _emit(args, f"{_fmt(defect)}\n")
    return 0 if defect <= CHECK_THRESHOLD else 3


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    try:
        if args.command == "compute":
            return _run_compute(args)
        if args.command == "compare":
            return _run_compare(args)
        if args.command == "stats":
            return _run_stats(args)
        return _run_check(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except QuadratureError as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OverflowError as exc:
        print(f"numerical failure: OverflowError: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
