"""Command line front end.

Four commands, all reading a graph description file (``--graph``):

``solve``
    Compute the spectrum and write CSV (``n,k,E,kind``) to stdout or
    ``--out``.  E is k squared; kind is ``interior`` or
    ``separator-coincidence``.

``order``
    Report the regularization order M and the per-level amplitude sums.

``verify``
    Re-derive the spectrum with the dense-scan oracle and compare, then
    audit the root count against the counting law.  Exit 3 on mismatch.

``eval``
    Tabulate every ladder level on a k grid as CSV.

Exit codes: 0 success, 1 usage or file errors, 2 solver contract
violations (separator failure, order cap, refinement trouble), 3
verification mismatch.  Data goes to stdout, diagnostics to stderr; reruns
with the same inputs produce byte-identical output (floats are written
with repr-faithful 17 significant digits).
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .oracle import compare, scan_roots, weyl_audit
from .solver import (
    BracketError,
    RefinementStall,
    SeparatorFailure,
    SolverConfig,
    solve_ladder,
)
from .specfile import LoadedSpec, SpecFileError, load_graph_spec
from .trig import OrderCapError, build_ladder, evaluate, regularity_sum

__all__ = ["main"]

_DEFAULT_ROOT_TOL = 1e-12
_DEFAULT_COINCIDENCE_TOL = 1e-10
_DEFAULT_MAX_ORDER = 64
_DEFAULT_COMPARE_TOL = 1e-9


class _Parser(argparse.ArgumentParser):
    # Usage problems are exit code 1 in this tool, not argparse's 2.
    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _g17(x: float) -> str:
    return format(x, ".17g")


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="qgspectra",
        description="Spectra of scaling quantum graphs via the derivative ladder.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def common(p: _Parser, kmax: bool = True) -> None:
        p.add_argument("--graph", required=True, metavar="FILE",
                       help="graph description file (YAML)")
        if kmax:
            p.add_argument("--kmax", type=float, default=None,
                           help="upper end of the search window (0, kmax]")
        p.add_argument("--tol", type=float, default=None,
                       help="root tolerance (default 1e-12)")
        p.add_argument("--coincidence-tol", type=float, default=None,
                       help="separator-coincidence threshold (default 1e-10)")
        p.add_argument("--max-order", type=int, default=None,
                       help="ladder order cap (default 64)")

    p_solve = sub.add_parser("solve", help="compute the spectrum as CSV")
    common(p_solve)
    p_solve.add_argument("--out", metavar="FILE", default=None,
                         help="write CSV here instead of stdout")
    p_solve.set_defaults(func=_cmd_solve)

    p_order = sub.add_parser("order", help="report the regularization order")
    common(p_order, kmax=False)
    p_order.set_defaults(func=_cmd_order)

    p_verify = sub.add_parser(
        "verify", help="cross-check the solver against a dense scan"
    )
    common(p_verify)
    p_verify.set_defaults(func=_cmd_verify)

    p_eval = sub.add_parser("eval", help="tabulate the ladder on a k grid")
    common(p_eval)
    p_eval.add_argument("--k", type=float, action="append", default=None,
                        help="evaluation point (repeatable; overrides the grid)")
    p_eval.add_argument("--kmin", type=float, default=0.0,
                        help="grid start (default 0)")
    p_eval.add_argument("--step", type=float, default=None,
                        help="grid spacing")
    p_eval.add_argument("--out", metavar="FILE", default=None,
                        help="write CSV here instead of stdout")
    p_eval.set_defaults(func=_cmd_eval)

    return parser


def _pick(flag, overrides: dict, key: str, default):
    if flag is not None:
        return flag
    if key in overrides:
        return overrides[key]
    return default


def _resolve_config(spec: LoadedSpec, args, parser_error) -> SolverConfig:
    ov = spec.solver_overrides
    k_max = _pick(getattr(args, "kmax", None), ov, "k_max", None)
    if k_max is None:
        parser_error("no search window: pass --kmax or set solver.k_max in the file")
    root_tol = _pick(args.tol, ov, "root_tol", _DEFAULT_ROOT_TOL)
    return SolverConfig(
        k_max=k_max,
        root_tol=root_tol,
        coincidence_tol=_pick(args.coincidence_tol, ov, "coincidence_tol",
                              _DEFAULT_COINCIDENCE_TOL),
        max_order=_pick(args.max_order, ov, "max_order", _DEFAULT_MAX_ORDER),
    )


def _open_out(path: str | None):
    if path is None:
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline="\n"), True


def _cmd_solve(args) -> int:
    spec = load_graph_spec(args.graph)
    cfg = _resolve_config(spec, args, _fail_usage)
    solution = solve_ladder(spec.function, cfg)
    out, close = _open_out(args.out)
    try:
        print("n,k,E,kind", file=out)
        for e in solution.spectrum:
            print(f"{e.n},{_g17(e.k)},{_g17(e.k * e.k)},{e.kind}", file=out)
    finally:
        if close:
            out.close()
    print(
        f"order M={solution.ladder.order}; {len(solution.spectrum)} roots "
        f"in (0, {cfg.k_max:g}]",
        file=sys.stderr,
    )
    return 0


def _cmd_order(args) -> int:
    spec = load_graph_spec(args.graph)
    max_order = _pick(args.max_order, spec.solver_overrides, "max_order",
                      _DEFAULT_MAX_ORDER)
    ladder = build_ladder(spec.function, max_order)
    print(f"M = {ladder.order}")
    for m, level in enumerate(ladder.levels):
        print(f"level {m}: regularity sum = {_g17(regularity_sum(level))}")
    return 0


def _cmd_verify(args) -> int:
    spec = load_graph_spec(args.graph)
    compare_tol = args.tol if args.tol is not None else _DEFAULT_COMPARE_TOL
    args.tol = None  # --tol means the comparison tolerance here
    cfg = _resolve_config(spec, args, _fail_usage)
    solution = solve_ladder(spec.function, cfg)
    ks = solution.spectrum.ks
    oracle_roots, step = scan_roots(
        spec.function,
        (0.0, cfg.k_max),
        refine_tol=min(1e-12, compare_tol / 10.0),
        coincidence_tol=cfg.coincidence_tol,
    )
    report = compare(ks, oracle_roots, tol=compare_tol, scan_step=step)
    audit = weyl_audit(solution.spectrum, spec.function.s0, (0.0, cfg.k_max))
    bound = spec.function.n_terms + 1
    print(f"order: M = {solution.ladder.order}")
    print(
        f"comparison: {report.verdict} ({len(ks)} solver roots, "
        f"{len(oracle_roots)} scan roots, max deviation "
        f"{report.max_deviation:.3e}, scan step {step:.6g})"
    )
    if report.message:
        print(f"comparison detail: {report.message}")
    weyl_ok = audit.within(bound)
    print(
        f"weyl: expected {audit.expected:.6f}, actual {audit.actual}, "
        f"deviation {audit.deviation:.6f}, bound {bound}"
    )
    ok = report.ok and weyl_ok
    print(f"verdict: {'pass' if ok else 'fail'}")
    return 0 if ok else 3


def _cmd_eval(args) -> int:
    spec = load_graph_spec(args.graph)
    max_order = _pick(args.max_order, spec.solver_overrides, "max_order",
                      _DEFAULT_MAX_ORDER)
    if args.k:
        grid = list(args.k)
    else:
        kmax = _pick(args.kmax, spec.solver_overrides, "k_max", None)
        if kmax is None or args.step is None:
            _fail_usage("eval needs --k points, or --kmax with --step")
        if args.step <= 0.0 or kmax <= args.kmin:
            _fail_usage("grid needs step > 0 and kmax > kmin")
        count = int(round((kmax - args.kmin) / args.step)) + 1
        grid = [args.kmin + i * args.step for i in range(count)]
    ladder = build_ladder(spec.function, max_order)
    out, close = _open_out(args.out)
    try:
        header = "k," + ",".join(f"g{m}" for m in range(ladder.order + 1))
        print(header, file=out)
        for k in grid:
            row = [_g17(k)] + [_g17(evaluate(level, k)) for level in ladder.levels]
            print(",".join(row), file=out)
    finally:
        if close:
            out.close()
    return 0


class _UsageError(Exception):
    pass


def _fail_usage(message: str):
    raise _UsageError(message)


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"qgspectra: error: {exc}", file=sys.stderr)
        return 1
    except SpecFileError as exc:
        print(f"qgspectra: error: {exc}", file=sys.stderr)
        return 1
    except (SeparatorFailure, OrderCapError, BracketError, RefinementStall) as exc:
        print(f"qgspectra: solver failure: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"qgspectra: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"qgspectra: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
