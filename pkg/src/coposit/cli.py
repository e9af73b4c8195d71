"""coposit: decide (strict) copositivity of small symmetric tensors.

    coposit check FILE [--strict] [--oracle] [--tol T] [--denominator D] [--time]
    coposit minimize FILE [--denominator D] [--refine | --no-refine]
    coposit enumerate --family strict|cop [--out PATH] [--denominator D]
    coposit inequalities [--samples N] [--seed S]

Exit codes: 0 yes / success, 1 no / disagreement, 2 undecided, 3 input error.
COPOSIT_THREADS caps the oracle's worker threads.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import Optional, Sequence

from . import identities, quartic3d
from .analysis import run_check
from .io import TensorFileError, read_tensor
from .oracle import DEFAULT_DENOMINATOR, DEFAULT_TOL, OracleReport, min_on_simplex
from .tensor import TensorError

EXIT_INPUT = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _fmt(v) -> str:
    return str(v) if not isinstance(v, float) else repr(v)


def _oracle_lines(rep: OracleReport) -> list[str]:
    lines = [
        f"oracle_verdict: {rep.verdict}",
        f"oracle_min: {rep.exact_min if rep.exact else _fmt(rep.min_value)}",
        f"oracle_argmin: {rep.argmin}",
        f"oracle_grid: {rep.grid_denominator}",
    ]
    if rep.refined:
        lines.append(f"oracle_refined_min: {rep.refined_min:.12g}")
    if rep.witness is None:
        lines.append("witness: none at argmin")
    else:
        k, y = rep.witness
        lines.append(f"witness: k={k} (Tx^(m-1))_k={_fmt(y)}")
    return lines


def cmd_check(args) -> int:
    T = read_tensor(args.file)
    start = time.perf_counter()
    report = run_check(T, strict=args.strict, use_oracle=args.oracle, tol=args.tol, denominator=args.denominator)
    elapsed = time.perf_counter() - start
    out = [f"verdict: {report.verdict}", f"method: {report.method}"]
    if report.method != report.analytic.method:
        out.append(f"analytic: {report.analytic.verdict} via {report.analytic.method}")
    if report.analytic.certificate:
        out.append(f"certificate: {report.analytic.certificate}")
    if report.verdict.value == "COPOSITIVE":
        out.append(f"strictness: {'not strict' if report.strictness_known else 'undetermined'}")
    if report.oracle is not None:
        out.extend(_oracle_lines(report.oracle))
    if args.time:
        out.append(f"elapsed: {elapsed:.3f}s")
    print("\n".join(out))
    return report.exit_code(args.strict)


def cmd_minimize(args) -> int:
    T = read_tensor(args.file)
    rep = min_on_simplex(T, args.denominator, refine=args.refine)
    print(f"min: {rep.exact_min if rep.exact else _fmt(rep.min_value)}")
    print(f"argmin: {rep.argmin}")
    print(f"exact: {'yes' if rep.exact else 'no'}")
    print(f"grid: {rep.grid_denominator}")
    if rep.refined:
        print(f"refined_min: {rep.refined_min:.12g}")
        print("refined_point: " + ",".join(f"{v:.12g}" for v in rep.refined_point))
    print(f"verdict: {rep.verdict}")
    if rep.witness is None:
        print("witness: none at argmin")
    else:
        print(f"witness: k={rep.witness[0]} (Tx^(m-1))_k={_fmt(rep.witness[1])}")
    return 0


def cmd_enumerate(args) -> int:
    rows = quartic3d.enumerate_family(args.family, args.denominator)
    disagree = [r for r in rows if not r.agrees]
    if args.out:
        with open(args.out, "w") as fh:
            quartic3d.write_table(rows, fh)
    else:
        quartic3d.write_table(rows, sys.stdout)
    print(
        f"{args.family}: {len(rows)} rows, {len(rows) - len(disagree)} agree, {len(disagree)} disagree",
        file=sys.stderr if not args.out else sys.stdout,
    )
    for r in disagree:
        print(f"disagree: {r.line()}", file=sys.stderr)
    return 0 if not disagree else 1


def cmd_inequalities(args) -> int:
    passed = 0
    tags = list(identities.InequalityId)
    for tag in tags:
        sc = identities.sign_check(tag, samples=args.samples, seed=args.seed)
        kind = "> 0" if tag.strict else ">= 0"
        parts = [f"{tag.value:<9}", f"residual {kind:<4}", f"min={float(sc.min_value):.6g}"]
        ok = sc.passed
        try:
            lc = identities.equality_locus_check(tag, off_locus=min(args.samples, 10_000), seed=args.seed)
        except ValueError:
            lc = None
        if lc is not None:
            parts.append(
                f"locus zeros {lc.locus_points - len(lc.locus_failures)}/{lc.locus_points}"
                f" off-locus positive {lc.off_locus_points - len(lc.off_locus_failures)}/{lc.off_locus_points}"
            )
            ok = ok and lc.passed
        if not identities.forms_agree(tag):
            parts.append(f"printed forms differ, using {identities.authoritative_form(tag)}")
        parts.append("PASS" if ok else "FAIL")
        passed += ok
        print("  ".join(parts))
    print(f"{passed}/{len(tags)} pass (samples={args.samples}, seed={args.seed})")
    return 0 if passed == len(tags) else 1


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="coposit", description="Copositivity tests for low-order symmetric tensors.")
    p.add_argument("--version", action="version", version="%(prog)s 0.1.0")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="analytic verdict for a tensor file")
    c.add_argument("file")
    c.add_argument("--strict", action="store_true", help="ask for strict copositivity")
    c.add_argument("--oracle", action="store_true", help="also minimize over the simplex")
    c.add_argument("--tol", type=float, default=DEFAULT_TOL, help="oracle tolerance (default %(default)g)")
    c.add_argument("--denominator", type=int, default=DEFAULT_DENOMINATOR, help="oracle lattice denominator")
    c.add_argument("--time", action="store_true", help="print elapsed time (makes output nondeterministic)")
    c.set_defaults(func=cmd_check)

    m = sub.add_parser("minimize", help="lattice minimum over the standard simplex")
    m.add_argument("file")
    m.add_argument("--denominator", type=int, default=DEFAULT_DENOMINATOR)
    m.add_argument(
        "--refine", action=argparse.BooleanOptionalAction, default=True, help="refine around the lattice minimum"
    )
    m.set_defaults(func=cmd_minimize)

    e = sub.add_parser("enumerate", help="truth table of a ±1 family")
    e.add_argument("--family", required=True, choices=sorted(quartic3d.FAMILIES))
    e.add_argument("--out", help="write the table here instead of stdout")
    e.add_argument("--denominator", type=int, default=DEFAULT_DENOMINATOR)
    e.set_defaults(func=cmd_enumerate)

    q = sub.add_parser("inequalities", help="check the ternary quartic inequalities")
    q.add_argument("--samples", type=int, default=100_000)
    q.add_argument("--seed", type=int, default=0)
    q.set_defaults(func=cmd_inequalities)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    for name in ("tol", "denominator", "samples"):
        v = getattr(args, name, None)
        if v is not None and v <= 0:
            print(f"coposit: error: --{name} must be positive", file=sys.stderr)
            return EXIT_INPUT
    try:
        return args.func(args)
    except (TensorFileError, TensorError, ValueError) as exc:
        print(f"coposit: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"coposit: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
