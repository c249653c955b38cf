"""Command-line front end.

Machine-readable output goes to stdout (JSON or the shared matrix text
format); human notes go to stderr unless --quiet.  Exit codes: 0 success,
1 domain error or failed verification, 2 usage error.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from fractions import Fraction

from . import dimension as dimmod
from . import poset as posetmod
from . import verify as verifymod
from .fields import RATIONALS, FieldSpec, Matrix, format_matrix, mat_rank, parse_matrix
from .patterns import (
    PartialInvolution,
    PartialPermutation,
    enumerate_partial_involutions,
    enumerate_partial_permutations,
    involutions,
)
from .rankcontrol import bruhat_leq, closure_contains, leq_R, orbit_leq

DEFAULT_PRIMES = "2,3,5,7,1009"


def _field_from_flag(text: str) -> FieldSpec:
    if text == "rational":
        return RATIONALS
    try:
        p = int(text)
    except ValueError:
        raise ValueError(f"--field must be 'rational' or a prime, got {text!r}") from None
    return FieldSpec.prime(p)


def _note(args, message: str) -> None:
    if not args.quiet:
        print(message, file=sys.stderr)


def _read_matrix(path: str, field: FieldSpec) -> Matrix:
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read(), field)


def _int_rows(m: Matrix) -> list[list[int]]:
    rows = []
    for i in range(m.rows):
        row = []
        for x in m.row_values(i):
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError(f"pattern entry {x} is not an integer")
                x = x.numerator
            row.append(int(x))
        rows.append(row)
    return rows


def _pattern_for_kind(path: str, kind: str):
    rows = _int_rows(_read_matrix(path, RATIONALS))
    if kind == "symmetric":
        return PartialInvolution.from_matrix(rows)
    if kind == "nonsymmetric":
        return PartialPermutation.from_matrix(rows)
    return dimmod.sigma_from_signed_rows(rows)


def _cmd_enumerate(args) -> int:
    if args.kind == "symmetric":
        pats = [p.matrix_rows() for p in enumerate_partial_involutions(args.n)]
    elif args.kind == "nonsymmetric":
        pats = [p.matrix_rows() for p in enumerate_partial_permutations(args.n)]
    else:
        pats = sorted(
            dimmod.signed_pattern_rows(sigma) for sigma in involutions(args.n)
        )
    _note(args, f"{len(pats)} patterns of size {args.n} ({args.kind})")
    if args.format == "json":
        print(json.dumps({"n": args.n, "kind": args.kind, "patterns": pats},
                         separators=(",", ":")))
    else:
        blocks = []
        for rows in pats:
            body = "\n".join(" ".join(str(x) for x in row) for row in rows)
            blocks.append(f"{args.n} {args.n}\n{body}")
        print("\n\n".join(blocks))
    return 0


def _cmd_rank_control(args) -> int:
    m = _read_matrix(args.input, _field_from_flag(args.field))
    _note(args, f"rank {mat_rank(m)}")
    grid = m.rank_control().grid
    body = "\n".join(" ".join(str(x) for x in row) for row in grid)
    print(f"{m.rows} {m.cols}\n{body}")
    return 0


def _cmd_canonicalize(args) -> int:
    m = _read_matrix(args.input, _field_from_flag(args.field))
    pattern = verifymod.symmetric_canonicalize(m)
    print(format_matrix(pattern.to_matrix()), end="")
    return 0


def _maybe_involution(m: Matrix):
    try:
        return PartialInvolution.from_matrix(_int_rows(m))
    except ValueError:
        return None


def _cmd_compare(args) -> int:
    field = _field_from_flag(args.field)
    left = _read_matrix(args.left, field)
    right = _read_matrix(args.right, field)
    pat_left, pat_right = _maybe_involution(left), _maybe_involution(right)
    if args.kind == "symmetric" and pat_left and pat_right:
        lo = orbit_leq(pat_left, pat_right)
        hi = orbit_leq(pat_right, pat_left)
    elif args.kind == "symmetric" and pat_right:
        # general matrix against a pattern: closure membership
        lo = closure_contains(pat_right, left)
        hi = leq_R(right.rank_control(), left.rank_control())
    else:
        lo = leq_R(left.rank_control(), right.rank_control())
        hi = leq_R(right.rank_control(), left.rank_control())
    if lo and hi:
        print("=")
    elif lo:
        print("<")
    elif hi:
        print(">")
    else:
        print("incomparable")
    return 0


def _cmd_dim(args) -> int:
    pattern = _pattern_for_kind(args.input, args.kind)
    if args.kind == "symmetric":
        report = dimmod.dim_symmetric(pattern)
    elif args.kind == "nonsymmetric":
        report = dimmod.dim_nonsymmetric(pattern)
    else:
        report = dimmod.dim_antisymmetric(pattern)
    print(report.to_json())
    return 0


def _cmd_poset(args) -> int:
    p = posetmod.build_poset(args.n, args.kind)
    if args.regular:
        p = posetmod.regular_subposet(p)
    graded = posetmod.check_graded(p)
    if not graded.ok:
        _note(args, str(graded))
        return 1
    text = posetmod.export(p, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        _note(args, f"wrote {len(p.elements)} elements to {args.out}")
    else:
        print(text, end="" if text.endswith("\n") else "\n")
    return 0


def _primes_list(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok]


def _cmd_verify_invariance(args) -> int:
    primes = _primes_list(args.primes)
    checks = []
    ok = True
    expect_failures = args.general
    for prime in primes:
        pats = enumerate_partial_involutions(args.n)
        per = -(-args.trials // len(pats))  # ceil: at least args.trials in total
        failures = []
        trials = 0
        for k, pi in enumerate(pats):
            report = verifymod.invariance_fuzz(
                pi, prime, per, args.seed + k,
                transform="general" if args.general else "borel",
            )
            trials += report.trials
            failures.extend(report.failures)
        for f in failures:
            _note(args, f.describe())
        checks.append(
            {"prime": prime, "trials": trials, "failures": len(failures)}
        )
        if expect_failures:
            ok = ok and bool(failures)
        else:
            ok = ok and not failures
        lu = verifymod.lu_invariance_fuzz(args.n, prime, max(1, args.trials // 10),
                                          args.seed)
        checks[-1]["lu_trials"] = lu.trials
        checks[-1]["lu_failures"] = len(lu.failures)
        if not expect_failures:
            ok = ok and lu.ok
    print(json.dumps({"mode": "general" if args.general else "borel",
                      "checks": checks, "ok": ok}, separators=(",", ":")))
    return 0 if ok else 1


def _cmd_verify_point_count(args) -> int:
    primes = _primes_list(args.primes)
    if args.kind == "symmetric":
        patterns = enumerate_partial_involutions(args.n)
    elif args.kind == "nonsymmetric":
        patterns = enumerate_partial_permutations(args.n)
    else:
        patterns = involutions(args.n)
    ok = True
    for pattern in patterns:
        report = verifymod.dimension_fit(pattern, args.kind, primes)
        print(report.to_json())
        good = report.witness_ok and report.fitted_degree == report.predicted_dim
        if not good:
            _note(args, f"degree mismatch or failed witness: {report.to_json()}")
            good = report.ratio_ok
        ok = ok and good
    return 0 if ok else 1


def _cmd_verify_bruhat(args) -> int:
    oracle = verifymod.bruhat_oracle(args.n)
    mismatches = 0
    total = 0
    perms = sorted(itertools.permutations(range(args.n)))
    pats = {p: PartialPermutation.from_permutation(p) for p in perms}
    for a in perms:
        for b in perms:
            total += 1
            if bruhat_leq(pats[a], pats[b]) != ((a, b) in oracle):
                mismatches += 1
    print(json.dumps({"n": args.n, "pairs": total, "mismatches": mismatches},
                     separators=(",", ":")))
    return 0 if mismatches == 0 else 1


def _cmd_verify_incitti(args) -> int:
    mismatches = 0
    total = 0
    for n in range(1, args.n + 1):
        for pi in enumerate_partial_involutions(n):
            total += 1
            if dimmod.d_count(pi) != dimmod.incitti_d(pi):
                mismatches += 1
    print(json.dumps({"max_n": args.n, "patterns": total,
                      "mismatches": mismatches}, separators=(",", ":")))
    return 0 if mismatches == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="borelorbits",
        description="Congruence Borel-orbit posets of symmetric matrices",
    )
    parser.add_argument("--quiet", action="store_true",
                        help="suppress human-readable notes on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    kinds = ("symmetric", "nonsymmetric", "antisymmetric")

    p = sub.add_parser("enumerate", help="list all patterns of one size")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kind", choices=kinds, default="symmetric")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("rank-control", help="rank-control grid of a matrix")
    p.add_argument("--input", required=True)
    p.add_argument("--field", default="rational")
    p.set_defaults(func=_cmd_rank_control)

    p = sub.add_parser("canonicalize",
                       help="partial involution indexing the orbit of a symmetric matrix")
    p.add_argument("--input", required=True)
    p.add_argument("--field", default="rational")
    p.set_defaults(func=_cmd_canonicalize)

    p = sub.add_parser("compare", help="compare two matrices in the closure order")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--kind", choices=kinds, default="symmetric")
    p.add_argument("--field", default="rational")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("poset", help="build and export an orbit poset")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kind", choices=kinds, default="symmetric")
    p.add_argument("--format", choices=("dot", "json"), default="json")
    p.add_argument("--out")
    p.add_argument("--regular", action="store_true",
                   help="restrict to invertible patterns (symmetric only)")
    p.set_defaults(func=_cmd_poset)

    p = sub.add_parser("dim", help="dimension report for a pattern")
    p.add_argument("--input", required=True)
    p.add_argument("--kind", choices=kinds, default="symmetric")
    p.set_defaults(func=_cmd_dim)

    v = sub.add_parser("verify", help="independent verification oracles")
    vsub = v.add_subparsers(dest="check", required=True)

    p = vsub.add_parser("invariance", help="rank-control invariance fuzzing")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--primes", default=DEFAULT_PRIMES)
    p.add_argument("--general", action="store_true",
                   help="negative control with non-triangular transforms")
    p.set_defaults(func=_cmd_verify_invariance)

    p = vsub.add_parser("point-count", help="dimension check by point counting")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kind", choices=kinds, default="symmetric")
    p.add_argument("--primes", default="2,3,5,7,11,13,17,19")
    p.set_defaults(func=_cmd_verify_point_count)

    p = vsub.add_parser("bruhat", help="rank-control order vs covering-relation oracle")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_verify_bruhat)

    p = vsub.add_parser("incitti", help="diagonal count vs core-decomposition formula")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_verify_incitti)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
