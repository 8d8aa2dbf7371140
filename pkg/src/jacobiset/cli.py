"""Command-line interface.

Exit codes follow one contract across subcommands: 0 when the queried
identity or property holds, 1 when it fails, 2 for usage, parse, or cap
errors, so shell pipelines can assert claims directly.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import freealg, jacobi
from .exactla import bracket_map_matrix, int_kernel_basis, int_rank
from .freealg import (
    MultilinearPoly,
    bracket_identity_latex,
    bracket_identity_text,
    canonical_words,
    expand_bracket_recursive,
    expand_bracket_shuffle,
    poly_to_json_obj,
    poly_to_text,
)
from .perm import PermSet, parse_perm, parse_perm_set

EMIT_DEGREE_CAP = 8


def _print_json(obj) -> None:
    print(json.dumps(obj, indent=2))


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _load_set(args) -> PermSet:
    return parse_perm_set(_read_input(args.file), degree=getattr(args, "degree", None))


def _cmd_emit_identity(args) -> int:
    if not (1 <= args.k and 1 <= args.l and args.k + args.l <= args.n <= EMIT_DEGREE_CAP):
        raise ValueError(
            f"need 1 <= k, 1 <= l, k+l <= n <= {EMIT_DEGREE_CAP}; "
            f"got k={args.k}, l={args.l}, n={args.n}"
        )
    from .perm import jacobi_family

    family = jacobi_family(args.k, args.l, args.n)
    if args.format == "text":
        print(bracket_identity_text(family))
    elif args.format == "latex":
        print(bracket_identity_latex(family))
    else:
        _print_json(
            {
                "k": args.k,
                "l": args.l,
                "n": args.n,
                "permutations": [[v + 1 for v in p] for p in family],
                "identity": bracket_identity_text(family),
            }
        )
    return 0


def _cmd_check(args) -> int:
    ps = _load_set(args)
    if args.mod2:
        residual = jacobi.mod2_residual(ps)
        ok = residual.is_zero()
        claim = "mod-2 bracket identity"
    else:
        residual = freealg.bracket_image(freealg.sum_of_set(ps))
        ok = residual.is_zero()
        claim = "bracket identity"
    report = {
        "claim": claim,
        "degree": ps.degree,
        "size": len(ps),
        "status": "verified" if ok else "falsified",
    }
    if not ok:
        report["residual"] = poly_to_json_obj(residual)
    _print_json(report)
    return 0 if ok else 1


def _cmd_verify_theorem2(args) -> int:
    if not 2 <= args.n <= 6:
        raise ValueError("basis verification runs for degrees 2..6")
    report = jacobi.verify_kernel_basis(args.n)
    _print_json(report.to_json_obj(include_timings=args.timings))
    return 0 if report.all_verified else 1


def _cmd_kernel(args) -> int:
    if not 2 <= args.n <= 5:
        raise ValueError(
            "kernel basis extraction is capped at degree 5 "
            "(the degree-6 rank is available through verify-theorem2 and count)"
        )
    mat = bracket_map_matrix(args.n)
    rank = int_rank(mat)
    words = canonical_words(args.n)
    basis = []
    for vec in int_kernel_basis(mat):
        poly = MultilinearPoly(args.n, {w: c for w, c in zip(words, vec) if c})
        basis.append(poly_to_json_obj(poly))
    _print_json(
        {"n": args.n, "rank": rank, "kernel_rank": len(words) - rank, "basis": basis}
    )
    return 0


def _cmd_count(args) -> int:
    if args.mod2:
        count = jacobi.count_jacobi_mod2(args.n)
    else:
        count, _ = jacobi.enumerate_jacobi(args.n)
    if args.format == "json":
        _print_json({"n": args.n, "mod2": bool(args.mod2), "count": count})
    else:
        print(count)
    return 0


def _cmd_decompose(args) -> int:
    ps = _load_set(args)
    try:
        parts = jacobi.decompose_mod2(ps)
    except jacobi.NotTwoJacobiError as exc:
        _print_json(
            {
                "status": "not-mod2-jacobi",
                "degree": ps.degree,
                "residual": poly_to_json_obj(exc.residual),
            }
        )
        return 1
    _print_json(
        {
            "status": "decomposed",
            "degree": ps.degree,
            "part_count": len(parts),
            "parts": [
                {
                    "k": be.k,
                    "sigma": [v + 1 for v in be.sigma],
                    "perms": [[v + 1 for v in p] for p in be.perms],
                }
                for be in parts
            ],
        }
    )
    return 0


def _cmd_cover_check(args) -> int:
    ps = _load_set(args)
    result = jacobi.find_disjoint_cover(ps)
    _print_json(result.to_json_obj())
    return 0 if result.found else 1


def _cmd_expand(args) -> int:
    sigma = parse_perm(args.perm)
    if args.method == "shuffle":
        poly = expand_bracket_shuffle(sigma)
    else:
        poly = expand_bracket_recursive(sigma)
    if args.format == "json":
        _print_json(poly_to_json_obj(poly))
    else:
        print(poly_to_text(poly))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jacobiset",
        description="Exact constructions and checks for permutation-set bracket identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("emit-identity", help="print the summed-bracket identity of a two-block family")
    p.add_argument("--k", type=int, required=True, help="first block size")
    p.add_argument("--l", type=int, required=True, help="second block size")
    p.add_argument("--n", type=int, required=True, help="ambient degree (k+l <= n <= 8)")
    p.add_argument("--format", choices=("text", "latex", "json"), default="text")
    p.set_defaults(func=_cmd_emit_identity)

    p = sub.add_parser("check", help="test whether a permutation set satisfies the identity")
    p.add_argument("file", metavar="FILE", help="permutation set file, or - for stdin")
    p.add_argument("--mod2", action="store_true", help="test the identity mod 2 instead")
    p.add_argument("--degree", type=int, default=None, help="override the inferred degree")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("verify-theorem2", help="verify the translated one-block kernel basis")
    p.add_argument("--n", type=int, required=True, help="degree (2..6)")
    p.add_argument("--timings", action="store_true", help="include per-check timings (non-reproducible)")
    p.set_defaults(func=_cmd_verify_theorem2)

    p = sub.add_parser("kernel", help="print the integer kernel basis of the bracket map")
    p.add_argument("--n", type=int, required=True, help="degree (2..5)")
    p.set_defaults(func=_cmd_kernel)

    p = sub.add_parser("count", help="count identity-satisfying subsets at a degree")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mod2", action="store_true", help="count mod-2 sets (via kernel rank)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("decompose", help="write a mod-2 set as a symmetric difference of basis sets")
    p.add_argument("file", metavar="FILE", help="permutation set file, or - for stdin")
    p.add_argument("--degree", type=int, default=None)
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("cover-check", help="search for a partition into translated families")
    p.add_argument("file", metavar="FILE", help="permutation set file, or - for stdin")
    p.add_argument("--degree", type=int, default=None)
    p.set_defaults(func=_cmd_cover_check)

    p = sub.add_parser("expand", help="expand one left-normed bracket into words")
    p.add_argument("--perm", required=True, help='permutation, e.g. "1 2 3" or "(1 3 2)"')
    p.add_argument("--method", choices=("recursive", "shuffle"), default="recursive")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=_cmd_expand)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
