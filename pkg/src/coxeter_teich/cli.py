"""Command-line front end.

Exit status: 0 on success, 1 when the mathematics fails (inexact division,
no real root, constant specialization, oracle mismatch), 2 for bad input or
usage.  Diagnostics always go to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence, TextIO

from .an_series import an_closed_form, path_tree
from .laurent import (
    LaurentPoly,
    NoRealRoot,
    NonExactDivision,
    SubstitutionError,
    equivalent_up_to_units,
    format_text,
    normalize,
    parse_poly,
    substitute,
)
from .plane_tree import PlaneTree, PlaneTreeError, read_plane_tree
from .teich import (
    DegenerateClass,
    TeichResult,
    dilatation,
    edge_charpoly,
    normalized_dilatation,
    teichmuller_polynomial,
)

TOL_ENV = "COXETER_TEICH_TOL"
DEFAULT_TOL = 1e-10

PRESETS = {"a-series": "x0=y0*y1^-1,u=y1"}


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# polynomial output formats
# ---------------------------------------------------------------------------


def format_polynomial(p: LaurentPoly, fmt: str = "text") -> str:
    """Render ``p`` as canonical text or as newline-delimited JSON records.

    The structured form starts with a ``{"variables": [...]}`` header line,
    followed by one ``{"exponents": [...], "coeff": n}`` line per term in
    graded-lex descending order.
    """
    if fmt == "text":
        return format_text(p)
    if fmt != "structured":
        raise ValueError(f"unknown format {fmt!r}")
    lines = [json.dumps({"variables": list(p.variables)})]
    for e, c in p.sorted_terms():
        lines.append(json.dumps({"exponents": list(e), "coeff": c}))
    return "\n".join(lines)


def parse_structured(text: str) -> LaurentPoly:
    """Inverse of the structured form of :func:`format_polynomial`."""
    records = [json.loads(line) for line in text.splitlines() if line.strip()]
    if not records or "variables" not in records[0]:
        raise ValueError("structured polynomial needs a variables header")
    variables = tuple(records[0]["variables"])
    terms: dict[tuple[int, ...], int] = {}
    for rec in records[1:]:
        e = tuple(int(x) for x in rec["exponents"])
        if len(e) != len(variables):
            raise ValueError(f"exponent vector {list(e)} does not match {len(variables)} variables")
        terms[e] = terms.get(e, 0) + int(rec["coeff"])
    return LaurentPoly(variables, terms)


# ---------------------------------------------------------------------------
# substitution maps
# ---------------------------------------------------------------------------


def parse_substitution(
    text_map: str, old_variables: Sequence[str]
) -> tuple[dict[str, LaurentPoly], tuple[str, ...]]:
    """Parse ``var=monomial,...`` (or a preset name) into a map and new variable names.

    New names are taken from the right-hand sides in order of appearance;
    unmapped old variables keep their names.
    """
    text = PRESETS.get(text_map, text_map)
    pairs = []
    for chunk in text.split(","):
        if not chunk.strip():
            continue
        if chunk.count("=") != 1:
            raise SubstitutionError(f"expected var=monomial, got {chunk.strip()!r}")
        lhs, rhs = (x.strip() for x in chunk.split("="))
        if lhs not in old_variables:
            raise SubstitutionError(f"{lhs!r} is not one of {', '.join(old_variables)}")
        try:
            img = parse_poly(rhs)
        except ValueError as exc:
            raise SubstitutionError(str(exc)) from None
        pairs.append((lhs, img))
    if not pairs:
        raise SubstitutionError("empty substitution")
    new: list[str] = []
    for _, img in pairs:
        for v in img.variables:
            if v not in new:
                new.append(v)
    mapped = {k for k, _ in pairs}
    for v in old_variables:
        if v not in mapped and v not in new:
            new.append(v)
    new_vars = tuple(new)
    mapping = {k: img.embed(new_vars) for k, img in pairs}
    return mapping, new_vars


def apply_substitution(p: LaurentPoly, text_map: str | None) -> LaurentPoly:
    if text_map is None:
        return p
    mapping, new_vars = parse_substitution(text_map, p.variables)
    return substitute(p, mapping, new_vars)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _load(path: str, err: TextIO) -> PlaneTree:
    tree = read_plane_tree(path)
    if len(tree) <= 2:
        print(f"warning: {path}: trees with fewer than three vertices are not pseudo-Anosov",
              file=err)
    return tree


def _theta(result: TeichResult, args) -> LaurentPoly:
    p = apply_substitution(result.raw, args.subst)
    return p if args.raw else normalize(p)


def _cmd_compute(args, out, err) -> int:
    result = teichmuller_polynomial(_load(args.tree, err), basepoint=args.basepoint)
    print(format_polynomial(_theta(result, args), args.format), file=out)
    return 0


def _parse_alpha(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(",", " ").split())
    except ValueError:
        raise UsageError(f"--alpha expects integers, got {text!r}") from None


def _cmd_dilatation(args, out, err) -> int:
    tree = _load(args.tree, err)
    result = teichmuller_polynomial(tree)
    alpha = None if args.alpha is None else _parse_alpha(args.alpha)
    if alpha is not None and len(alpha) != len(result.variables):
        raise UsageError(
            f"--alpha needs {len(result.variables)} entries ({', '.join(result.variables)})"
        )
    lam = dilatation(result, alpha, args.tol)
    print(f"lambda = {lam:.12g}", file=out)
    fiber = alpha is None or alpha == (0,) * result.rank + (1,)
    if not fiber:
        print("warning: normalized dilatation is only computed for the fiber class", file=err)
    elif result.n_vertices <= 1:
        print("warning: normalized dilatation skipped for a degenerate tree", file=err)
    else:
        print(f"L = {normalized_dilatation(result, None, args.tol):.12g}", file=out)
    return 0


def _cmd_charpoly(args, out, err) -> int:
    p = edge_charpoly(_load(args.tree, err))
    print(format_polynomial(p, args.format), file=out)
    return 0


def _cmd_an(args, out, err) -> int:
    if args.n < 3 or args.n % 2 == 0:
        raise UsageError(f"n must be odd and at least 3, got {args.n}")
    result = an_closed_form(args.n)
    print(format_polynomial(_theta(result, args), args.format), file=out)
    if args.check:
        ref = teichmuller_polynomial(path_tree(args.n))
        if not equivalent_up_to_units(ref.raw, result.raw):
            print(f"error: closed form disagrees with the general construction for A_{args.n}",
                  file=err)
            print(f"general: {format_text(ref.theta)}", file=err)
            return 1
        print(f"check: closed form agrees with the general construction for A_{args.n}",
              file=err)
    return 0


def _cmd_compare(args, out, err) -> int:
    r1 = teichmuller_polynomial(_load(args.tree1, err))
    r2 = teichmuller_polynomial(_load(args.tree2, err))
    p1 = normalize(apply_substitution(r1.raw, args.subst))
    p2 = normalize(apply_substitution(r2.raw, args.subst))
    same = p1.variables == p2.variables and equivalent_up_to_units(p1, p2, allow_inversion=True)
    print("EQUIVALENT" if same else "DISTINCT", file=out)
    print(f"{args.tree1}: {format_text(p1)}", file=out)
    print(f"{args.tree2}: {format_text(p2)}", file=out)
    return 0


def _positive_float(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not x > 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return x


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coxeter-teich",
        description="Teichmüller polynomials of alternating-sign Coxeter links of plane trees.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def poly_opts(p, subst=True):
        if subst:
            p.add_argument("--subst", metavar="MAP",
                           help="monomial change of variables, e.g. 'x0=y0*y1^-1,u=y1', "
                                f"or a preset ({', '.join(PRESETS)})")
            p.add_argument("--raw", action="store_true",
                           help="print the quotient as computed, without normalizing")
        p.add_argument("--format", choices=("text", "structured"), default="text")

    p = sub.add_parser("compute", help="print the Teichmüller polynomial of a tree")
    p.add_argument("tree")
    p.add_argument("--basepoint", type=int, default=None, help="crossing index of the basepoint")
    poly_opts(p)
    p.set_defaults(func=_cmd_compute)

    p = sub.add_parser("dilatation", help="print the dilatation and normalized dilatation")
    p.add_argument("tree")
    p.add_argument("--alpha", help="class as integers on (x0, ..., u); default: fiber class")
    p.add_argument("--tol", type=_positive_float, default=None,
                   help=f"root tolerance (default {DEFAULT_TOL:g}, or ${TOL_ENV})")
    p.set_defaults(func=_cmd_dilatation)

    p = sub.add_parser("charpoly", help="print det(uI - Ta*Tb) on the train-track edge space")
    p.add_argument("tree")
    poly_opts(p, subst=False)
    p.set_defaults(func=_cmd_charpoly)

    p = sub.add_parser("an", help="closed-form polynomial of the path A_n (n odd)")
    p.add_argument("n", type=int)
    p.add_argument("--check", action="store_true",
                   help="compare against the general construction")
    poly_opts(p)
    p.set_defaults(func=_cmd_an)

    p = sub.add_parser("compare", help="decide whether two trees have equivalent polynomials")
    p.add_argument("tree1")
    p.add_argument("tree2")
    p.add_argument("--subst", metavar="MAP", help="substitution applied to both polynomials")
    p.set_defaults(func=_cmd_compare)
    return parser


def _default_tol() -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return DEFAULT_TOL
    try:
        return _positive_float(raw)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(f"${TOL_ENV}: {exc}") from None


def run_cli(argv: Sequence[str] | None = None, out: TextIO | None = None,
            err: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if getattr(args, "tol", "absent") is None:
            args.tol = _default_tol()
        return args.func(args, out, err)
    except PlaneTreeError as exc:
        print(f"error: {exc}", file=err)
        return 2
    except (OSError, UsageError, SubstitutionError) as exc:
        print(f"error: {exc}", file=err)
        return 2
    except (NonExactDivision, NoRealRoot, DegenerateClass) as exc:
        print(f"error: {exc}", file=err)
        return 1


def main() -> None:
    sys.exit(run_cli())
