"""Command-line driver: ``evoclass verify|enumerate|isocheck|report``."""

from __future__ import annotations

import argparse
import json
import sys

from . import catalog, classify
from .algebra import load_algebra
from .cocycles import Unsupported
from .fields import FieldError, Q, parse_field

EXIT_PASS, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


def _emit(payload, text, fmt):
    if fmt == "json":
        json.dump(payload, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")
    else:
        sys.stdout.write(text)


def cmd_verify(args, config) -> int:
    if not 1 <= args.dim <= 5:
        raise ValueError("dimension must be between 1 and 5")
    rep = classify.verify_dim(args.dim, config, with_aut=args.aut)
    _emit(rep, classify.format_verify(rep), config.fmt)
    return EXIT_PASS if rep["pass"] else EXIT_MISMATCH


def cmd_enumerate(args, config) -> int:
    if not config.field.finite:
        raise ValueError("enumeration needs a finite field (fp:P or fp2:P)")
    base = catalog.get(args.base, field=config.field)
    result = classify.enumerate_extensions(base, args.ext, config.budget, catalog.normalise_name(args.base))
    if base.dim + args.ext <= 5:
        classify.match_catalog(result, base.dim + args.ext)
    lines = [f"{result.base} + {args.ext} over {config.field.name}: "
             f"{result.admissible} admissible subspaces, {len(result.buckets)} orbits"]
    F = config.field
    for i, b in enumerate(result.buckets):
        thetas = ", ".join(classify._format_vector(F, t) for t in b.thetas)
        tag = f"  [{', '.join(b.matches)}]" if b.matches else ""
        lines.append(f"  #{i}: theta=({thetas}) orbit={len(b.subspaces)}{tag}")
        lines.append(f"      {b.algebra.table()}")
    if result.partial:
        lines.append(f"PARTIAL: {result.message}")
    _emit(result.to_json(), "\n".join(lines) + "\n", config.fmt)
    return EXIT_USAGE if result.partial else EXIT_PASS


def cmd_isocheck(args, config) -> int:
    A, B = load_algebra(args.a), load_algebra(args.b)
    verdict = classify.isocheck(A, B, config.budget)
    lines = [verdict.status]
    if verdict.invariant:
        lines.append(f"invariant: {verdict.invariant}")
    if verdict.values:
        lines.append(f"values: {verdict.values[0]} vs {verdict.values[1]}")
    if verdict.witness:
        lines.append("witness (columns are images of e_i):")
        lines += ["  " + " ".join(A.field.format(x) for x in row) for row in verdict.witness]
    if verdict.detail:
        lines.append(verdict.detail)
    _emit(verdict.to_json(A.field), "\n".join(lines) + "\n", config.fmt)
    return {classify.ISOMORPHIC: EXIT_PASS, classify.NON_ISOMORPHIC: EXIT_MISMATCH}.get(
        verdict.status, EXIT_USAGE)


def cmd_report(args, config) -> int:
    txt, js = classify.write_report(args.dim, args.out)
    print(f"wrote {txt}\nwrote {js}")
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="evoclass", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--budget", type=int, help="search node budget (default: $EVOCLASS_BUDGET)")
    common.add_argument("--seed", type=int, default=0)
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="check catalog entries of one dimension")
    v.add_argument("--dim", type=int, required=True)
    v.add_argument("--field", default="q")
    v.add_argument("--aut", action="store_true", help="also count automorphism families")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("enumerate", parents=[common], help="orbit representatives of extensions")
    e.add_argument("--base", required=True)
    e.add_argument("--ext", type=int, required=True)
    e.add_argument("--field", required=True)
    e.set_defaults(func=cmd_enumerate)

    i = sub.add_parser("isocheck", parents=[common], help="decide isomorphism of two algebra files")
    i.add_argument("a")
    i.add_argument("b")
    i.set_defaults(func=cmd_isocheck, field=None)

    r = sub.add_parser("report", parents=[common], help="write the classification table")
    r.add_argument("--dim", type=int, default=5)
    r.add_argument("-o", "--out", default="out")
    r.set_defaults(func=cmd_report, field=None)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        field = parse_field(args.field) if args.field else Q
        budget = args.budget if args.budget is not None else classify.default_budget()
        config = classify.RunConfig(field=field, dim=getattr(args, "dim", None), budget=budget,
                                    fmt=args.format, seed=args.seed)
        return args.func(args, config)
    except (KeyError, FieldError, ValueError, OSError, Unsupported) as exc:
        print(f"evoclass: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
