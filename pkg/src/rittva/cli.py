"""Command-line front end: ``rittva <command> [options]``.

Records go to stdout as JSON Lines (or CSV / plain text), diagnostics to
stderr.  Exit status: 0 success, 1 verification mismatch, 2 usage error,
3 resource ceiling exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import free_va, lattice_residue, nilpotency, slices, verify
from .diffalg import DiffRing
from .nilpotency import SearchCapExceeded
from .slices import ResourceExceeded

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=["json", "csv", "human"], default="json")
    common.add_argument("--ceiling", type=_positive, default=None,
                        help=f"max slice basis size (default ${slices.CEILING_ENV} or {slices.DEFAULT_CEILING})")

    parser = argparse.ArgumentParser(prog="rittva", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    p = add("q-single", "least q with T_i^q in [T_0^p]")
    p.add_argument("--i", type=_nonneg, required=True)
    p.add_argument("--p", type=_positive, required=True)
    p.add_argument("--search-cap", type=_positive)
    p.add_argument("--fast", action="store_true")

    p = add("q-pair", "least q with (T_i U_j)^q in [T_0 U_0]")
    p.add_argument("--i", type=_nonneg, required=True)
    p.add_argument("--j", type=_nonneg, required=True)
    p.add_argument("--search-cap", type=_positive)
    p.add_argument("--fast", action="store_true")

    p = add("member", "decide f in [gens] for homogeneous f")
    p.add_argument("--f", required=True)
    p.add_argument("--gen", action="append", default=[])
    p.add_argument("--families", default="T,U")

    p = add("hilbert", "graded dimensions of k{B}/[gens]")
    p.add_argument("--gen", action="append", default=[])
    p.add_argument("--families", default="T")
    p.add_argument("--max-weight", type=_nonneg, required=True)
    p.add_argument("--max-degree", type=_nonneg, required=True)

    for name, help_ in [
        ("free-basis", "basis word counts of F(B,N) per grade"),
        ("jetfree-check", "F(B,N) vs k{B}/I grade by grade"),
        ("cofree-check", "k{B}/I vs the jet lift of the Zhu algebra"),
        ("zhu-check", "Zhu Poisson algebra dimensions"),
    ]:
        p = add(name, help_)
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--spec", help="JSON file {letters: [...], N: [[...]]}")
        src.add_argument("--preset", choices=sorted(free_va.PRESETS))
        if name != "zhu-check":
            p.add_argument("--max-weight", type=_nonneg, default=6)
        p.add_argument("--max-degree", type=_nonneg)

    p = add("matrices", "P_{n,j}: n x n 0-1 matrices with line sums j")
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--j", type=_nonneg, required=True)

    p = add("residue", "residue constant vs P_{i+j,j}")
    p.add_argument("--i", type=_nonneg, required=True)
    p.add_argument("--j", type=_nonneg, required=True)
    p.add_argument("--max-n", type=_positive)

    p = add("rittab-check", "residue nonvanishing and q(i,j) = i+j+1 together")
    p.add_argument("--i", type=_nonneg, required=True)
    p.add_argument("--j", type=_nonneg, required=True)
    p.add_argument("--max-n", type=_positive)

    p = add("verify-all", "run the whole verification grid")
    p.add_argument("--fast", action="store_true", help="only test predicted-1 and predicted per query")
    return parser


# -- output ---------------------------------------------------------------------


def _flatten(rec: dict) -> dict:
    return {k: json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v for k, v in rec.items()}


def emit(records: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        for r in records:
            out.write(json.dumps(r) + "\n")
    elif fmt == "csv":
        if not records:
            return
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(records[0]), lineterminator="\n")
        writer.writeheader()
        for r in records:
            writer.writerow(_flatten(r))
        out.write(buf.getvalue())
    else:
        for r in records:
            out.write("  ".join(f"{k}={v}" for k, v in _flatten(r).items()) + "\n")


# -- commands --------------------------------------------------------------------


def _spec(args) -> free_va.LocalitySpec:
    spec = free_va.PRESETS[args.preset] if args.preset else free_va.LocalitySpec.load(args.spec)
    spec.check_gates()
    return spec


def _ring(args) -> DiffRing:
    return DiffRing([f.strip() for f in args.families.split(",") if f.strip()])


def _grade_row(g: slices.Grade, letters) -> dict:
    row = {f"deg_{a}": g.degree(a) for a in letters}
    row["weight"] = g.weight
    return row


def run(args, out=sys.stdout) -> int:
    cmd = args.command
    ceiling = args.ceiling
    ok = True
    records: list[dict] = []

    if cmd in ("q-single", "q-pair"):
        if cmd == "q-single":
            ans = nilpotency.q_single(args.i, args.p, args.search_cap, args.fast, ceiling)
        else:
            ans = nilpotency.q_pair(args.i, args.j, args.search_cap, args.fast, ceiling)
        records.append(ans.to_dict())
        ok = ans.agree

    elif cmd == "member":
        R = _ring(args)
        f = R.parse(args.f)
        gens = [R.parse(g) for g in args.gen]
        sl = slices.ideal_slice(R, gens, slices.grade_of(f), ceiling)
        records.append({"f": str(f), "gens": [str(g) for g in gens], "member": sl.contains(f), **sl.report()})

    elif cmd == "hilbert":
        R = _ring(args)
        gens = [R.parse(g) for g in args.gen]
        for g in slices.grades_up_to(R.families, args.max_weight, args.max_degree):
            rep = slices.slice_report(R, gens, g, ceiling)
            records.append({**_grade_row(g, R.families), "basis_size": rep["basis_size"],
                            "ideal_rank": rep["ideal_rank"], "quotient_dim": rep["quotient_dim"]})

    elif cmd == "free-basis":
        spec = _spec(args)
        counts = free_va.enumerate_basis(spec, args.max_weight, args.max_degree)
        for g in sorted(counts, key=lambda g: g.sort_key(spec.letters)):
            records.append({**_grade_row(g, spec.letters), "count": counts[g]})

    elif cmd == "jetfree-check":
        spec = _spec(args)
        for r in free_va.jetfree_table(spec, args.max_weight, args.max_degree, ceiling):
            g = slices.Grade.of(r["grade"]["degrees"], r["grade"]["weight"])
            records.append({**_grade_row(g, spec.letters), "basis_words": r["basis_words"],
                            "quotient_dim": r["quotient_dim"], "agree": r["agree"]})
            ok = ok and r["agree"]

    elif cmd == "cofree-check":
        spec = _spec(args)
        res = free_va.check_cofree_iff(spec, args.max_weight, args.max_degree, ceiling)
        expected = spec.satisfies_cofree_condition()
        records.append({"spec": spec.to_dict(), "condition": expected, **res.to_dict(),
                        "consistent": res.equal == expected})
        ok = res.equal == expected

    elif cmd == "zhu-check":
        spec = _spec(args)
        table = free_va.zhu_poisson_dims(spec, args.max_degree if args.max_degree is not None else 6, ceiling)
        for r in table.rows:
            records.append({**{f"deg_{a}": d for a, d in r["degrees"].items()},
                            "rhs": r["rhs"], "words": r["words"], "jet_weight0": r["jet_weight0"]})
        ok = table.agree

    elif cmd == "matrices":
        if args.j > args.n:
            raise UsageError(f"need j <= n, got n={args.n}, j={args.j}")
        records.append({"n": args.n, "j": args.j, "value": lattice_residue.count_margin_matrices(args.n, args.j)})

    elif cmd == "residue":
        rec = lattice_residue.residue_record(args.i, args.j, args.max_n)
        records.append(rec)
        ok = rec["agree"] and rec["nonzero"]

    elif cmd == "rittab-check":
        rec = lattice_residue.residue_record(args.i, args.j, args.max_n)
        ans = nilpotency.q_pair(args.i, args.j, ceiling=ceiling)
        passed = rec["nonzero"] and ans.found_index == args.i + args.j + 1
        records.append({"i": args.i, "j": args.j, "coefficient": rec["coefficient"],
                        "found": ans.found_index, "predicted": ans.predicted_index, "passed": passed})
        ok = passed

    elif cmd == "verify-all":
        return _verify_all(args, out)

    emit(records, args.output, out)
    return EXIT_OK if ok else EXIT_MISMATCH


def _summary(crit: verify.Criterion) -> dict:
    return {"criterion": crit.number, "name": crit.name, "passed": crit.passed,
            "resource_failure": crit.resource_failure, "cells": len(crit.records),
            "failing": [r for r in crit.records if not r.get("ok", True)]}


def _verify_all(args, out) -> int:
    results = []
    for crit in verify.all_criteria(fast=args.fast, ceiling=args.ceiling):
        results.append(crit)
        if args.output == "human":
            out.write(crit.line() + "\n")
        elif args.output == "json":
            emit([_summary(crit)], "json", out)
        out.flush()
    if args.output == "csv":
        emit([_summary(c) for c in results], "csv", out)
    passed = sum(c.passed for c in results)
    print(f"verify-all: {passed}/{len(results)} criteria passed", file=sys.stderr)
    if any(c.resource_failure for c in results):
        return EXIT_RESOURCE
    return EXIT_OK if passed == len(results) else EXIT_MISMATCH


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with status 2 on bad usage
    try:
        return run(args)
    except ResourceExceeded as exc:
        print(f"error: resource-exceeded: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except SearchCapExceeded as exc:
        print(f"error: search-cap-exceeded: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (UsageError, ValueError, OSError, KeyError) as exc:
        print(f"error: usage: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
