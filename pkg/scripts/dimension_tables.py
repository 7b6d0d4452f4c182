"""Graded dimension tables of F(B,N) next to k{B}/I, plus the cofree check.

    python scripts/dimension_tables.py cross-1 --max-weight 8
    python scripts/dimension_tables.py --all --max-weight 5 --max-degree 3
"""

import argparse

from rittva.free_va import PRESETS, check_cofree_iff, jetfree_table


def show(name, max_weight, max_degree):
    spec = PRESETS[name]
    table = jetfree_table(spec, max_weight, max_degree)
    letters = spec.letters
    print(f"# {name}: letters {list(letters)}, N = {[list(r) for r in spec.N]}")
    print("  ".join([*(f"deg_{a}" for a in letters), "weight", "words", "quotient", "agree"]))
    for r in table:
        if not r["basis_words"] and not r["quotient_dim"]:
            continue
        degs = r["grade"]["degrees"]
        cells = [str(degs.get(a, 0)) for a in letters]
        cells += [str(r["grade"]["weight"]), str(r["basis_words"]), str(r["quotient_dim"]), str(r["agree"])]
        print("  ".join(cells))
    res = check_cofree_iff(spec, min(max_weight, 6), max_degree)
    print(f"# cofree condition {spec.satisfies_cofree_condition()}, jet lift equal {res.equal}"
          + ("" if res.equal else f" (first difference at {res.first_discrepancy}, dims {res.dims})"))
    print()


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("preset", nargs="?", choices=sorted(PRESETS))
    ap.add_argument("--all", action="store_true")
    ap.add_argument("--max-weight", type=int, default=6)
    ap.add_argument("--max-degree", type=int)
    args = ap.parse_args()
    if not args.all and not args.preset:
        ap.error("give a preset or --all")
    for name in sorted(PRESETS) if args.all else [args.preset]:
        show(name, args.max_weight, args.max_degree)


if __name__ == "__main__":
    main()
