"""Residue constants next to the 0-1 matrix counts P_{n,j}.

    python scripts/residue_table.py --max-sum 6
"""

import argparse

from rittva.lattice_residue import count_margin_matrices, residue_record


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-sum", type=int, default=5)
    args = ap.parse_args()

    print("P_{n,j}:")
    for n in range(args.max_sum + 1):
        print(f"  n={n}: " + " ".join(str(count_margin_matrices(n, j)) for j in range(n + 1)))
    print("i j coefficient P agree")
    for s in range(args.max_sum + 1):
        for j in range(s + 1):
            r = residue_record(s - j, j, max_n=max(7, s))
            print(r["i"], r["j"], r["coefficient"], r["matrix_count"], r["agree"])


if __name__ == "__main__":
    main()
