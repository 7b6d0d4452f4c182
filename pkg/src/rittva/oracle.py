"""Brute-force reference computations, independent of the slice kernel.

Only :mod:`rittva.diffalg` arithmetic is shared.  Products m * d^n(g) are
built from an itertools enumeration of monomials, and the system
``sum_r c_r * row_r = f`` is solved by dense Gauss-Jordan over Fraction.
"""

from __future__ import annotations

from itertools import combinations_with_replacement, product

from .diffalg import DiffPoly, DiffRing, Monomial, VarId, derive_n


def brute_monomials(ring: DiffRing, degrees: dict, weight: int) -> list[Monomial]:
    """Monomials with the given per-family degrees and weight, by filtering."""
    per_family = []
    for fam in sorted(degrees):
        d = degrees[fam]
        per_family.append([(fam, c) for c in combinations_with_replacement(range(weight + 1), d)])
    out = []
    for choice in product(*per_family):
        if sum(sum(c) for _, c in choice) != weight:
            continue
        exps: dict = {}
        for fam, c in choice:
            for jet in c:
                v = VarId(fam, jet)
                exps[v] = exps.get(v, 0) + 1
        out.append(Monomial(exps))
    return out


def _grade(f: DiffPoly):
    (deg, w), = f.bigrades()
    return dict(deg), w


def brute_products(f: DiffPoly, gens: list[DiffPoly]) -> list[DiffPoly]:
    degrees, weight = _grade(f)
    ring = f.ring
    rows = []
    for g in gens:
        gdeg, gw = _grade(g)
        rest = {fam: degrees.get(fam, 0) - gdeg.get(fam, 0) for fam in set(degrees) | set(gdeg)}
        if any(d < 0 for d in rest.values()):
            continue
        rest = {fam: d for fam, d in rest.items() if d}
        for n in range(weight - gw + 1):
            dg = derive_n(g, n)
            for m in brute_monomials(ring, rest, weight - gw - n):
                rows.append(ring.monomial(m) * dg)
    return rows


def solve_in_span(f: DiffPoly, rows: list[DiffPoly]) -> bool:
    """Is f a rational combination of rows?  Dense elimination on [rows^T | f]."""
    cols = sorted({m for r in rows for m in r.terms} | set(f.terms), key=Monomial.sort_key)
    # one equation per monomial, one unknown per row
    mat = [[r.coeff(m) for r in rows] + [f.coeff(m)] for m in cols]
    nunk = len(rows)
    piv_row = 0
    for col in range(nunk):
        sel = next((r for r in range(piv_row, len(mat)) if mat[r][col] != 0), None)
        if sel is None:
            continue
        mat[piv_row], mat[sel] = mat[sel], mat[piv_row]
        p = mat[piv_row][col]
        mat[piv_row] = [x / p for x in mat[piv_row]]
        for r in range(len(mat)):
            if r != piv_row and mat[r][col] != 0:
                factor = mat[r][col]
                mat[r] = [a - factor * b for a, b in zip(mat[r], mat[piv_row])]
        piv_row += 1
    # inconsistent iff some row reads 0 = nonzero
    return all(any(x != 0 for x in row[:nunk]) or row[nunk] == 0 for row in mat)


def brute_is_member(f: DiffPoly, gens: list[DiffPoly]) -> bool:
    return solve_in_span(f, brute_products(f, gens))


def brute_margin_count(n: int, j: int) -> int:
    """Count n x n 0-1 matrices with all line sums j by trying all 2^(n*n)."""
    count = 0
    for bits in product((0, 1), repeat=n * n):
        rows_ok = all(sum(bits[r * n:(r + 1) * n]) == j for r in range(n))
        if rows_ok and all(sum(bits[r * n + c] for r in range(n)) == j for c in range(n)):
            count += 1
    return count


def brute_poisson_dim(letters, N, degrees: dict) -> int:
    """dim of the multidegree piece of k[B]/(ab : N(a,b) <= -1) by listing monomials."""
    # the piece has exactly one monomial; it dies iff divisible by a forbidden product
    mono = [a for a in letters for _ in range(degrees.get(a, 0))]
    idx = {a: x for x, a in enumerate(letters)}
    for s in range(len(mono)):
        for t in range(s + 1, len(mono)):
            if N[idx[mono[s]]][idx[mono[t]]] <= -1:
                return 0
    return 1

