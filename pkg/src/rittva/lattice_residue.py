"""Residue constants behind the nonvanishing of (e^a(-i-1) e^b(-j-1))^n |0>.

After the weight reduction, the constant c is (up to the cocycle sign) the
coefficient of prod_l z_l^{-j} prod_k w_k^{j} in

    prod_{k,l=1}^{n} (1 - w_k / z_l),      n = i + j,

which counts n x n 0-1 matrices with all line sums equal to j.  Both sides
are computed here by unrelated algorithms: :func:`residue_coefficient`
expands the product, :func:`count_margin_matrices` runs a column DP.
"""

from __future__ import annotations

from collections import Counter
from math import comb
from typing import Optional

from .slices import ResourceExceeded

DEFAULT_MAX_N = 7


def _check_nj(n: int, j: int) -> None:
    if n < 0 or not 0 <= j <= n:
        raise ValueError(f"need 0 <= j <= n, got n={n}, j={j}")


def count_margin_matrices(n: int, j: int) -> int:
    """Number of n x n 0-1 matrices with every row and column sum equal to j.

    Columns are filled one at a time; the state is the sorted multiset of
    remaining row capacities, so rows with equal capacity are interchangeable.
    """
    _check_nj(n, j)
    memo: dict[tuple, int] = {}

    def fill(caps: tuple, cols_left: int) -> int:
        if cols_left == 0:
            return 1 if not any(caps) else 0
        if sum(caps) != j * cols_left:
            return 0
        key = (caps, cols_left)
        if key in memo:
            return memo[key]
        groups = sorted(Counter(c for c in caps if c).items())
        zeros = caps.count(0)
        total = 0

        def choose(g: int, need: int, ways: int, nxt: list):
            nonlocal total
            if g == len(groups):
                if need == 0:
                    state = tuple(sorted(nxt + [0] * zeros))
                    total += ways * fill(state, cols_left - 1)
                return
            cap, cnt = groups[g]
            for take in range(min(cnt, need) + 1):
                choose(g + 1, need - take, ways * comb(cnt, take),
                       nxt + [cap - 1] * take + [cap] * (cnt - take))

        choose(0, j, 1, [])
        memo[key] = total
        return total

    return fill(tuple([j] * n), n)


def residue_coefficient(i: int, j: int, max_n: Optional[int] = None) -> int:
    """Coefficient of prod z_l^{-j} prod w_k^{j} in prod_{k,l}(1 - w_k/z_l), n = i + j.

    The product is multiplied out factor by factor, in row order k, and
    within a row in column order l.  A partial term is the exponent vector
    of the z's (as nonpositive integers) together with the exponent of the
    current row's w_k; terms that can no longer reach the target exponents
    are dropped.
    """
    if i < 0 or j < 0:
        raise ValueError(f"need i, j >= 0, got i={i}, j={j}")
    n = i + j
    limit = DEFAULT_MAX_N if max_n is None else max_n
    if n > limit:
        raise ResourceExceeded(f"residue expansion n={n}", n, limit)
    # terms: (z exponents tuple, w_k exponent) -> integer coefficient
    terms: dict[tuple, int] = {((0,) * n, 0): 1}
    for k in range(n):
        for l in range(n):
            left_in_row = n - l - 1
            nxt: dict[tuple, int] = {}
            for (zs, wk), c in terms.items():
                # factor 1
                if wk + left_in_row >= j:
                    key = (zs, wk)
                    nxt[key] = nxt.get(key, 0) + c
                # factor -w_k / z_l
                if wk < j and zs[l] > -j:
                    # z_l can still be hit by the remaining rows below k
                    key = (zs[:l] + (zs[l] - 1,) + zs[l + 1:], wk + 1)
                    nxt[key] = nxt.get(key, 0) - c
            terms = {key: c for key, c in nxt.items() if c}
        # the row is finished: w_k must have exponent exactly j
        rows_left = n - k - 1
        terms = {
            (zs, 0): c
            for (zs, wk), c in terms.items()
            if wk == j and all(-z + rows_left >= j for z in zs)
        }
    return terms.get(((-j,) * n, 0), 0)


def weight_threshold(i: int, j: int) -> int:
    """Largest n whose lattice weight n^2 fits in the conformal weight (i+j) n."""
    n = 0
    while (n + 1) ** 2 <= (i + j) * (n + 1):
        n += 1
    return n


def residue_record(i: int, j: int, max_n: Optional[int] = None) -> dict:
    coeff = residue_coefficient(i, j, max_n)
    count = count_margin_matrices(i + j, j)
    return {
        "i": i,
        "j": j,
        "coefficient": coeff,
        "matrix_count": count,
        "agree": abs(coeff) == count,
        "nonzero": coeff != 0,
    }


def check_rittab(i: int, j: int, max_n: Optional[int] = None, ceiling=None, cache: Optional[dict] = None,
                 fast: bool = False) -> bool:
    """Residue constant nonzero and the slice search finds q(i, j) = i + j + 1."""
    from .nilpotency import q_pair

    if residue_coefficient(i, j, max_n) == 0:
        return False
    return q_pair(i, j, fast=fast, ceiling=ceiling, cache=cache).found_index == i + j + 1
