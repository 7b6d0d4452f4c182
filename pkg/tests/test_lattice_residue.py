from math import factorial

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from rittva import oracle
from rittva.lattice_residue import (
    check_rittab,
    count_margin_matrices,
    residue_coefficient,
    residue_record,
    weight_threshold,
)
from rittva.nilpotency import RittQuery, power_membership
from rittva.slices import ResourceExceeded


def sympy_coefficient(i, j):
    """Coefficient via sympy: substitute y_l = 1/z_l and extract a monomial."""
    n = i + j
    w = sympy.symbols(f"w0:{n}")
    y = sympy.symbols(f"y0:{n}")
    expr = sympy.Integer(1)
    for k in range(n):
        for l in range(n):
            expr *= 1 - w[k] * y[l]
    poly = sympy.Poly(sympy.expand(expr), *w, *y)
    return poly.coeff_monomial(tuple([j] * (2 * n)))


@pytest.mark.parametrize("n", range(1, 8))
def test_j1_is_factorial(n):
    assert count_margin_matrices(n, 1) == factorial(n)


@pytest.mark.parametrize("n", range(0, 8))
def test_all_ones_and_all_zeros(n):
    assert count_margin_matrices(n, n) == 1
    assert count_margin_matrices(n, 0) == 1


def test_three_by_three_line_sum_two():
    assert count_margin_matrices(3, 2) == 6


def test_known_values():
    # 4x4 with line sums 2, and 6x6 with line sums 3
    assert count_margin_matrices(4, 2) == 90
    assert count_margin_matrices(6, 3) == 297200


@pytest.mark.parametrize("n,j", [(n, j) for n in range(1, 5) for j in range(n + 1)])
def test_matrix_count_matches_exhaustive_oracle(n, j):
    assert count_margin_matrices(n, j) == oracle.brute_margin_count(n, j)


@pytest.mark.parametrize("n", range(8))
def test_complement_symmetry(n):
    for j in range(n + 1):
        assert count_margin_matrices(n, j) == count_margin_matrices(n, n - j)


def test_matrix_count_rejects_bad_j():
    with pytest.raises(ValueError):
        count_margin_matrices(3, 4)
    with pytest.raises(ValueError):
        count_margin_matrices(3, -1)


def test_residue_examples():
    assert abs(residue_coefficient(1, 1)) == 2
    assert abs(residue_coefficient(1, 2)) == 6
    for i in range(5):
        assert residue_coefficient(i, 0) == 1


@pytest.mark.parametrize("i,j", [(0, 1), (1, 1), (2, 1), (1, 2), (0, 2), (0, 3)])
def test_residue_matches_sympy_expansion(i, j):
    assert residue_coefficient(i, j) == sympy_coefficient(i, j)


@pytest.mark.parametrize("i,j", [(i, s - i) for s in range(1, 6) for i in range(s + 1)])
def test_residue_magnitude_is_matrix_count(i, j):
    rec = residue_record(i, j)
    assert rec["agree"] and rec["nonzero"]
    # the computed sign: every selected factor carries -1, n*j of them
    assert rec["coefficient"] == (-1) ** ((i + j) * j) * rec["matrix_count"]


def test_residue_record_schema():
    assert set(residue_record(1, 1)) == {"i", "j", "coefficient", "matrix_count", "agree", "nonzero"}


def test_residue_ceiling():
    with pytest.raises(ResourceExceeded):
        residue_coefficient(4, 4)
    with pytest.raises(ResourceExceeded):
        residue_coefficient(2, 2, max_n=3)
    with pytest.raises(ValueError):
        residue_coefficient(-1, 2)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 6), st.integers(0, 6))
def test_weight_threshold_is_i_plus_j(i, j):
    assert weight_threshold(i, j) == i + j


@pytest.mark.parametrize("i,j", [(0, 1), (1, 1), (2, 0), (1, 2)])
def test_weight_threshold_matches_slices(i, j):
    query = RittQuery("pair", i, j=j)
    n = weight_threshold(i, j)
    for q in range(1, n + 1):
        assert not power_membership(query, q)[0]
    assert power_membership(query, n + 1)[0]


@pytest.mark.parametrize("i,j", [(0, 0), (1, 1), (2, 1), (0, 2), (1, 0)])
def test_check_rittab(i, j):
    assert check_rittab(i, j)
