import json
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from rittva import oracle
from rittva.diffalg import DiffRing, Monomial, derive
from rittva.slices import (
    CEILING_ENV,
    Echelon,
    Grade,
    InhomogeneousError,
    ResourceExceeded,
    default_ceiling,
    enumerate_slice,
    grade_of,
    grades_up_to,
    ideal_slice,
    ideal_slice_generators,
    is_member,
    partitions_at_most,
    quotient_slice_dim,
    slice_problem,
    slice_rank,
    slice_report,
    slice_size,
)

RT = DiffRing(["T"])
RTU = DiffRing(["T", "U"])


def t(i):
    return RT.var("T", i)


def tt(i):
    return RTU.var("T", i)


def uu(j):
    return RTU.var("U", j)


# -- enumerate_slice --------------------------------------------------------------


def test_enumerate_degree2_weight2():
    got = enumerate_slice(RT, Grade.of({"T": 2}, 2))
    assert [str(m) for m in got] == ["T_0*T_2", "T_1^2"]


def test_enumerate_trivial_slices():
    assert enumerate_slice(RT, Grade.of({"T": 1}, 0)) == [Monomial.var("T", 0)]
    assert enumerate_slice(RT, Grade.of({}, 1)) == []
    assert enumerate_slice(RT, Grade.of({}, 0)) == [Monomial()]


def test_grade_rejects_negative_entries():
    with pytest.raises(ValueError):
        Grade.of({"T": -1}, 2)
    with pytest.raises(ValueError):
        Grade.of({"T": 1}, -2)


@pytest.mark.parametrize("d,w,count", [(1, 5, 1), (2, 4, 3), (3, 6, 7), (4, 8, 15), (5, 10, 30), (6, 0, 1)])
def test_partitions_at_most(d, w, count):
    assert partitions_at_most(w, d) == count
    assert len(enumerate_slice(RT, Grade.of({"T": d}, w))) == count


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 7))
def test_enumerate_matches_brute_force(dt, du, w):
    grade = Grade.of({"T": dt, "U": du}, w)
    got = enumerate_slice(RTU, grade)
    want = oracle.brute_monomials(RTU, {k: v for k, v in {"T": dt, "U": du}.items() if v}, w)
    assert len(got) == len(set(got)) == slice_size(grade)
    assert set(got) == set(want)
    assert got == sorted(got, key=Monomial.sort_key)
    for m in got:
        assert grade_of(RTU.monomial(m)) == grade


def test_grade_of_rejects_inhomogeneous():
    with pytest.raises(InhomogeneousError):
        grade_of(t(0) + t(1))
    with pytest.raises(InhomogeneousError):
        grade_of(t(0) ** 2 + t(1))


# -- generators, rank -------------------------------------------------------------


def test_generators_degree2_weight2():
    rows = ideal_slice_generators([t(0) ** 2], Grade.of({"T": 2}, 2))
    assert rows == [2 * t(0) * t(2) + 2 * t(1) ** 2]


def test_generators_degree_too_low():
    assert ideal_slice_generators([t(0) ** 2], Grade.of({"T": 1}, 5)) == []


def test_generators_pair():
    rows = ideal_slice_generators([tt(0) * uu(0)], Grade.of({"T": 1, "U": 1}, 1))
    assert rows == [tt(1) * uu(0) + tt(0) * uu(1)]


def test_generators_are_homogeneous_and_deduplicated():
    grade = Grade.of({"T": 3}, 4)
    rows = ideal_slice_generators([t(0) ** 2, 3 * t(0) ** 2], grade)
    assert len(rows) == len(set(rows))
    assert all(grade_of(r) == grade for r in rows)
    assert rows == ideal_slice_generators([t(0) ** 2], grade)


def test_slice_rank_examples():
    a = t(0) * t(2) + t(1) ** 2
    assert slice_rank([a, 2 * a]) == 1
    assert slice_rank([]) == 0
    assert slice_rank([t(0) * t(2), t(1) ** 2]) == 2
    assert slice_rank([a, t(0) * t(2), t(1) ** 2]) == 2


def test_echelon_reduces_to_zero_exactly_on_span():
    ech = Echelon(3)
    assert ech.add({0: 2, 1: 4})
    assert ech.add({1: 3, 2: -1})
    assert not ech.add({0: 1, 1: 5, 2: -1})
    assert ech.rank == 2 and not ech.full
    assert ech.reduce({2: 7})
    assert ech.add({2: 7}) and ech.full


def test_slice_problem_fields():
    prob = slice_problem(RT, [t(0) ** 2], Grade.of({"T": 2}, 2))
    assert [str(m) for m in prob.basis] == ["T_0*T_2", "T_1^2"]
    assert prob.generator_rows == [2 * t(0) * t(2) + 2 * t(1) ** 2]


# -- membership and quotients -----------------------------------------------------


def test_membership_examples():
    assert not is_member(t(1) ** 2, [t(0) ** 2])
    assert is_member(t(1) ** 3, [t(0) ** 2])
    assert is_member(tt(1) * uu(0) + tt(0) * uu(1), [tt(0) * uu(0)])


def test_member_rejects_zero_and_foreign_rings():
    with pytest.raises(ValueError):
        is_member(RT.zero(), [t(0)])
    with pytest.raises(ValueError):
        is_member(tt(0), [t(0)])


def test_member_rejects_inhomogeneous_query():
    with pytest.raises(InhomogeneousError):
        is_member(t(0) + t(1), [t(0)])


def test_quotient_dim_examples():
    assert quotient_slice_dim(RT, [t(0) ** 2], Grade.of({"T": 2}, 2)) == 1
    for w in range(6):
        g = Grade.of({"T": 2}, w)
        assert quotient_slice_dim(RT, [], g) == len(enumerate_slice(RT, g))
    assert quotient_slice_dim(RT, [t(0)], Grade.of({"T": 1}, 3)) == 0


def test_slice_report_is_json_record():
    rep = slice_report(RT, [t(0) ** 2], Grade.of({"T": 2}, 2))
    assert rep == {"grade": {"degrees": {"T": 2}, "weight": 2}, "basis_size": 2, "ideal_rank": 1, "quotient_dim": 1}
    assert json.loads(json.dumps(rep)) == rep


def test_cache_is_reused_and_keyed_on_generators():
    cache: dict = {}
    g = Grade.of({"T": 3}, 3)
    a = ideal_slice(RT, [t(0) ** 2], g, cache=cache)
    assert ideal_slice(RT, [-5 * t(0) ** 2], g, cache=cache) is a
    assert ideal_slice(RT, [t(0) ** 3], g, cache=cache) is not a
    assert len(cache) == 2


def test_ceiling_raises_cleanly(monkeypatch):
    g = Grade.of({"T": 4}, 30)
    with pytest.raises(ResourceExceeded) as info:
        enumerate_slice(RT, g, ceiling=100)
    assert info.value.size == slice_size(g) > 100
    with pytest.raises(ResourceExceeded):
        is_member(t(6) ** 4, [t(0) ** 2], ceiling=100)
    monkeypatch.setenv(CEILING_ENV, "50")
    assert default_ceiling() == 50
    with pytest.raises(ResourceExceeded):
        is_member(t(6) ** 4, [t(0) ** 2])
    monkeypatch.setenv(CEILING_ENV, "0")
    with pytest.raises(ValueError):
        default_ceiling()


def test_grades_up_to_is_sorted_and_complete():
    gs = grades_up_to(["T", "U"], 2, 2)
    assert len(gs) == len(set(gs)) == 3 * 6
    assert gs[0] == Grade.of({}, 0)
    assert [g.weight for g in gs] == sorted(g.weight for g in gs)


# -- properties -------------------------------------------------------------------

GEN_POOL = [
    [t(0) ** 2],
    [t(0) ** 3],
    [t(0) * t(1)],
    [t(1) ** 2, t(0) ** 2],
    [t(0) * t(2) - 2 * t(1) ** 2],
]

small_grades = st.builds(lambda d, w: Grade.of({"T": d}, w), st.integers(1, 4), st.integers(0, 7))


@st.composite
def slice_queries(draw):
    gens = draw(st.sampled_from(GEN_POOL))
    grade = draw(small_grades)
    basis = enumerate_slice(RT, grade)
    picks = draw(st.lists(st.sampled_from(basis), min_size=1, max_size=3, unique=True))
    coeffs = draw(st.lists(st.integers(-3, 3).filter(bool), min_size=len(picks), max_size=len(picks)))
    f = RT.zero()
    for m, c in zip(picks, coeffs):
        f = f + RT.monomial(m, c)
    # bias towards members: add an ideal element of the same grade
    rows = ideal_slice_generators(gens, grade, RT)
    if rows and draw(st.booleans()):
        f = rows[draw(st.integers(0, len(rows) - 1))]
    return f, gens


@settings(max_examples=80, deadline=None)
@given(slice_queries())
def test_membership_agrees_with_oracle(q):
    f, gens = q
    assert is_member(f, gens) == oracle.brute_is_member(f, gens)


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(slice_queries(), st.integers(0, 3))
def test_membership_is_closed_under_products_and_derivation(q, jet):
    f, gens = q
    assume(is_member(f, gens))
    assert is_member(derive(f), gens)
    assert is_member(t(jet) * f, gens)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(GEN_POOL), small_grades, st.permutations(range(4)),
       st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=5).filter(bool), min_size=4, max_size=4))
def test_quotient_dim_invariant_under_permutation_and_scaling(gens, grade, perm, scales):
    base = quotient_slice_dim(RT, gens, grade)
    scaled = [g.scale(Fraction(c)) for g, c in zip(gens, scales)]
    shuffled = [scaled[k] for k in perm if k < len(scaled)]
    assert quotient_slice_dim(RT, shuffled, grade) == base


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(GEN_POOL), small_grades)
def test_quotient_dim_matches_oracle_rank(gens, grade):
    basis = enumerate_slice(RT, grade)
    rows = ideal_slice_generators(gens, grade, RT)
    want = len(basis) - sum(
        1 for k in range(len(rows)) if not oracle.solve_in_span(rows[k], rows[:k])
    )
    assert quotient_slice_dim(RT, gens, grade) == want
