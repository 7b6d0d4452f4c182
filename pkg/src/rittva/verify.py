"""The verification grid: one function per acceptance criterion.

Each function returns a :class:`Criterion` with a pass flag and the cell
records that back it.  ``rittva verify-all`` and ``tests/test_acceptance.py``
both run these.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import factorial

from . import free_va, lattice_residue, nilpotency, oracle, slices
from .diffalg import DiffRing
from .slices import ResourceExceeded


@dataclass
class Criterion:
    number: int
    name: str
    passed: bool = True
    records: list = field(default_factory=list)
    resource_failure: bool = False

    def fail(self, record: dict) -> None:
        self.passed = False
        self.records.append(record)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        bad = [r for r in self.records if not r.get("ok", True)]
        tail = f" ({len(bad)} failing cells, first: {bad[0]})" if bad else ""
        return f"[{status}] {self.number}. {self.name}{tail}"

    def to_dict(self) -> dict:
        return {"criterion": self.number, "name": self.name, "passed": self.passed,
                "resource_failure": self.resource_failure, "records": self.records}


def _run_cell(crit: Criterion, label: dict, fn) -> None:
    try:
        ok, extra = fn()
    except ResourceExceeded as exc:
        crit.resource_failure = True
        crit.fail({**label, "ok": False, "error": str(exc)})
        return
    rec = {**label, **extra, "ok": ok}
    if ok:
        crit.records.append(rec)
    else:
        crit.fail(rec)


MAIN_GRID = [(i, p) for i in range(5) for p in (1, 2, 3)] + [(i, 4) for i in range(3)]


def main_formula_grid(fast: bool = False, ceiling=None) -> Criterion:
    crit = Criterion(1, "q_single(i,p) = (i+1)p - i on {0..4}x{1,2,3} and {0,1,2}x{4}")
    for i, p in MAIN_GRID:
        def cell(i=i, p=p):
            ans = nilpotency.q_single(i, p, fast=fast, ceiling=ceiling)
            return ans.found_index == (i + 1) * p - i, {"found": ans.found_index, "predicted": ans.predicted_index}
        _run_cell(crit, {"i": i, "p": p}, cell)
    return crit


def second_formula_grid(max_sum: int = 6, fast: bool = False, ceiling=None) -> Criterion:
    crit = Criterion(2, f"q_pair(i,j) = i+j+1 for i+j <= {max_sum}")
    cache: dict = {}
    for s in range(max_sum + 1):
        for i in range(s + 1):
            j = s - i
            def cell(i=i, j=j):
                ans = nilpotency.q_pair(i, j, fast=fast, ceiling=ceiling, cache=cache)
                return ans.found_index == i + j + 1, {"found": ans.found_index, "predicted": ans.predicted_index}
            _run_cell(crit, {"i": i, "j": j}, cell)
        # slices of one sum are shared by all its cells and never needed again
        cache.clear()
    return crit


def power_threshold_grid(ceiling=None) -> Criterion:
    crit = Criterion(3, "T_{i-1}^{i(p-1)} not in [T_0^p] but T_{i-1}^{i(p-1)+1} is, i in {1,2,3}, p in {2,3}")
    for i in (1, 2, 3):
        for p in (2, 3):
            _run_cell(crit, {"i": i, "p": p},
                      lambda i=i, p=p: (nilpotency.verify_power_threshold(i, p, ceiling=ceiling), {}))
    return crit


JETFREE_CASES = [("cross-1", 10), ("zero2", 8), ("single-2", 10)]


def jetfree_cases(ceiling=None) -> Criterion:
    crit = Criterion(4, "F(B,N) vs k{B}/I per grade (cross-1 w<=10, zero2 w<=8, single-2 w<=10)")
    for name, bound in JETFREE_CASES:
        def cell(name=name, bound=bound):
            table = free_va.jetfree_table(free_va.PRESETS[name], bound, ceiling=ceiling)
            bad = [r for r in table if not r["agree"]]
            return not bad, {"grades": len(table), "mismatches": bad[:3]}
        _run_cell(crit, {"spec": name, "weight_bound": bound}, cell)
    return crit


COFREE_EQUAL = ["cross-1", "single-2", "single0", "zero2", "diag-2", "three"]
COFREE_DIFFERENT = ["single-4", "pair-2"]


def cofree_cases(weight_bound: int = 6, ceiling=None) -> Criterion:
    crit = Criterion(5, "quotient equals jet lift of Zhu algebra iff the cofree condition holds (weight <= 6)")
    for name in COFREE_EQUAL + COFREE_DIFFERENT:
        spec = free_va.PRESETS[name]
        expect_equal = spec.satisfies_cofree_condition()
        def cell(spec=spec, expect_equal=expect_equal):
            res = free_va.check_cofree_iff(spec, weight_bound, ceiling=ceiling)
            return res.equal == expect_equal, res.to_dict()
        _run_cell(crit, {"spec": name, "condition": expect_equal}, cell)
    return crit


def zhu_case(degree_bound: int = 6, ceiling=None) -> Criterion:
    crit = Criterion(6, "Zhu Poisson algebra of cross-1 up to degree 6, (1,1) piece is 0")
    spec = free_va.PRESETS["cross-1"]

    def cell():
        table = free_va.zhu_poisson_dims(spec, degree_bound, ceiling=ceiling)
        oracle_ok = all(
            r["rhs"] == oracle.brute_poisson_dim(spec.letters, spec.N, r["degrees"]) for r in table.rows
        )
        d11 = table.dim({"a": 1, "b": 1})
        return table.agree and oracle_ok and d11 == 0, {"pieces": len(table.rows), "dim_11": d11}

    _run_cell(crit, {"spec": "cross-1"}, cell)
    return crit


def residue_identity(max_sum: int = 5, max_n: int | None = None) -> Criterion:
    crit = Criterion(7, "|residue(i,j)| = P_{i+j,j} != 0 for i+j <= 5; P vs oracle (n<=4) and n! (n<=6)")
    for s in range(1, max_sum + 1):
        for j in range(s + 1):
            def cell(i=s - j, j=j):
                rec = lattice_residue.residue_record(i, j, max_n)
                return rec["agree"] and rec["nonzero"], rec
            _run_cell(crit, {"check": "residue", "i": s - j, "j": j}, cell)
    for n in range(1, 5):
        for j in range(n + 1):
            def cell(n=n, j=j):
                got, want = lattice_residue.count_margin_matrices(n, j), oracle.brute_margin_count(n, j)
                return got == want, {"value": got, "oracle": want}
            _run_cell(crit, {"check": "oracle", "n": n, "j": j}, cell)
    for n in range(1, 7):
        def cell(n=n):
            got = lattice_residue.count_margin_matrices(n, 1)
            return got == factorial(n), {"value": got}
        _run_cell(crit, {"check": "factorial", "n": n}, cell)
    return crit


def rittab_consistency(max_sum: int = 4, fast: bool = False, ceiling=None) -> Criterion:
    crit = Criterion(8, "check_rittab(i,j) for i+j <= 4")
    cache: dict = {}
    for s in range(max_sum + 1):
        for i in range(s + 1):
            _run_cell(crit, {"i": i, "j": s - i},
                      lambda i=i, j=s - i: (lattice_residue.check_rittab(i, j, ceiling=ceiling, cache=cache,
                                                                          fast=fast), {}))
    return crit


def random_membership_queries(count: int = 50, seed: int = 20190501, min_basis: int = 10, max_basis: int = 200):
    """Deterministic random homogeneous queries ``(f, gens)`` in small slices.

    Half of the queries are built as combinations of ideal products (so
    mostly members), half as random combinations of slice monomials.
    """
    rng = random.Random(seed)
    T = DiffRing(["T"])
    TU = DiffRing(["T", "U"])
    t = lambda k: T.var("T", k)  # noqa: E731
    tu = lambda f, k: TU.var(f, k)  # noqa: E731
    gen_pool = [
        (T, [t(0) ** 2]),
        (T, [t(0) ** 3]),
        (T, [t(1) * t(0)]),
        (T, [t(0) ** 2, t(1) ** 2]),
        (T, [t(0) * t(2) - 2 * t(1) ** 2]),
        (TU, [tu("T", 0) * tu("U", 0)]),
        (TU, [tu("T", 0) * tu("U", 0), tu("T", 1) * tu("U", 0)]),
        (TU, [tu("T", 0) ** 2, tu("T", 0) * tu("U", 1) + tu("T", 1) * tu("U", 0)]),
    ]
    out = []
    while len(out) < count:
        ring, gens = gen_pool[rng.randrange(len(gen_pool))]
        degs = {f: rng.randint(1, 5) for f in ring.families}
        grade = slices.Grade.of(degs, rng.randint(2, 12))
        size = slices.slice_size(grade)
        if not min_basis <= size <= max_basis:
            continue
        basis = slices.enumerate_slice(ring, grade)
        if len(out) % 2 == 0:
            prods = slices.ideal_slice_generators(gens, grade, ring)
            if not prods:
                continue
            f = ring.zero()
            for r in rng.sample(prods, min(len(prods), 3)):
                f = f + r * rng.choice([-3, -1, 1, 2, 5])
            if rng.random() < 0.3:
                f = f + ring.monomial(rng.choice(basis))
        else:
            f = ring.zero()
            for m in rng.sample(basis, min(len(basis), 2)):
                f = f + ring.monomial(m, rng.choice([-2, -1, 1, 3]))
        if f:
            out.append((f, gens))
    return out


def oracle_equivalence(count: int = 50) -> Criterion:
    crit = Criterion(9, f"is_member agrees with the dense oracle on {count} random queries")
    for k, (f, gens) in enumerate(random_membership_queries(count)):
        def cell(f=f, gens=gens):
            fast, slow = slices.is_member(f, gens), oracle.brute_is_member(f, gens)
            return fast == slow, {"member": fast}
        _run_cell(crit, {"query": k, "f": str(f), "gens": [str(g) for g in gens]}, cell)
    return crit


def all_criteria(fast: bool = False, ceiling=None):
    """Yield every criterion in order (lazily, so callers can stream output)."""
    yield main_formula_grid(fast, ceiling)
    yield second_formula_grid(fast=fast, ceiling=ceiling)
    yield power_threshold_grid(ceiling)
    yield jetfree_cases(ceiling)
    yield cofree_cases(ceiling=ceiling)
    yield zhu_case(ceiling=ceiling)
    yield residue_identity()
    yield rittab_consistency(fast=fast, ceiling=ceiling)
    yield oracle_equivalence()
