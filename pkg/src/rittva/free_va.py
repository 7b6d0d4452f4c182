"""Commutative free vertex algebras F(B, N) and their jet presentations.

A :class:`LocalitySpec` fixes the ordered generator set B and the symmetric
matrix N of locality bounds.  Basis words

    a_m(n_m + sum_{l<m} N(a_m, a_l)) ... a_2(n_2 + N(a_2, a_1)) a_1(n_1)|0>

with a_1 <= ... <= a_m, all n_k < 0 and n_k <= n_{k-1} inside a run of equal
letters are enumerated explicitly.  Mode ``n`` of letter ``a`` corresponds
to the jet variable a_{-n-1}, which gives each word a multidegree and a
weight; these counts are compared with graded dimensions of
k{B}/[a_{-m-1} b_0 : N(a,b) <= m <= -1] computed by :mod:`rittva.slices`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Optional, Sequence, Union

from .diffalg import DiffPoly, DiffRing
from .slices import Grade, grades_up_to, quotient_slice_dim


class GateError(ValueError):
    pass


class NonCommutativeError(GateError):
    pass


class SuperCaseError(GateError):
    pass


@dataclass(frozen=True)
class LocalitySpec:
    letters: tuple
    N: tuple

    def __post_init__(self):
        letters = tuple(self.letters)
        N = tuple(tuple(int(x) for x in row) for row in self.N)
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "N", N)
        if len(set(letters)) != len(letters):
            raise ValueError(f"duplicate letters in {letters}")
        if len(N) != len(letters) or any(len(row) != len(letters) for row in N):
            raise ValueError(f"N must be {len(letters)}x{len(letters)}")
        for x in range(len(letters)):
            for y in range(x):
                if N[x][y] != N[y][x]:
                    raise ValueError(f"N is not symmetric at ({letters[x]}, {letters[y]})")

    def n(self, a: str, b: str) -> int:
        return self.N[self.letters.index(a)][self.letters.index(b)]

    def check_gates(self) -> None:
        for x, a in enumerate(self.letters):
            if self.N[x][x] % 2:
                raise SuperCaseError(f"N({a},{a}) = {self.N[x][x]} is odd: vertex superalgebra case not supported")
            for y, b in enumerate(self.letters):
                if self.N[x][y] > 0:
                    raise NonCommutativeError(f"N({a},{b}) = {self.N[x][y]} > 0: F(B,N) is not commutative")

    def ring(self) -> DiffRing:
        return DiffRing(self.letters)

    def permuted(self, order: Sequence[str]) -> "LocalitySpec":
        idx = [self.letters.index(a) for a in order]
        return LocalitySpec(tuple(order), tuple(tuple(self.N[x][y] for y in idx) for x in idx))

    def satisfies_cofree_condition(self) -> bool:
        """N(a,a) in {0,-2} for all a and N(a,b) in {0,-1} for a != b."""
        k = len(self.letters)
        return all(self.N[x][x] in (0, -2) for x in range(k)) and all(
            self.N[x][y] in (0, -1) for x in range(k) for y in range(k) if x != y
        )

    @classmethod
    def from_dict(cls, doc: dict) -> "LocalitySpec":
        return cls(tuple(doc["letters"]), tuple(tuple(r) for r in doc["N"]))

    @classmethod
    def load(cls, path: Union[str, Path]) -> "LocalitySpec":
        return cls.from_dict(json.loads(Path(path).read_text()))

    def to_dict(self) -> dict:
        return {"letters": list(self.letters), "N": [list(r) for r in self.N]}


# Named specs used by tests, scripts and the CLI.
PRESETS = {
    "cross-1": LocalitySpec(("a", "b"), ((0, -1), (-1, 0))),
    "zero2": LocalitySpec(("a", "b"), ((0, 0), (0, 0))),
    "single-2": LocalitySpec(("a",), ((-2,),)),
    "single-4": LocalitySpec(("a",), ((-4,),)),
    "single0": LocalitySpec(("a",), ((0,),)),
    "pair-2": LocalitySpec(("a", "b"), ((0, -2), (-2, 0))),
    "diag-2": LocalitySpec(("a", "b"), ((-2, -1), (-1, -2))),
    "three": LocalitySpec(("a", "b", "c"), ((-2, -1, 0), (-1, 0, -1), (0, -1, -2))),
}


@dataclass(frozen=True)
class VABasisWord:
    """Entries ``(letter, raw shift n_k)`` for k = 1..m (innermost first)."""

    entries: tuple

    def modes(self, spec: LocalitySpec) -> list[int]:
        out = []
        for k, (a, n) in enumerate(self.entries):
            out.append(n + sum(spec.n(a, b) for b, _ in self.entries[:k]))
        return out

    def jet_indices(self, spec: LocalitySpec) -> list[int]:
        return [-mode - 1 for mode in self.modes(spec)]

    def weight(self, spec: LocalitySpec) -> int:
        return sum(self.jet_indices(spec))

    def multidegree(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for a, _ in self.entries:
            out[a] = out.get(a, 0) + 1
        return out

    def grade(self, spec: LocalitySpec) -> Grade:
        return Grade.of(self.multidegree(), self.weight(spec))

    def is_valid(self, spec: LocalitySpec) -> bool:
        order = {a: x for x, a in enumerate(spec.letters)}
        for k, (a, n) in enumerate(self.entries):
            if n >= 0:
                return False
            if k:
                b, m = self.entries[k - 1]
                if order[a] < order[b] or (a == b and n > m):
                    return False
        return True

    def __str__(self):
        return "".join(f"{a}({n})" for a, n in reversed(self.entries)) + "|0>"


def basis_words(spec: LocalitySpec, weight_bound: int, degree_bound: int) -> Iterator[VABasisWord]:
    """Every basis word with weight <= weight_bound and length <= degree_bound.

    Letters are placed in the order of B.  Inside a run of letter a the
    values x_k = -n_k - 1 are nondecreasing, and the derived jet index of an
    entry is x_k plus the fixed offset -sum_{l<k} N(a, a_l); the weight
    budget bounds every x_k.
    """
    spec.check_gates()
    letters = spec.letters

    def rec(li: int, entries: tuple, counts: dict, budget: int, room: int):
        yield VABasisWord(entries)
        if room == 0:
            return
        for lj in range(li, len(letters)):
            a = letters[lj]
            # same letter continues the current run; a later letter opens a new one
            offset = -sum(spec.n(a, b) * c for b, c in counts.items())
            lo = -entries[-1][1] - 1 if counts.get(a) else 0
            for x in range(lo, budget - offset + 1):
                jet = x + offset
                if jet > budget:
                    break
                new_counts = dict(counts)
                new_counts[a] = new_counts.get(a, 0) + 1
                yield from rec(lj, entries + ((a, -x - 1),), new_counts, budget - jet, room - 1)

    yield from _unique(rec(0, (), {}, weight_bound, degree_bound))


def _unique(words):
    # rec yields each word exactly once by construction; guard cheaply anyway
    seen = set()
    for w in words:
        if w.entries in seen:
            raise AssertionError(f"duplicate basis word {w}")
        seen.add(w.entries)
        yield w


def enumerate_basis(spec: LocalitySpec, weight_bound: int, degree_bound: Optional[int] = None) -> dict[Grade, int]:
    """Number of basis words per grade, for all grades within the bounds.

    Weight alone does not make a layer finite when some N(a,a) = 0, so the
    total degree is bounded too (default: the weight bound).
    """
    if degree_bound is None:
        degree_bound = weight_bound
    counts = {g: 0 for g in grades_up_to(spec.letters, weight_bound, degree_bound)}
    for w in basis_words(spec, weight_bound, degree_bound):
        counts[w.grade(spec)] += 1
    return counts


def jet_ideal_generators(spec: LocalitySpec, ordered: bool = False) -> list[DiffPoly]:
    """{a_s b_0 : 0 <= s <= -N(a,b) - 1} over pairs a <= b (all ordered pairs if ``ordered``)."""
    spec.check_gates()
    R = spec.ring()
    out = []
    for x, a in enumerate(spec.letters):
        for y, b in enumerate(spec.letters):
            if y < x and not ordered:
                continue
            for s in range(-spec.N[x][y]):
                g = R.var(a, s) * R.var(b, 0)
                if g not in out:
                    out.append(g)
    return out


def jet_lift_generators(spec: LocalitySpec) -> list[DiffPoly]:
    """{a_0 b_0 : N(a,b) <= -1}: the jet lift of the Zhu algebra relations."""
    spec.check_gates()
    R = spec.ring()
    return [
        R.var(a, 0) * R.var(b, 0)
        for x, a in enumerate(spec.letters)
        for y, b in enumerate(spec.letters)
        if y >= x and spec.N[x][y] <= -1
    ]


def jetfree_table(spec: LocalitySpec, weight_bound: int, degree_bound: Optional[int] = None, ceiling=None) -> list[dict]:
    words = enumerate_basis(spec, weight_bound, degree_bound)
    R = spec.ring()
    gens = jet_ideal_generators(spec)
    cache: dict = {}
    rows = []
    for g in sorted(words, key=lambda g: g.sort_key(spec.letters)):
        qd = quotient_slice_dim(R, gens, g, ceiling, cache)
        rows.append({"grade": g.to_dict(), "basis_words": words[g], "quotient_dim": qd, "agree": qd == words[g]})
        cache.clear()
    return rows


def check_jetfree(spec: LocalitySpec, weight_bound: int, degree_bound: Optional[int] = None, ceiling=None) -> bool:
    """Graded dimensions of F(B,N) and k{B}/I agree on every grade in range."""
    return all(r["agree"] for r in jetfree_table(spec, weight_bound, degree_bound, ceiling))


@dataclass
class CofreeResult:
    equal: bool
    first_discrepancy: Optional[Grade] = None
    dims: Optional[tuple] = None  # (full ideal, jet lift) dims at the discrepancy

    def to_dict(self) -> dict:
        return {
            "equal": self.equal,
            "first_discrepancy": None if self.first_discrepancy is None else self.first_discrepancy.to_dict(),
            "dims": None if self.dims is None else list(self.dims),
        }


def check_cofree_iff(spec: LocalitySpec, weight_bound: int = 6, degree_bound: Optional[int] = None,
                     ceiling=None) -> CofreeResult:
    """Compare k{B}/I with k{B}/[a_0 b_0 : N(a,b) <= -1] grade by grade.

    Grades are visited in (weight, multidegree) order and the first
    disagreement is returned.
    """
    if degree_bound is None:
        degree_bound = weight_bound
    R = spec.ring()
    full = jet_ideal_generators(spec)
    lift = jet_lift_generators(spec)
    for g in grades_up_to(spec.letters, weight_bound, degree_bound):
        a = quotient_slice_dim(R, full, g, ceiling)
        b = quotient_slice_dim(R, lift, g, ceiling)
        if a != b:
            return CofreeResult(False, g, (a, b))
    return CofreeResult(True)


@dataclass
class ZhuTable:
    rows: list = field(default_factory=list)

    @property
    def agree(self) -> bool:
        return all(r["rhs"] == r["words"] == r["jet_weight0"] for r in self.rows)

    def dim(self, degrees: dict) -> int:
        key = {a: d for a, d in degrees.items() if d}
        for r in self.rows:
            if {a: d for a, d in r["degrees"].items() if d} == key:
                return r["rhs"]
        raise KeyError(degrees)


def zhu_poisson_dims(spec: LocalitySpec, degree_bound: int, ceiling=None) -> ZhuTable:
    """Dimensions of k[B]/(ab : N(a,b) <= -1) by multidegree, with two cross-checks.

    ``rhs`` counts monomials of k[B] avoiding every forbidden product,
    ``words`` counts basis words whose raw shifts are all -1 and whose jet
    indices are all 0, ``jet_weight0`` is the weight-0 quotient dimension
    of k{B}/I.
    """
    spec.check_gates()
    R = spec.ring()
    gens = jet_ideal_generators(spec)
    words: dict[Grade, int] = {}
    for w in basis_words(spec, 0, degree_bound):
        if all(n == -1 for _, n in w.entries) and all(j == 0 for j in w.jet_indices(spec)):
            g = w.grade(spec)
            words[g] = words.get(g, 0) + 1
    table = ZhuTable()
    for g in grades_up_to(spec.letters, 0, degree_bound):
        deg = {a: g.degree(a) for a in spec.letters}
        table.rows.append({
            "degrees": deg,
            "rhs": _poisson_rhs(spec, deg),
            "words": words.get(g, 0),
            "jet_weight0": quotient_slice_dim(R, gens, g, ceiling),
        })
    return table


def _poisson_rhs(spec: LocalitySpec, deg: dict) -> int:
    # a monomial of k[B] survives iff it has no factor ab with N(a,b) <= -1
    present = [a for a in spec.letters if deg[a]]
    for a in present:
        if deg[a] >= 2 and spec.n(a, a) <= -1:
            return 0
        for b in present:
            if a != b and spec.n(a, b) <= -1:
                return 0
    return 1
