"""Graded slices of k{B} and of differential ideals; exact membership.

The ideals handled here are homogeneous for the (multidegree, weight)
grading, so the part of ``[gens]`` at a fixed grade is the linear span of
the finitely many products ``m * d^n(g)`` landing in that grade.  Every
membership question is therefore a rank question on a sparse integer
matrix, decided by fraction-free elimination.

Internally monomials are "flat" keys: sorted tuples of integer variable
codes repeated by exponent.  Sorting flat keys reproduces the canonical
monomial order of :mod:`rittva.diffalg` within a grade.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Iterator, Mapping, Optional

from .diffalg import DiffPoly, DiffRing, Monomial, VarId

DEFAULT_CEILING = 500_000
CEILING_ENV = "RITT_SLICE_CEILING"

_SPAN = 1 << 24  # jet indices stay far below this


class ResourceExceeded(RuntimeError):
    """A slice basis would exceed the configured ceiling."""

    def __init__(self, what: str, size: int, ceiling: int, grade: Optional["Grade"] = None):
        self.what, self.size, self.ceiling, self.grade = what, size, ceiling, grade
        super().__init__(f"{what} has size {size}, ceiling is {ceiling}")


class InhomogeneousError(ValueError):
    pass


def default_ceiling() -> int:
    raw = os.environ.get(CEILING_ENV)
    if raw:
        value = int(raw)
        if value <= 0:
            raise ValueError(f"{CEILING_ENV} must be positive, got {raw!r}")
        return value
    return DEFAULT_CEILING


@dataclass(frozen=True, order=True)
class Grade:
    weight: int
    degrees: tuple  # sorted (family, degree) pairs, zero degrees dropped

    @classmethod
    def of(cls, degrees: Mapping[str, int], weight: int) -> "Grade":
        for fam, d in degrees.items():
            if d < 0:
                raise ValueError(f"negative degree {d} for family {fam}")
        if weight < 0:
            raise ValueError(f"negative weight {weight}")
        return cls(weight, tuple(sorted((f, d) for f, d in degrees.items() if d)))

    def degree(self, family: str) -> int:
        return dict(self.degrees).get(family, 0)

    @property
    def total_degree(self) -> int:
        return sum(d for _, d in self.degrees)

    def sort_key(self, families: Iterable[str]):
        """(weight, multidegree in the given family order): the audit order."""
        deg = dict(self.degrees)
        return (self.weight, tuple(deg.get(f, 0) for f in families))

    def minus(self, other: "Grade") -> Optional["Grade"]:
        deg = dict(self.degrees)
        for f, d in other.degrees:
            deg[f] = deg.get(f, 0) - d
            if deg[f] < 0:
                return None
        w = self.weight - other.weight
        if w < 0:
            return None
        return Grade.of(deg, w)

    def to_dict(self) -> dict:
        return {"degrees": dict(self.degrees), "weight": self.weight}

    def __str__(self):
        deg = ",".join(f"{f}:{d}" for f, d in self.degrees) or "-"
        return f"({deg}; w={self.weight})"


def grade_of(f: DiffPoly) -> Grade:
    if not f:
        raise ValueError("the zero polynomial has no grade")
    grades = f.bigrades()
    if len(grades) != 1:
        raise InhomogeneousError(f"polynomial is not homogeneous: {f}")
    (deg, w), = grades
    return Grade.of(dict(deg), w)


# -- counting and enumeration -------------------------------------------------


@lru_cache(maxsize=None)
def partitions_at_most(n: int, k: int) -> int:
    """Number of partitions of n into at most k parts."""
    if n == 0:
        return 1
    if k <= 0 or n < 0:
        return 0
    return partitions_at_most(n, k - 1) + partitions_at_most(n - k, k)


def slice_size(grade: Grade) -> int:
    """Number of monomials of the grade, without enumerating them."""
    # polynomial in the weight variable: convolve per-family partition counts
    w = grade.weight
    dist = [1] + [0] * w
    for _, d in grade.degrees:
        nxt = [0] * (w + 1)
        for a, ca in enumerate(dist):
            if ca:
                for b in range(w + 1 - a):
                    nxt[a + b] += ca * partitions_at_most(b, d)
        dist = nxt
    return dist[w]


def _check_ceiling(grade: Grade, ceiling: Optional[int]) -> int:
    size = slice_size(grade)
    limit = default_ceiling() if ceiling is None else ceiling
    if size > limit:
        raise ResourceExceeded(f"slice {grade}", size, limit, grade)
    return size


def _jets(total: int, parts: int, lo: int = 0) -> Iterator[tuple]:
    """Nondecreasing tuples of ``parts`` jet indices >= lo summing to total."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        if total >= lo:
            yield (total,)
        return
    for first in range(lo, total // parts + 1):
        for rest in _jets(total - first, parts - 1, first):
            yield (first,) + rest


class _Codec:
    """Variable codes for one ring: family rank (alphabetical) and jet index."""

    def __init__(self, ring: DiffRing):
        self.ring = ring
        self.order = tuple(sorted(ring.families))
        self.rank = {f: r for r, f in enumerate(self.order)}

    def to_flat(self, m: Monomial) -> tuple:
        out = []
        for v, e in m:
            out.extend([self.rank[v.family] * _SPAN + v.jet] * e)
        return tuple(out)

    def to_monomial(self, flat: tuple) -> Monomial:
        exps: dict[VarId, int] = {}
        for c in flat:
            v = VarId(self.order[c // _SPAN], c % _SPAN)
            exps[v] = exps.get(v, 0) + 1
        return Monomial._trusted(sorted(exps.items()))

    def flat_slice(self, grade: Grade) -> list:
        fams = [(self.rank[f], d) for f, d in grade.degrees]
        for f, _ in grade.degrees:
            if f not in self.rank:
                raise ValueError(f"grade mentions family {f!r} outside {self.ring}")
        fams.sort()
        if not fams:
            return [()] if grade.weight == 0 else []
        out = []

        def rec(k: int, budget: int, prefix: tuple):
            r, d = fams[k]
            base = r * _SPAN
            if k == len(fams) - 1:
                for js in _jets(budget, d):
                    out.append(prefix + tuple(base + j for j in js))
                return
            for w in range(budget + 1):
                for js in _jets(w, d):
                    rec(k + 1, budget - w, prefix + tuple(base + j for j in js))

        rec(0, grade.weight, ())
        out.sort()
        return out


def enumerate_slice(ring: DiffRing, grade: Grade, ceiling: Optional[int] = None) -> list[Monomial]:
    """All monomials of the grade in canonical order."""
    _check_ceiling(grade, ceiling)
    codec = _Codec(ring)
    return [codec.to_monomial(fl) for fl in codec.flat_slice(grade)]


# -- generator rows --------------------------------------------------------------


def _flat_derive(poly: dict) -> dict:
    out: dict = {}
    for fl, c in poly.items():
        prev = None
        for pos, code in enumerate(fl):
            if code == prev:
                continue
            prev = code
            mult = fl.count(code)
            # replace one occurrence of code by code + 1 and re-sort
            new = fl[:pos] + fl[pos + 1:]
            new = tuple(sorted(new + (code + 1,)))
            v = out.get(new, 0) + c * mult
            if v:
                out[new] = v
            else:
                out.pop(new, None)
    return out


class _Generator:
    """One homogeneous generator in flat integer form, with cached derivatives."""

    def __init__(self, g: DiffPoly, codec: _Codec):
        if not g:
            raise ValueError("zero generator")
        self.grade = grade_of(g)
        self.poly = g
        self.den = lcm(*(c.denominator for c in g.terms.values()))
        self.derivs = [{codec.to_flat(m): int(c * self.den) for m, c in g.terms.items()}]

    def derivative(self, n: int) -> dict:
        while len(self.derivs) <= n:
            self.derivs.append(_flat_derive(self.derivs[-1]))
        return self.derivs[n]


def _dedup_gens(gens: Iterable[DiffPoly]) -> list[DiffPoly]:
    seen, out = set(), []
    for g in gens:
        if not g:
            continue
        key = g.primitive()
        if key not in seen:
            seen.add(key)
            out.append(g)
    return out


def _products(gen: _Generator, codec: _Codec, grade: Grade) -> Iterator[tuple[dict, int]]:
    """Yield ``(flat row, den)`` for each product m * d^n(gen) at the grade.

    Row coefficients are integers equal to ``den`` times the true ones.
    Order: derivative order n ascending, then m in canonical order.
    """
    rest = grade.minus(gen.grade)
    if rest is None:
        return
    for n in range(rest.weight + 1):
        mult_grade = Grade(rest.weight - n, rest.degrees)
        mults = codec.flat_slice(mult_grade)
        if not mults:
            continue
        dg = gen.derivative(n)
        for m in mults:
            row = {}
            for t, c in dg.items():
                key = tuple(sorted(m + t))
                v = row.get(key, 0) + c
                if v:
                    row[key] = v
                else:
                    row.pop(key, None)
            if row:
                yield row, gen.den


def ideal_slice_generators(gens: list[DiffPoly], grade: Grade, ring: Optional[DiffRing] = None) -> list[DiffPoly]:
    """All products ``m * derive_n(g, n)`` of the given grade (exact coefficients)."""
    gens = list(gens)
    if ring is None:
        if not gens:
            return []
        ring = gens[0].ring
    codec = _Codec(ring)
    out = []
    for g in _dedup_gens(gens):
        gen = _Generator(g, codec)
        for row, den in _products(gen, codec, grade):
            terms = {codec.to_monomial(fl): Fraction(c, den) for fl, c in row.items()}
            out.append(DiffPoly(ring, terms, _checked=True))
    return out


# -- exact elimination ---------------------------------------------------------


def _primitive(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


class Echelon:
    """Semi-echelon basis of a row space, pivoted on the leftmost column.

    Rows are sparse maps column -> int.  Each incoming row is reduced by
    fraction-free steps ``b*row - a*pivot`` (a/b the reduced ratio of the
    leading entries) followed by removal of the row content.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, dict] = {}
        self.steps = 0

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def full(self) -> bool:
        return len(self.pivots) == self.ncols

    def reduce(self, row: dict) -> dict:
        pivots = self.pivots
        while row:
            lead = min(row)
            pr = pivots.get(lead)
            if pr is None:
                return row
            a, b = row[lead], pr[lead]
            g = gcd(a, b)
            a //= g
            b //= g
            new = dict(row) if b == 1 else {c: v * b for c, v in row.items()}
            for c, v in pr.items():
                nv = new.get(c, 0) - a * v
                if nv:
                    new[c] = nv
                else:
                    del new[c]
            self.steps += 1
            row = _primitive(new)
        return row

    def add(self, row: dict) -> bool:
        """Insert a row; return True if it raised the rank."""
        if self.full:
            return False
        rest = self.reduce(row)
        if not rest:
            return False
        self.pivots[min(rest)] = rest
        return True


def slice_rank(rows: list[DiffPoly]) -> int:
    """Rank over Q of the coefficient matrix of the rows."""
    rows = [r for r in rows if r]
    if not rows:
        return 0
    cols = sorted({m for r in rows for m in r.terms}, key=Monomial.sort_key)
    index = {m: k for k, m in enumerate(cols)}
    ech = Echelon(len(cols))
    for r in rows:
        den = lcm(*(c.denominator for c in r.terms.values()))
        ech.add(_primitive({index[m]: int(c * den) for m, c in r.terms.items()}))
    return ech.rank


@dataclass
class SliceProblem:
    grade: Grade
    basis: list
    generator_rows: list


def slice_problem(ring: DiffRing, gens: list[DiffPoly], grade: Grade, ceiling: Optional[int] = None) -> SliceProblem:
    return SliceProblem(grade, enumerate_slice(ring, grade, ceiling), ideal_slice_generators(gens, grade, ring))


class IdealSlice:
    """The part of the differential ideal [gens] at one grade, in echelon form."""

    def __init__(self, ring: DiffRing, gens: list[DiffPoly], grade: Grade, ceiling: Optional[int] = None):
        for g in gens:
            if g.ring != ring:
                raise ValueError(f"generator {g} not in {ring}")
        self.ring = ring
        self.grade = grade
        self.gens = _dedup_gens(gens)
        self.basis_size = _check_ceiling(grade, ceiling)
        self._codec = _Codec(ring)
        flat = self._codec.flat_slice(grade)
        self._index = {fl: k for k, fl in enumerate(flat)}
        self.echelon = Echelon(len(flat))
        self.rows_seen = 0
        index = self._index
        for g in self.gens:
            gen = _Generator(g, self._codec)
            for row, _ in _products(gen, self._codec, grade):
                if self.echelon.full:
                    break
                self.rows_seen += 1
                self.echelon.add(_primitive({index[fl]: c for fl, c in row.items()}))

    @property
    def ideal_rank(self) -> int:
        return self.echelon.rank

    @property
    def quotient_dim(self) -> int:
        return self.basis_size - self.echelon.rank

    def contains(self, f: DiffPoly) -> bool:
        if f.ring != self.ring:
            raise ValueError(f"{f} not in {self.ring}")
        if not f:
            return True
        if grade_of(f) != self.grade:
            raise ValueError(f"{f} is not of grade {self.grade}")
        if self.echelon.full:
            return True
        den = lcm(*(c.denominator for c in f.terms.values()))
        row = {self._index[self._codec.to_flat(m)]: int(c * den) for m, c in f.terms.items()}
        return not self.echelon.reduce(_primitive(row))

    def report(self) -> dict:
        return {
            "grade": self.grade.to_dict(),
            "basis_size": self.basis_size,
            "ideal_rank": self.ideal_rank,
            "quotient_dim": self.quotient_dim,
        }


def _cache_key(ring: DiffRing, gens: list[DiffPoly], grade: Grade):
    return (ring, frozenset(g.primitive() for g in gens if g), grade)


def ideal_slice(ring, gens, grade, ceiling=None, cache: Optional[dict] = None) -> IdealSlice:
    """Build (or fetch from a caller-owned ``cache`` dict) the ideal slice."""
    if cache is None:
        return IdealSlice(ring, list(gens), grade, ceiling)
    key = _cache_key(ring, list(gens), grade)
    hit = cache.get(key)
    if hit is None:
        hit = cache[key] = IdealSlice(ring, list(gens), grade, ceiling)
    return hit


def is_member(f: DiffPoly, gens: list[DiffPoly], ceiling: Optional[int] = None, cache: Optional[dict] = None) -> bool:
    """Decide f in [gens] for homogeneous nonzero f."""
    if not f:
        raise ValueError("is_member expects a nonzero polynomial")
    grade = grade_of(f)
    return ideal_slice(f.ring, gens, grade, ceiling, cache).contains(f)


def quotient_slice_dim(ring: DiffRing, gens: list[DiffPoly], grade: Grade, ceiling: Optional[int] = None,
                       cache: Optional[dict] = None) -> int:
    return ideal_slice(ring, gens, grade, ceiling, cache).quotient_dim


def slice_report(ring, gens, grade, ceiling=None, cache=None) -> dict:
    return ideal_slice(ring, gens, grade, ceiling, cache).report()


def grades_up_to(families, max_weight: int, max_degree: int) -> list[Grade]:
    """Every grade with total degree <= max_degree and weight <= max_weight."""
    fams = list(families)
    out = []

    def degs(k, left):
        if k == len(fams):
            yield {}
            return
        for d in range(left + 1):
            for rest in degs(k + 1, left - d):
                yield {fams[k]: d, **rest}

    for w in range(max_weight + 1):
        for dg in degs(0, max_degree):
            out.append(Grade.of(dg, w))
    out.sort(key=lambda g: g.sort_key(fams))
    return out
