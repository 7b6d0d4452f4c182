"""Least nilpotency indices in k{T}/[T_0^p] and k{T,U}/[T_0 U_0].

``q_single(i, p)`` searches the least q with T_i^q in [T_0^p];
``q_pair(i, j)`` the least q with (T_i U_j)^q in [T_0 U_0].  Closed forms
checked against the search: (i+1)p - i and i + j + 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .diffalg import DiffPoly, DiffRing
from .slices import grade_of, ideal_slice

SINGLE_RING = DiffRing(["T"])
PAIR_RING = DiffRing(["T", "U"])


class SearchCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class RittQuery:
    kind: str  # "single" or "pair"
    i: int
    p: Optional[int] = None
    j: Optional[int] = None
    search_cap: Optional[int] = None

    def __post_init__(self):
        if self.kind == "single":
            if self.p is None or self.p < 1 or self.i < 0:
                raise ValueError(f"single query needs i >= 0 and p >= 1, got i={self.i}, p={self.p}")
        elif self.kind == "pair":
            if self.j is None or self.i < 0 or self.j < 0:
                raise ValueError(f"pair query needs i, j >= 0, got i={self.i}, j={self.j}")
        else:
            raise ValueError(f"unknown query kind {self.kind!r}")
        if self.search_cap is not None and self.search_cap < self.predicted:
            raise ValueError(f"search_cap {self.search_cap} is below the predicted index {self.predicted}")

    @property
    def predicted(self) -> int:
        if self.kind == "single":
            return (self.i + 1) * self.p - self.i
        return self.i + self.j + 1

    @property
    def cap(self) -> int:
        return self.search_cap if self.search_cap is not None else self.predicted + 2

    def ring(self) -> DiffRing:
        return SINGLE_RING if self.kind == "single" else PAIR_RING

    def generators(self) -> list[DiffPoly]:
        R = self.ring()
        if self.kind == "single":
            return [R.var("T", 0) ** self.p]
        return [R.var("T", 0) * R.var("U", 0)]

    def base(self) -> DiffPoly:
        R = self.ring()
        if self.kind == "single":
            return R.var("T", self.i)
        return R.var("T", self.i) * R.var("U", self.j)


@dataclass
class RittAnswer:
    query: RittQuery
    found_index: int
    witness_grades: list = field(default_factory=list)

    @property
    def predicted_index(self) -> int:
        return self.query.predicted

    @property
    def agree(self) -> bool:
        return self.found_index == self.predicted_index

    def to_dict(self) -> dict:
        q = self.query
        out = {"kind": q.kind, "i": q.i}
        if q.kind == "single":
            out["p"] = q.p
        else:
            out["j"] = q.j
        out.update(found=self.found_index, predicted=self.predicted_index, agree=self.agree,
                   witness=self.witness_grades)
        return out


def power_membership(query: RittQuery, q: int, ceiling=None, cache=None) -> tuple[bool, dict]:
    """Decide base(query)^q in the ideal; also return the slice statistics."""
    f = query.base() ** q
    sl = ideal_slice(query.ring(), query.generators(), grade_of(f), ceiling, cache)
    member = sl.contains(f)
    record = {"q": q, **sl.report(), "member": member}
    return member, record


def solve(query: RittQuery, fast: bool = False, ceiling=None, cache: Optional[dict] = None) -> RittAnswer:
    """Least q in 1..cap with base^q in the ideal.

    ``fast`` only checks predicted - 1 and predicted, falling back to the
    full ascending search when those two disagree with the closed form.
    """
    if fast:
        pred = query.predicted
        witness = []
        ok = True
        if pred - 1 >= 1:
            member, rec = power_membership(query, pred - 1, ceiling, cache)
            witness.append(rec)
            ok = not member
        if ok:
            member, rec = power_membership(query, pred, ceiling, cache)
            witness.append(rec)
            if member:
                return RittAnswer(query, pred, witness)
    witness = []
    for q in range(1, query.cap + 1):
        member, rec = power_membership(query, q, ceiling, cache)
        if member:
            # keep the decisive pair: last non-member and first member
            witness = witness[-1:] + [rec]
            return RittAnswer(query, q, witness)
        witness.append(rec)
    raise SearchCapExceeded(f"no membership up to q={query.cap} for {query}")


def q_single(i: int, p: int, search_cap: Optional[int] = None, fast: bool = False, ceiling=None,
             cache: Optional[dict] = None) -> RittAnswer:
    return solve(RittQuery("single", i, p=p, search_cap=search_cap), fast, ceiling, cache)


def q_pair(i: int, j: int, search_cap: Optional[int] = None, fast: bool = False, ceiling=None,
           cache: Optional[dict] = None) -> RittAnswer:
    return solve(RittQuery("pair", i, j=j, search_cap=search_cap), fast, ceiling, cache)


def verify_power_threshold(i: int, p: int, ceiling=None, cache: Optional[dict] = None) -> bool:
    """e_{-i}^{i(p-1)} != 0 and e_{-i}^{i(p-1)+1} = 0, read through e_{-i} -> T_{i-1}/(i-1)!.

    Nonzero scalars do not change membership, so the factorial drops out.
    """
    if i < 1 or p < 2:
        raise ValueError(f"need i >= 1 and p >= 2, got i={i}, p={p}")
    R = SINGLE_RING
    gens = [R.var("T", 0) ** p]
    t = R.var("T", i - 1)
    top = i * (p - 1)
    below = ideal_slice(R, gens, grade_of(t ** top), ceiling, cache).contains(t ** top)
    above = ideal_slice(R, gens, grade_of(t ** (top + 1)), ceiling, cache).contains(t ** (top + 1))
    return (not below) and above
