"""Differential polynomial rings k{B} over the rationals.

A ring is declared with its generator families ``B``.  The jet variable
``a_i`` of family ``a`` is a :class:`VarId`; the derivation acts by
``d(a_i) = a_{i+1}`` and extends to products by the Leibniz rule.

Monomials are sorted sparse ``(VarId, exponent)`` pairs.  Their canonical
order is graded (total degree first), then lexicographic on the sorted
list of variables counted with multiplicity, with variables ordered by
family name and then jet index.

Text format (also used by the CLI)::

    2*T_0*T_2 + 2*T_1^2 - 1/3*U_4
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import lcm
from typing import Iterable, Iterator, Mapping, NamedTuple, Union


class VarId(NamedTuple):
    family: str
    jet: int

    def __str__(self) -> str:
        return f"{self.family}_{self.jet}"


class Monomial(tuple):
    """Product of jet variables, stored as sorted ``(VarId, exponent)`` pairs.

    Exponents are always positive; the empty tuple is the unit monomial.
    """

    __slots__ = ()

    def __new__(cls, exponents: Union[Mapping[VarId, int], Iterable[tuple]] = ()):
        if isinstance(exponents, Mapping):
            items = exponents.items()
        else:
            items = exponents
        merged: dict[VarId, int] = {}
        for v, e in items:
            v = VarId(*v)
            if v.jet < 0:
                raise ValueError(f"negative jet index in {v}")
            if e < 0:
                raise ValueError(f"negative exponent {e} on {v}")
            if e:
                merged[v] = merged.get(v, 0) + e
        return super().__new__(cls, sorted(merged.items()))

    @classmethod
    def _trusted(cls, pairs) -> "Monomial":
        # pairs already sorted, positive exponents, no duplicate VarIds
        return tuple.__new__(cls, pairs)

    @classmethod
    def var(cls, family: str, jet: int, exponent: int = 1) -> "Monomial":
        return cls([(VarId(family, jet), exponent)])

    @property
    def degree(self) -> int:
        return sum(e for _, e in self)

    @property
    def weight(self) -> int:
        return sum(v.jet * e for v, e in self)

    def multidegree(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for v, e in self:
            out[v.family] = out.get(v.family, 0) + e
        return out

    def families(self) -> set[str]:
        return {v.family for v, _ in self}

    def flat(self) -> tuple:
        """Sorted variables repeated by exponent (the lex component of the order)."""
        out = []
        for v, e in self:
            out.extend([v] * e)
        return tuple(out)

    def sort_key(self):
        return (self.degree, self.flat())

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not other:
            return self
        if not self:
            return other
        a, b = dict(self), other
        for v, e in b:
            a[v] = a.get(v, 0) + e
        return Monomial._trusted(sorted(a.items()))

    def __str__(self) -> str:
        if not self:
            return "1"
        return "*".join(str(v) if e == 1 else f"{v}^{e}" for v, e in self)

    def __repr__(self) -> str:
        return f"Monomial({str(self)!r})"


ONE = Monomial()


class DiffRing:
    """The ring k{B}; ``families`` is the declared generator set B."""

    def __init__(self, families: Iterable[str]):
        fams = tuple(families)
        if len(set(fams)) != len(fams):
            raise ValueError(f"duplicate family in {fams}")
        for f in fams:
            if not _FAMILY_RE.fullmatch(f):
                raise ValueError(f"bad family name {f!r}")
        self.families = fams
        self._famset = frozenset(fams)

    def __eq__(self, other):
        return isinstance(other, DiffRing) and self._famset == other._famset

    def __hash__(self):
        return hash(self._famset)

    def __repr__(self):
        return f"DiffRing({list(self.families)})"

    def check_monomial(self, m: Monomial) -> None:
        for v, _ in m:
            if v.family not in self._famset:
                raise ValueError(f"variable {v} is not in ring with families {list(self.families)}")

    def var(self, family: str, jet: int) -> "DiffPoly":
        return DiffPoly(self, {Monomial.var(family, jet): 1})

    def const(self, c) -> "DiffPoly":
        return DiffPoly(self, {ONE: c})

    def zero(self) -> "DiffPoly":
        return DiffPoly(self, {})

    def monomial(self, m: Monomial, c=1) -> "DiffPoly":
        return DiffPoly(self, {m: c})

    def parse(self, text: str) -> "DiffPoly":
        return parse_poly(self, text)


class DiffPoly:
    """Immutable finitely supported map Monomial -> Fraction."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: DiffRing, terms: Mapping[Monomial, object] = (), _checked=False):
        self.ring = ring
        if _checked:
            self.terms = terms
        else:
            clean: dict[Monomial, Fraction] = {}
            for m, c in dict(terms).items():
                if not isinstance(m, Monomial):
                    m = Monomial(m)
                ring.check_monomial(m)
                c = Fraction(c)
                if c:
                    clean[m] = clean.get(m, 0) + c
                    if not clean[m]:
                        del clean[m]
            self.terms = clean
        self._hash = None

    # -- structure ---------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, DiffPoly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({ONE: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def monomials(self) -> list[Monomial]:
        return sorted(self.terms, key=Monomial.sort_key)

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        for m in self.monomials():
            yield m, self.terms[m]

    def coeff(self, m: Monomial) -> Fraction:
        return self.terms.get(m, Fraction(0))

    def bigrades(self) -> set:
        """Set of ``(multidegree, weight)`` pairs occurring in the support."""
        return {(tuple(sorted(m.multidegree().items())), m.weight) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.bigrades()) <= 1

    def primitive(self) -> "DiffPoly":
        """Scale to integer coefficients with content 1 and positive leading term."""
        if not self:
            return self
        den = lcm(*(c.denominator for c in self.terms.values()))
        ints = [int(c * den) for c in self.terms.values()]
        from math import gcd

        g = 0
        for x in ints:
            g = gcd(g, x)
        lead = self.terms[self.monomials()[0]]
        s = Fraction(den, g) * (1 if lead > 0 else -1)
        return self.scale(s)

    # -- arithmetic --------------------------------------------------------

    def _same_ring(self, other: "DiffPoly"):
        if self.ring != other.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")

    def _coerce(self, other) -> "DiffPoly":
        if isinstance(other, DiffPoly):
            self._same_ring(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return DiffPoly(self.ring, out, _checked=True)

    __radd__ = __add__

    def __neg__(self):
        return DiffPoly(self.ring, {m: -c for m, c in self.terms.items()}, _checked=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "DiffPoly":
        c = Fraction(c)
        if not c:
            return self.ring.zero()
        return DiffPoly(self.ring, {m: c * v for m, v in self.terms.items()}, _checked=True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = self.ring.const(1)
        base = self
        while e:
            if e & 1:
                result = poly_mul(result, base)
            e >>= 1
            if e:
                base = poly_mul(base, base)
        return result

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"DiffPoly({format_poly(self)!r})"


def poly_mul(f: DiffPoly, g: DiffPoly) -> DiffPoly:
    f._same_ring(g)
    out: dict[Monomial, Fraction] = {}
    for m1, c1 in f.terms.items():
        for m2, c2 in g.terms.items():
            m = m1 * m2
            v = out.get(m, 0) + c1 * c2
            if v:
                out[m] = v
            else:
                del out[m]
    return DiffPoly(f.ring, out, _checked=True)


def derive_monomial(m: Monomial) -> Iterator[tuple[Monomial, int]]:
    """Leibniz expansion of d(m) as ``(monomial, integer multiplicity)`` pairs."""
    for v, e in m:
        bumped = dict(m)
        if e == 1:
            del bumped[v]
        else:
            bumped[v] = e - 1
        up = VarId(v.family, v.jet + 1)
        bumped[up] = bumped.get(up, 0) + 1
        yield Monomial._trusted(sorted(bumped.items())), e


def derive(f: DiffPoly) -> DiffPoly:
    out: dict[Monomial, Fraction] = {}
    for m, c in f.terms.items():
        for dm, e in derive_monomial(m):
            v = out.get(dm, 0) + c * e
            if v:
                out[dm] = v
            else:
                del out[dm]
    return DiffPoly(f.ring, out, _checked=True)


def derive_n(f: DiffPoly, n: int) -> DiffPoly:
    if n < 0:
        raise ValueError(f"derive_n needs n >= 0, got {n}")
    for _ in range(n):
        f = derive(f)
    return f


# -- text format ---------------------------------------------------------------

_FAMILY_RE = re.compile(r"[A-Za-z][A-Za-z0-9]*")
_FACTOR_RE = re.compile(r"\s*(?:([A-Za-z][A-Za-z0-9]*)_(\d+)(?:\^(\d+))?|(\d+)(?:/(\d+))?)\s*")


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(f: DiffPoly) -> str:
    if not f:
        return "0"
    parts = []
    for k, (m, c) in enumerate(f.items()):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not m:
            body = _format_coeff(a)
        elif a == 1:
            body = str(m)
        else:
            body = f"{_format_coeff(a)}*{m}"
        if k == 0:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


def parse_poly(ring: DiffRing, text: str) -> DiffPoly:
    """Inverse of :func:`format_poly`; also accepts the unicode minus sign."""
    s = text.replace("−", "-").strip()
    if not s:
        raise ValueError("empty polynomial text")
    # split into signed terms at top-level +/- (no parentheses in this format)
    tokens = re.split(r"([+-])", s)
    terms: dict[Monomial, Fraction] = {}
    sign = 1
    pending = False
    for tok in tokens:
        tok = tok.strip()
        if tok in ("+", "-"):
            if pending:
                raise ValueError(f"dangling sign in {text!r}")
            sign = sign * (-1 if tok == "-" else 1)
            pending = True
            continue
        if not tok:
            continue
        c, m = _parse_term(tok, text)
        terms[m] = terms.get(m, 0) + sign * c
        sign, pending = 1, False
    if pending:
        raise ValueError(f"trailing sign in {text!r}")
    return DiffPoly(ring, terms)


def _parse_term(tok: str, text: str) -> tuple[Fraction, Monomial]:
    coeff = Fraction(1)
    exps: dict[VarId, int] = {}
    for factor in tok.split("*"):
        mt = _FACTOR_RE.fullmatch(factor)
        if mt is None:
            raise ValueError(f"cannot parse factor {factor!r} in {text!r}")
        fam, jet, exp, num, den = mt.groups()
        if fam is not None:
            v = VarId(fam, int(jet))
            exps[v] = exps.get(v, 0) + (int(exp) if exp else 1)
        else:
            if den is not None and int(den) == 0:
                raise ValueError(f"zero denominator in {text!r}")
            coeff *= Fraction(int(num), int(den) if den else 1)
    return coeff, Monomial(exps)
