"""Sparse multivariate polynomials over GF(2^n).

Terms live in a dict keyed by exponent tuples (one slot per variable) with
nonzero field-element masks as values.  Rings fix the variable count and the
coefficient field; the last slot plays the role of the eliminand X for the
univariate-in-X views used by Sylvester matrices and resultants.

Canonical term order everywhere is graded reverse lexicographic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from .fieldalg import FieldElement, FieldSpec

Exponents = Tuple[int, ...]


@dataclass(frozen=True)
class PolyRing:
    nvars: int
    field: FieldSpec

    def zero(self) -> "MPoly":
        return MPoly(self, {})

    def constant(self, coeff: int) -> "MPoly":
        if coeff == 0:
            return self.zero()
        return MPoly(self, {(0,) * self.nvars: coeff})

    def variable(self, i: int, power: int = 1, coeff: int = 1) -> "MPoly":
        exps = [0] * self.nvars
        exps[i] = power
        return MPoly(self, {tuple(exps): coeff}) if coeff else self.zero()

    def monomial(self, exps: Sequence[int], coeff: int = 1) -> "MPoly":
        if len(exps) != self.nvars:
            raise ValueError("exponent tuple length != nvars")
        return MPoly(self, {tuple(exps): coeff}) if coeff else self.zero()


def grevlex_key(exps: Exponents) -> tuple:
    """Sort key; larger key = larger monomial in grevlex."""
    return (sum(exps), tuple(-e for e in reversed(exps)))


class MPoly:
    """Sparse polynomial; immutable by convention (operations return new)."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Dict[Exponents, int]):
        self.ring = ring
        self.terms = terms

    # -- basics ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (isinstance(other, MPoly) and self.ring == other.ring
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def _check(self, other: "MPoly"):
        if self.ring != other.ring:
            raise ValueError("ring mismatch")

    def __add__(self, other: "MPoly") -> "MPoly":
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            nc = terms.get(e, 0) ^ c
            if nc:
                terms[e] = nc
            else:
                terms.pop(e, None)
        return MPoly(self.ring, terms)

    __sub__ = __add__

    def __mul__(self, other: "MPoly") -> "MPoly":
        self._check(other)
        sp = self.ring.field
        mul = sp.mul
        terms: Dict[Exponents, int] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                c = terms.get(e, 0) ^ mul(ca, cb)
                if c:
                    terms[e] = c
                else:
                    terms.pop(e, None)
        return MPoly(self.ring, terms)

    def scale(self, coeff: int) -> "MPoly":
        if coeff == 0:
            return self.ring.zero()
        if coeff == 1:
            return self
        mul = self.ring.field.mul
        return MPoly(self.ring, {e: mul(c, coeff) for e, c in self.terms.items()})

    # -- degrees ---------------------------------------------------------

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=0)

    def coeff(self, exps: Sequence[int]) -> int:
        return self.terms.get(tuple(exps), 0)

    # -- evaluation ------------------------------------------------------

    def eval_masks(self, point: Sequence[int]) -> int:
        if len(point) != self.ring.nvars:
            raise ValueError("point length != nvars")
        sp = self.ring.field
        acc = 0
        for exps, c in self.terms.items():
            v = c
            for x, e in zip(point, exps):
                if e:
                    v = sp.mul(v, sp.pow(x, e))
                    if v == 0:
                        break
            acc ^= v
        return acc

    def eval(self, point: Sequence[FieldElement]) -> FieldElement:
        sp = self.ring.field
        return sp.element(self.eval_masks([p.mask for p in point]))

    # -- views and variable plumbing --------------------------------------

    def coeffs_in_X(self) -> List["MPoly"]:
        """Coefficients [c_0, ..., c_degX] of self as a univariate in the
        last ring slot; each c_i lives in the same ring with X-slot zero."""
        x = self.ring.nvars - 1
        deg = self.degree_in(x)
        buckets: List[Dict[Exponents, int]] = [dict() for _ in range(deg + 1)]
        for exps, c in self.terms.items():
            stripped = exps[:x] + (0,)
            buckets[exps[x]][stripped] = c
        return [MPoly(self.ring, b) for b in buckets]

    def map_vars(self, new_ring: PolyRing, mapping: Sequence[int]) -> "MPoly":
        """Reinterpret in new_ring; old variable k becomes slot mapping[k]."""
        if len(mapping) != self.ring.nvars:
            raise ValueError("mapping length != nvars")
        terms: Dict[Exponents, int] = {}
        for exps, c in self.terms.items():
            ne = [0] * new_ring.nvars
            for k, e in enumerate(exps):
                ne[mapping[k]] += e
            terms[tuple(ne)] = terms.get(tuple(ne), 0) ^ c
        return MPoly(new_ring, {e: c for e, c in terms.items() if c})

    def drop_var(self, i: int) -> "MPoly":
        """Remove slot i; every term must have exponent zero there."""
        if self.degree_in(i):
            raise ValueError(f"variable {i} still occurs")
        ring = PolyRing(self.ring.nvars - 1, self.ring.field)
        return MPoly(ring, {e[:i] + e[i + 1:]: c for e, c in self.terms.items()})

    def subs_var(self, i: int, value: "MPoly") -> "MPoly":
        """Substitute a polynomial for slot i (used by test oracles)."""
        self._check(value)
        out = self.ring.zero()
        powers = {0: self.ring.constant(1)}

        def power(e):
            if e not in powers:
                powers[e] = power(e - 1) * value
            return powers[e]

        for exps, c in self.terms.items():
            rest = self.ring.monomial(exps[:i] + (0,) + exps[i + 1:], c)
            out = out + rest * power(exps[i])
        return out

    # -- text form ---------------------------------------------------------

    def sorted_terms(self) -> List[Tuple[Exponents, int]]:
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def to_text(self) -> str:
        if not self.terms:
            return "0x0"
        parts = []
        for exps, c in self.sorted_terms():
            factors = [f"x{i + 1}^{e}" for i, e in enumerate(exps) if e]
            if not factors:
                parts.append(f"0x{c:x}")
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append(f"0x{c:x}*" + "*".join(factors))
        return " + ".join(parts)

    @classmethod
    def from_text(cls, ring: PolyRing, text: str) -> "MPoly":
        text = text.strip()
        poly = ring.zero()
        if text in ("0", "0x0"):
            return poly
        for term in text.split(" + "):
            coeff = 1
            exps = [0] * ring.nvars
            for factor in term.strip().split("*"):
                if factor.startswith("0x"):
                    coeff = int(factor, 16)
                elif factor.startswith("x"):
                    var, _, e = factor[1:].partition("^")
                    exps[int(var) - 1] += int(e) if e else 1
                else:
                    raise ValueError(f"bad factor {factor!r}")
            poly = poly + ring.monomial(exps, coeff)
        return poly

    def __repr__(self):
        return f"MPoly({self.to_text()})"


# ----------------------------------------------------------------------
# Determinants and resultants
# ----------------------------------------------------------------------

class PolyMatrix:
    """Square matrix of MPoly entries sharing one ring."""

    def __init__(self, entries: List[List[MPoly]]):
        self.size = len(entries)
        if any(len(r) != self.size for r in entries):
            raise ValueError("matrix not square")
        self.entries = entries
        if self.size:
            ring = entries[0][0].ring
            if any(e.ring != ring for row in entries for e in row):
                raise ValueError("mixed rings in matrix")
            self.ring = ring

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]


def det_poly(matrix: PolyMatrix) -> MPoly:
    """Exact determinant by cofactor expansion, minors memoized on the
    (row, remaining-column-set) pair.  Signs are irrelevant over char 2."""
    size = matrix.size
    if size == 0:
        raise ValueError("empty matrix")
    if size > 12:
        raise ValueError("determinant capped at size 12")
    ring = matrix.ring
    memo: Dict[Tuple[int, int], MPoly] = {}

    def minor(row: int, cols: int) -> MPoly:
        if row == size:
            return ring.constant(1)
        key = (row, cols)
        hit = memo.get(key)
        if hit is not None:
            return hit
        acc = ring.zero()
        c = cols
        while c:
            low = c & -c
            j = low.bit_length() - 1
            entry = matrix.entries[row][j]
            if entry.terms:
                acc = acc + entry * minor(row + 1, cols ^ low)
            c ^= low
        memo[key] = acc
        return acc

    return minor(0, (1 << size) - 1)


def sylvester_matrix(f: MPoly, g: MPoly) -> PolyMatrix:
    """Sylvester matrix of f, g seen as univariates in the last ring slot."""
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of zero polynomial")
    cf = f.coeffs_in_X()
    cg = g.coeffs_in_X()
    k, l = len(cf) - 1, len(cg) - 1
    ring = f.ring
    size = k + l
    zero = ring.zero()
    rows = [[zero] * size for _ in range(size)]
    for i in range(l):
        for j in range(k + 1):
            rows[i][i + j] = cf[k - j]
    for i in range(k):
        for j in range(l + 1):
            rows[l + i][i + j] = cg[l - j]
    return PolyMatrix(rows)


def sylvester_resultant(f: MPoly, g: MPoly) -> MPoly:
    """Res_X(f, g) for the last ring slot X; the result is X-free."""
    f._check(g)
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of zero polynomial")
    cf = f.coeffs_in_X()
    cg = g.coeffs_in_X()
    if len(cf) == 1 and len(cg) == 1:
        return f.ring.constant(1)
    if len(cf) == 1:
        out = f.ring.constant(1)
        for _ in range(len(cg) - 1):
            out = out * cf[0]
        return out
    if len(cg) == 1:
        out = f.ring.constant(1)
        for _ in range(len(cf) - 1):
            out = out * cg[0]
        return out
    res = det_poly(sylvester_matrix(f, g))
    if res.degree_in(f.ring.nvars - 1):
        raise AssertionError("resultant not free of the eliminand")
    return res
