"""Arithmetic in GF(2^n) and exact linear algebra over F2 and GF(2^n).

Field elements are plain ints: bit i is the coordinate of z^i in the
polynomial basis 1, z, ..., z^(n-1), with reduction by a fixed irreducible
polynomial over F2.  FieldSpec operates on raw masks (the fast path, with
log/exp tables for small n); FieldElement wraps a mask together with its
spec for domain-level code.

Matrices over F2 are stored row-wise as ints (one bit per column), which
makes row operations single XORs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence

# log/exp tables are built up to this extension degree (2*2^18 ints).
_TABLE_MAX = 18


# ----------------------------------------------------------------------
# F2[x] helpers on int masks (bit i = coefficient of x^i)
# ----------------------------------------------------------------------

def _f2poly_mod(a: int, m: int) -> int:
    mb = m.bit_length()
    while a.bit_length() >= mb:
        a ^= m << (a.bit_length() - mb)
    return a


def _f2poly_mul(a: int, b: int) -> int:
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        a <<= 1
        b >>= 1
    return acc


def _f2poly_mulmod(a: int, b: int, m: int) -> int:
    return _f2poly_mod(_f2poly_mul(a, b), m)


def _f2poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _f2poly_mod(a, b)
    return a


def is_irreducible(f: int, n: int) -> bool:
    """Whether the degree-n mask f is irreducible over F2.

    Uses the factor-degree sieve: f has an irreducible factor of degree
    dividing i iff gcd(x^(2^i) + x, f) != 1.
    """
    if f.bit_length() != n + 1:
        return False
    if n == 1:
        return True
    t = 0b10  # the polynomial x
    for _ in range(n // 2):
        t = _f2poly_mulmod(t, t, f)
        if _f2poly_gcd(t ^ 0b10, f) != 1:
            return False
    return True


_SMALLEST_IRREDUCIBLE: dict[int, int] = {}


def smallest_irreducible(n: int) -> int:
    """Smallest degree-n mask that is irreducible over F2 (deterministic)."""
    cached = _SMALLEST_IRREDUCIBLE.get(n)
    if cached is not None:
        return cached
    f = 1 << n
    while not is_irreducible(f, n):
        f += 1
    _SMALLEST_IRREDUCIBLE[n] = f
    return f


def _factor_trial(x: int) -> List[int]:
    primes = []
    d = 2
    while d * d <= x:
        if x % d == 0:
            primes.append(d)
            while x % d == 0:
                x //= d
        d += 1
    if x > 1:
        primes.append(x)
    return primes


# ----------------------------------------------------------------------
# GF(2^n)
# ----------------------------------------------------------------------

class FieldSpec:
    """GF(2^n) with an explicit degree-n reduction polynomial.

    The default reduction polynomial is the smallest irreducible of the
    requested degree, so specs are reproducible across runs.
    """

    def __init__(self, n: int, reduction_poly: Optional[int] = None):
        if not 1 <= n <= 64:
            raise ValueError(f"extension degree {n} out of range 1..64")
        if reduction_poly is None:
            reduction_poly = smallest_irreducible(n)
        if reduction_poly.bit_length() != n + 1:
            raise ValueError("reduction polynomial degree != n")
        if not is_irreducible(reduction_poly, n):
            raise ValueError(f"reduction polynomial 0x{reduction_poly:x} is reducible")
        self.n = n
        self.reduction_poly = reduction_poly
        self.order = 1 << n
        self._exp: Optional[List[int]] = None
        self._log: Optional[List[int]] = None
        self._quad_solver: Optional[List[tuple[int, int, int]]] = None
        if n <= _TABLE_MAX:
            self._build_tables()

    # -- construction helpers ------------------------------------------

    def _build_tables(self):
        q1 = self.order - 1
        prime_parts = _factor_trial(q1)
        g = 2
        while True:
            if all(self._pow_slow(g, q1 // p) != 1 for p in prime_parts):
                break
            g += 1
        exp = [0] * (2 * q1)
        log = [0] * self.order
        v = 1
        for i in range(q1):
            exp[i] = v
            log[v] = i
            v = self._mul_slow(v, g)
        for i in range(q1, 2 * q1):
            exp[i] = exp[i - q1]
        self._exp = exp
        self._log = log

    # -- mask-level arithmetic -----------------------------------------

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def _mul_slow(self, a: int, b: int) -> int:
        red = self.reduction_poly
        top = 1 << self.n
        acc = 0
        while b:
            if b & 1:
                acc ^= a
            a <<= 1
            if a & top:
                a ^= red
            b >>= 1
        return acc

    def mul(self, a: int, b: int) -> int:
        if self._log is not None:
            if a == 0 or b == 0:
                return 0
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_slow(a, b)

    def _pow_slow(self, a: int, e: int) -> int:
        acc = 1
        while e:
            if e & 1:
                acc = self._mul_slow(acc, a)
            a = self._mul_slow(a, a)
            e >>= 1
        return acc

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 0 if e else 1
        if self._log is not None:
            q1 = self.order - 1
            return self._exp[(self._log[a] * e) % q1]
        return self._pow_slow(a, e)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(2^n)")
        if self._log is not None:
            q1 = self.order - 1
            return self._exp[q1 - self._log[a]]
        return self._pow_slow(a, self.order - 2)

    def frobenius(self, a: int, j: int) -> int:
        """a^(2^j); the Frobenius automorphism iterated j times."""
        if j < 0:
            raise ValueError("negative Frobenius exponent")
        j %= self.n
        if a == 0 or a == 1 or j == 0:
            return a
        if self._log is not None:
            q1 = self.order - 1
            return self._exp[(self._log[a] << j) % q1]
        for _ in range(j):
            a = self._mul_slow(a, a)
        return a

    def sqrt(self, a: int) -> int:
        return self.frobenius(a, self.n - 1)

    def trace(self, a: int) -> int:
        """Absolute trace, valued in {0, 1}."""
        acc = 0
        t = a
        for _ in range(self.n):
            acc ^= t
            t = self.mul(t, t)
        return acc

    def half_trace(self, a: int) -> int:
        acc = 0
        t = a
        for _ in range((self.n - 1) // 2 + 1):
            acc ^= t
            t = self.frobenius(t, 2)
        return acc

    def solve_quadratic(self, a: int) -> int:
        """A root t of t^2 + t = a; requires trace(a) = 0.

        Odd n uses the half-trace; even n solves the linearized map
        directly (echelon form cached on the spec).
        """
        if a == 0:
            return 0
        if self.trace(a) != 0:
            raise ValueError("t^2 + t = a has no root: trace(a) = 1")
        if self.n % 2 == 1:
            return self.half_trace(a)
        return self._solve_quadratic_even(a)

    def _solve_quadratic_even(self, a: int) -> int:
        if self._quad_solver is None:
            # images of the basis under t -> t^2 + t; a root of t^2+t = a is
            # any combination of basis vectors whose images XOR to a.
            images = [self.add(self.mul(1 << j, 1 << j), 1 << j) for j in range(self.n)]
            self._quad_solver = _echelon_with_transform(images)
        sol = 0
        residual = a
        for pivot_col, row_mask, comb in self._quad_solver:
            if (residual >> pivot_col) & 1:
                residual ^= row_mask
                sol ^= comb
        if residual:
            raise ValueError("t^2 + t = a has no root: trace(a) = 1")
        return sol

    # -- element/domain layer ------------------------------------------

    def element(self, mask: int) -> "FieldElement":
        if mask >> self.n:
            raise ValueError(f"mask 0x{mask:x} wider than {self.n} bits")
        return FieldElement(self, mask)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def z(self) -> "FieldElement":
        return FieldElement(self, 2 if self.n > 1 else 1)

    def random_mask(self, rng: random.Random) -> int:
        return rng.getrandbits(self.n)

    def random_element(self, rng: random.Random) -> "FieldElement":
        return FieldElement(self, self.random_mask(rng))

    # -- identity / text -----------------------------------------------

    def __eq__(self, other) -> bool:
        return (isinstance(other, FieldSpec)
                and self.n == other.n
                and self.reduction_poly == other.reduction_poly)

    def __hash__(self) -> int:
        return hash((self.n, self.reduction_poly))

    def __repr__(self) -> str:
        return f"gf2e:n={self.n}:red=0x{self.reduction_poly:x}"

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        parts = text.strip().split(":")
        if len(parts) != 3 or parts[0] != "gf2e":
            raise ValueError(f"bad field spec text: {text!r}")
        n = int(parts[1].removeprefix("n="))
        red = int(parts[2].removeprefix("red="), 16)
        return cls(n, red)


def _echelon_with_transform(rows: List[int]) -> List[tuple[int, int, int]]:
    """Reduced echelon form of F2 rows, tracking input combinations.

    Returns (pivot_column, reduced_row, input_combination) triples in which
    every pivot column occurs in exactly one row; used to solve M x = v for
    several right-hand sides without re-eliminating.
    """
    pivots: List[tuple[int, int, int]] = []
    for i, row in enumerate(rows):
        comb = 1 << i
        for pc, prow, pcomb in pivots:
            if (row >> pc) & 1:
                row ^= prow
                comb ^= pcomb
        if row:
            pc = row.bit_length() - 1
            pivots = [
                (qc, qrow ^ row, qcomb ^ comb) if (qrow >> pc) & 1 else (qc, qrow, qcomb)
                for qc, qrow, qcomb in pivots
            ]
            pivots.append((pc, row, comb))
    return pivots


@dataclass(frozen=True)
class FieldElement:
    """A GF(2^n) element: an n-bit coordinate mask plus its FieldSpec."""

    spec: FieldSpec
    mask: int

    def _check(self, other: "FieldElement"):
        if self.spec != other.spec:
            raise ValueError("FieldSpec mismatch")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.spec, self.mask ^ other.mask)

    __sub__ = __add__

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.spec, self.spec.mul(self.mask, other.mask))

    def inv(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.inv(self.mask))

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return self * other.inv()

    def __pow__(self, e: int) -> "FieldElement":
        return FieldElement(self.spec, self.spec.pow(self.mask, e))

    def frobenius(self, j: int) -> "FieldElement":
        return FieldElement(self.spec, self.spec.frobenius(self.mask, j))

    def trace(self) -> int:
        return self.spec.trace(self.mask)

    def __bool__(self) -> bool:
        return self.mask != 0

    def __str__(self) -> str:
        return f"0x{self.mask:x}"


def fe_add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def fe_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def fe_inv(a: FieldElement) -> FieldElement:
    return a.inv()


def frobenius(a: FieldElement, j: int) -> FieldElement:
    return a.frobenius(j)


def solve_artin_schreier(a: FieldElement) -> FieldElement:
    """t with t^2 + t = a; raises ValueError when trace(a) = 1."""
    return FieldElement(a.spec, a.spec.solve_quadratic(a.mask))


# ----------------------------------------------------------------------
# Linear algebra over F2
# ----------------------------------------------------------------------

@dataclass
class F2Matrix:
    """Bit-packed F2 matrix; row i is the int bits[i], bit j = column j."""

    rows: int
    cols: int
    bits: List[int]

    @classmethod
    def from_rows(cls, rows: Sequence[int], cols: int) -> "F2Matrix":
        return cls(len(rows), cols, list(rows))

    def transpose(self) -> "F2Matrix":
        out = [0] * self.cols
        for i, row in enumerate(self.bits):
            while row:
                j = row.bit_length() - 1
                out[j] |= 1 << i
                row ^= 1 << j
        return F2Matrix(self.cols, self.rows, out)

    def rank(self) -> int:
        return f2_rank_rows(self.bits)


def f2_rank_rows(rows: Iterable[int]) -> int:
    """Rank over F2 of rows given as ints; inputs are not mutated."""
    pivots: dict[int, int] = {}
    rank = 0
    for row in rows:
        while row:
            h = row.bit_length() - 1
            p = pivots.get(h)
            if p is None:
                pivots[h] = row
                rank += 1
                break
            row ^= p
    return rank


def f2_rank(matrix: F2Matrix) -> int:
    return matrix.rank()


# ----------------------------------------------------------------------
# Linear algebra over GF(2^n)
# ----------------------------------------------------------------------

class FieldMatrix:
    """Dense matrix over one GF(2^n); entries stored as masks."""

    def __init__(self, spec: FieldSpec, entries: List[List[int]]):
        self.spec = spec
        self.entries = [list(r) for r in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0
        if any(len(r) != self.cols for r in self.entries):
            raise ValueError("ragged matrix")

    def rank(self) -> int:
        return self._eliminate([0] * self.rows)[0]

    def _eliminate(self, rhs: List[int]):
        """Forward elimination on a working copy; returns (rank, rows, rhs, pivcols)."""
        sp = self.spec
        work = [list(r) for r in self.entries]
        vec = list(rhs)
        piv_cols: List[int] = []
        r = 0
        for c in range(self.cols):
            sel = None
            for i in range(r, self.rows):
                if work[i][c]:
                    sel = i
                    break
            if sel is None:
                continue
            work[r], work[sel] = work[sel], work[r]
            vec[r], vec[sel] = vec[sel], vec[r]
            inv = sp.inv(work[r][c])
            work[r] = [sp.mul(inv, x) for x in work[r]]
            vec[r] = sp.mul(inv, vec[r])
            for i in range(self.rows):
                if i != r and work[i][c]:
                    f = work[i][c]
                    work[i] = [x ^ sp.mul(f, y) for x, y in zip(work[i], work[r])]
                    vec[i] ^= sp.mul(f, vec[r])
            piv_cols.append(c)
            r += 1
            if r == self.rows:
                break
        return r, work, vec, piv_cols


def field_rank(matrix: FieldMatrix) -> int:
    return matrix.rank()


def field_solve(matrix: FieldMatrix, v: Sequence[int]) -> Optional[List[int]]:
    """Any solution x of M x = v, or None when the system is inconsistent.

    Free variables are set to zero, so the zero solution comes back as a
    list of zeros, distinct from the None of an inconsistent system.
    """
    if len(v) != matrix.rows:
        raise ValueError("rhs length != row count")
    rank, work, vec, piv_cols = matrix._eliminate(list(v))
    for i in range(rank, matrix.rows):
        if vec[i]:
            return None
    x = [0] * matrix.cols
    for i, c in enumerate(piv_cols):
        x[c] = vec[i]
    return x
