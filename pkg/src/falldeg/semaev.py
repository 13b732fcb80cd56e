"""Summation polynomials on ordinary binary curves.

S_2 = x1 + x2; S_3 is the quadric fixed by the curve constant a6; higher
arities come out of the resultant recursion that eliminates the shared
coordinate between S_(k-1) and S_3.  The degree in every variable doubles
with each step: deg_xi S_(m+1) = 2^(m-1).

The block-monomial inspector reports the two distinguished monomials whose
presence (and uniqueness among high-power multiples) pins down the top
degree of the descended Boolean system.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from .fieldalg import FieldElement, FieldSpec
from .mpoly import MPoly, PolyRing, sylvester_resultant

MAX_ARITY = 6


@dataclass(frozen=True)
class SummationPoly:
    arity: int
    poly: MPoly
    a6: FieldElement

    @property
    def ring(self) -> PolyRing:
        return self.poly.ring


def s2(field: FieldSpec) -> SummationPoly:
    """x1 + x2: two points sum to the identity iff they share an x."""
    ring = PolyRing(2, field)
    poly = ring.variable(0) + ring.variable(1)
    return SummationPoly(2, poly, field.zero)


def s3(a6: FieldElement) -> SummationPoly:
    """(x1^2 + x2^2) x3^2 + x1 x2 x3 + x1^2 x2^2 + a6."""
    if not a6:
        raise ValueError("a6 = 0 is a singular curve")
    ring = PolyRing(3, a6.spec)
    poly = (ring.monomial((2, 0, 2)) + ring.monomial((0, 2, 2))
            + ring.monomial((1, 1, 1)) + ring.monomial((2, 2, 0))
            + ring.constant(a6.mask))
    return SummationPoly(3, poly, a6)


def semaev_poly(arity: int, a6: FieldElement) -> SummationPoly:
    """S_arity via the recursion Res_X(S_(arity-1)(..., X), S_3(·, ·, X))."""
    if not 2 <= arity <= MAX_ARITY:
        raise ValueError(f"arity {arity} outside 2..{MAX_ARITY}")
    if arity == 2:
        return s2(a6.spec)
    if arity == 3:
        return s3(a6)
    prev = semaev_poly(arity - 1, a6)
    field = a6.spec
    k = arity
    work = PolyRing(k + 1, field)  # slots: x1..xk, X
    f = prev.poly.map_vars(work, tuple(range(k - 2)) + (k,))
    g = s3(a6).poly.map_vars(work, (k - 2, k - 1, k))
    res = sylvester_resultant(f, g)
    return SummationPoly(arity, res.drop_var(k), a6)


@dataclass
class BlockMonomialReport:
    """Coefficient extraction around (x1...xm)^(2^(m-1)-1) in S_(m+1)."""

    arity: int
    block_power: int                      # 2^(m-1)
    coeff_full: FieldElement              # of (x1...xm)^(2^(m-1))
    coeff_drop: FieldElement              # of (x1...xm)^(2^(m-1)-1) * x_(m+1)
    multiples: List[Tuple[int, ...]]      # all multiples of the near-block monomial


def lemma_monomial_check(s: SummationPoly) -> BlockMonomialReport:
    """Scan S_(m+1) for every multiple of (x1...xm)^(2^(m-1)-1).

    Exactly two are expected: the saturated power (x1...xm)^(2^(m-1)) and
    the near-power times the last variable.
    """
    if s.arity < 4:
        raise ValueError("arity must be at least 4")
    m = s.arity - 1
    field = s.poly.ring.field
    e = 1 << (m - 1)
    full = tuple([e] * m + [0])
    drop = tuple([e - 1] * m + [1])
    multiples = sorted(
        exps for exps in s.poly.terms
        if all(exps[i] >= e - 1 for i in range(m))
    )
    return BlockMonomialReport(
        arity=s.arity,
        block_power=e,
        coeff_full=field.element(s.poly.coeff(full)),
        coeff_drop=field.element(s.poly.coeff(drop)),
        multiples=multiples,
    )
