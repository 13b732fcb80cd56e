"""Exact first fall degree via Macaulay-matrix ranks over F2.

The computation follows the two-stage definition: project the system onto
its top-degree homogeneous parts in the squares-vanish ring; if projecting
loses dimension the first fall is the top degree itself, otherwise climb
j = d+1, d+2, ... comparing rank(all degree-(j-d) monomial multiples of the
generators) with the dimension the map would have if its kernel were just
the trivial syzygies (Koszul pairs and squares).

Ranks are taken over F2 throughout: the generators have F2 coefficients and
extending the base field changes no rank.  The one genuinely GF(2^n)-valued
computation is the witness polynomial, the expanded product

    c * prod_i prod_(j<m-1) (sum_l nu_l^(2^j) y_il)

whose annihilation by every block linear form certifies a degree fall one
above the system degree.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .descent import (BoolPoly, DescentParams, DescentSystem, SubspaceBasis,
                      mono_key, power_linear_form)
from .fieldalg import FieldElement, FieldMatrix, f2_rank_rows, field_solve, field_rank


# ----------------------------------------------------------------------
# F2 span reduction for mask polynomials
# ----------------------------------------------------------------------

def _rows_over_universe(polys: Sequence, universe: List[int]) -> List[int]:
    colof = {m: i for i, m in enumerate(universe)}
    rows = []
    for p in polys:
        row = 0
        for m in p:
            row ^= 1 << colof[m]
        rows.append(row)
    return rows


def _span_basis(polys: Sequence) -> List[set]:
    """Reduced-echelon basis (as mask sets) of the F2 span of mask polys."""
    universe = sorted({m for p in polys for m in p}, key=mono_key)
    pivots: List[Tuple[int, int]] = []
    for row in _rows_over_universe(polys, universe):
        for pc, prow in pivots:
            if (row >> pc) & 1:
                row ^= prow
        if row:
            pc = row.bit_length() - 1
            pivots = [(qc, qrow ^ row) if (qrow >> pc) & 1 else (qc, qrow)
                      for qc, qrow in pivots]
            pivots.append((pc, row))
    pivots.sort(key=lambda t: -t[0])
    out = []
    for _, row in pivots:
        masks = set()
        while row:
            b = row.bit_length() - 1
            masks.add(universe[b])
            row ^= 1 << b
        out.append(masks)
    return out


def _mask_rank(polys: Sequence) -> int:
    universe = sorted({m for p in polys for m in p}, key=mono_key)
    return f2_rank_rows(_rows_over_universe(polys, universe))


# ----------------------------------------------------------------------
# Graded systems
# ----------------------------------------------------------------------

@dataclass
class GradedSystem:
    """Homogeneous generators of one degree, reduced to a span basis."""

    nvars: int
    d: int
    gens: List[BoolPoly]
    original_count: int
    dim_drop: bool

    @property
    def r(self) -> int:
        return len(self.gens)

    @classmethod
    def from_polys(cls, polys: Sequence[BoolPoly], nvars: int) -> "GradedSystem":
        """Build from already-homogeneous polynomials of a common degree."""
        supports = [set(p.coeffs) for p in polys if not p.is_zero()]
        if not supports:
            raise ValueError("all generators are zero")
        degrees = {m.bit_count() for s in supports for m in s}
        if len(degrees) != 1:
            raise ValueError(f"generators not homogeneous of one degree: {degrees}")
        basis = _span_basis(supports)
        return cls(nvars, degrees.pop(), [BoolPoly.from_masks(s) for s in basis],
                   len(polys), False)


def top_parts(system: DescentSystem) -> GradedSystem:
    """Top-degree homogeneous parts, span-reduced, with the dim-drop flag.

    The flag is set when projecting onto the top degree loses F2-rank, in
    which case the first fall degree is the top degree itself.
    """
    supports = [set(p.coeffs) for p in system.polys if not p.is_zero()]
    if not supports:
        raise ValueError("system is identically zero")
    d = max(m.bit_count() for s in supports for m in s)
    tops = [{m for m in s if m.bit_count() == d} for s in supports]
    rank_full = _mask_rank(supports)
    rank_proj = _mask_rank([t for t in tops if t])
    basis = _span_basis([t for t in tops if t])
    return GradedSystem(system.nvars, d,
                        [BoolPoly.from_masks(s) for s in basis],
                        len(system.polys), rank_proj < rank_full)


# ----------------------------------------------------------------------
# Macaulay slices and trivial syzygies
# ----------------------------------------------------------------------

def _degree_monomials(nvars: int, k: int):
    for combo in combinations(range(nvars), k):
        mask = 0
        for v in combo:
            mask |= 1 << v
        yield mask


def _graded_mono_mul(u: int, support) -> set:
    """Squares-vanish product of monomial u with a mask polynomial."""
    return {u | t for t in support if not u & t}


def macaulay_rank(g: GradedSystem, j: int) -> int:
    """Rank of the degree-j slice: all degree-(j-d) multiples of the gens."""
    rows_supports = []
    for gen in g.gens:
        sup = set(gen.coeffs)
        for u in _degree_monomials(g.nvars, j - g.d):
            prod = _graded_mono_mul(u, sup)
            if prod:
                rows_supports.append(prod)
    return _mask_rank(rows_supports)


def trivial_syzygy_dim(g: GradedSystem, j: int) -> int:
    """dim over F2 of the trivial-syzygy module in component degree j-d.

    Generators are the Koszul pairs h_j e_i + h_i e_j and the squares
    h_k e_k, all of component degree d; below j = 2d the dimension is zero.
    """
    if j < 2 * g.d:
        return 0
    r = g.r
    supports = [set(gen.coeffs) for gen in g.gens]
    # module vectors: tuple of r components, each a mask set
    module_vectors: List[List[set]] = []
    for u in _degree_monomials(g.nvars, j - 2 * g.d):
        mults = [_graded_mono_mul(u, s) for s in supports]
        for k in range(r):
            vec = [set() for _ in range(r)]
            vec[k] = mults[k]
            module_vectors.append(vec)
        for i in range(r):
            for k in range(i + 1, r):
                vec = [set() for _ in range(r)]
                vec[i] = mults[k]
                vec[k] = mults[i]
                module_vectors.append(vec)
    # flatten: tag each mask with its component index
    flat = [{(comp, m) for comp in range(r) for m in vec[comp]}
            for vec in module_vectors]
    universe = sorted({t for f in flat for t in f})
    colof = {t: i for i, t in enumerate(universe)}
    rows = []
    for f in flat:
        row = 0
        for t in f:
            row |= 1 << colof[t]
        rows.append(row)
    return f2_rank_rows(rows)


# ----------------------------------------------------------------------
# First fall
# ----------------------------------------------------------------------

@dataclass
class SliceStat:
    j: int
    rows: int
    cols: int
    rank: int
    triv_syz: int


@dataclass
class FirstFallReport:
    d: int
    dim_drop: bool
    dff: Optional[int]
    j_max: int
    slices: List[SliceStat] = dc_field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "dim_drop": self.dim_drop,
            "D_ff": self.dff if self.dff is not None else f"not found <= {self.j_max}",
            "slices": [vars(s) for s in self.slices],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def first_fall(g: GradedSystem, j_max: Optional[int] = None) -> FirstFallReport:
    """Smallest j where the multiplication map has kernel beyond the
    trivial syzygies; the dim-drop shortcut answers d with no slices."""
    if j_max is None:
        j_max = 2 * g.d
    if g.dim_drop:
        return FirstFallReport(g.d, True, g.d, j_max)
    report = FirstFallReport(g.d, False, None, j_max)
    for j in range(g.d + 1, j_max + 1):
        domain = g.r * comb(g.nvars, j - g.d)
        triv = trivial_syzygy_dim(g, j)
        rank = macaulay_rank(g, j)
        report.slices.append(SliceStat(j, domain, comb(g.nvars, j), rank, triv))
        if rank > domain - triv:
            raise AssertionError("rank exceeds trivial-syzygy bound")
        if rank < domain - triv:
            report.dff = j
            break
    return report


# ----------------------------------------------------------------------
# The degree-fall witness
# ----------------------------------------------------------------------

def witness_P0(params: DescentParams) -> BoolPoly:
    """The degree m(m-1) product c * prod_i prod_(j<m-1) x_i^(2^j) expanded
    in the squares-vanish ring with x_i restricted to the subspace."""
    m, basis, c = params.m, params.basis, params.c
    if m < 3:
        raise ValueError("witness construction needs m >= 3")
    if params.nprime < m:
        raise ValueError("witness construction needs n' >= m")
    if not c:
        raise ValueError("c = 0 not allowed")
    spec = params.spec
    out = BoolPoly({0: c.mask}, spec)
    for i in range(m):
        for j in range(m - 1):
            out = out.mul_graded(power_linear_form(i, j, basis))
    return out


@dataclass
class WitnessReport:
    in_span: bool
    span_coefficients: Optional[List[FieldElement]]
    blocks_annihilate: List[bool]
    nonzero: bool

    @property
    def ok(self) -> bool:
        return self.in_span and all(self.blocks_annihilate) and self.nonzero


def verify_witness(g: GradedSystem, p0: BoolPoly, params: DescentParams) -> WitnessReport:
    """Check (a) p0 in the GF(2^n)-span of the generators, (b) every block
    linear form annihilates p0 in the squares-vanish ring, (c) p0 != 0."""
    spec = params.spec
    monos = sorted({m for gen in g.gens for m in gen.coeffs} | set(p0.coeffs),
                   key=mono_key)
    entries = [[1 if mono in gen.coeffs else 0 for gen in g.gens] for mono in monos]
    rhs = [p0.coeffs.get(mono, 0) for mono in monos]
    sol = field_solve(FieldMatrix(spec, entries), rhs)
    blocks = []
    for k in range(params.m):
        lin = power_linear_form(k, 0, params.basis)
        blocks.append(lin.mul_graded(p0).is_zero())
    return WitnessReport(
        in_span=sol is not None,
        span_coefficients=None if sol is None else [spec.element(x) for x in sol],
        blocks_annihilate=blocks,
        nonzero=not p0.is_zero(),
    )


def moore_rank(basis: SubspaceBasis, m: int) -> int:
    """Rank of the m x n' matrix of Frobenius powers (nu_l^(2^j))."""
    spec = basis.spec
    if m > spec.n:
        raise ValueError("m exceeds the extension degree")
    entries = [[spec.frobenius(nu.mask, j) for nu in basis.nu] for j in range(m)]
    return field_rank(FieldMatrix(spec, entries))
