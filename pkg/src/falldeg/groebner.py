"""Degree-logging Groebner engine over F2[y]/(y^2 - y) in grevlex.

Elimination is strictly degree-ascending, matrix style: at step degree j
the engine assembles every coprime monomial multiple of the current basis
whose lead lands in degree j (plus the single-variable overlap products
that stand in for the field-equation pairs), reduces the batch by Gaussian
elimination over F2, and adjoins reduced rows whose leading monomials are
new.  Any addition restarts the sweep from the bottom so lower-degree
consequences are drained before the degree climbs again.

A step is logged when it contributes new polynomials; the empirical first
fall degree is the first logged step that contributes one of degree below
the step degree, and the empirical regularity degree is the highest logged
step degree.

Monomials are int bitmasks; rows are ints over a grevlex column ranking, so
row reduction is big-int XOR.  Field equations never appear as basis
members: products are reduced by exponent capping as they are formed.
On termination every S-pair (including the capped single-variable products)
is re-reduced; a nonzero normal form is adjoined and the sweep resumes, so
a result that is not budget-flagged is a verified Groebner basis.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Sequence, Set, Tuple, Union

from .descent import BoolPoly, DescentSystem, mono_key

# ranking tables above this many monomials are refused (memory guard)
_RANK_LIMIT = 4_000_000


@dataclass
class Step:
    degree: int
    new: int
    falls: int


@dataclass
class Budget:
    max_seconds: float = 3600.0
    max_mem_mib: float = 2048.0


@dataclass
class GBResult:
    basis: List[BoolPoly]
    log: List[Step]
    budget_exhausted: bool

    def log_dicts(self) -> List[dict]:
        return [{"degree": s.degree, "new": s.new, "falls": s.falls} for s in self.log]


def dff_empirical(log: Sequence[Step]) -> Optional[int]:
    """Step degree of the first step adding a polynomial below step degree."""
    if not log:
        raise ValueError("empty step log")
    for step in log:
        if step.falls > 0:
            return step.degree
    return None


def dreg_empirical(log: Sequence[Step]) -> int:
    """Highest step degree in the log."""
    if not log:
        raise ValueError("empty step log")
    return max(step.degree for step in log)


class _Engine:
    def __init__(self, supports: List[Set[int]], nvars: int,
                 max_degree: int, budget: Budget):
        self.N = nvars
        self.max_degree = min(max_degree, nvars)
        self.budget = budget
        self.t0 = time.monotonic()
        self.exhausted = False
        self.truncated = False
        self.log: List[Step] = []

        monos: List[int] = []
        total = sum(comb(nvars, k) for k in range(self.max_degree + 1))
        if total > _RANK_LIMIT:
            self.exhausted = True
            self.unrank: List[int] = []
            self.rank: Dict[int, int] = {}
        else:
            for k in range(self.max_degree + 1):
                monos.extend(_degree_masks(nvars, k))
            monos.sort(key=mono_key)
            self.unrank = monos
            self.rank = {m: i for i, m in enumerate(monos)}

        self.inputs = [s for s in supports if s]
        self.basis: List[_BasisElem] = []
        self._reducers: List[_BasisElem] = []
        self.mem_bits = 0
        self._div_cache: Dict[int, Optional[_BasisElem]] = {}
        self._pivot_scratch: List[Optional[int]] = [None] * len(self.unrank)

    # -- conversions -----------------------------------------------------

    def _row_of(self, support: Set[int]) -> int:
        row = 0
        rank = self.rank
        for m in support:
            row ^= 1 << rank[m]
        return row

    def _support_of(self, row: int) -> Set[int]:
        out = set()
        unrank = self.unrank
        while row:
            b = row.bit_length() - 1
            out.add(unrank[b])
            row ^= 1 << b
        return out

    def _mono_mul_row(self, u: int, support: Set[int]) -> int:
        """Row of the capped product u * poly; capping may merge terms."""
        row = 0
        rank = self.rank
        for t in support:
            row ^= 1 << rank[t | u]
        return row

    # -- budget ------------------------------------------------------------

    def _budget_ok(self) -> bool:
        if self.exhausted:
            return False
        if time.monotonic() - self.t0 > self.budget.max_seconds:
            self.exhausted = True
            return False
        if self.mem_bits / (8 * 1024 * 1024) > self.budget.max_mem_mib:
            self.exhausted = True
            return False
        return True

    # -- basis bookkeeping ---------------------------------------------------

    def _lm_divisor(self, mono: int) -> Optional["_BasisElem"]:
        cached = self._div_cache.get(mono, 0)
        if cached != 0:
            return cached
        found = None
        for el in self._reducers:  # sorted by lm, smallest first
            if el.lm & mono == el.lm:
                found = el
                break
        self._div_cache[mono] = found
        return found

    def _add_basis(self, support: Set[int]):
        from bisect import insort
        lm = max(support, key=mono_key)
        el = _BasisElem(lm=lm, support=support, row=self._row_of(support),
                        done_upto=lm.bit_count(), field_fired=False)
        self.basis.append(el)
        insort(self._reducers, el, key=lambda e: mono_key(e.lm))
        self.mem_bits += el.row.bit_length()
        # only cached misses can be stale: the new lm may now divide them
        stale = [m for m, v in self._div_cache.items()
                 if v is None and lm & m == lm]
        for m in stale:
            del self._div_cache[m]
        for other in self.basis:
            if other is not el and other.lm & el.lm == el.lm and other.lm != el.lm:
                other.redundant = True

    # -- one elimination round at degree j ------------------------------------

    def _step(self, j: int) -> List[Set[int]]:
        gen_rows: List[int] = []

        taken = []
        for s in self.inputs:
            deg = max(m.bit_count() for m in s)
            if deg <= j:
                gen_rows.append(self._row_of(s))
                taken.append(s)
        for s in taken:
            self.inputs.remove(s)

        for el in self.basis:
            db = el.lm.bit_count()
            if el.redundant or db > j:
                continue
            if db == j and not el.field_fired:
                el.field_fired = True
                if db >= self.max_degree:
                    # capped products could leave the ranked degree range
                    self.truncated = True
                else:
                    lm = el.lm
                    while lm:
                        vbit = lm & -lm
                        gen_rows.append(self._mono_mul_row(vbit, el.support))
                        lm ^= vbit
            if el.done_upto >= j:
                continue
            k = j - db
            free = [v for v in range(self.N) if not (el.lm >> v) & 1]
            if k <= len(free):
                for cmb in combinations(free, k):
                    u = 0
                    for v in cmb:
                        u |= 1 << v
                    if u:
                        gen_rows.append(self._mono_mul_row(u, el.support))
            el.done_upto = j

        if not gen_rows:
            return []

        # symbolic preprocessing: one reductor per reducible monomial present
        need = 0
        for row in gen_rows:
            need |= row
        reductors: List[int] = []
        stack = _bits_of(need)
        seen = set(stack)
        while stack:
            hb = stack.pop()
            el = self._lm_divisor(self.unrank[hb])
            if el is None:
                continue
            u = self.unrank[hb] & ~el.lm
            row = self._mono_mul_row(u, el.support)
            reductors.append(row)
            fresh = row & ~need
            need |= row
            for b in _bits_of(fresh):
                if b not in seen:
                    seen.add(b)
                    stack.append(b)

        self.mem_bits += sum(r.bit_length() for r in reductors) \
            + sum(r.bit_length() for r in gen_rows)

        pivots = self._pivot_scratch
        touched: List[int] = []
        new_bits: List[int] = []
        for source, rows in (("red", reductors), ("gen", gen_rows)):
            for row in rows:
                while row:
                    hb = row.bit_length() - 1
                    p = pivots[hb]
                    if p is None:
                        pivots[hb] = row
                        touched.append(hb)
                        if source == "gen":
                            new_bits.append(hb)
                        break
                    row ^= p

        new_supports: List[Set[int]] = []
        for hb in sorted(new_bits, reverse=True):
            if self._lm_divisor(self.unrank[hb]) is not None:
                continue
            row = pivots[hb]
            # normal form of the tail against this step's pivot set
            out = 1 << hb
            rest = row ^ out
            while rest:
                b = rest.bit_length() - 1
                p = pivots[b]
                if p is not None and b != hb:
                    rest ^= p
                else:
                    out ^= 1 << b
                    rest ^= 1 << b
            new_supports.append(self._support_of(out))

        for hb in touched:
            pivots[hb] = None
        self.mem_bits = sum(el.row.bit_length() for el in self.basis)
        return new_supports

    # -- main sweep --------------------------------------------------------

    def _frontier(self) -> int:
        """Highest degree at which unprocessed work can still exist: pending
        inputs, unfired field rows, and S-pair lcm degrees not yet swept."""
        f = 0
        for s in self.inputs:
            f = max(f, max(m.bit_count() for m in s))
        live = [el for el in self.basis if not el.redundant]
        for el in live:
            if not el.field_fired:
                f = max(f, el.lm.bit_count())
        for i in range(len(live)):
            li = live[i]
            for k in range(i + 1, len(live)):
                lk = live[k]
                lcm_deg = (li.lm | lk.lm).bit_count()
                if min(li.done_upto, lk.done_upto) < lcm_deg:
                    f = max(f, lcm_deg)
        return f

    def sweep(self):
        j = 0
        while j <= min(self._frontier(), self.max_degree):
            if not self._budget_ok():
                return
            new = self._step(j)
            if new:
                falls = sum(1 for s in new
                            if max(m.bit_count() for m in s) < j)
                self.log.append(Step(j, len(new), falls))
                for s in new:
                    self._add_basis(s)
                if any(el.lm == 0 for el in self.basis):
                    return  # unit ideal: the basis is {1}
                j = 0
                continue
            j += 1

    # -- verification / completion ------------------------------------------

    def _normal_form(self, support: Set[int]) -> Set[int]:
        work = set(support)
        out: Set[int] = set()
        while work:
            t = max(work, key=mono_key)
            el = self._lm_divisor(t)
            if el is None:
                out.add(t)
                work.remove(t)
            else:
                u = t & ~el.lm
                for s in el.support:
                    work.symmetric_difference_update({s | u})
        return out

    def _nf_row(self, row: int) -> int:
        out = 0
        unrank = self.unrank
        while row:
            hb = row.bit_length() - 1
            el = self._lm_divisor(unrank[hb])
            if el is None:
                out |= 1 << hb
                row ^= 1 << hb
            else:
                row ^= self._mono_mul_row(unrank[hb] & ~el.lm, el.support)
        return out

    def _nf_support(self, support: Set[int]) -> Set[int]:
        if any(m.bit_count() > self.max_degree for m in support):
            return self._normal_form(support)
        return self._support_of(self._nf_row(self._row_of(support)))

    def _spair_defect(self) -> Optional[Tuple[Set[int], int]]:
        """First S-polynomial (or capped single-variable product, or discarded
        basis element) that fails to reduce to zero against the live basis."""
        live = [el for el in self.basis if not el.redundant]
        for el in self.basis:
            if not el.redundant:
                continue
            if not self._budget_ok():
                return None
            nf = self._nf_support(el.support)
            if nf:
                return nf, el.lm.bit_count()
        pairs = []
        for i in range(len(live)):
            for k in range(i + 1, len(live)):
                lcm = live[i].lm | live[k].lm
                pairs.append((lcm.bit_count(), i, k))
        pairs.sort()
        for _, i, k in pairs:
            if not self._budget_ok():
                return None
            f, g = live[i], live[k]
            lcm = f.lm | g.lm
            s = _capped_mul(lcm & ~f.lm, f.support)
            s.symmetric_difference_update(_capped_mul(lcm & ~g.lm, g.support))
            nf = self._nf_support(s)
            if nf:
                return nf, lcm.bit_count()
        for el in live:
            if not self._budget_ok():
                return None
            lm = el.lm
            while lm:
                vbit = lm & -lm
                lm ^= vbit
                nf = self._nf_support(_capped_mul(vbit, el.support))
                if nf:
                    return nf, el.lm.bit_count()
        return None

    def run(self) -> Tuple[List[Set[int]], bool]:
        if self.exhausted:
            return [], True
        if any(max(m.bit_count() for m in s) > self.max_degree for s in self.inputs):
            self.truncated = True
            self.inputs = [s for s in self.inputs
                           if max(m.bit_count() for m in s) <= self.max_degree]
        self.sweep()
        while not self.exhausted:
            defect = self._spair_defect()
            if defect is None:
                break
            nf, deg = defect
            if max(m.bit_count() for m in nf) > self.max_degree:
                self.truncated = True
                break
            self.log.append(Step(deg, 1,
                                 1 if max(m.bit_count() for m in nf) < deg else 0))
            self._add_basis(nf)
            self.sweep()
        final = [el.support for el in self.basis if not el.redundant]
        return final, self.exhausted or self.truncated


@dataclass
class _BasisElem:
    lm: int
    support: Set[int]
    row: int
    done_upto: int
    field_fired: bool
    redundant: bool = False


def _degree_masks(nvars: int, k: int):
    for cmb in combinations(range(nvars), k):
        mask = 0
        for v in cmb:
            mask |= 1 << v
        yield mask


def _bits_of(x: int) -> List[int]:
    out = []
    while x:
        b = x.bit_length() - 1
        out.append(b)
        x ^= 1 << b
    return out


def _capped_mul(u: int, support: Set[int]) -> Set[int]:
    out: Set[int] = set()
    for t in support:
        out.symmetric_difference_update({t | u})
    return out


def groebner_log(system: Union[DescentSystem, Sequence[BoolPoly]],
                 max_degree: Optional[int] = None,
                 budget: Optional[Budget] = None,
                 nvars: Optional[int] = None) -> GBResult:
    """Groebner basis of the system plus field equations, with a step log.

    Termination without the budget flag means the returned basis passed the
    full S-pair reduction check; a flagged result carries whatever basis and
    log had accumulated when the budget tripped.
    """
    if isinstance(system, DescentSystem):
        polys = system.polys
        nv = system.nvars
    else:
        polys = list(system)
        if nvars is None:
            raise ValueError("nvars required for a bare polynomial list")
        nv = nvars
    if not polys:
        raise ValueError("empty system")
    supports = [set(p.coeffs) for p in polys]
    engine = _Engine([s for s in supports if s], nv,
                     max_degree if max_degree is not None else nv,
                     budget or Budget())
    final, exhausted = engine.run()
    basis = [BoolPoly.from_masks(sorted(s, key=mono_key))
             for s in sorted(final, key=lambda s: mono_key(max(s, key=mono_key)))]
    return GBResult(basis, engine.log, exhausted)
