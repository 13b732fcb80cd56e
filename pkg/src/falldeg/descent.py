"""Weil descent of S_(m+1)(x_1..x_m, c) along a factor-basis subspace.

Each x_i is constrained to an n'-dimensional subspace W = <nu_1..nu_n'> by
x_i = sum_l y_il nu_l with Boolean coordinates y_il.  Substituting into the
summation polynomial, reducing by y^2 = y and splitting the GF(2^n)-valued
result into its n base-field coordinates yields the Boolean system
s_0, ..., s_(n-1) in m*n' variables.

Boolean monomials are int bitmasks (variable y_il = bit i*n' + l), so the
multilinear product is a bitwise OR and the squares-vanish product is an OR
guarded by disjointness.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Tuple, Union

from .ecurve import CurveParams
from .fieldalg import FieldElement, FieldSpec, f2_rank_rows
from .semaev import SummationPoly


def mono_degree(mask: int) -> int:
    return mask.bit_count()


def mono_key(mask: int) -> tuple:
    """Grevlex sort key for multilinear masks (larger key = larger monomial)."""
    return (mask.bit_count(), -mask)


@dataclass(frozen=True)
class SubspaceBasis:
    nu: Tuple[FieldElement, ...]

    def __post_init__(self):
        masks = [v.mask for v in self.nu]
        if f2_rank_rows(masks) != len(masks):
            raise ValueError("basis vectors are F2-dependent")

    def __len__(self):
        return len(self.nu)

    @property
    def spec(self) -> FieldSpec:
        return self.nu[0].spec


def make_basis(kind: str, nprime: int, spec: FieldSpec,
               seed: Union[int, random.Random, None] = None) -> SubspaceBasis:
    """canonical = 1, z, ..., z^(n'-1); random = uniform independent draws."""
    if nprime > spec.n or nprime < 1:
        raise ValueError(f"subspace dimension {nprime} out of range 1..{spec.n}")
    if kind == "canonical":
        return SubspaceBasis(tuple(spec.element(1 << l) for l in range(nprime)))
    if kind == "random":
        rng = seed if isinstance(seed, random.Random) else random.Random(seed)
        while True:
            masks = [spec.random_mask(rng) for _ in range(nprime)]
            if f2_rank_rows(masks) == nprime:
                return SubspaceBasis(tuple(spec.element(x) for x in masks))
    raise ValueError(f"unknown basis kind {kind!r}")


class BoolPoly:
    """Multilinear polynomial over F2 (field None) or GF(2^n).

    coeffs maps monomial bitmasks to coefficient masks; F2 payloads store
    the constant 1 so the map is effectively a set.
    """

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: Dict[int, int], field: Optional[FieldSpec] = None):
        self.coeffs = coeffs
        self.field = field

    @classmethod
    def zero(cls, field: Optional[FieldSpec] = None) -> "BoolPoly":
        return cls({}, field)

    @classmethod
    def from_masks(cls, masks) -> "BoolPoly":
        return cls(dict.fromkeys(masks, 1), None)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return (isinstance(other, BoolPoly) and self.field == other.field
                and self.coeffs == other.coeffs)

    def __add__(self, other: "BoolPoly") -> "BoolPoly":
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            v = out.get(m, 0) ^ c
            if v:
                out[m] = v
            else:
                del out[m]
        return BoolPoly(out, self.field)

    def _cmul(self, a: int, b: int) -> int:
        return self.field.mul(a, b) if self.field is not None else (a & b)

    def mul(self, other: "BoolPoly") -> "BoolPoly":
        """Multilinear product: y^2 reduces to y."""
        out: Dict[int, int] = {}
        for ma, ca in self.coeffs.items():
            for mb, cb in other.coeffs.items():
                v = self._cmul(ca, cb)
                if not v:
                    continue
                k = ma | mb
                x = out.get(k, 0) ^ v
                if x:
                    out[k] = x
                else:
                    del out[k]
        return BoolPoly(out, self.field)

    def mul_graded(self, other: "BoolPoly") -> "BoolPoly":
        """Squares-vanish product: terms sharing a variable drop out."""
        out: Dict[int, int] = {}
        for ma, ca in self.coeffs.items():
            for mb, cb in other.coeffs.items():
                if ma & mb:
                    continue
                v = self._cmul(ca, cb)
                if not v:
                    continue
                k = ma | mb
                x = out.get(k, 0) ^ v
                if x:
                    out[k] = x
                else:
                    del out[k]
        return BoolPoly(out, self.field)

    def scale(self, c: int) -> "BoolPoly":
        if self.field is None:
            return self if c & 1 else BoolPoly.zero()
        if c == 0:
            return BoolPoly.zero(self.field)
        mul = self.field.mul
        return BoolPoly({m: mul(v, c) for m, v in self.coeffs.items()}, self.field)

    def degree(self) -> int:
        return max((m.bit_count() for m in self.coeffs), default=0)

    def homogeneous_part(self, d: int) -> "BoolPoly":
        return BoolPoly({m: c for m, c in self.coeffs.items() if m.bit_count() == d},
                        self.field)

    def eval01(self, assignment: int) -> int:
        """Value at a 0/1 point given as the mask of variables set to 1."""
        acc = 0
        for m, c in self.coeffs.items():
            if m & assignment == m:
                acc ^= c
        return acc

    def support(self) -> List[int]:
        return sorted(self.coeffs, key=mono_key)

    def __repr__(self):
        kind = "F2" if self.field is None else repr(self.field)
        return f"BoolPoly<{kind}>({len(self.coeffs)} terms, deg {self.degree()})"


def power_linear_form(block: int, frob_power: int, basis: SubspaceBasis) -> BoolPoly:
    """x_block^(2^j) as a Boolean linear form: sum_l nu_l^(2^j) y_(block,l)."""
    if frob_power < 0:
        raise ValueError("negative Frobenius power")
    spec = basis.spec
    nprime = len(basis)
    coeffs = {}
    for l, nu in enumerate(basis.nu):
        coeffs[1 << (block * nprime + l)] = spec.frobenius(nu.mask, frob_power)
    return BoolPoly(coeffs, spec)


@dataclass(frozen=True)
class DescentParams:
    m: int
    n: int
    nprime: int
    spec: FieldSpec
    basis: SubspaceBasis
    c: FieldElement
    curve: Optional[CurveParams] = None

    @property
    def nvars(self) -> int:
        return self.m * self.nprime


@dataclass
class DescentSystem:
    params: DescentParams
    polys: List[BoolPoly]

    @property
    def nvars(self) -> int:
        return self.params.nvars

    def max_degree(self) -> int:
        return max((p.degree() for p in self.polys), default=0)

    # -- text format -----------------------------------------------------

    def to_text(self) -> str:
        p = self.params
        lines = [
            f"descent m={p.m} n={p.n} np={p.nprime} c=0x{p.c.mask:x} "
            f"red=0x{p.spec.reduction_poly:x}",
            "nu " + " ".join(f"0x{v.mask:x}" for v in p.basis.nu),
        ]
        for poly in self.polys:
            if poly.is_zero():
                lines.append("0")
                continue
            monos = sorted(poly.coeffs, key=mono_key, reverse=True)
            lines.append(" ".join(_mono_text(m) for m in monos))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "DescentSystem":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        head = dict(kv.split("=", 1) for kv in lines[0].split()[1:])
        m, n, nprime = int(head["m"]), int(head["n"]), int(head["np"])
        spec = FieldSpec(n, int(head["red"], 16))
        nu = tuple(spec.element(int(tok, 16)) for tok in lines[1].split()[1:])
        params = DescentParams(m, n, nprime, spec, SubspaceBasis(nu),
                               spec.element(int(head["c"], 16)))
        polys = []
        for ln in lines[2:2 + n]:
            if ln.strip() == "0":
                polys.append(BoolPoly.zero())
                continue
            masks = []
            for tok in ln.split():
                inner = tok.strip("()")
                mask = 0
                if inner:
                    for ix in inner.split(","):
                        mask |= 1 << int(ix)
                masks.append(mask)
            polys.append(BoolPoly.from_masks(masks))
        return cls(params, polys)


def _mono_text(mask: int) -> str:
    idxs = []
    while mask:
        b = mask & -mask
        idxs.append(str(b.bit_length() - 1))
        mask ^= b
    return "(" + ",".join(idxs) + ")"


def expand_monomial(exps: Tuple[int, ...], basis: SubspaceBasis,
                    c: FieldElement, coeff: int = 1) -> BoolPoly:
    """Multilinear expansion of coeff * x_1^e1 ... x_m^em * c^e_last.

    The last exponent slot is the constant's; each x_i^(2^j) factor is a
    power linear form and the product is reduced by y^2 = y as it grows.
    """
    spec = basis.spec
    m = len(exps) - 1
    scalar = spec.mul(coeff, spec.pow(c.mask, exps[m]))
    out = BoolPoly({0: scalar}, spec)
    for i in range(m):
        a = exps[i]
        j = 0
        while (1 << j) <= a:
            if a & (1 << j):
                out = out.mul(power_linear_form(i, j, basis))
            j += 1
    return out


def descend(s: SummationPoly, basis: SubspaceBasis, c: FieldElement,
            curve: Optional[CurveParams] = None) -> DescentSystem:
    """The n Boolean coordinate polynomials of S(x_1..x_m, c) on W^m.

    Expansion walks a trie of the exponent patterns, so shared per-block
    factors are multiplied out once; intermediate polynomials stay bounded
    by the multilinear monomial count of the blocks still to come.
    """
    if not c:
        raise ValueError("c = 0 not allowed")
    spec = s.poly.ring.field
    if basis.spec != spec:
        raise ValueError("basis field differs from polynomial field")
    m = s.arity - 1
    nprime = len(basis)
    mul = spec.mul

    # exponent trie: x1-exponent -> ... -> x_(m-1)-exponent -> folded scalar
    tree: Dict = {}
    for exps, coef in s.poly.terms.items():
        scalar = mul(coef, spec.pow(c.mask, exps[m]))
        node = tree
        for i in range(m - 1):
            node = node.setdefault(exps[i], {})
        node[exps[m - 1]] = node.get(exps[m - 1], 0) ^ scalar

    block_cache: Dict[Tuple[int, int], Dict[int, int]] = {}

    def block_poly(i: int, a: int) -> Dict[int, int]:
        key = (i, a)
        hit = block_cache.get(key)
        if hit is not None:
            return hit
        poly = {0: 1}
        j = 0
        while (1 << j) <= a:
            if a & (1 << j):
                nxt: Dict[int, int] = {}
                for l, nu in enumerate(basis.nu):
                    cb = spec.frobenius(nu.mask, j)
                    bit = 1 << (i * nprime + l)
                    for ma, ca in poly.items():
                        v = mul(ca, cb)
                        if not v:
                            continue
                        k = ma | bit
                        x = nxt.get(k, 0) ^ v
                        if x:
                            nxt[k] = x
                        else:
                            del nxt[k]
                poly = nxt
            j += 1
        block_cache[key] = poly
        return poly

    def fold(node: Dict, i: int) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for a in sorted(node):
            sub = node[a]
            if i == m - 1:
                right = {0: sub} if sub else {}
            else:
                right = fold(sub, i + 1)
            if not right:
                continue
            for ma, ca in block_poly(i, a).items():
                for mb, cb in right.items():
                    v = mul(ca, cb)
                    if not v:
                        continue
                    k = ma | mb
                    x = out.get(k, 0) ^ v
                    if x:
                        out[k] = x
                    else:
                        del out[k]
        return out

    acc = fold(tree, 0) if m else {0: tree.get((), 0)}

    coordinate_masks: List[Dict[int, int]] = [dict() for _ in range(spec.n)]
    for mask, value in acc.items():
        while value:
            k = value.bit_length() - 1
            coordinate_masks[k][mask] = 1
            value ^= 1 << k

    params = DescentParams(m, spec.n, nprime, spec, basis, c, curve)
    system = DescentSystem(params, [BoolPoly(cm, None) for cm in coordinate_masks])
    bound = m * m - m
    if system.max_degree() > bound:
        raise AssertionError(f"descended degree exceeds {bound}")
    return system
