"""Ordinary binary elliptic curves y^2 + xy = x^3 + a2 x^2 + a6 over GF(2^n).

Affine chord-and-tangent arithmetic only; this module exists to ground-truth
the vanishing property of the summation polynomials, so the API is a point
sampler plus the group law.  Sampling solves (y/x)^2 + (y/x) = rhs/x^2 with
the Artin-Schreier solver, which is why x = 0 is never drawn.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Optional, Union

from .fieldalg import FieldElement, FieldSpec


@dataclass(frozen=True)
class CurveParams:
    a2: FieldElement
    a6: FieldElement

    def __post_init__(self):
        if self.a2.spec != self.a6.spec:
            raise ValueError("curve coefficients from different fields")
        if not self.a6:
            raise ValueError("a6 = 0: curve is singular")

    @property
    def spec(self) -> FieldSpec:
        return self.a2.spec


@dataclass(frozen=True)
class Point:
    """Affine point or the point at infinity (both coordinates None)."""

    x: Optional[FieldElement]
    y: Optional[FieldElement]

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __str__(self):
        if self.is_infinity:
            return "inf"
        return f"({self.x},{self.y})"


INFINITY = Point(None, None)


def on_curve(p: Point, curve: CurveParams) -> bool:
    if p.is_infinity:
        return True
    x, y = p.x, p.y
    return y * y + x * y == x * x * x + curve.a2 * x * x + curve.a6


def ec_neg(p: Point) -> Point:
    if p.is_infinity:
        return p
    return Point(p.x, p.x + p.y)


def ec_add(p: Point, q: Point, curve: CurveParams) -> Point:
    """Group law; raises on points not satisfying the curve equation."""
    if not on_curve(p, curve) or not on_curve(q, curve):
        raise ValueError("point not on curve")
    if p.is_infinity:
        return q
    if q.is_infinity:
        return p
    x1, y1 = p.x, p.y
    x2, y2 = q.x, q.y
    if x1 == x2:
        if y2 == x1 + y1:
            return INFINITY  # q = -p (covers the 2-torsion x = 0 case)
        # doubling; x1 != 0 here since x = 0 points are 2-torsion
        lam = x1 + y1 / x1
        x3 = lam * lam + lam + curve.a2
        y3 = x1 * x1 + (lam + curve.spec.one) * x3
        return Point(x3, y3)
    lam = (y1 + y2) / (x1 + x2)
    x3 = lam * lam + lam + x1 + x2 + curve.a2
    y3 = lam * (x1 + x3) + x3 + y1
    return Point(x3, y3)


def ec_sum(points: List[Point], curve: CurveParams) -> Point:
    acc = INFINITY
    for p in points:
        acc = ec_add(acc, p, curve)
    return acc


def _as_rng(seed: Union[int, random.Random]) -> random.Random:
    if isinstance(seed, random.Random):
        return seed
    return random.Random(seed)


def random_point(curve: CurveParams, seed: Union[int, random.Random]) -> Point:
    """Uniform affine point with x != 0, deterministic in the seed.

    Draw x until the curve equation admits y (trace condition), then pick
    one of the two candidate y values by a coin flip.
    """
    rng = _as_rng(seed)
    sp = curve.spec
    while True:
        xm = sp.random_mask(rng)
        if xm == 0:
            continue
        x = sp.element(xm)
        rhs = x * x * x + curve.a2 * x * x + curve.a6
        d = rhs / (x * x)
        if sp.trace(d.mask) != 0:
            continue
        t = sp.element(sp.solve_quadratic(d.mask))
        y = t * x
        if rng.getrandbits(1):
            y = y + x
        return Point(x, y)


def random_curve(spec: FieldSpec, seed: Union[int, random.Random]) -> CurveParams:
    rng = _as_rng(seed)
    a2 = spec.random_element(rng)
    a6 = spec.zero
    while not a6:
        a6 = spec.random_element(rng)
    return CurveParams(a2, a6)


def sum_zero_tuple(curve: CurveParams, m1: int,
                   seed: Union[int, random.Random]) -> List[Point]:
    """m1 affine points (all with x != 0) summing to the identity.

    The first m1 - 1 points are drawn at random and the last one closes the
    sum; the draw is repeated whenever the closing point degenerates.
    """
    if m1 < 2:
        raise ValueError("need at least two points")
    rng = _as_rng(seed)
    while True:
        pts = [random_point(curve, rng) for _ in range(m1 - 1)]
        last = ec_neg(ec_sum(pts, curve))
        if last.is_infinity or not last.x:
            continue
        return pts + [last]


def enumerate_points(curve: CurveParams) -> List[Point]:
    """All affine points plus infinity, by brute force; n <= 8 scales."""
    sp = curve.spec
    pts = [INFINITY]
    for xm in range(sp.order):
        for ym in range(sp.order):
            p = Point(sp.element(xm), sp.element(ym))
            if on_curve(p, curve):
                pts.append(p)
    return pts
