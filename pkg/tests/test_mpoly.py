"""Sparse polynomial arithmetic, determinants, and resultants."""

import random
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from falldeg.fieldalg import FieldSpec
from falldeg.mpoly import MPoly, PolyMatrix, PolyRing, det_poly, sylvester_resultant

SPEC = FieldSpec(5)


def random_poly(ring, rng, nterms=4, maxdeg=3):
    p = ring.zero()
    for _ in range(nterms):
        exps = tuple(rng.randrange(maxdeg + 1) for _ in range(ring.nvars))
        p = p + ring.monomial(exps, ring.field.random_mask(rng) or 1)
    return p


# ----------------------------------------------------------------------
# arithmetic
# ----------------------------------------------------------------------

def test_freshmans_dream():
    ring = PolyRing(2, SPEC)
    s = ring.variable(0) + ring.variable(1)
    sq = s * s
    assert sq == ring.monomial((2, 0)) + ring.monomial((0, 2))


def test_mul_by_zero():
    ring = PolyRing(2, SPEC)
    rng = random.Random(0)
    f = random_poly(ring, rng)
    assert (f * ring.zero()).is_zero()


def test_distributivity_random():
    ring = PolyRing(3, SPEC)
    rng = random.Random(1)
    for _ in range(30):
        f, g, h = (random_poly(ring, rng) for _ in range(3))
        assert f * (g + h) == f * g + f * h


def test_eval_constant_and_cancellation():
    ring = PolyRing(2, SPEC)
    c = ring.constant(0b101)
    pt = [SPEC.element(7), SPEC.element(19)]
    assert c.eval(pt).mask == 0b101
    s = ring.variable(0) + ring.variable(1)
    a = SPEC.element(13)
    assert s.eval([a, a]).mask == 0


def test_eval_matches_per_monomial_oracle():
    ring = PolyRing(3, SPEC)
    rng = random.Random(2)
    for _ in range(30):
        f = random_poly(ring, rng)
        pt = [SPEC.random_element(rng) for _ in range(3)]
        expected = SPEC.zero
        for exps, coeff in f.terms.items():
            term = SPEC.element(coeff)
            for x, e in zip(pt, exps):
                for _ in range(e):
                    term = term * x
            expected = expected + term
        assert f.eval(pt) == expected


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 15))
def test_text_roundtrip(seed):
    ring = PolyRing(3, SPEC)
    f = random_poly(ring, random.Random(seed))
    assert MPoly.from_text(ring, f.to_text()) == f


# ----------------------------------------------------------------------
# coefficients in the eliminand
# ----------------------------------------------------------------------

def test_coeffs_in_X_of_the_quadric():
    """(x1^2+x2^2) X^2 + x1 x2 X + x1^2 x2^2 + a6, read off by X-degree."""
    a6 = SPEC.element(0b1001)
    ring = PolyRing(3, SPEC)  # x1, x2, X
    f = (ring.monomial((2, 0, 2)) + ring.monomial((0, 2, 2))
         + ring.monomial((1, 1, 1)) + ring.monomial((2, 2, 0))
         + ring.constant(a6.mask))
    c = f.coeffs_in_X()
    assert len(c) == 3
    assert c[0] == ring.monomial((2, 2, 0)) + ring.constant(a6.mask)
    assert c[1] == ring.monomial((1, 1, 0))
    assert c[2] == ring.monomial((2, 0, 0)) + ring.monomial((0, 2, 0))


def test_coeffs_in_X_x_free():
    ring = PolyRing(2, SPEC)
    f = random_poly(PolyRing(2, SPEC), random.Random(3))
    f = MPoly(ring, {e: c for e, c in f.terms.items() if e[1] == 0})
    if f.is_zero():
        f = ring.constant(1)
    assert f.coeffs_in_X() == [f]


def test_coeffs_in_X_roundtrip():
    ring = PolyRing(3, SPEC)
    rng = random.Random(4)
    for _ in range(30):
        f = random_poly(ring, rng)
        back = ring.zero()
        for i, ci in enumerate(f.coeffs_in_X()):
            back = back + ci * ring.variable(2, power=i) if i else back + ci
        assert back == f


# ----------------------------------------------------------------------
# determinants
# ----------------------------------------------------------------------

def test_det_1x1_and_triangular():
    ring = PolyRing(2, SPEC)
    rng = random.Random(5)
    f = random_poly(ring, rng)
    assert det_poly(PolyMatrix([[f]])) == f
    diag = [random_poly(ring, rng, nterms=2) for _ in range(3)]
    rows = [[diag[i] if i == j else (random_poly(ring, rng, 1) if j > i else ring.zero())
             for j in range(3)] for i in range(3)]
    assert det_poly(PolyMatrix(rows)) == diag[0] * diag[1] * diag[2]


def test_det_matches_leibniz_oracle():
    ring = PolyRing(2, SPEC)
    rng = random.Random(6)
    for _ in range(5):
        rows = [[random_poly(ring, rng, nterms=2, maxdeg=2) for _ in range(4)]
                for _ in range(4)]
        expected = ring.zero()
        for perm in permutations(range(4)):
            prod = ring.constant(1)
            for i, j in enumerate(perm):
                prod = prod * rows[i][j]
            expected = expected + prod  # char 2: all signs are +1
        assert det_poly(PolyMatrix(rows)) == expected


def test_det_row_swap_and_repeated_row():
    ring = PolyRing(2, SPEC)
    rng = random.Random(7)
    rows = [[random_poly(ring, rng, nterms=2, maxdeg=2) for _ in range(3)]
            for _ in range(3)]
    d = det_poly(PolyMatrix(rows))
    swapped = [rows[1], rows[0], rows[2]]
    assert det_poly(PolyMatrix(swapped)) == d
    repeated = [rows[0], rows[0], rows[2]]
    assert det_poly(PolyMatrix(repeated)).is_zero()


def test_det_size_cap():
    ring = PolyRing(1, SPEC)
    big = [[ring.constant(1)] * 13 for _ in range(13)]
    with pytest.raises(ValueError):
        det_poly(PolyMatrix(big))


# ----------------------------------------------------------------------
# resultants
# ----------------------------------------------------------------------

def test_resultant_of_two_linear():
    ring = PolyRing(3, SPEC)  # a, b, X
    f = ring.variable(2) + ring.variable(0)
    g = ring.variable(2) + ring.variable(1)
    assert sylvester_resultant(f, g) == ring.variable(0) + ring.variable(1)


def test_resultant_linear_f_is_substitution():
    """Res_X(X + g0, g) = g(g0) when f is monic linear in X."""
    rng = random.Random(8)
    ring = PolyRing(4, SPEC)  # x1, x2, x3, X
    f = ring.variable(3) + ring.variable(0)  # X + x1
    g = (ring.monomial((0, 2, 0, 2)) + ring.monomial((0, 0, 2, 2))
         + ring.monomial((0, 1, 1, 1)) + ring.monomial((0, 2, 2, 0))
         + ring.constant(0b1101))
    res = sylvester_resultant(f, g)
    assert res == g.subs_var(3, ring.variable(0))


def test_resultant_specialization_matches_univariate_oracle():
    rng = random.Random(9)
    ring = PolyRing(3, SPEC)  # x1, x2, X
    for _ in range(20):
        f = random_poly(ring, rng, nterms=4, maxdeg=2)
        g = random_poly(ring, rng, nterms=4, maxdeg=2)
        if f.degree_in(2) == 0 or g.degree_in(2) == 0:
            continue
        res = sylvester_resultant(f, g)
        pt = [SPEC.random_element(rng) for _ in range(2)]
        fc = [c.eval(pt + [SPEC.zero]).mask for c in f.coeffs_in_X()]
        gc = [c.eval(pt + [SPEC.zero]).mask for c in g.coeffs_in_X()]
        if fc[-1] == 0 or gc[-1] == 0:
            continue  # specialization dropped a leading degree
        expected = univariate_resultant_oracle(SPEC, fc, gc)
        assert res.eval(pt + [SPEC.zero]).mask == expected


def univariate_resultant_oracle(spec, fc, gc):
    """Determinant of the scalar Sylvester matrix, by cofactor expansion."""
    k, l = len(fc) - 1, len(gc) - 1
    size = k + l
    m = [[0] * size for _ in range(size)]
    for i in range(l):
        for j in range(k + 1):
            m[i][i + j] = fc[k - j]
    for i in range(k):
        for j in range(l + 1):
            m[l + i][i + j] = gc[l - j]
    memo = {}

    def minor(row, cols):
        if row == size:
            return 1
        if (row, cols) in memo:
            return memo[(row, cols)]
        acc = 0
        c = cols
        while c:
            low = c & -c
            j = low.bit_length() - 1
            if m[row][j]:
                acc ^= spec.mul(m[row][j], minor(row + 1, cols ^ low))
            c ^= low
        memo[(row, cols)] = acc
        return acc

    return minor(0, (1 << size) - 1)


def test_resultant_vanishes_on_common_root_instances():
    spec8 = FieldSpec(8)
    rng = random.Random(10)
    ring = PolyRing(4, spec8)  # x1, x2, x3, X
    shared = ring.variable(3) + ring.variable(0)          # X + x1
    f = shared * (ring.variable(3) + ring.variable(1))    # (X+x1)(X+x2)
    g = shared * (ring.variable(3) + ring.variable(2))    # (X+x1)(X+x3)
    res = sylvester_resultant(f, g)
    for _ in range(50):
        pt = [spec8.random_element(rng) for _ in range(3)]
        assert res.eval(pt + [spec8.zero]).mask == 0


def test_resultant_rejects_zero_input():
    ring = PolyRing(2, SPEC)
    with pytest.raises(ValueError):
        sylvester_resultant(ring.zero(), ring.variable(1))
