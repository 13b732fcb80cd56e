"""Field arithmetic against independent schoolbook oracles."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from falldeg.fieldalg import (F2Matrix, FieldMatrix, FieldSpec, f2_rank,
                              f2_rank_rows, field_rank, field_solve,
                              is_irreducible, smallest_irreducible,
                              solve_artin_schreier)


# ----------------------------------------------------------------------
# oracles
# ----------------------------------------------------------------------

def poly_mul_oracle(a, b):
    """Schoolbook F2[x] product via coefficient lists."""
    out = [0] * (a.bit_length() + b.bit_length())
    for i in range(a.bit_length()):
        if (a >> i) & 1:
            for j in range(b.bit_length()):
                if (b >> j) & 1:
                    out[i + j] ^= 1
    return sum(bit << k for k, bit in enumerate(out))


def poly_divmod_oracle(a, m):
    """Long division of bit-list polynomials; returns the remainder."""
    a_bits = [(a >> i) & 1 for i in range(max(a.bit_length(), 1))]
    dm = m.bit_length() - 1
    for i in range(len(a_bits) - 1, dm - 1, -1):
        if a_bits[i]:
            for j in range(dm + 1):
                a_bits[i - dm + j] ^= (m >> j) & 1
    return sum(bit << k for k, bit in enumerate(a_bits))


def mul_oracle(spec, a, b):
    return poly_divmod_oracle(poly_mul_oracle(a, b), spec.reduction_poly)


def pow_oracle(spec, a, e):
    acc = 1
    while e:
        if e & 1:
            acc = mul_oracle(spec, acc, a)
        a = mul_oracle(spec, a, a)
        e >>= 1
    return acc


def rank_oracle(rows, cols):
    """Dense list-of-lists Gaussian elimination over F2."""
    m = [[(r >> j) & 1 for j in range(cols)] for r in rows]
    rank = 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                m[i] = [x ^ y for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


def det_oracle(spec, entries):
    """Cofactor determinant over GF(2^n), memoized on column subsets."""
    size = len(entries)
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
            if entries[row][j]:
                acc ^= spec.mul(entries[row][j], minor(row + 1, cols ^ low))
            c ^= low
        memo[(row, cols)] = acc
        return acc

    return minor(0, (1 << size) - 1)


# ----------------------------------------------------------------------
# construction
# ----------------------------------------------------------------------

def test_smallest_irreducibles_match_known_values():
    known = {2: 0b111, 3: 0b1011, 4: 0b10011, 5: 0b100101, 8: 0x11B}
    for n, mask in known.items():
        assert smallest_irreducible(n) == mask


def test_reducible_polynomial_rejected():
    with pytest.raises(ValueError):
        FieldSpec(4, 0b10101)  # x^4 + x^2 + 1 = (x^2 + x + 1)^2
    assert not is_irreducible(0b11011, 4)  # divisible by x + 1


def test_spec_text_roundtrip():
    spec = FieldSpec(13)
    assert FieldSpec.parse(repr(spec)) == spec


# ----------------------------------------------------------------------
# additive / multiplicative structure
# ----------------------------------------------------------------------

def test_add_self_cancels():
    spec = FieldSpec(5)
    rng = random.Random(1)
    for _ in range(50):
        a = spec.random_element(rng)
        assert (a + a).mask == 0


def test_one_plus_z_in_gf8():
    spec = FieldSpec(3)
    assert (spec.one + spec.z).mask == 0b011


def test_add_matches_coefficient_lists():
    spec = FieldSpec(13)
    rng = random.Random(2)
    for _ in range(100):
        a, b = spec.random_mask(rng), spec.random_mask(rng)
        bits = [((a >> i) & 1) ^ ((b >> i) & 1) for i in range(13)]
        assert spec.add(a, b) == sum(bit << i for i, bit in enumerate(bits))


def test_mul_identity_and_forced_reduction():
    spec = FieldSpec(3, 0b1011)  # z^3 + z + 1
    rng = random.Random(3)
    for _ in range(20):
        a = spec.random_mask(rng)
        assert spec.mul(a, 1) == a
    assert spec.mul(0b010, 0b100) == 0b011  # z * z^2 = z + 1


@pytest.mark.parametrize("n", [3, 5, 13, 17])
def test_mul_matches_schoolbook_oracle(n):
    spec = FieldSpec(n)
    rng = random.Random(n)
    for _ in range(200):
        a, b = spec.random_mask(rng), spec.random_mask(rng)
        assert spec.mul(a, b) == mul_oracle(spec, a, b)


def test_inverse_properties_and_oracle():
    spec = FieldSpec(13)
    rng = random.Random(4)
    assert spec.inv(1) == 1
    for _ in range(50):
        a = spec.random_mask(rng) or 1
        assert spec.mul(a, spec.inv(a)) == 1
        assert spec.inv(a) == pow_oracle(spec, a, spec.order - 2)
    with pytest.raises(ZeroDivisionError):
        spec.inv(0)


def test_frobenius_basics_and_additivity():
    spec = FieldSpec(13)
    rng = random.Random(5)
    for _ in range(50):
        a, b = spec.random_mask(rng), spec.random_mask(rng)
        j = rng.randrange(0, 30)
        assert spec.frobenius(a, 0) == a
        assert spec.frobenius(a, spec.n) == a
        assert spec.frobenius(a ^ b, j) == spec.frobenius(a, j) ^ spec.frobenius(b, j)
        assert spec.frobenius(a, j) == pow_oracle(spec, a, 2 ** j)


def test_frobenius_once_is_an_automorphism():
    spec = FieldSpec(11)
    rng = random.Random(6)
    for _ in range(200):
        a, b = spec.random_mask(rng), spec.random_mask(rng)
        assert spec.frobenius(spec.mul(a, b), 1) == spec.mul(spec.frobenius(a, 1),
                                                             spec.frobenius(b, 1))
        assert spec.frobenius(a ^ b, 1) == spec.frobenius(a, 1) ^ spec.frobenius(b, 1)


@pytest.mark.parametrize("n", [3, 5, 13, 17])
def test_field_axioms_random_sweep(n):
    spec = FieldSpec(n)
    rng = random.Random(n * 7)
    for _ in range(10_000):
        a, b, c = (spec.random_mask(rng) for _ in range(3))
        assert spec.mul(a, b) == spec.mul(b, a)
        assert spec.mul(spec.mul(a, b), c) == spec.mul(a, spec.mul(b, c))
        assert spec.mul(a, b ^ c) == spec.mul(a, b) ^ spec.mul(a, c)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2 ** 13 - 1), st.integers(0, 2 ** 13 - 1))
def test_mul_commutes_hypothesis(a, b):
    spec = FieldSpec(13)
    assert spec.mul(a, b) == spec.mul(b, a)


# ----------------------------------------------------------------------
# Artin-Schreier
# ----------------------------------------------------------------------

def test_artin_schreier_zero_and_postcondition():
    spec = FieldSpec(13)
    assert spec.solve_quadratic(0) == 0
    rng = random.Random(8)
    for _ in range(100):
        a = spec.random_mask(rng)
        if spec.trace(a) == 0:
            t = spec.solve_quadratic(a)
            assert spec.mul(t, t) ^ t == a
        else:
            with pytest.raises(ValueError):
                spec.solve_quadratic(a)


@pytest.mark.parametrize("n", [3, 5, 8, 13])
def test_artin_schreier_matches_exhaustive_root_map(n):
    """One pass over t builds the full root map of t^2 + t."""
    spec = FieldSpec(n)
    roots = {}
    for t in range(spec.order):
        roots.setdefault(spec.mul(t, t) ^ t, set()).add(t)
    for a in range(spec.order):
        if spec.trace(a) == 0:
            assert spec.solve_quadratic(a) in roots[a]
        else:
            assert a not in roots


def test_artin_schreier_element_wrapper():
    spec = FieldSpec(12)  # even degree path
    rng = random.Random(9)
    hits = 0
    while hits < 50:
        a = spec.random_element(rng)
        if a.trace() == 0:
            t = solve_artin_schreier(a)
            assert t * t + t == a
            hits += 1


# ----------------------------------------------------------------------
# F2 linear algebra
# ----------------------------------------------------------------------

def test_f2_rank_identity_and_zero():
    for k in (1, 4, 9):
        eye = F2Matrix.from_rows([1 << i for i in range(k)], k)
        assert f2_rank(eye) == k
    assert f2_rank(F2Matrix.from_rows([0, 0, 0], 5)) == 0


def test_f2_rank_matches_dense_oracle():
    rng = random.Random(10)
    for _ in range(50):
        rows = [rng.getrandbits(30) for _ in range(20)]
        assert f2_rank_rows(rows) == rank_oracle(rows, 30)


def test_f2_rank_equals_transpose_rank():
    rng = random.Random(11)
    for _ in range(50):
        m = F2Matrix.from_rows([rng.getrandbits(17) for _ in range(9)], 17)
        assert m.rank() == m.transpose().rank()


# ----------------------------------------------------------------------
# GF(2^n) linear algebra
# ----------------------------------------------------------------------

def test_field_rank_identity_and_duplicate_row():
    spec = FieldSpec(5)
    eye = FieldMatrix(spec, [[1 if i == j else 0 for j in range(4)] for i in range(4)])
    assert field_rank(eye) == 4
    rng = random.Random(12)
    rows = [[spec.random_mask(rng) for _ in range(4)] for _ in range(3)]
    base = field_rank(FieldMatrix(spec, rows))
    assert field_rank(FieldMatrix(spec, rows + [rows[0]])) == base


def test_field_rank_matches_determinant_oracle():
    spec = FieldSpec(5)
    rng = random.Random(13)
    for _ in range(40):
        entries = [[spec.random_mask(rng) for _ in range(8)] for _ in range(8)]
        det = det_oracle(spec, entries)
        rank = field_rank(FieldMatrix(spec, entries))
        assert (rank == 8) == (det != 0)


def test_field_solve_solution_and_inconsistency():
    spec = FieldSpec(5)
    rng = random.Random(14)
    for _ in range(30):
        entries = [[spec.random_mask(rng) for _ in range(5)] for _ in range(6)]
        x = [spec.random_mask(rng) for _ in range(5)]
        v = [0] * 6
        for i in range(6):
            for j in range(5):
                v[i] ^= spec.mul(entries[i][j], x[j])
        sol = field_solve(FieldMatrix(spec, entries), v)
        assert sol is not None
        check = [0] * 6
        for i in range(6):
            for j in range(5):
                check[i] ^= spec.mul(entries[i][j], sol[j])
        assert check == v
    # inconsistent vs zero solution are distinct outcomes
    assert field_solve(FieldMatrix(spec, [[1, 1], [1, 1]]), [1, 0]) is None
    assert field_solve(FieldMatrix(spec, [[1, 0], [0, 1]]), [0, 0]) == [0, 0]
