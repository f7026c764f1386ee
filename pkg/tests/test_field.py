import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nbcss.errors import BadDegree, LogOfZero, NotPrimitive
from nbcss.field import DEFAULT_POLYS, make_field, poly_str


# Independent oracle: shift-and-add multiplication modulo the field polynomial,
# no tables involved.
def clmul_mod(a, b, m, poly):
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a >> m & 1:
            a ^= poly
    return r


def order_of_x(m, poly):
    a, k = 2, 1
    while a != 1:
        a = clmul_mod(a, 2, m, poly)
        k += 1
        if k > 1 << m:
            return None
    return k


@pytest.mark.parametrize("m", sorted(DEFAULT_POLYS))
def test_default_polys_are_primitive(m):
    assert order_of_x(m, DEFAULT_POLYS[m]) == (1 << m) - 1
    F = make_field(m)
    assert F.order == 1 << m
    assert F.alpha == 2
    assert sorted(F.exp_table) == list(range(1, F.order))


def test_gf4():
    F = make_field(2, 0b111)
    a = F.alpha
    assert F.order == 4
    assert F.mul(a, a) == a ^ 1  # alpha^2 = alpha + 1
    assert F.add(a, 1) == F.alpha_pow(2)


def test_gf256_default_has_order_255():
    F = make_field(8)
    assert F.poly == 0x11D
    powers = {F.alpha_pow(k) for k in range(255)}
    assert len(powers) == 255
    assert F.alpha_pow(255) == 1


def test_aes_polynomial_rejected():
    # x^8+x^4+x^3+x+1 is irreducible but x only has order 51 under it
    assert order_of_x(8, 0x11B) == 51
    with pytest.raises(NotPrimitive):
        make_field(8, 0x11B)


def test_reducible_polynomial_rejected():
    # x^4 + 1 = (x + 1)^4
    with pytest.raises(NotPrimitive):
        make_field(4, 0b10001)


@pytest.mark.parametrize("m, poly", [(1, None), (17, None), (8, 0x13), (4, 0x11D)])
def test_bad_degree(m, poly):
    with pytest.raises(BadDegree):
        make_field(m, poly)


def test_poly_str():
    assert poly_str(0x11D) == "x^8 + x^4 + x^3 + x^2 + 1"
    assert poly_str(0b111) == "x^2 + x + 1"


@pytest.mark.parametrize("m", [2, 3, 4])
def test_mul_matches_shift_and_add(m):
    F = make_field(m)
    for a, b in itertools.product(range(F.order), repeat=2):
        assert F.mul(a, b) == clmul_mod(a, b, m, F.poly)


@given(st.integers(0, 255), st.integers(0, 255))
def test_mul_matches_shift_and_add_gf256(a, b):
    F = make_field(8)
    assert F.mul(a, b) == clmul_mod(a, b, 8, F.poly)


def test_add_examples():
    F = make_field(4)
    for a in range(F.order):
        assert F.add(a, 0) == a
        assert F.add(a, a) == 0


def test_mul_examples():
    F = make_field(5)
    for a in range(F.order):
        assert F.mul(a, 1) == a
        assert F.mul(a, 0) == 0
    for k in range(F.modulus):
        assert F.mul(F.alpha_pow(k), F.alpha_pow(F.modulus - k)) == 1


def test_alpha_pow_and_dlog():
    F = make_field(6)
    assert F.alpha_pow(0) == 1
    assert F.alpha_pow(F.modulus) == 1
    assert F.alpha_pow(-1) == F.inv(F.alpha)
    for k in range(F.modulus):
        assert F.dlog(F.alpha_pow(k)) == k
    with pytest.raises(LogOfZero):
        F.dlog(0)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_field_axioms_exhaustive(m):
    F = make_field(m)
    els = range(F.order)
    for a, b in itertools.product(els, repeat=2):
        assert F.mul(a, b) == F.mul(b, a)
        assert F.add(a, b) == F.add(b, a)
    for a, b, c in itertools.product(els, repeat=3):
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


@settings(max_examples=300)
@given(st.sampled_from([8, 11, 16]), st.integers(0, 2**16 - 1), st.integers(0, 2**16 - 1), st.integers(0, 2**16 - 1))
def test_field_axioms_sampled(m, a, b, c):
    F = make_field(m)
    a, b, c = a % F.order, b % F.order, c % F.order
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(a, b) == F.mul(b, a)


@pytest.mark.parametrize("m", [2, 3, 4, 8])
def test_fermat(m):
    F = make_field(m)
    for a in range(1, F.order):
        assert F.pow(a, F.modulus) == 1


@pytest.mark.parametrize("m", [2, 3, 4])
def test_exponent_addition_exhaustive(m):
    F = make_field(m)
    for i, j in itertools.product(range(F.modulus), repeat=2):
        assert F.mul(F.alpha_pow(i), F.alpha_pow(j)) == F.alpha_pow((i + j) % F.modulus)


def test_inverse_and_division():
    F = make_field(8)
    for a in range(1, 256):
        assert F.mul(a, F.inv(a)) == 1
        assert F.div(a, a) == 1
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


def test_equality_ignores_tables():
    assert make_field(8) == make_field(8, 0x11D)
    assert make_field(8) != make_field(8, 0x12B)
