import random
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braidorbit.cyclo import (
    NotRootOfUnity,
    ParseError,
    Cyclotomic,
    cyc,
    cyclotomic_polynomial,
    euler_phi,
    order_of_root,
    parse_cyclo,
    render,
    sqrt_of_root,
    zeta,
)


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def poly_div(num, den):
    # independent oracle: naive long division over Q, asserts exactness
    num = [Fraction(c) for c in num]
    out = [Fraction(0)] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        q = num[k + len(den) - 1] / den[-1]
        out[k] = q
        for j, y in enumerate(den):
            num[k + j] -= q * y
    assert not any(num)
    assert all(c.denominator == 1 for c in out)
    return [int(c) for c in out]


def phi_oracle(n):
    # divide x^n - 1 by Phi_d for all proper divisors d of n
    poly = [0] * (n + 1)
    poly[0], poly[n] = -1, 1
    for d in range(1, n):
        if n % d == 0:
            poly = poly_div(poly, list(phi_oracle(d)))
    return poly


def test_cyclotomic_polynomial_small():
    assert cyclotomic_polynomial(1) == (-1, 1)  # x - 1
    assert cyclotomic_polynomial(6) == (1, -1, 1)  # x^2 - x + 1, from the oracle
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)  # x^4 - x^2 + 1


def test_cyclotomic_polynomial_oracle():
    for n in [2, 3, 4, 5, 8, 9, 15, 24, 30, 60, 105, 360]:
        assert list(cyclotomic_polynomial(n)) == phi_oracle(n)


def test_phi_degrees():
    for n, phi in [(1, 1), (2, 1), (3, 2), (12, 4), (60, 16), (360, 96)]:
        assert euler_phi(n) == phi


def test_zeta_basics():
    assert zeta(2, 1) == -1
    assert zeta(6, 1) + zeta(6, 5) == 1
    assert zeta(12, 6) == -1
    assert zeta(5, 7) == zeta(5, 2)


def test_field_ops_examples():
    x = zeta(12, 5) + 3
    assert x * x.inverse() == 1
    assert (1 - zeta(3, 1)) * (1 - zeta(3, 2)) == 3
    assert zeta(4, 1) * zeta(3, 1) == zeta(12, 7)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        cyc(1) / cyc(0)
    with pytest.raises(ZeroDivisionError):
        cyc(0).inverse()


def test_order_of_root_examples():
    assert order_of_root(zeta(12, 5)) == 12
    assert order_of_root(cyc(2)) is None
    assert order_of_root(-zeta(3, 1)) == 6
    assert order_of_root(cyc(1)) == 1
    assert order_of_root(cyc(0)) is None


def test_order_of_root_random():
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randrange(1, 120)
        k = rng.randrange(0, 3 * n)
        expected = n // gcd(n, k) if k % n else 1
        assert order_of_root(zeta(n, k)) == expected


def test_sqrt_of_root():
    assert sqrt_of_root(cyc(1)) == 1
    assert sqrt_of_root(cyc(-1)) == zeta(4, 1)
    assert sqrt_of_root(zeta(3, 1)) == zeta(6, 1)
    with pytest.raises(NotRootOfUnity):
        sqrt_of_root(cyc(2))


def test_sqrt_squares_back():
    rng = random.Random(3)
    for _ in range(40):
        n = rng.randrange(1, 60)
        k = rng.randrange(n)
        x = zeta(n, k)
        assert sqrt_of_root(x) ** 2 == x


def test_parse_examples():
    assert parse_cyclo("z6") == zeta(6, 1)
    assert parse_cyclo("(1 - z3)^2") == 1 - 2 * zeta(3, 1) + zeta(3, 1) ** 2
    assert parse_cyclo("z4*z3") == zeta(12, 7)
    assert parse_cyclo("z12^5 + 1/2") == zeta(12, 5) + Fraction(1, 2)
    assert parse_cyclo("z12^-1") == zeta(12, 11)
    assert parse_cyclo("-2/3") == Fraction(-2, 3)
    assert parse_cyclo("1/z3") == zeta(3, 2)


def test_parse_errors_have_positions():
    with pytest.raises(ParseError) as e:
        parse_cyclo("1 + ")
    assert e.value.position == 4
    with pytest.raises(ParseError):
        parse_cyclo("(1+2")
    with pytest.raises(ParseError):
        parse_cyclo("1 2")


small_roots = st.builds(
    zeta,
    st.sampled_from([1, 2, 3, 4, 5, 6, 8, 12]),
    st.integers(min_value=0, max_value=23),
)
rationals = st.builds(
    lambda p, q: cyc(Fraction(p, q)),
    st.integers(min_value=-8, max_value=8),
    st.integers(min_value=1, max_value=6),
)
elements = st.one_of(
    rationals,
    small_roots,
    st.builds(lambda a, b: a + b, small_roots, rationals),
    st.builds(lambda a, b: a * b, small_roots, small_roots),
)


@settings(max_examples=80, deadline=None)
@given(elements, elements, elements)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a


@settings(max_examples=60, deadline=None)
@given(elements)
def test_inverse_and_roundtrip(x):
    if not x.is_zero():
        assert x * x.inverse() == 1
    assert parse_cyclo(render(x)) == x


@settings(max_examples=40, deadline=None)
@given(elements, st.sampled_from([2, 3, 4, 5, 6]))
def test_equality_is_conductor_blind(x, m):
    promoted = x.promote(x.n * m)
    assert promoted == x
    assert promoted.key_at(x.n * m * 2) == x.key_at(x.n * m * 2)


def test_galois_and_conj():
    x = zeta(12, 1) + 2
    assert x.conj() == zeta(12, 11) + 2
    assert (x * x.conj()).is_rational() is False  # |zeta+2|^2 is not rational-free
    y = zeta(5, 1)
    assert y.galois(2) == zeta(5, 2)


def test_to_complex():
    z = zeta(8, 1).to_complex()
    assert abs(z - complex(2**-0.5, 2**-0.5)) < 1e-12
