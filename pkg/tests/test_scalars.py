"""Exact scalar arithmetic: Gaussian rationals, radicals, pi powers."""

from fractions import Fraction

import pytest

from supersphere.scalars import Scalar, rat, squarefree_split


def test_squarefree_split():
    assert squarefree_split(1) == (1, 1)
    assert squarefree_split(12) == (2, 3)
    assert squarefree_split(49) == (7, 1)
    assert squarefree_split(360) == (6, 10)
    with pytest.raises(ValueError):
        squarefree_split(0)


def test_radical_products():
    assert Scalar.sqrt_int(2) * Scalar.sqrt_int(2) == Scalar.of(2)
    assert Scalar.sqrt_int(2) * Scalar.sqrt_int(3) == Scalar.sqrt_int(6)
    assert Scalar.sqrt_int(6) * Scalar.sqrt_int(10) == Scalar.of(2, 0, 15)
    assert Scalar.sqrt_int(12) == Scalar.of(2, 0, 3)


def test_pi_exponents_add():
    assert Scalar.pi_power(1) * Scalar.pi_power(2) == Scalar.pi_power(3)
    assert Scalar.of(2, 0, 1, -1) * Scalar.of(Fraction(1, 2), 0, 1, 1) == Scalar.one()


def test_zero_canonical():
    z = Scalar.of(0)
    assert z.is_zero
    assert z == Scalar.zero()
    assert (Scalar.of(1) - Scalar.of(1)).is_zero
    assert z.gaussian == (0, 0) and z.radical == 1 and z.pi_exp == 0


def test_gaussian_arithmetic():
    i = Scalar.i()
    assert i * i == Scalar.of(-1)
    x = Scalar.of(Fraction(1, 2), Fraction(3, 4))
    assert x.conjugate() == Scalar.of(Fraction(1, 2), Fraction(-3, 4))
    assert x * x.inverse() == Scalar.one()
    assert (Scalar.of(3) / Scalar.of(2)) == rat(3, 2)


def test_inverse_with_radical_and_pi():
    x = Scalar.of(2, 0, 3, 1)      # 2 sqrt(3) pi
    assert x * x.inverse() == Scalar.one()
    with pytest.raises(ZeroDivisionError):
        Scalar.zero().inverse()


def test_mixed_component_sums():
    x = Scalar.of(1) + Scalar.of(1, 0, 2)          # 1 + sqrt(2): kept as two parts
    assert not x.is_simple
    assert x + (-x) == Scalar.zero()
    y = x * Scalar.sqrt_int(2)                     # sqrt2 + 2
    assert y == Scalar.sqrt_int(2) + Scalar.of(2)
    with pytest.raises(ValueError):
        x.inverse()


def test_as_int():
    assert Scalar.of(5).as_int() == 5
    assert Scalar.zero().as_int() == 0
    for bad in (Scalar.of(Fraction(1, 2)), Scalar.sqrt_int(2), Scalar.pi_power(1),
                Scalar.of(1, 1)):
        with pytest.raises(ValueError):
            bad.as_int()


def test_serialization_roundtrip():
    x = Scalar.of(Fraction(3, 7), Fraction(-1, 2), 6, -1) + Scalar.of(2)
    assert Scalar.from_obj(x.to_obj()) == x


def test_to_complex():
    import math
    x = Scalar.of(1, 1, 2, 1)
    want = complex(1, 1) * math.sqrt(2) * math.pi
    assert abs(x.to_complex() - want) < 1e-12
