"""Directed-rounding intervals: soundness under every operation."""

import random
from fractions import Fraction
from math import isqrt

import pytest

from polystab.interval import NegativeRadicand, RInterval

F = Fraction


def rand_fraction(rng):
    return F(rng.randrange(-10 ** 6, 10 ** 6), rng.randrange(1, 10 ** 4))


def test_constructors():
    x = RInterval.from_int(7, 64)
    assert x.lo() == x.hi() == 7 and x.prec == 64
    y = RInterval.from_fraction(F(1, 3), 64)
    assert y.lo() <= F(1, 3) <= y.hi()
    assert y.width() < F(1, 2 ** 60)
    z = RInterval.from_fractions(F(1, 3), F(1, 2), 64)
    assert z.lo() <= F(1, 3) and F(1, 2) <= z.hi()
    with pytest.raises(ValueError):
        RInterval.from_fractions(F(1, 2), F(1, 3), 64)


def test_containment_under_arithmetic():
    # interval results must contain the exact rational results, always
    rng = random.Random(5)
    for _ in range(200):
        a, b = rand_fraction(rng), rand_fraction(rng)
        x = RInterval.from_fraction(a, 48)
        y = RInterval.from_fraction(b, 48)
        assert (x + y).contains(a + b)
        assert (x - y).contains(a - b)
        assert (x * y).contains(a * b)
        if b != 0 and not y.contains_zero():
            assert (x / y).contains(a / b)
        assert (x ** 3).contains(a ** 3)
        assert (-x).contains(-a)


def test_scalar_coercion():
    x = RInterval.from_fraction(F(3, 2), 64)
    assert (x + 1).contains(F(5, 2))
    assert (1 + x).contains(F(5, 2))
    assert (2 * x).contains(3)
    assert (x - F(1, 2)).contains(1)
    assert (F(3) / x).contains(2)


def test_division_by_zero_interval():
    x = RInterval.from_fractions(F(-1), F(1), 64)
    with pytest.raises(ZeroDivisionError):
        RInterval.from_int(1, 64) / x


def test_sqrt_against_isqrt():
    rng = random.Random(11)
    for _ in range(60):
        a = F(rng.randrange(0, 10 ** 8), rng.randrange(1, 10 ** 4))
        x = RInterval.from_fraction(a, 96).sqrt()
        # oracle bracket from integer square roots at scale 10^20
        s = 10 ** 20
        num = a.numerator * s * s // a.denominator
        lo = F(isqrt(num), s)
        hi = F(isqrt(num) + 1, s)
        assert x.lo() <= hi and lo <= x.hi()
        assert (x * x).contains(a)
    with pytest.raises(NegativeRadicand):
        RInterval.from_fraction(F(-1, 4), 64).sqrt()


def test_cbrt_both_signs():
    for a in (F(8), F(-8), F(27, 64), F(-5, 7)):
        x = RInterval.from_fraction(a, 96).cbrt()
        assert (x ** 3).contains(a)
        if a < 0:
            assert x.hi() < 0
    assert RInterval.from_int(0, 64).cbrt().contains(0)


def test_pow_even_through_zero():
    x = RInterval.from_fractions(F(-2), F(3), 64)
    sq = x ** 2
    for v in (F(-2), F(0), F(3), F(1, 7)):
        assert sq.contains(v * v)


def test_predicates():
    x = RInterval.from_fractions(F(1, 3), F(1, 2), 64)
    assert x.is_positive() and not x.is_negative()
    assert not x.contains_zero()
    assert x.certainly_lt(1) and x.certainly_gt(0)
    assert not x.certainly_lt(F(1, 2))
    y = RInterval.from_fractions(F(0), F(1), 64)
    assert y.encloses(x) and not x.encloses(y)


def test_precision_controls_width():
    wide = RInterval.from_fraction(F(1, 3), 32)
    tight = RInterval.from_fraction(F(1, 3), 160)
    assert tight.width() < wide.width()
    assert wide.width() < F(1, 2 ** 28)
    assert tight.width() < F(1, 2 ** 156)


def test_intersect():
    a = RInterval.from_fractions(F(0), F(2), 64)
    b = RInterval.from_fractions(F(1), F(3), 64)
    c = a.intersect(b)
    assert c.lo() >= 1 and c.hi() <= 2
    assert c.contains(F(3, 2))


def test_json_roundtrip():
    rng = random.Random(3)
    for _ in range(20):
        x = RInterval.from_fraction(rand_fraction(rng), 80)
        y = RInterval.from_json(x.to_json())
        assert y.lo() == x.lo() and y.hi() == x.hi() and y.prec == x.prec


def test_outward_rounding_is_monotone():
    # adding many tiny terms keeps the enclosure sound even as rounding bites
    total_iv = RInterval.from_int(0, 48)
    total_fr = F(0)
    for i in range(1, 60):
        total_iv = total_iv + F(1, i)
        total_fr += F(1, i)
    assert total_iv.contains(total_fr)
    assert total_iv.width() < F(1, 2 ** 38)
