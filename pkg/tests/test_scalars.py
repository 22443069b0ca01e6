from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from colorquant.scalars import (
    Cyc,
    CyclotomicField,
    ScalarError,
    TruncSeries,
    cyclotomic_polynomial,
    parse_scalar,
    series_exp,
)

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def cyc_elements(m: int):
    k = CyclotomicField(m)
    return st.lists(fractions, min_size=k.degree, max_size=k.degree).map(lambda c: k(0) + Cyc(m, c))


def series(order: int = 4, nonzero_constant: bool = False):
    head = fractions.filter(lambda x: x != 0) if nonzero_constant else fractions
    return st.tuples(head, st.lists(fractions, min_size=order - 1, max_size=order - 1)).map(
        lambda t: TruncSeries((t[0],) + tuple(t[1]))
    )


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(8) == (1, 0, 0, 0, 1)


@pytest.mark.parametrize("m", [3, 4, 5, 8, 12])
def test_zeta_has_order_m(m):
    k = CyclotomicField(m)
    z = k.zeta
    assert z**m == 1
    assert all(z**j != 1 for j in range(1, m))


def test_rational_fields_use_fractions():
    assert CyclotomicField(1)(3) == Fraction(3)
    assert isinstance(CyclotomicField(2)("1/4"), Fraction)
    assert CyclotomicField(2).zeta == -1


def test_parse_scalars():
    k4 = CyclotomicField(4)
    i = parse_scalar("i", k4)
    assert i * i == -1
    assert parse_scalar("1 + zeta^2", k4) == 0
    assert parse_scalar("-3/4") == Fraction(-3, 4)
    assert parse_scalar("(1/2)*(2 + 2)") == 2
    with pytest.raises((ValueError, ScalarError)):
        parse_scalar("0.5")
    with pytest.raises((ValueError, ScalarError)):
        parse_scalar("i")  # needs 4 | m


def test_mixed_conductors_rejected():
    with pytest.raises(ScalarError):
        CyclotomicField(3).zeta + CyclotomicField(4).zeta
    with pytest.raises(ScalarError):
        CyclotomicField(4)(CyclotomicField(3).zeta)


@given(cyc_elements(12), cyc_elements(12), cyc_elements(12))
def test_field_axioms_q_zeta12(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if a != 0:
        assert a * a.inverse() == 1


@given(cyc_elements(5))
def test_division(a):
    if a != 0:
        assert (1 / a) * a == 1


def test_series_basics():
    lam = TruncSeries.lam(3)
    one = TruncSeries.const(Fraction(1), 3)
    assert (lam * lam * lam).is_zero()
    assert (one + lam).inverse() * (one + lam) == one
    assert (lam * lam).valuation() == 2
    assert lam.truncate(1).is_zero()
    e = series_exp(lam)
    assert e.c == (1, 1, Fraction(1, 2))


def test_series_exp_needs_zero_constant():
    with pytest.raises((ValueError, ArithmeticError)):
        series_exp(TruncSeries.const(Fraction(1), 3))


def test_series_inverse_needs_unit():
    with pytest.raises((ValueError, ArithmeticError, ZeroDivisionError)):
        TruncSeries.lam(3).inverse()


@given(series(nonzero_constant=True))
def test_series_inverse_property(s):
    one = TruncSeries.const(Fraction(1), s.order)
    assert s.inverse() * s == one
    assert s * s.inverse() == one


@given(series(), series())
def test_exp_is_a_homomorphism(a, b):
    a = a - TruncSeries.const(a.c[0], a.order)
    b = b - TruncSeries.const(b.c[0], b.order)
    assert (a + b).exp() == a.exp() * b.exp()
    assert a.exp() * (-a).exp() == TruncSeries.const(Fraction(1), a.order)


@given(series(), series(), series())
def test_series_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
