from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from colorquant.grading import CommutationFactor, GradingGroup, epsilon, validate_commutation_factor
from colorquant.scalars import CyclotomicField


def test_trivial_group():
    eps = CommutationFactor.trivial(GradingGroup(0))
    assert epsilon(eps, (), ()) == 1


def test_super_sign():
    eps = CommutationFactor(GradingGroup(0, [2]), [[-1]])
    assert epsilon(eps, 1, 1) == -1
    assert epsilon(eps, 1, 0) == 1
    assert validate_commutation_factor(eps) == []


def test_exponent_arithmetic_on_z():
    eps = CommutationFactor(GradingGroup(1), [[-1]])
    assert epsilon(eps, 2, 3) == 1
    assert epsilon(eps, 1, 3) == -1
    assert epsilon(eps, -1, 1) == -1


def test_validation_reports_cells():
    assert validate_commutation_factor(CommutationFactor(GradingGroup(1), [[1]])) == []
    bad = validate_commutation_factor(CommutationFactor(GradingGroup(1), [[2]]))
    assert [(v.check, v.location) for v in bad] == [("antisymmetry", (0, 0))]
    # off-diagonal entries must be mutually inverse
    bad = validate_commutation_factor(CommutationFactor(GradingGroup(2), [[1, 2], [2, 1]]))
    assert [(v.check, v.location) for v in bad] == [("antisymmetry", (0, 1))]


def test_torsion_condition():
    k4 = CyclotomicField(4)
    # i on Z/2 is not a bicharacter: i^2 != 1
    bad = validate_commutation_factor(CommutationFactor(GradingGroup(0, [2]), [["i"]], k4), antisymmetric=False)
    assert [v.check for v in bad] == ["torsion"]
    assert validate_commutation_factor(CommutationFactor(GradingGroup(1), [["i"]], k4), antisymmetric=False) == []


def test_zero_entry_rejected():
    with pytest.raises(ValueError):
        CommutationFactor(GradingGroup(1), [[0]])


def test_group_reduction():
    g = GradingGroup(1, [3])
    assert g.element((2, 4)) == (2, 1)
    assert g.add((1, 2), (1, 2)) == (2, 1)
    assert g.neg((1, 1)) == (-1, 2)
    with pytest.raises(ValueError):
        g.element((1,))


def test_antisymmetrized_and_products():
    k4 = CyclotomicField(4)
    g = GradingGroup(2)
    sigma = CommutationFactor(g, [[1, "i"], [1, -1]], k4)
    anti = sigma.antisymmetrized()
    assert validate_commutation_factor(anti) == []
    assert anti((1, 0), (0, 1)) == k4("i")
    assert (sigma * sigma.inverse()).is_trivial()


ints = st.integers(-4, 4)
pairs = st.tuples(ints, ints)
K8 = CyclotomicField(8)
Z2xZ4 = GradingGroup(1, [4])
COLOR = CommutationFactor(Z2xZ4, [[-1, "zeta^2"], ["-zeta^2", 1]], K8)


@given(pairs, pairs, pairs)
def test_bicharacter_laws(a, b, c):
    a, b, c = Z2xZ4.element(a), Z2xZ4.element(b), Z2xZ4.element(c)
    assert COLOR(Z2xZ4.add(a, b), c) == COLOR(a, c) * COLOR(b, c)
    assert COLOR(a, Z2xZ4.add(b, c)) == COLOR(a, b) * COLOR(a, c)
    assert COLOR(a, b) * COLOR(b, a) == 1


def test_color_factor_is_valid():
    assert validate_commutation_factor(COLOR) == []
