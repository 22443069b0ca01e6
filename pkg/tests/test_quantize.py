from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from colorquant.colorlie import ColorLieBialgebra, double
from colorquant.fixtures import abelian2, borel2, borel2_triangular, gl11, sl2_bialgebra
from colorquant.quantize import (
    TnElement,
    TnReducer,
    associator_ansatz,
    associator_inverse,
    beta_map,
    check_classical_limit,
    check_quasitriangular,
    check_tn_relations,
    check_triangular,
    compute_J,
    hexagon_residuals,
    omega_embedding,
    pentagon_residual,
    polarize,
    quantize,
    quantize_coboundary,
    solve_associator_order2,
    tn_exp,
    tn_substitute,
    twist_hopf,
    twisted_associator,
)
from colorquant.scalars import TruncSeries
from colorquant.tensoralg import DeformedTensor, koszul_flip
from colorquant.uea import UEA, VermaPair


def lam(order, power=1, coeff=1):
    return TruncSeries.lam(order, power, Fraction(coeff))


@pytest.fixture(scope="module")
def borel_q2():
    return quantize(borel2(), N=2)


@pytest.fixture(scope="module")
def associator():
    return solve_associator_order2()


# -- T_n ----------------------------------------------------------------------------------


def test_tn_generators_are_symmetric():
    assert TnElement.gen(3, 2, 1) == TnElement.gen(3, 1, 2)
    with pytest.raises(ValueError):
        TnElement.gen(3, 1, 1)
    with pytest.raises(ValueError):
        TnElement.gen(3, 1, 4)


def test_tn_reducer_kills_relations():
    red = TnReducer(3, 2)
    t12, t13, t23 = (TnElement.gen(3, *p) for p in ((1, 2), (1, 3), (2, 3)))
    rel = t12 * (t13 + t23) - (t13 + t23) * t12
    assert red.reduce(rel) == {}
    assert red.reduce(t12 * t23 - t23 * t12) != {}
    red4 = TnReducer(4, 2)
    t34 = TnElement.gen(4, 3, 4)
    t12 = TnElement.gen(4, 1, 2)
    assert red4.reduce(t12 * t34 - t34 * t12) == {}


def test_tn_exp_inverse():
    t = TnElement.gen(2, 1, 2).scale(lam(3))
    assert tn_exp(t) * tn_exp(-t) == TnElement.one(2)


def test_omega_satisfies_tn_relations():
    for make in (abelian2, borel2, lambda: ColorLieBialgebra(gl11())):
        d = double(make())
        u = UEA(d.algebra)
        omega = d.double_data.omega
        for n in (3, 4):
            gens = {(i, j): omega_embedding(omega, i, j, n, 1) for i in range(1, n + 1) for j in range(i + 1, n + 1)}
            assert check_tn_relations(gens, n, u.tensor_mul, lambda t: t.is_zero()) == []


def test_tn_substitute_generator():
    d = double(abelian2())
    u = UEA(d.algebra)
    got = tn_substitute(TnElement.gen(2, 1, 2, 1), d.double_data.omega, u, 1)
    assert got == DeformedTensor.from_labels(
        d.basis, {("x1", "α_x1"): 1, ("α_x1", "x1"): 1, ("x2", "α_x2"): 1, ("α_x2", "x2"): 1}
    )


def test_non_invariant_element_breaks_relations():
    d = double(borel2())
    u = UEA(d.algebra)
    fake = d.double_data.r  # r alone is not invariant
    gens = {(i, j): omega_embedding(fake, i, j, 3, 1) for i in range(1, 4) for j in range(i + 1, 4)}
    assert check_tn_relations(gens, 3, u.tensor_mul, lambda t: t.is_zero()) != []


# -- associator -----------------------------------------------------------------------------


def test_associator_solution(associator):
    assert associator.c == Fraction(1, 24)
    assert associator.unique
    phi = associator_ansatz(associator.c)
    assert phi * associator_inverse(phi) == TnElement.one(3)
    red4 = TnReducer(4, 2)
    assert red4.reduce(pentagon_residual(phi)) == {}
    red3 = TnReducer(3, 2)
    assert all(red3.reduce(v) == {} for v in hexagon_residuals(phi).values())


def test_trivial_associator_fails_hexagon():
    red3 = TnReducer(3, 2)
    res = hexagon_residuals(associator_ansatz(0))
    bad = [red3.reduce(v) for v in res.values() if red3.reduce(v)]
    assert bad and all(set(r) == {2} for r in bad)


@given(st.fractions(min_value=-1, max_value=1, max_denominator=50))
def test_only_one_c_satisfies_hexagon(c):
    red3 = TnReducer(3, 2)
    res = hexagon_residuals(associator_ansatz(c))
    ok = all(red3.reduce(v) == {} for v in res.values())
    assert ok == (c == Fraction(1, 24))


def test_solution_json(associator):
    js = associator.to_json()
    assert js["c"] == "1/24"


# -- beta and J -------------------------------------------------------------------------------


def test_beta_order_one_is_flip():
    d = double(borel2())
    pair = VermaPair(d.algebra)
    v = DeformedTensor.from_labels(d.basis, {("α_y", "1"): 1})
    w, sides = beta_map(pair, d.double_data.omega, v, 1, ("+", "-"), 1)
    assert sides == ("-", "+")
    assert w == koszul_flip(v, 1)


def test_beta_on_vacuum():
    d = double(borel2())
    pair = VermaPair(d.algebra)
    v = pair.vacuum(2, 2)
    w, _ = beta_map(pair, d.double_data.omega, v, 1, ("+", "-"), 2)
    half = lam(2, 1, Fraction(1, 2))
    expect = DeformedTensor.unit(d.basis, 2, 2) + DeformedTensor.from_labels(
        d.basis, {("x", "α_x"): 1, ("y", "α_y"): 1}, 2
    ).scale(half)
    assert w == expect


def test_compute_J_orders():
    d = double(borel2())
    assert compute_J(d, 1) == DeformedTensor.unit(d.basis, 2, 1)
    with pytest.raises(ValueError):
        compute_J(d, 4)
    with pytest.raises(ValueError):
        compute_J(d, 3)  # needs the associator coefficient


def test_J_limit_borel(borel_q2):
    d = borel_q2.double
    expect = DeformedTensor.unit(d.basis, 2, 2) + DeformedTensor.from_labels(
        d.basis, {("x", "α_x"): 1, ("y", "α_y"): 1}, 2
    ).scale(lam(2, 1, Fraction(1, 2)))
    assert borel_q2.J == expect


def test_J_counit_and_degree(borel_q2):
    h = borel_q2.hopf
    u = h.uea
    one = DeformedTensor.unit(u.basis, 1, 2)
    for slot in (0, 1):
        assert u.apply_slot(h.J, slot, h.counit_word) == one
    assert h.J.is_homogeneous(u.basis.group.zero)


# -- twisted Hopf structure --------------------------------------------------------------------


def test_trivial_twist():
    d = double(borel2())
    u = UEA(d.algebra)
    one = DeformedTensor.unit(d.basis, 2, 2)
    q = twist_hopf(one, u, d.double_data.omega)
    x = u.basis.index("y")
    assert q.delta_word((x,)) == DeformedTensor(u.basis, 2, u.coproduct_word((x,)), 2)
    assert q.R == u.exp(d.double_data.omega.at_order(2).scale(lam(2, 1, Fraction(1, 2))))


def test_twist_requires_unit_constant_term():
    d = double(borel2())
    u = UEA(d.algebra)
    with pytest.raises(ValueError):
        twist_hopf(DeformedTensor.unit(d.basis, 2, 2).scale(lam(2)), u, d.double_data.omega)


def test_quasitriangular_and_classical_limit(borel_q2):
    assert check_quasitriangular(borel_q2.hopf, 2) == []
    assert check_classical_limit(borel_q2.hopf, borel_q2.double) == []


def test_R_without_J_fails(borel_q2):
    h = borel_q2.hopf
    bad = twist_hopf(h.J, h.uea, h.omega, h.r, r_formula="(J21)^-1 e^(lam Omega/2)")
    assert {v.check for v in check_quasitriangular(bad, 2)} == {"R_intertwines"}
    assert {v.check for v in check_classical_limit(bad, borel_q2.double)} == {"R_classical"}


def _drop_exponential(h):
    u = h.uea
    bad = twist_hopf(h.J, u, h.omega, h.r)
    bad.R = u.tensor_mul(u.inverse(koszul_flip(h.J, 1)), h.J)
    return bad


def test_R_dropping_exponential_invisible_at_order_two(borel_q2):
    # R = 1 + (lam/2)(r - r21) still intertwines: Omega is invariant and primitive in each slot
    assert check_quasitriangular(_drop_exponential(borel_q2.hopf), 2) == []


def test_R_dropping_exponential_fails_at_order_three(associator):
    q = quantize(borel2(), N=3, associator=associator)
    checks = {v.check for v in check_quasitriangular(_drop_exponential(q.hopf), 1)}
    assert checks == {"delta_x_id_R", "id_x_delta_R"}


def test_antipode_order_matters(borel_q2):
    h = borel_q2.hopf
    alt = twist_hopf(h.J, h.uea, h.omega, h.r, antipode_form="Q S0 Q^-1")
    assert {v.check for v in check_quasitriangular(alt, 2)} == {"antipode"}


def test_scaled_J_breaks_classical_limit(borel_q2):
    h = borel_q2.hopf
    u = h.uea
    one = DeformedTensor.unit(u.basis, 2, 2)
    scaled = one + (h.J - one).scale(TruncSeries.const(Fraction(2), 2))
    bad = twist_hopf(scaled, u, h.omega, h.r)
    found = {(v.check, v.location) for v in check_classical_limit(bad, borel_q2.double)}
    assert ("classical_limit", ("y",)) in found


def test_classical_limit_needs_order_two():
    q = quantize(borel2(), N=1)
    assert [v.check for v in check_classical_limit(q.hopf, q.double)] == ["order"]


def test_recovered_cobracket(borel_q2):
    h = borel_q2.hopf
    y = h.uea.basis.index("y")
    d = h.delta_word((y,))
    got = (d - koszul_flip(d, 1)).lam_coefficient(1)
    assert got == DeformedTensor.from_labels(h.uea.basis, {("x", "y"): 1, ("y", "x"): -1})


def test_polarize(borel_q2):
    h = borel_q2.hopf
    u = h.uea
    assert polarize(h.R, {(): 1}, "+", u) == DeformedTensor.unit(u.basis, 1, 2)
    got = polarize(h.R, {("α_y",): 1}, "+", u)
    assert got == DeformedTensor.from_labels(u.basis, {"y": 1}, 2).scale(lam(2))
    assert polarize(h.R, {("x", "y"): 1}, "+", u).is_zero()
    with pytest.raises(ValueError):
        polarize(h.R, {("x",): 1}, "middle", u)


# -- N = 3 ------------------------------------------------------------------------------------


@pytest.mark.parametrize("make", [abelian2, borel2, sl2_bialgebra, lambda: ColorLieBialgebra(gl11())])
def test_order_three(make, associator):
    q = quantize(make(), N=3, associator=associator)
    assert check_quasitriangular(q.hopf, 2) == []
    assert check_classical_limit(q.hopf, q.double) == []
    phi = tn_substitute(associator_ansatz(associator.c), q.double.double_data.omega, q.hopf.uea, 3)
    assert twisted_associator(q.hopf, phi) == DeformedTensor.unit(q.double.basis, 3, 3)


# -- quasitriangular inputs ----------------------------------------------------------------------


def test_triangular_pushforward():
    b = borel2_triangular()
    q = quantize_coboundary(b, N=2)
    assert q.kind == "triangular"
    assert q.push.violations == []
    assert check_quasitriangular(q.hopf, 2) == []
    assert check_classical_limit(q.hopf, b) == []
    assert check_triangular(q.hopf) == []


def test_triangular_order_three(associator):
    q = quantize_coboundary(borel2_triangular(), N=3, associator=associator)
    assert check_triangular(q.hopf) == []
    assert check_quasitriangular(q.hopf, 2) == []


def test_sl2_pushforward():
    b = sl2_bialgebra()
    q = quantize_coboundary(b, N=2)
    assert q.kind == "quasitriangular"
    assert check_quasitriangular(q.hopf, 2) == []
    assert check_classical_limit(q.hopf, b) == []
    # R21 R is not 1 when Omega != 0
    assert check_triangular(q.hopf) != []
