from __future__ import annotations

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from colorquant.colorlie import ColorLieBialgebra, double
from colorquant.fixtures import abelian2, borel2, gl11, gl11_z, sl2, sl2_bialgebra
from colorquant.tensoralg import DeformedTensor
from colorquant.uea import (
    UEA,
    HopfData,
    VermaPair,
    check_hopf,
    coproduct0,
    i_pm,
    pbw_normalize,
    phi_inverse,
    phi_iso,
    uea_mul,
    verma_act,
)


def words(u: UEA, data: dict) -> dict:
    """Translate ``{label word: coeff}`` into index words."""
    idx = u.basis.index
    return {tuple(idx(x) for x in w): Fraction(c) for w, c in data.items()}


def el(u: UEA, data: dict, order: int = 1) -> DeformedTensor:
    return u.element({w: c for w, c in data.items()}, order)


# -- normal forms ------------------------------------------------------------------------


def test_normal_form_examples():
    b = borel2().algebra
    u = UEA(b)
    assert pbw_normalize(["x"], b) == words(u, {("x",): 1})
    assert pbw_normalize(["y", "x"], b) == words(u, {("x", "y"): 1, ("y",): -1})
    g = gl11()
    assert pbw_normalize(["psi+", "psi+"], g) == {}
    # odd square of an element whose self-bracket is nonzero
    assert pbw_normalize(["psi+", "psi-", "psi+"], g) == words(UEA(g), {("E", "psi+"): 1})


def test_products_examples():
    u = UEA(sl2())
    e = u.letter("e")
    f = u.letter("f")
    assert uea_mul(u, u.one(), e) == e
    assert uea_mul(u, e, f) == el(u, {("e", "f"): 1})
    assert uea_mul(u, f, e) == el(u, {("e", "f"): 1, ("h",): -1})
    s = UEA(gl11())
    p, m = s.letter("psi+"), s.letter("psi-")
    anti = uea_mul(s, p, m) + uea_mul(s, m, p)  # eps(psi+, psi-) = -1
    assert anti == s.letter("E")


def test_unknown_strategy():
    with pytest.raises(ValueError):
        pbw_normalize(["e"], sl2(), "random")


def test_custom_order():
    alg = sl2()
    u = UEA(alg, order=[2, 1, 0])  # f < e < h
    assert u.normalize((1, 2)) == {(2, 1): 1, (0,): 1}
    with pytest.raises(ValueError):
        UEA(alg, order=[0, 0, 1])


# -- coproduct ----------------------------------------------------------------------------


def test_coproduct_examples():
    u = UEA(sl2())
    assert coproduct0(u, u.one()) == u.one(2)
    got = coproduct0(u, el(u, {("e", "f"): 1}))
    expect = DeformedTensor.from_labels(
        u.basis, {(("e", "f"), "1"): 1, ("e", "f"): 1, ("f", "e"): 1, ("1", ("e", "f")): 1}
    )
    assert got == expect
    s = UEA(gl11())
    got = coproduct0(s, el(s, {("psi+", "psi-"): 1}))
    expect = DeformedTensor.from_labels(
        s.basis, {(("psi+", "psi-"), "1"): 1, ("psi+", "psi-"): 1, ("psi-", "psi+"): -1, ("1", ("psi+", "psi-")): 1}
    )
    assert got == expect


def test_coproduct_is_multiplicative():
    for alg in (sl2(), gl11(), gl11_z()):
        u = UEA(alg)
        letters = range(alg.dim)
        for a in letters:
            for b in letters:
                x, y = u.element({(a,): 1}), u.element({(b,): 1})
                lhs = coproduct0(u, u.tensor_mul(x, y))
                rhs = u.tensor_mul(coproduct0(u, x), coproduct0(u, y))
                assert lhs == rhs


def test_antipode_formula():
    s = UEA(gl11())
    p, m = (s.basis.index(x) for x in ("psi+", "psi-"))
    # S(psi+ psi-) = S(psi-) S(psi+) eps(psi+, psi-) = -psi- psi+ = psi+ psi- - E
    assert s.antipode0_word((p, m)) == words(s, {("psi+", "psi-"): 1, ("E",): -1})


# -- Hopf axioms ------------------------------------------------------------------------------


@pytest.mark.parametrize("make", [lambda: abelian2().algebra, sl2, gl11, gl11_z, lambda: double(borel2()).algebra])
def test_hopf_axioms(make):
    assert check_hopf(UEA(make()), word_length_bound=3) == []


def test_corrupted_antipode_fails():
    u = UEA(sl2())
    std = HopfData.standard(u)
    e = u.basis.index("e")

    def bad(w):
        if w == (e,):
            return DeformedTensor(u.basis, 1, {((e,),): 1}, 1)
        return std.antipode(w)

    found = check_hopf(u, HopfData(std.coproduct, std.counit, bad), word_length_bound=2)
    assert ("antipode", ("e", "S(x1)x2")) in {(v.check, v.location) for v in found}


def test_corrupted_coproduct_fails():
    u = UEA(sl2())
    std = HopfData.standard(u)
    h = u.basis.index("h")

    def bad(w):
        out = std.coproduct(w)
        if w == (h,):
            out = out + DeformedTensor(u.basis, 2, {((h,), (h,)): 1}, 1)
        return out

    # h -> h(x)1 + 1(x)h + h(x)h is Delta(1 + h) - 1(x)1: coassociative and counital, not primitive
    checks = {v.check for v in check_hopf(u, HopfData(bad, std.counit, std.antipode), word_length_bound=1)}
    assert checks == {"primitive", "antipode"}


# -- PBW audit (property form) -------------------------------------------------------------------


def _random_word(alg):
    return st.lists(st.integers(0, alg.dim - 1), max_size=6).map(tuple)


@pytest.mark.parametrize("make", [sl2, gl11, gl11_z, lambda: double(borel2()).algebra])
def test_strategies_agree(make):
    alg = make()

    @given(_random_word(alg))
    def run(w):
        a = pbw_normalize(w, alg)
        assert a == pbw_normalize(w, alg, "leftmost") == pbw_normalize(w, alg, "rightmost")

    run()


@given(st.lists(st.integers(0, 2), max_size=4).map(tuple), st.lists(st.integers(0, 2), max_size=4).map(tuple),
       st.lists(st.integers(0, 2), max_size=3).map(tuple))
def test_associativity_sl2(a, b, c):
    u = UEA(sl2())
    x, y, z = (u.element({w: 1}) for w in (a, b, c))
    assert u.tensor_mul(u.tensor_mul(x, y), z) == u.tensor_mul(x, u.tensor_mul(y, z))


@given(st.lists(st.integers(0, 3), max_size=4).map(tuple), st.lists(st.integers(0, 3), max_size=4).map(tuple))
def test_super_commutator_of_letters(a, b):
    u = UEA(gl11())
    basis = u.basis
    x, y = u.element({a: 1}), u.element({b: 1})
    s = basis.eps(basis.word_degree(a), basis.word_degree(b))
    # x y - eps y x has filtration degree below |a| + |b|
    diff = u.tensor_mul(x, y) - u.tensor_mul(y, x).scale(basis.field(s))
    assert all(len(w) < len(a) + len(b) for (w,), _ in diff.items())


# -- Verma modules ------------------------------------------------------------------------------


@pytest.fixture(scope="module")
def borel_pair():
    return VermaPair(double(borel2()).algebra)


def _v(pair, data, order=1):
    idx = pair.basis.index
    return DeformedTensor(pair.basis, 1, {(tuple(idx(x) for x in w),): c for w, c in data.items()}, order)


def test_verma_examples(borel_pair):
    pair = borel_pair
    one = pair.vacuum(1)
    assert verma_act(pair, "x", one, "+").is_zero()
    assert verma_act(pair, "α_x", one, "+") == _v(pair, {("α_x",): 1})
    # x . (alpha_y 1+) = [x, alpha_y] 1+ = -alpha_y 1+
    assert verma_act(pair, "x", _v(pair, {("α_y",): 1}), "+") == _v(pair, {("α_y",): -1})
    # y . (alpha_y 1+) = [y, alpha_y] 1+ = (alpha_x - x) 1+ = alpha_x 1+
    assert verma_act(pair, "y", _v(pair, {("α_y",): 1}), "+") == _v(pair, {("α_x",): 1})
    assert verma_act(pair, "α_x", one, "-").is_zero()


@pytest.mark.parametrize("make", [abelian2, borel2, sl2_bialgebra, lambda: ColorLieBialgebra(gl11())])
def test_verma_module_axiom(make):
    d = double(make()).algebra
    pair = VermaPair(d)
    basis = pair.basis
    for side in ("+", "-"):
        letters = pair.minus_letters if side == "+" else pair.plus_letters
        vs = [()] + [(a,) for a in letters] + [w for w in product(letters, repeat=2) if pair.side_uea[side].is_normal(w)]
        for x in range(basis.dim):
            for y in range(basis.dim):
                s = basis.eps(basis.degree(x), basis.degree(y))
                for w in vs:
                    v = DeformedTensor(basis, 1, {(w,): 1}, 1)
                    lhs = verma_act(pair, x, verma_act(pair, y, v, side), side) - verma_act(
                        pair, y, verma_act(pair, x, v, side), side
                    ).scale(s)
                    rhs = DeformedTensor.zero(basis, 1)
                    for k, c in d.bracket_basis(x, y).items():
                        rhs = rhs + verma_act(pair, k, v, side).scale(c)
                    assert lhs == rhs, (side, x, y, w)


def test_phi_examples(borel_pair):
    pair = borel_pair
    u = pair.std
    assert phi_iso(pair, u.one()) == pair.vacuum(2)
    a = double(abelian2())
    apair = VermaPair(a.algebra)
    x1 = apair.std.letter("x1")
    # x1 lies in g+, so it kills 1+ and survives on 1-
    assert phi_iso(apair, x1) == DeformedTensor.from_labels(a.basis, {("1", "x1"): 1})
    ax = apair.std.letter("α_x1")
    assert phi_iso(apair, ax) == DeformedTensor.from_labels(a.basis, {("α_x1", "1"): 1})
    w = u.tensor_mul(u.letter("α_x"), u.letter("x"))
    assert phi_inverse(pair, phi_iso(pair, w)) == w


@pytest.mark.parametrize("make", [borel2, sl2_bialgebra, lambda: ColorLieBialgebra(gl11())])
def test_phi_roundtrip(make):
    pair = VermaPair(double(make()).algebra)
    u = pair.std
    for w in u.normal_words(3):
        x = u.element({w: 1})
        assert phi_inverse(pair, phi_iso(pair, x)) == x, w


def test_i_pm(borel_pair):
    pair = borel_pair
    one = pair.vacuum(1)
    assert i_pm(pair, one, "+") == pair.vacuum(2)
    got = i_pm(pair, _v(pair, {("α_y",): 1}), "+")
    assert got == DeformedTensor.from_labels(pair.basis, {("α_y", "1"): 1, ("1", "α_y"): 1})
    # coassociativity on Verma words of length <= 2
    su = pair.side_uea["+"]
    for w in su.normal_words(2, pair.minus_letters):
        v = DeformedTensor(pair.basis, 1, {(w,): 1}, 1)
        t = i_pm(pair, v, "+")
        left = su.apply_slot(t, 0, lambda x: i_pm(pair, DeformedTensor(pair.basis, 1, {(x,): 1}, 1), "+"))
        right = su.apply_slot(t, 1, lambda x: i_pm(pair, DeformedTensor(pair.basis, 1, {(x,): 1}, 1), "+"))
        assert left == right
