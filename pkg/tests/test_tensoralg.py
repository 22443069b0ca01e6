from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from colorquant.fixtures import gl11, sl2
from colorquant.scalars import TruncSeries
from colorquant.tensoralg import (
    DeformedTensor,
    GradedMap,
    adjoint_act,
    apply_permutation_sigma,
    koszul_compose_tensor_maps,
    koszul_flip,
    tensor_from_vectors,
)

SUPER = gl11()
SL2 = sl2()


def T(alg, data, order=1):
    return DeformedTensor.from_labels(alg.basis, data, order)


def tensors(alg, arity, order=2):
    n = alg.dim
    key = st.tuples(*[st.integers(0, n - 1).map(lambda i: (i,)) for _ in range(arity)])
    coeff = st.lists(st.integers(-5, 5), min_size=order, max_size=order).map(
        lambda c: TruncSeries(tuple(Fraction(x) for x in c))
    )
    return st.dictionaries(key, coeff, max_size=8).map(lambda d: DeformedTensor(alg.basis, arity, d, order))


def test_flip_examples():
    assert koszul_flip(T(SUPER, {("psi+", "psi-"): 1}), 1) == T(SUPER, {("psi-", "psi+"): -1})
    assert koszul_flip(T(SL2, {("e", "f"): 1}), 1) == T(SL2, {("f", "e"): 1})
    with pytest.raises(IndexError):
        koszul_flip(T(SL2, {("e", "f"): 1}), 2)


def test_sigma_examples():
    assert apply_permutation_sigma(T(SL2, {("h", "e", "f"): 1})) == T(SL2, {("e", "f", "h"): 1})
    got = apply_permutation_sigma(T(SUPER, {("psi+", "psi-", "N"): 1}))
    assert got == T(SUPER, {("psi-", "N", "psi+"): -1})
    with pytest.raises(ValueError):
        apply_permutation_sigma(T(SL2, {("e", "f"): 1}))


@given(tensors(SUPER, 2))
def test_flip_is_involutive(t):
    assert koszul_flip(koszul_flip(t, 1), 1) == t


@given(tensors(SUPER, 3))
def test_sigma_cubed_is_identity(t):
    s = apply_permutation_sigma
    assert s(s(s(t))) == t


@given(tensors(SUPER, 3))
def test_braid_relation(t):
    a = koszul_flip(koszul_flip(koszul_flip(t, 1), 2), 1)
    b = koszul_flip(koszul_flip(koszul_flip(t, 2), 1), 2)
    assert a == b


@given(tensors(SUPER, 2), tensors(SUPER, 2))
def test_flip_is_linear(a, b):
    assert koszul_flip(a + b, 1) == koszul_flip(a, 1) + koszul_flip(b, 1)


def test_koszul_compose():
    b = SUPER.basis
    ident = GradedMap.identity(b)
    t = T(SUPER, {("psi+", "psi-"): 1, ("N", "E"): 3})
    assert koszul_compose_tensor_maps(ident, ident, t) == t
    # odd map psi- -> N, psi+ -> E; applied in slot 2 after an odd slot picks up -1
    odd = GradedMap(b, b, {("N", "psi-"): 1, ("E", "psi+"): 1}, degree=1)
    got = koszul_compose_tensor_maps(ident, odd, T(SUPER, {("psi+", "psi-"): 1}))
    assert got == T(SUPER, {("psi+", "N"): -1})
    got = koszul_compose_tensor_maps(ident, odd, T(SUPER, {("N", "psi-"): 1}))
    assert got == T(SUPER, {("N", "N"): 1})
    with pytest.raises(ValueError):
        GradedMap(b, b, {("N", "psi-"): 1})  # degree-0 map cannot send odd to even


def test_adjoint_action_examples():
    table = SL2.table
    h = SL2.basis.index("h")
    assert adjoint_act(h, T(SL2, {("e", "f"): 1}), table).is_zero()
    n = SUPER.basis.index("N")
    assert adjoint_act(n, T(SUPER, {("psi+", "psi-"): 1}), SUPER.table).is_zero()
    # an odd element passing an odd slot picks up a sign
    p = SUPER.basis.index("psi+")
    got = adjoint_act(p, T(SUPER, {("psi+", "psi-"): 1}), SUPER.table)
    assert got == T(SUPER, {("psi+", "E"): -1})


def test_from_labels_and_units():
    t = T(SL2, {(("e", "f"), "1"): 2, ("h", "h"): "1/4"})
    assert t.coefficient(((1, 2), ())).c == (2,)
    assert set(DeformedTensor.unit(SL2.basis, 2).keys()) == {((), ())}
    assert T(SL2, {("1", "1"): 1}) == DeformedTensor.unit(SL2.basis, 2)


def test_json_roundtrip():
    t = T(SUPER, {(("psi+", "psi-"), "N"): TruncSeries((Fraction(1), Fraction(-1, 2))), ("E", "1"): 3}, order=2)
    assert DeformedTensor.from_json(SUPER.basis, t.to_json()) == t


def test_tensor_from_vectors():
    b = SL2.basis
    t = tensor_from_vectors(b, [{0: 1, 1: 2}, {2: 3}])
    assert t == T(SL2, {("h", "f"): 3, ("e", "f"): 6})


def test_embed_and_permute():
    r = T(SUPER, {("psi+", "psi-"): 1})
    r13 = r.embed([0, 2], 3)
    assert r13 == T(SUPER, {("psi+", "1", "psi-"): 1})
    r21 = r.embed([1, 0], 2)
    assert r21 == koszul_flip(r, 1)


def test_degrees_and_homogeneity():
    t = T(SL2, {("e", "f"): 1, ("h", "h"): 1})
    assert t.is_homogeneous((0,))
    assert not T(SL2, {("e", "e"): 1, ("h", "h"): 1}).is_homogeneous()
