"""One test per acceptance criterion; the terminal summary prints a pass/fail line for each."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

import pytest

from colorquant.cartan import (
    CartanData,
    build_classical_presentation,
    build_dj_presentation,
    check_delta_respects_relations,
    compare_with_classical,
    dj_coproduct_on_generators,
    primitive_coproduct,
    qbinom,
)
from colorquant.colorlie import (
    ColorLieBialgebra,
    check_color_bialgebra,
    check_color_lie,
    check_manin,
    classify_r,
    cyb,
    double,
    natural_pairing,
    scheunert_twist,
)
from colorquant.fixtures import abelian2, borel2, borel2_triangular, gl11, gl11_z, sl2, sl2_bialgebra, sl2_r
from colorquant.grading import CommutationFactor, GradingGroup
from colorquant.quantize import (
    check_classical_limit,
    check_quasitriangular,
    check_triangular,
    quantize,
    quantize_coboundary,
    solve_associator_order2,
)
from colorquant.scalars import CyclotomicField, TruncSeries
from colorquant.tensoralg import DeformedTensor, koszul_flip
from colorquant.uea import UEA, check_hopf, pbw_normalize

from oracles import color_symmetric_counts, cyb_expansion, gaussian_binomial_coeffs, rank, structure_constants

HALF_LAM = TruncSeries.lam(2, 1, Fraction(1, 2))
LAM = TruncSeries.lam(2)

def _gl11_zero() -> ColorLieBialgebra:
    return ColorLieBialgebra(gl11())


FIXTURE_BIALGEBRAS = {"FIX-A": abelian2, "FIX-B": borel2, "FIX-C": sl2_bialgebra, "FIX-D": _gl11_zero}


def _quantizations():
    return {name: quantize(make(), N=2) for name, make in FIXTURE_BIALGEBRAS.items()}


@pytest.fixture(scope="module")
def quantizations():
    return _quantizations()


@pytest.mark.criterion(1, "twist limit J = 1 + (lam/2) r mod lam^2")
def test_criterion_01_twist_limit(quantizations):
    for name, q in quantizations.items():
        uea = q.pair.std
        expect = uea.one(2, 2) + uea.from_g_tensor(q.double.double_data.r, 2).scale(HALF_LAM)
        assert q.J == expect, name


@pytest.mark.criterion(2, "quasitriangular quantization axioms, R = 1 + lam r mod lam^2")
def test_criterion_02_quantization_axioms(quantizations):
    for name, q in quantizations.items():
        h = q.hopf
        assert check_quasitriangular(h, word_bound=2) == [], name
        uea = h.uea
        expect = uea.one(2, 2) + uea.from_g_tensor(q.double.double_data.r, 2).scale(LAM)
        assert h.R == expect, name


@pytest.mark.criterion(3, "classical limit (Delta - Delta^op)/lam = delta")
def test_criterion_03_classical_limit(quantizations):
    for name, q in quantizations.items():
        assert check_classical_limit(q.hopf, q.double) == [], name
        # the same comparison spelled out per basis element
        for i in range(q.double.basis.dim):
            d = q.hopf.delta_word((i,))
            diff = d - koszul_flip(d, 1)
            assert diff.lam_coefficient(1) == q.double.delta(i), (name, i)


@pytest.mark.criterion(4, "double is a color Lie bialgebra with Manin triple and invariant Omega")
def test_criterion_04_double_theorem():
    for name, make in FIXTURE_BIALGEBRAS.items():
        d = double(make())
        data = d.double_data
        names = d.basis.names
        assert check_color_lie(d.algebra) == [], name
        assert check_color_bialgebra(d) == [], name
        split = ([names[i] for i in data.g_indices], [names[i] for i in data.dual_indices])
        assert check_manin(d.algebra, natural_pairing(d), split) == [], name
        for i in range(d.basis.dim):
            assert d.algebra.act(i, data.omega).is_zero(), (name, names[i])


@pytest.mark.criterion(5, "CYBE on sl2 against the brute-force expansion")
def test_criterion_05_cybe():
    alg = sl2()
    _, table = structure_constants(alg)
    names = alg.basis.names

    def as_labels(t):
        return {tuple(names[w[0]] for w in key): c.c[0] for key, c in t.items()}

    r = sl2_r(alg)
    assert cyb(r, alg).is_zero()
    assert cyb_expansion({("e", "f"): 1, ("h", "h"): Fraction(1, 4)}, table) == {}
    r0 = DeformedTensor.from_labels(alg.basis, {("e", "f"): 1})
    got = as_labels(cyb(r0, alg))
    assert got == cyb_expansion({("e", "f"): 1}, table)
    assert got == {("e", "h", "f"): -1}


def _pbw_fixtures():
    return {
        "abelian2": abelian2().algebra,
        "borel2": borel2().algebra,
        "sl2": sl2(),
        "gl11": gl11(),
        "gl11_z": gl11_z(),
        "double_borel2": double(borel2()).algebra,
        "double_abelian2": double(abelian2()).algebra,
    }


@pytest.mark.criterion(6, "PBW audit: normal-word counts and confluence")
def test_criterion_06_pbw_audit():
    rng = random.Random(20240601)
    for name, alg in _pbw_fixtures().items():
        assert alg.dim <= 4
        u = UEA(alg)
        n_odd = sum(1 for i in range(alg.dim) if alg.basis.self_sign(i) == -1)
        counts = color_symmetric_counts(alg.dim - n_odd, n_odd, 4)
        by_len = [0] * 5
        for w in u.normal_words(4):
            by_len[len(w)] += 1
        assert by_len == counts, name
        # the normal forms of all words of length <= 4 span a space of the PBW dimension
        images = [u.normalize(w) for k in range(5) for w in product(range(alg.dim), repeat=k)]
        assert all(u.is_normal(w) for im in images for w in im), name
        assert rank(images) == sum(counts), name
        for _ in range(200):
            w = tuple(rng.randrange(alg.dim) for _ in range(rng.randint(0, 6)))
            a = pbw_normalize(w, alg, "insert")
            assert a == pbw_normalize(w, alg, "leftmost") == pbw_normalize(w, alg, "rightmost"), (name, w)


@pytest.mark.criterion(7, "Hopf axioms on U(g) for words of length <= 3")
def test_criterion_07_hopf_axioms():
    for alg in (sl2(), gl11(), gl11_z()):
        assert check_hopf(UEA(alg), word_length_bound=3) == []


@pytest.mark.criterion(8, "order-2 associator: unique c, pentagon and hexagon, c = 0 fails")
def test_criterion_08_associator():
    sol = solve_associator_order2()
    assert sol.unique
    assert sol.c == Fraction(1, 24)
    assert sol.pentagon_residual == {}
    assert all(not v for v in sol.hexagon_residuals.values())
    assert any(sol.trivial_hexagon_residuals.values())


@pytest.mark.criterion(9, "q-binomial symmetry and t = 1 specialization, m + n <= 8")
def test_criterion_09_qbinom():
    from math import comb

    for m in range(9):
        for n in range(9 - m):
            p = qbinom(m, n)
            assert p.is_symmetric(), (m, n)
            assert p.at_one() == comb(m + n, n), (m, n)
            assert p == qbinom(n, m), (m, n)
            oracle = {2 * k - m * n: c for k, c in gaussian_binomial_coeffs(m, n).items()}
            assert p.terms == oracle, (m, n)


@pytest.mark.criterion(10, "Cartan presentations: classical limit and Delta on relations")
def test_criterion_10_cartan():
    rank1 = CartanData([[2]])
    a2 = CartanData([[2, -1], [-1, 2]])
    for cd in (rank1, a2):
        classical = build_classical_presentation(cd)
        for N in (2, 3):
            dj = build_dj_presentation(cd, N)
            statuses, violations = compare_with_classical(dj, classical, degree_bound=4)
            assert violations == [], cd
            assert set(statuses.values()) == {"exact"}, statuses
        check = check_delta_respects_relations(classical, primitive_coproduct(classical), degree_bound=4)
        assert check.ok, check.statuses

    dj = build_dj_presentation(rank1, 2)
    good = check_delta_respects_relations(dj, dj_coproduct_on_generators(rank1, 2), degree_bound=4)
    assert good.ok and set(good.statuses.values()) == {"pass"}, good.statuses
    # negative controls: Delta(e) made primitive while Delta(f) keeps its K factor
    corrupted = dict(dj_coproduct_on_generators(rank1, 2))
    e1 = dj.basis.index("e1")
    corrupted[e1] = primitive_coproduct(dj)[e1]
    bad = check_delta_respects_relations(dj, corrupted, degree_bound=4)
    assert not bad.ok
    assert bad.statuses == {"he[1,1]": "pass", "hf[1,1]": "pass", "ef[1,1]": "residual"}
    # ... and the fully primitive coproduct, which the deformation only breaks at lam^2; at D = 5 the
    # correct DJ coproduct passes, so the leftover h-only residual is a genuine failure
    dj3 = build_dj_presentation(rank1, 3)
    prim = check_delta_respects_relations(dj3, primitive_coproduct(dj3), degree_bound=5)
    assert prim.statuses["ef[1,1]"] == "residual"


@pytest.mark.criterion(11, "Scheunert twist: twisted algebras are color Lie; twist then inverse is the identity")
def test_criterion_11_scheunert_twist():
    k4 = CyclotomicField(4)
    cases = [
        (sl2(), CommutationFactor(GradingGroup(1), [[2]])),
        (gl11_z(k4), CommutationFactor(GradingGroup(1), [["i"]], k4)),
        (gl11(), CommutationFactor(GradingGroup(0, [2]), [[-1]])),
    ]
    for alg, sigma in cases:
        tw = scheunert_twist(alg, sigma)
        assert tw.basis.eps == sigma.antisymmetrized() * alg.basis.eps
        assert check_color_lie(tw) == []
        back = scheunert_twist(tw, sigma.inverse())
        assert back.basis.eps == alg.basis.eps
        assert back.structure_constants() == alg.structure_constants()


@pytest.mark.criterion(12, "triangular r: R21 R = 1 mod lam^2")
def test_criterion_12_triangular():
    b = borel2_triangular()
    r = b.rmatrix
    assert r == -r.flip()
    assert cyb(r, b.algebra).is_zero()
    assert classify_r(b).kind == "triangular"
    q = quantize_coboundary(b, N=2)
    assert q.push.violations == []
    assert check_triangular(q.hopf) == []
    uea = q.hopf.uea
    assert q.hopf.R == uea.one(2, 2) + uea.from_g_tensor(r, 2).scale(LAM)
