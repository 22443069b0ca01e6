"""Small reference algebras used by tests, benchmarks and the CLI examples."""

from __future__ import annotations

from .colorlie import ColorLieAlgebra, ColorLieBialgebra
from .grading import CommutationFactor, GradingGroup
from .scalars import CyclotomicField
from .tensoralg import DeformedTensor, GradedBasis

__all__ = [
    "abelian2",
    "borel2",
    "borel2_triangular",
    "gl11",
    "gl11_z",
    "sl2",
    "sl2_bialgebra",
    "sl2_r",
]


def _trivial_z() -> CommutationFactor:
    return CommutationFactor(GradingGroup(1), [[1]])


def abelian2() -> ColorLieBialgebra:
    """2-dim abelian algebra, trivial grading, zero cobracket."""
    eps = CommutationFactor.trivial(GradingGroup(0))
    basis = GradedBasis(["x1", "x2"], [(), ()], eps)
    return ColorLieBialgebra(ColorLieAlgebra(basis))


def borel2() -> ColorLieBialgebra:
    """[x, y] = y with delta(x) = 0, delta(y) = x(x)y - y(x)x; Z-graded, eps = 1."""
    basis = GradedBasis(["x", "y"], [(0,), (1,)], _trivial_z())
    alg = ColorLieAlgebra(basis, {("x", "y"): {"y": 1}})
    return ColorLieBialgebra(alg, {"y": {("x", "y"): 1, ("y", "x"): -1}})


def borel2_triangular() -> ColorLieBialgebra:
    """Trivially graded borel2 with the triangular r = x(x)y - y(x)x and delta = x.r."""
    eps = CommutationFactor.trivial(GradingGroup(0))
    basis = GradedBasis(["x", "y"], [(), ()], eps)
    alg = ColorLieAlgebra(basis, {("x", "y"): {"y": 1}})
    r = DeformedTensor.from_labels(basis, {("x", "y"): 1, ("y", "x"): -1})
    return ColorLieBialgebra.from_r(alg, r)


def sl2() -> ColorLieAlgebra:
    """h (deg 0), e (deg -1), f (deg 1); [h,e] = 2e, [h,f] = -2f, [e,f] = h."""
    basis = GradedBasis(["h", "e", "f"], [(0,), (-1,), (1,)], _trivial_z())
    return ColorLieAlgebra(basis, {("h", "e"): {"e": 2}, ("h", "f"): {"f": -2}, ("e", "f"): {"h": 1}})


def sl2_r(alg: ColorLieAlgebra | None = None) -> DeformedTensor:
    alg = alg or sl2()
    return DeformedTensor.from_labels(alg.basis, {("e", "f"): 1, ("h", "h"): "1/4"})


def sl2_bialgebra() -> ColorLieBialgebra:
    """sl2 with the coboundary cobracket delta(x) = x.r of the standard r."""
    alg = sl2()
    return ColorLieBialgebra.from_r(alg, sl2_r(alg))


def _gl11_basis(group: GradingGroup, degrees) -> GradedBasis:
    eps = CommutationFactor(group, [[-1]])
    return GradedBasis(["N", "E", "psi+", "psi-"], degrees, eps)


def _gl11_bracket() -> dict:
    return {("N", "psi+"): {"psi+": 1}, ("N", "psi-"): {"psi-": -1}, ("psi+", "psi-"): {"E": 1}}


def gl11(field: CyclotomicField | None = None) -> ColorLieAlgebra:
    """Super gl(1|1): Z/2 grading, N and E even, psi+ and psi- odd."""
    group = GradingGroup(0, [2])
    eps = CommutationFactor(group, [[-1]], field)
    basis = GradedBasis(["N", "E", "psi+", "psi-"], [(0,), (0,), (1,), (1,)], eps)
    return ColorLieAlgebra(basis, _gl11_bracket())


def gl11_z(field: CyclotomicField | None = None) -> ColorLieAlgebra:
    """gl(1|1) with a Z grading (psi+ in degree 1, psi- in degree -1) and eps = (-1)^(ab).

    Bicharacter twists such as sigma(a, b) = i^(ab) only exist on this version:
    on Z/2 they fail the torsion condition.
    """
    eps = CommutationFactor(GradingGroup(1), [[-1]], field)
    basis = GradedBasis(["N", "E", "psi+", "psi-"], [(0,), (0,), (1,), (-1,)], eps)
    return ColorLieAlgebra(basis, _gl11_bracket())
