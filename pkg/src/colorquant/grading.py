"""Grading groups Z^r x prod Z/n_j and commutation factors on them."""

from __future__ import annotations

from typing import Sequence

from .report import Violation
from .scalars import CyclotomicField, Scalar

__all__ = [
    "CommutationFactor",
    "GradingGroup",
    "epsilon",
    "validate_commutation_factor",
]


class GradingGroup:
    """Finitely generated abelian group with a fixed choice of generators.

    Elements are tuples of ints: ``free_rank`` unrestricted slots followed by
    one slot per torsion order, reduced mod that order.
    """

    def __init__(self, free_rank: int = 0, torsion_orders: Sequence[int] = ()):
        if free_rank < 0:
            raise ValueError("free rank must be non-negative")
        if any(n < 2 for n in torsion_orders):
            raise ValueError("torsion orders must be >= 2")
        self.free_rank = free_rank
        self.torsion_orders = tuple(torsion_orders)
        self.ngens = free_rank + len(self.torsion_orders)

    def order_of_generator(self, i: int) -> int | None:
        if i < self.free_rank:
            return None
        return self.torsion_orders[i - self.free_rank]

    def element(self, values) -> tuple:
        if isinstance(values, int):
            values = (values,)
        values = tuple(int(v) for v in values)
        if len(values) != self.ngens:
            raise ValueError(f"group element {values} should have {self.ngens} components")
        return self._reduce(values)

    def _reduce(self, v: tuple) -> tuple:
        if not self.torsion_orders:
            return v
        r = self.free_rank
        return v[:r] + tuple(x % n for x, n in zip(v[r:], self.torsion_orders))

    @property
    def zero(self) -> tuple:
        return (0,) * self.ngens

    def add(self, a: tuple, b: tuple) -> tuple:
        return self._reduce(tuple(x + y for x, y in zip(a, b)))

    def neg(self, a: tuple) -> tuple:
        return self._reduce(tuple(-x for x in a))

    def sum(self, elems) -> tuple:
        out = self.zero
        for e in elems:
            out = self.add(out, e)
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GradingGroup)
            and other.free_rank == self.free_rank
            and other.torsion_orders == self.torsion_orders
        )

    def __hash__(self) -> int:
        return hash((self.free_rank, self.torsion_orders))

    def __repr__(self) -> str:
        return f"GradingGroup(free_rank={self.free_rank}, torsion_orders={self.torsion_orders})"


class CommutationFactor:
    """Bicharacter eps stored by its values B[i][j] = eps(g_i, g_j) on generators.

    Evaluation is multiplicative in the exponents, so biadditivity holds by
    construction; antisymmetry and torsion consistency are checked by
    :func:`validate_commutation_factor`.  The same class serves for plain
    bicharacters (no antisymmetry), e.g. the twisting bicharacters sigma.
    """

    def __init__(self, group: GradingGroup, matrix, field: CyclotomicField | None = None):
        self.group = group
        self.field = field or CyclotomicField(1)
        rows = [[self.field(x) for x in row] for row in matrix]
        n = group.ngens
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError(f"commutation matrix must be {n}x{n}")
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                if x == 0:
                    raise ValueError(f"entry ({i},{j}) is zero; values must lie in K^x")
        self.matrix = tuple(tuple(r) for r in rows)
        self._cache: dict = {}

    @classmethod
    def trivial(cls, group: GradingGroup, field: CyclotomicField | None = None) -> "CommutationFactor":
        n = group.ngens
        return cls(group, [[1] * n for _ in range(n)], field)

    def __call__(self, a: tuple, b: tuple) -> Scalar:
        key = (a, b)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        out = self.field(1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            row = self.matrix[i]
            for j, bj in enumerate(b):
                e = ai * bj
                if e:
                    out = out * row[j] ** e
        self._cache[key] = out
        return out

    def __mul__(self, other: "CommutationFactor") -> "CommutationFactor":
        if other.group != self.group:
            raise ValueError("commutation factors live on different groups")
        m = [[x * y for x, y in zip(r1, r2)] for r1, r2 in zip(self.matrix, other.matrix)]
        return CommutationFactor(self.group, m, self.field)

    def inverse(self) -> "CommutationFactor":
        return CommutationFactor(self.group, [[1 / x for x in row] for row in self.matrix], self.field)

    def antisymmetrized(self) -> "CommutationFactor":
        """eps'(a, b) = sigma(a, b) / sigma(b, a) for a bicharacter sigma."""
        n = self.group.ngens
        m = [[self.matrix[i][j] / self.matrix[j][i] for j in range(n)] for i in range(n)]
        return CommutationFactor(self.group, m, self.field)

    def is_trivial(self) -> bool:
        return all(x == 1 for row in self.matrix for x in row)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CommutationFactor)
            and other.group == self.group
            and other.matrix == self.matrix
        )

    def __hash__(self) -> int:
        return hash((self.group, self.matrix))

    def __repr__(self) -> str:
        rows = [[str(x) for x in r] for r in self.matrix]
        return f"CommutationFactor({self.group!r}, {rows})"


def epsilon(eps: CommutationFactor, a, b) -> Scalar:
    """eps(a, b) = prod_ij B[i][j]^(a_i b_j)."""
    return eps(eps.group.element(a), eps.group.element(b))


def validate_commutation_factor(eps: CommutationFactor, antisymmetric: bool = True) -> list[Violation]:
    """List violated invariants: antisymmetry cells and torsion cells.

    With ``antisymmetric=False`` only torsion consistency (i.e. that the
    matrix defines a bicharacter at all) is checked.
    """
    out: list[Violation] = []
    B = eps.matrix
    n = eps.group.ngens
    for i in range(n):
        for j in range(n):
            if antisymmetric and j >= i and B[i][j] * B[j][i] != 1:
                out.append(
                    Violation("antisymmetry", (i, j), B[i][j] * B[j][i], "B[i][j]*B[j][i] != 1")
                )
            for k in (i, j):
                order = eps.group.order_of_generator(k)
                if order is not None and B[i][j] ** order != 1:
                    out.append(
                        Violation("torsion", (i, j), B[i][j] ** order, f"B[{i}][{j}]^{order} != 1")
                    )
                    break
    return out
