"""Cartan-type presentations: classical color Chevalley-Serre relations and
their Drinfeld-Jimbo deformations over K[lam]/lam^N.

Relations are elements of the free color algebra on h_i, e_i, f_i, stored as
arity-1 :class:`DeformedTensor` objects whose words are *not* normalised.
The Z^s grading puts h_i in degree 0, e_i in -z_i and f_i in z_i.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Mapping, Sequence

from .colorlie import ColorLieAlgebra
from .grading import CommutationFactor, GradingGroup
from .linalg import SparseEchelon
from .report import Violation
from .scalars import TruncSeries
from .tensoralg import DeformedTensor, GradedBasis, _acc

__all__ = [
    "MAX_DEGREE_BOUND",
    "MAX_RANK",
    "CartanData",
    "CartanError",
    "DeltaCheck",
    "LaurentPoly",
    "Presentation",
    "Relation",
    "apply_bicharacter_twist_to_presentation",
    "build_classical_presentation",
    "build_dj_presentation",
    "check_delta_respects_relations",
    "check_presentation",
    "check_printed_variants",
    "compare_with_classical",
    "counit_on_generators",
    "dj_coproduct_on_generators",
    "lie_algebra_from_presentation",
    "primitive_coproduct",
    "qbinom",
    "symmetrizer",
]

MAX_RANK = 3
MAX_DEGREE_BOUND = 5


class CartanError(ValueError):
    """Malformed Cartan data or a request beyond the configured caps."""


# -- Laurent polynomials and q-binomials -----------------------------------------------------


class LaurentPoly:
    """Sparse Laurent polynomial in t with exact coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, object] | None = None):
        self.terms = {int(k): Fraction(v) if isinstance(v, int) else v for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def monomial(cls, exp: int, coeff=1) -> "LaurentPoly":
        return cls({exp: coeff})

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return LaurentPoly(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                out[a + b] = out.get(a + b, 0) + x * y
        return LaurentPoly(out)

    def divexact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient; raises ArithmeticError when other does not divide self."""
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.terms:
            return LaurentPoly()
        lo_a, lo_b = min(self.terms), min(other.terms)
        num = [Fraction(0)] * (max(self.terms) - lo_a + 1)
        for k, v in self.terms.items():
            num[k - lo_a] = v
        den = [Fraction(0)] * (max(other.terms) - lo_b + 1)
        for k, v in other.terms.items():
            den[k - lo_b] = v
        quot = {}
        for k in range(len(num) - len(den), -1, -1):
            c = num[k + len(den) - 1] / den[-1]
            if c:
                quot[k + lo_a - lo_b] = c
                for i, y in enumerate(den):
                    num[k + i] -= c * y
        if any(num):
            raise ArithmeticError("Laurent division is not exact")
        return LaurentPoly(quot)

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.terms.items())))

    def at_one(self):
        return sum(self.terms.values(), Fraction(0))

    def inverted(self) -> "LaurentPoly":
        """Substitute t -> 1/t."""
        return LaurentPoly({-k: v for k, v in self.terms.items()})

    def is_symmetric(self) -> bool:
        return self == self.inverted()

    def at_exp(self, rate, order: int) -> TruncSeries:
        """Value at t = exp(rate * lam) as a truncated series."""
        out = TruncSeries.const(Fraction(0), order)
        for k, v in self.terms.items():
            out = out + TruncSeries.lam(order, 1, Fraction(rate) * k).exp().scale(v)
        return out

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, reverse=True):
            v = self.terms[k]
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            coeff = str(v)
            parts.append(coeff if not mono else (mono if v == 1 else f"{coeff}*{mono}"))
        return " + ".join(parts)


def qbinom(m: int, n: int) -> LaurentPoly:
    """[m+n choose n]_t = prod_{i<n} (t^(m+n-i) - t^(-m-n+i)) / (t^(i+1) - t^(-i-1))."""
    if m < 0 or n < 0:
        raise ValueError("qbinom needs non-negative arguments")
    num = LaurentPoly({0: 1})
    den = LaurentPoly({0: 1})
    for i in range(n):
        num = num * LaurentPoly({m + n - i: 1, -m - n + i: -1})
        den = den * LaurentPoly({i + 1: 1, -i - 1: -1})
    return num.divexact(den)


# -- Cartan data ----------------------------------------------------------------------------------


def symmetrizer(A: Sequence[Sequence[int]]) -> tuple | None:
    """Positive rationals d with d_i A_ij = d_j A_ji, or None when none exist."""
    s = len(A)
    d: list = [None] * s
    for start in range(s):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(s):
                if j == i or (A[i][j] == 0 and A[j][i] == 0):
                    continue
                if A[j][i] == 0 or A[i][j] == 0:
                    return None
                val = d[i] * A[i][j] / A[j][i]
                if d[j] is None:
                    d[j] = val
                    stack.append(j)
                elif d[j] != val:
                    return None
    return tuple(d)


@dataclass(frozen=True)
class CartanData:
    """Cartan matrix A, odd simple roots tau (1-based) and symmetrizer d.

    ``parity_rule`` selects eps0(z_i, z_j) = -1 when both indices are odd
    ("both", the super sign) or when at least one is ("either").
    """

    A: tuple
    tau: frozenset = frozenset()
    d: tuple | None = None
    parity_rule: str = "both"
    type_b: bool | None = None

    def __post_init__(self):
        A = tuple(tuple(int(x) for x in row) for row in self.A)
        s = len(A)
        if s == 0 or any(len(row) != s for row in A):
            raise CartanError("Cartan matrix must be square and non-empty")
        tau = frozenset(int(i) for i in self.tau)
        if any(i < 1 or i > s for i in tau):
            raise CartanError(f"odd root indices must lie in 1..{s}")
        for i in range(s):
            if A[i][i] not in (0, 2) and (i + 1) not in tau:
                raise CartanError(f"diagonal entry A[{i + 1}][{i + 1}] of an even root must be 2")
        d = self.d
        if d is None:
            d = symmetrizer(A)
            if d is None:
                raise CartanError("Cartan matrix is not symmetrizable")
        d = tuple(Fraction(x) for x in d)
        if len(d) != s or any(x == 0 for x in d):
            raise CartanError("d must have one nonzero entry per simple root")
        for i in range(s):
            for j in range(s):
                if d[i] * A[i][j] != d[j] * A[j][i]:
                    raise CartanError(f"d does not symmetrize A at ({i + 1},{j + 1})")
        if self.parity_rule not in ("both", "either"):
            raise CartanError("parity_rule must be 'both' or 'either'")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "d", d)

    @property
    def rank(self) -> int:
        return len(self.A)

    def is_odd(self, i: int) -> bool:
        """i is 0-based."""
        return (i + 1) in self.tau

    @property
    def is_type_b(self) -> bool:
        if self.type_b is not None:
            return self.type_b
        s = self.rank
        return s >= 2 and self.tau == frozenset({s}) and self.A[s - 1][s - 1] != 0 and self.A[s - 1][s - 2] == -2

    def eps0(self) -> CommutationFactor:
        s = self.rank
        group = GradingGroup(s)
        m = []
        for i in range(s):
            row = []
            for j in range(s):
                if self.parity_rule == "both":
                    odd = self.is_odd(i) and self.is_odd(j)
                else:
                    odd = self.is_odd(i) or self.is_odd(j)
                row.append(-1 if odd else 1)
            m.append(row)
        return CommutationFactor(group, m)

    def generator_basis(self, eps: CommutationFactor | None = None) -> GradedBasis:
        s = self.rank
        names, degs = [], []
        for kind, sign in (("h", 0), ("e", -1), ("f", 1)):
            for i in range(s):
                names.append(f"{kind}{i + 1}")
                degs.append(tuple(sign if j == i else 0 for j in range(s)))
        return GradedBasis(names, degs, eps or self.eps0())

    def to_json(self) -> dict:
        return {
            "A": [list(r) for r in self.A],
            "tau": sorted(self.tau),
            "d": [str(x) for x in self.d],
            "parity_rule": self.parity_rule,
        }


# -- free color algebra helpers -------------------------------------------------------------------


def _const(x, order: int) -> TruncSeries:
    return x if isinstance(x, TruncSeries) else TruncSeries.const(Fraction(x), order)


class _Free:
    """Arithmetic in the free color algebra on a generator basis, mod lam^N."""

    def __init__(self, basis: GradedBasis, order: int):
        self.basis = basis
        self.order = order

    def elem(self, data: Mapping) -> DeformedTensor:
        terms: dict = {}
        for w, c in data.items():
            _acc(terms, (tuple(w),), _const(c, self.order))
        return DeformedTensor._raw(self.basis, 1, terms, self.order)

    def gen(self, name: str) -> DeformedTensor:
        return self.elem({(self.basis.index(name),): 1})

    def one(self) -> DeformedTensor:
        return self.elem({(): 1})

    def zero(self) -> DeformedTensor:
        return DeformedTensor.zero(self.basis, 1, self.order)

    def mul(self, a: DeformedTensor, b: DeformedTensor) -> DeformedTensor:
        out: dict = {}
        for (u,), c in a.items():
            for (v,), d in b.items():
                _acc(out, (u + v,), c * d)
        return DeformedTensor._raw(self.basis, 1, out, min(a.order, b.order))

    def prod(self, *xs: DeformedTensor) -> DeformedTensor:
        out = self.one()
        for x in xs:
            out = self.mul(out, x)
        return out

    def power(self, a: DeformedTensor, k: int) -> DeformedTensor:
        return self.prod(*([a] * k))

    def degree(self, a: DeformedTensor):
        for (w,), _ in a.items():
            return self.basis.word_degree(w)
        return self.basis.group.zero

    def bracket(self, a: DeformedTensor, b: DeformedTensor) -> DeformedTensor:
        """[a, b] = ab - eps(a, b) ba for homogeneous a, b."""
        s = self.basis.eps(self.degree(a), self.degree(b))
        return self.mul(a, b) - self.mul(b, a).scale(TruncSeries.const(s, self.order))

    def ad_power(self, x: DeformedTensor, y: DeformedTensor, k: int) -> DeformedTensor:
        for _ in range(k):
            y = self.bracket(x, y)
        return y

    def scalar(self, a: DeformedTensor, s) -> DeformedTensor:
        return a.scale(_const(s, self.order))

    def q_power(self, h: DeformedTensor, rate) -> DeformedTensor:
        """exp(lam * rate * h) truncated."""
        out = self.one()
        term = self.one()
        for k in range(1, self.order):
            term = self.mul(term, h)
            out = out + term.scale(TruncSeries.lam(self.order, k, Fraction(rate) ** k / factorial(k)))
        return out


# -- presentations ------------------------------------------------------------------------------


@dataclass
class Relation:
    name: str
    element: DeformedTensor
    note: str = ""

    def to_json(self) -> dict:
        b = self.element.basis
        terms = []
        for (w,), c in sorted(self.element.items(), key=lambda kv: (len(kv[0][0]), kv[0][0])):
            terms.append({"word": [b.names[i] for i in w], "coeff": [str(x) for x in c.c]})
        out = {"name": self.name, "terms": terms}
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class Presentation:
    """Generators with Z^s degrees and relation elements of the free color algebra.

    ``printed`` holds alternative forms of some relations kept for comparison;
    they are not part of the ideal.
    """

    cartan: CartanData
    flavor: str
    order: int
    basis: GradedBasis
    relations: list
    reading: str = "standard"
    printed: list = field(default_factory=list)
    sigma: CommutationFactor | None = None

    def relation(self, name: str) -> Relation:
        for r in self.relations:
            if r.name == name:
                return r
        raise KeyError(name)

    @property
    def names(self) -> list:
        return [r.name for r in self.relations]

    def to_json(self) -> dict:
        return {
            "flavor": self.flavor,
            "order": self.order,
            "reading": self.reading,
            "cartan": self.cartan.to_json(),
            "generators": [{"name": n, "degree": list(d)} for n, d in zip(self.basis.names, self.basis.degrees)],
            "relations": [r.to_json() for r in self.relations],
            "printed_variants": [r.to_json() for r in self.printed],
        }


def _check_caps(cd: CartanData, max_rank: int) -> None:
    if cd.rank > max_rank:
        raise CartanError(f"rank {cd.rank} exceeds the cap {max_rank}")


def _chevalley(cd: CartanData, F: _Free, rels: list) -> None:
    s = cd.rank
    h = [F.gen(f"h{i + 1}") for i in range(s)]
    e = [F.gen(f"e{i + 1}") for i in range(s)]
    f = [F.gen(f"f{i + 1}") for i in range(s)]
    for i in range(s):
        for j in range(i + 1, s):
            rels.append(Relation(f"hh[{i + 1},{j + 1}]", F.bracket(h[i], h[j])))
    for i in range(s):
        for j in range(s):
            a = cd.A[i][j]
            rels.append(Relation(f"he[{i + 1},{j + 1}]", F.bracket(h[i], e[j]) - F.scalar(e[j], a)))
            rels.append(Relation(f"hf[{i + 1},{j + 1}]", F.bracket(h[i], f[j]) + F.scalar(f[j], a)))


def _serre_family(cd: CartanData, F: _Free, letter: str, rels: list, printed: list, quantum: bool) -> None:
    s = cd.rank
    x = [F.gen(f"{letter}{i + 1}") for i in range(s)]
    N = F.order
    for i in range(s):
        if cd.A[i][i] == 0:
            rels.append(Relation(f"iso_{letter}[{i + 1}]", F.mul(x[i], x[i])))
    for i in range(s):
        for j in range(i + 1, s):
            if cd.A[i][j] == 0:
                rels.append(Relation(f"comm_{letter}[{i + 1},{j + 1}]", F.bracket(x[i], x[j])))
    for i in range(s):
        if cd.is_odd(i):
            continue
        for j in range(s):
            if j == i or cd.A[i][j] == 0:
                continue
            n = 1 + abs(cd.A[i][j])
            if quantum:
                el = F.zero()
                for k in range(n + 1):
                    c = qbinom(n - k, k).at_exp(cd.d[i] / 2, N).scale((-1) ** k)
                    el = el + F.prod(F.power(x[i], n - k), x[j], F.power(x[i], k)).scale(c)
            else:
                el = F.ad_power(x[i], x[j], n)
            rels.append(Relation(f"serre_{letter}[{i + 1},{j + 1}]", el))
    q_sum = (LaurentPoly({1: 1, -1: 1})).at_exp(Fraction(1, 2), N)
    for m in range(1, s - 1):
        if cd.A[m][m] != 0:
            continue
        a, b, c = x[m - 1], x[m], x[m + 1]
        name = f"quartic_{letter}[{m + 1}]"
        if quantum:
            base = F.prod(b, a, b, c) + F.prod(b, c, b, a) + F.prod(a, b, c, b)
            el = base + F.prod(c, b, a, b) - F.prod(b, a, c, b).scale(q_sum)
            lit = base + F.prod(c, b, a, b, b, a, c, b).scale(q_sum)
            printed.append(Relation(name, lit, "variant: last two products juxtaposed without a sign"))
        else:
            el = F.bracket(b, F.bracket(a, F.bracket(b, c)))
        rels.append(Relation(name, el))
    if cd.is_type_b:
        m = s - 1
        a, b = x[m - 1], x[m]
        name = f"typeB_{letter}[{m + 1}]"
        if quantum:
            k = q_sum - TruncSeries.const(Fraction(1), N)
            tail = F.prod(b, a, b, b).scale(k) + F.prod(b, b, a, b).scale(k)
            el = F.prod(a, b, b, b) - tail + F.prod(b, b, b, a)
            lit = F.prod(a, a, a, a) - tail + F.prod(b, b, b, a)
            printed.append(Relation(name, lit, "variant: first word e_(m-1) e_(m-1)^3"))
        else:
            el = F.bracket(F.bracket(F.bracket(a, b), b), b)
        rels.append(Relation(name, el))


def _ef_relations(cd: CartanData, F: _Free, rels: list, reading: str, rhs: Callable[[int], DeformedTensor]) -> None:
    s = cd.rank
    for i in range(s):
        for j in range(s):
            e = F.gen(f"e{i + 1}")
            other = F.gen(f"f{j + 1}") if reading == "standard" else F.gen(f"e{j + 1}")
            el = F.bracket(e, other)
            if i == j:
                el = el - rhs(i)
            tag = "ef" if reading == "standard" else "ee"
            rels.append(Relation(f"{tag}[{i + 1},{j + 1}]", el))


def _check_reading(reading: str) -> None:
    if reading not in ("standard", "literal"):
        raise CartanError("reading must be 'standard' or 'literal'")


def build_classical_presentation(cd: CartanData, reading: str = "standard", max_rank: int = MAX_RANK) -> Presentation:
    """Chevalley relations, [e_i, f_j] = delta_ij h_i and the color Serre relations.

    ``reading="literal"`` replaces the e-f relation by [e_i, e_j] = delta_ij h_i.
    """
    _check_reading(reading)
    _check_caps(cd, max_rank)
    basis = cd.generator_basis()
    F = _Free(basis, 1)
    rels: list = []
    _chevalley(cd, F, rels)
    _ef_relations(cd, F, rels, reading, lambda i: F.gen(f"h{i + 1}"))
    printed: list = []
    for letter in ("e", "f"):
        _serre_family(cd, F, letter, rels, printed, quantum=False)
    return Presentation(cd, "classical", 1, basis, rels, reading, printed)


def build_dj_presentation(cd: CartanData, N: int, reading: str = "standard", max_rank: int = MAX_RANK) -> Presentation:
    """Drinfeld-Jimbo relations with q = exp(lam/2) and q_i = q^(d_i), truncated at lam^N.

    The e-f right-hand side (q^(d h) - q^(-d h)) / (q_i - q_i^-1) has both
    numerator and denominator divided by lam, so its lam^0 part is h.
    """
    if N < 1:
        raise CartanError("truncation order must be >= 1")
    _check_reading(reading)
    _check_caps(cd, max_rank)
    basis = cd.generator_basis()
    F = _Free(basis, N)

    def rhs(i: int) -> DeformedTensor:
        d = cd.d[i]
        h = F.gen(f"h{i + 1}")
        # 2 sinh(d lam / 2) / lam
        den = TruncSeries([(2 * (d / 2) ** (k + 1) / factorial(k + 1)) if k % 2 == 0 else Fraction(0) for k in range(N)])
        inv = den.inverse()
        out = F.zero()
        power = F.one()
        for k in range(1, N + 1):
            power = F.mul(power, h)
            if k % 2 == 1:
                c = TruncSeries.lam(N, k - 1, 2 * (d / 2) ** k / factorial(k)) * inv
                out = out + power.scale(c)
        return out

    rels: list = []
    _chevalley(cd, F, rels)
    _ef_relations(cd, F, rels, reading, rhs)
    printed: list = []
    for letter in ("e", "f"):
        _serre_family(cd, F, letter, rels, printed, quantum=True)
    return Presentation(cd, "drinfeld_jimbo", N, basis, rels, reading, printed)


# -- coproducts and the bounded ideal-membership check ------------------------------------------------


def dj_coproduct_on_generators(cd: CartanData, N: int, f_form: str = "standard") -> dict:
    """Images of the generators with K_i = q^(d_i h_i) = exp(lam d_i h_i / 2).

    Delta(e_i) = e_i (x) K_i + 1 (x) e_i and h_i is primitive.  For f_i the
    ``"standard"`` form is f_i (x) 1 + K_i^-1 (x) f_i; ``"printed"`` gives
    f_i (x) K_i^-1 + 1 (x) f_i, which does not respect the e-f relation.
    """
    if f_form not in ("standard", "printed"):
        raise CartanError("f_form must be 'standard' or 'printed'")
    basis = cd.generator_basis()
    F = _Free(basis, N)
    one = F.one()
    out = {}
    for i in range(cd.rank):
        h = F.gen(f"h{i + 1}")
        k_plus = F.q_power(h, cd.d[i] / 2)
        k_minus = F.q_power(h, -cd.d[i] / 2)
        e = F.gen(f"e{i + 1}")
        f = F.gen(f"f{i + 1}")
        out[basis.index(f"e{i + 1}")] = _tensor(e, k_plus) + _tensor(one, e)
        if f_form == "standard":
            out[basis.index(f"f{i + 1}")] = _tensor(f, one) + _tensor(k_minus, f)
        else:
            out[basis.index(f"f{i + 1}")] = _tensor(f, k_minus) + _tensor(one, f)
        out[basis.index(f"h{i + 1}")] = _tensor(h, one) + _tensor(one, h)
    return out


def primitive_coproduct(p: Presentation) -> dict:
    """Delta(x) = x (x) 1 + 1 (x) x on every generator."""
    F = _Free(p.basis, p.order)
    one = F.one()
    return {i: _tensor(F.gen(n), one) + _tensor(one, F.gen(n)) for i, n in enumerate(p.basis.names)}


def counit_on_generators(p: Presentation) -> dict:
    return {n: 0 for n in p.basis.names}


def _tensor(a: DeformedTensor, b: DeformedTensor) -> DeformedTensor:
    out: dict = {}
    for (u,), c in a.items():
        for (v,), d in b.items():
            _acc(out, (u, v), c * d)
    return DeformedTensor._raw(a.basis, 2, out, min(a.order, b.order))


class _TensorSquare:
    """Free tensor square with the Koszul product (a1 (x) a2)(b1 (x) b2) = eps(a2, b1) a1b1 (x) a2b2."""

    def __init__(self, basis: GradedBasis, order: int):
        self.basis = basis
        self.order = order

    def mul(self, a: DeformedTensor, b: DeformedTensor) -> DeformedTensor:
        wd = self.basis.word_degree
        eps = self.basis.eps
        out: dict = {}
        for (a1, a2), c in a.items():
            for (b1, b2), d in b.items():
                s = eps(wd(a2), wd(b1))
                cd = c * d
                if s != 1:
                    cd = cd * s
                _acc(out, (a1 + b1, a2 + b2), cd)
        return DeformedTensor._raw(self.basis, 2, out, self.order)


@dataclass
class DeltaCheck:
    """Per-relation outcome: "pass", "residual" or "bound_too_small"."""

    statuses: dict
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations


def _max_len(el: DeformedTensor) -> int:
    return max((sum(len(w) for w in key) for key, _ in el.items()), default=0)


def _words(n_letters: int, max_len: int) -> list:
    out = [()]
    for k in range(1, max_len + 1):
        out.extend(itertools.product(range(n_letters), repeat=k))
    return out


class _IdealSpan:
    """K-span of lam^j * (ideal generators) truncated to total word length <= D, per degree."""

    def __init__(self, relations: Sequence[Relation], basis: GradedBasis, order: int, D: int, arity: int, graded: bool):
        self.relations = relations
        self.basis = basis
        self.order = order
        self.D = D
        self.arity = arity
        self.graded = graded
        self._words = _words(basis.dim, D)
        self._spans: dict = {}

    def _degree(self, key):
        if not self.graded:
            return None
        return self.basis.group.sum(self.basis.word_degree(w) for w in key)

    def _rows(self, el: DeformedTensor):
        for shift in range(self.order):
            row = {}
            for key, c in el.items():
                for j, x in enumerate(c.c):
                    if x != 0 and j + shift < self.order:
                        row[(j + shift,) + key] = x
            if row:
                yield row

    def span(self, degree) -> SparseEchelon:
        if degree in self._spans:
            return self._spans[degree]
        ech = SparseEchelon()
        wd = self.basis.word_degree
        group = self.basis.group
        for rel in self.relations:
            el = rel.element
            L = _max_len(el)
            if L > self.D or el.is_zero():
                continue
            rdeg = wd(next(iter(el.items()))[0][0]) if self.graded else None
            budget = self.D - L
            for u in self._words:
                if len(u) > budget:
                    break
                for v in self._words:
                    if len(u) + len(v) > budget:
                        break
                    for w in self._words:
                        if len(u) + len(v) + len(w) > budget:
                            break
                        if self.graded and group.sum([wd(u), rdeg, wd(v), wd(w)]) != degree:
                            continue
                        if self.arity == 1:
                            if w:
                                continue
                            placements = [lambda x, u=u, v=v: (u + x + v,)]
                        else:
                            placements = [
                                lambda x, u=u, v=v, w=w: (u + x + v, w),
                                lambda x, u=u, v=v, w=w: (w, u + x + v),
                            ]
                        for place in placements:
                            terms: dict = {}
                            for (x,), c in el.items():
                                _acc(terms, place(x), c)
                            gen = DeformedTensor._raw(self.basis, self.arity, terms, self.order)
                            for row in self._rows(gen):
                                ech.add(row)
        self._spans[degree] = ech
        return ech

    def residual(self, el: DeformedTensor) -> DeformedTensor:
        """Remainder of el after reduction, split by degree when graded."""
        parts: dict = {}
        for key, c in el.items():
            parts.setdefault(self._degree(key), {})[key] = c
        rest: dict = {}
        for deg in sorted(parts, key=repr):
            vec = {}
            for key, c in parts[deg].items():
                for j, x in enumerate(c.c[: self.order]):
                    if x != 0:
                        vec[(j,) + key] = x
            for k, x in self.span(deg).reduce(vec).items():
                j, key = k[0], k[1:]
                coeffs = rest.setdefault(key, [Fraction(0)] * self.order)
                coeffs[j] = coeffs[j] + x
        return DeformedTensor._raw(
            self.basis, self.arity, {k: TruncSeries(v) for k, v in rest.items() if any(v)}, self.order
        )


def _is_homogeneous(el: DeformedTensor) -> bool:
    degs = {el.basis.word_degree(w) for (w,), _ in el.items()}
    return len(degs) <= 1


def check_delta_respects_relations(
    p: Presentation,
    delta: Mapping[int, DeformedTensor],
    degree_bound: int,
    N: int | None = None,
    max_degree_bound: int = MAX_DEGREE_BOUND,
) -> DeltaCheck:
    """Test Delta(rho) in I (x) F + F (x) I for every relation rho, within total word length <= D.

    A pass is a proof of membership; a residual only means no witness was
    found inside the bound.  Relations whose image already exceeds the bound
    are reported as ``bound_too_small``.
    """
    if degree_bound > max_degree_bound:
        raise CartanError(f"degree bound {degree_bound} exceeds the cap {max_degree_bound}")
    N = N or p.order
    basis = p.basis
    sq = _TensorSquare(basis, N)
    graded = all(_is_homogeneous(r.element) for r in p.relations)
    span = _IdealSpan(p.relations, basis, N, degree_bound, 2, graded)
    cache: dict = {(): DeformedTensor._raw(basis, 2, {((), ()): TruncSeries.const(Fraction(1), N)}, N)}

    def delta_word(w: tuple) -> DeformedTensor:
        if w not in cache:
            cache[w] = sq.mul(delta_word(w[:-1]), delta[w[-1]].at_order(N))
        return cache[w]

    statuses: dict = {}
    violations: list = []
    for rel in p.relations:
        img = DeformedTensor.zero(basis, 2, N)
        for (w,), c in rel.element.at_order(N).items():
            img = img + delta_word(w).scale(c)
        if _max_len(img) > degree_bound:
            statuses[rel.name] = "bound_too_small"
            violations.append(
                Violation("bound_too_small", (rel.name,), None, f"Delta of the relation needs degree {_max_len(img)}")
            )
            continue
        res = span.residual(img)
        if res:
            statuses[rel.name] = "residual"
            violations.append(Violation("delta_relation", (rel.name,), res, "not found in the ideal within the bound"))
        else:
            statuses[rel.name] = "pass"
    return DeltaCheck(statuses, violations)


def check_presentation(p: Presentation, degree_bound: int = 3) -> list[Violation]:
    """Homogeneity of every relation, and no generator lying in the bounded ideal."""
    out: list[Violation] = []
    graded = True
    for rel in p.relations:
        if not _is_homogeneous(rel.element):
            graded = False
            out.append(Violation("homogeneous", (rel.name,), rel.element, "relation mixes Z^s degrees"))
    span = _IdealSpan(p.relations, p.basis, p.order, degree_bound, 1, graded)
    F = _Free(p.basis, p.order)
    for name in p.basis.names:
        g = F.gen(name)
        if not span.residual(g):
            out.append(Violation("generator_killed", (name,), None, "generator lies in the ideal of relations"))
    return out


def compare_with_classical(dj: Presentation, classical: Presentation, degree_bound: int = 4) -> tuple[dict, list]:
    """lam^0 part of each DJ relation against the classical relation of the same name.

    Returns ``(statuses, violations)``; a status is "exact", "modulo_ideal"
    (equal up to the classical ideal within the bound) or "differs".
    """
    statuses: dict = {}
    out: list[Violation] = []
    span = _IdealSpan(classical.relations, classical.basis, 1, degree_bound, 1, True)
    by_name = {r.name: r for r in classical.relations}
    for rel in dj.relations:
        base = rel.element.at_order(1)
        cl = by_name.get(rel.name)
        if cl is None:
            statuses[rel.name] = "differs"
            out.append(Violation("classical_limit", (rel.name,), base, "no classical relation of this name"))
            continue
        diff = base - cl.element
        if not diff:
            statuses[rel.name] = "exact"
        elif _max_len(diff) <= degree_bound and not span.residual(diff):
            statuses[rel.name] = "modulo_ideal"
        else:
            statuses[rel.name] = "differs"
            out.append(Violation("classical_limit", (rel.name,), diff))
    return statuses, out


def check_printed_variants(p: Presentation, classical: Presentation, degree_bound: int = 4) -> dict:
    """For each printed variant, whether its lam^0 part lies in the classical ideal (within the bound)."""
    span = _IdealSpan(classical.relations, classical.basis, 1, degree_bound, 1, True)
    out = {}
    for rel in p.printed:
        base = rel.element.at_order(1)
        if _max_len(base) > degree_bound:
            out[rel.name] = "bound_too_small"
        else:
            out[rel.name] = "holds" if not span.residual(base) else "fails"
    return out


# -- bicharacter twists ---------------------------------------------------------------------------


def _sigma(cd: CartanData, eps_consts) -> CommutationFactor:
    return CommutationFactor(GradingGroup(cd.rank), eps_consts)


def apply_bicharacter_twist_to_presentation(p: Presentation, eps_consts) -> Presentation:
    """Rewrite every relation in the product x.'y = sigma(x, y) xy, sigma(a, b) = prod eps_ij^(a_i b_j).

    A word x_1...x_k of the old product equals prod_{i<j} sigma(x_i, x_j)^-1
    times the same word in the new one; the commutation factor becomes
    sigma(a, b) sigma(b, a)^-1 eps0.
    """
    sigma = _sigma(p.cartan, eps_consts)
    b = p.basis
    new_eps = sigma.antisymmetrized() * b.eps
    nb = GradedBasis(b.names, b.degrees, new_eps)

    def factor(w: tuple):
        out = Fraction(1)
        for i in range(len(w)):
            for j in range(i + 1, len(w)):
                out = out / sigma(b.degree(w[i]), b.degree(w[j]))
        return out

    def twist(rel: Relation) -> Relation:
        terms = {}
        for (w,), c in rel.element.items():
            s = factor(w)
            terms[(w,)] = c if s == 1 else c * s
        return Relation(rel.name, DeformedTensor._raw(nb, 1, terms, rel.element.order), rel.note)

    prev = p.sigma
    combined = sigma if prev is None else CommutationFactor(
        sigma.group, [[x * y for x, y in zip(r1, r2)] for r1, r2 in zip(sigma.matrix, prev.matrix)]
    )
    if combined.is_trivial():
        combined = None
    return Presentation(
        p.cartan, p.flavor, p.order, nb, [twist(r) for r in p.relations], p.reading, [twist(r) for r in p.printed], combined
    )


def lie_algebra_from_presentation(p: Presentation) -> ColorLieAlgebra:
    """Structure constants read off relations a xy + b yx + (linear part) for each generator pair.

    Only presentations where every pair of generators has such a relation
    (rank 1) qualify; each must satisfy b = -a eps(x, y).
    """
    b = p.basis
    table: dict = {}
    found = set()
    for rel in p.relations:
        el = rel.element.at_order(1)
        quad = {w: c.c[0] for (w,), c in el.items() if len(w) == 2}
        lin = {w[0]: c.c[0] for (w,), c in el.items() if len(w) == 1}
        if any(len(w) > 2 or len(w) == 0 for (w,), _ in el.items()):
            continue
        pairs = {tuple(sorted(w)) for w in quad}
        if len(pairs) != 1:
            continue
        i, j = pairs.pop()
        if i == j:
            continue
        a = quad.get((i, j), 0)
        c = quad.get((j, i), 0)
        if a == 0 or c != -a * b.eps(b.degree(i), b.degree(j)):
            raise CartanError(f"relation {rel.name} is not a color bracket for the presentation's eps")
        vec = {k: -v / a for k, v in lin.items() if v != 0}
        table[(i, j)] = vec
        found.add((i, j))
    for i in range(b.dim):
        for j in range(i + 1, b.dim):
            if (i, j) not in found and (j, i) not in found:
                raise CartanError(f"no bracket relation for ({b.names[i]}, {b.names[j]})")
    alg = ColorLieAlgebra(b, {}, complete=False)
    full: dict = {}
    for (i, j), vec in table.items():
        if vec:
            full[(i, j)] = vec
            s = -b.eps(b.degree(j), b.degree(i))
            full[(j, i)] = {k: v * s for k, v in vec.items()}
    alg.table = full
    return alg


def binomial_signs(n: int) -> list:
    """Classical Serre coefficients (-1)^k C(n, k)."""
    return [(-1) ** k * comb(n, k) for k in range(n + 1)]
