"""Truncated quantization of a double: T_n layer, associator, twist J, twisted Hopf data.

Everything lives in K[lam]/lam^N.  The order-lam^2 associator
Phi = 1 + lam^2 c [t12, t23] is fixed by solving the pentagon and hexagon
relations in T_3/T_4 modulo lam^3; for N <= 2 the associator is trivial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .colorlie import ColorLieBialgebra, double
from .linalg import SparseEchelon
from .report import Violation
from .scalars import TruncSeries
from .tensoralg import DeformedTensor, _acc, koszul_flip
from .uea import UEA, VermaPair

__all__ = [
    "AssociatorSolution",
    "CoboundaryQuantization",
    "Pushforward",
    "QuasiHopfData",
    "Quantization",
    "TnElement",
    "TnReducer",
    "associator_ansatz",
    "associator_inverse",
    "beta_map",
    "check_classical_limit",
    "check_quasitriangular",
    "check_tn_relations",
    "check_triangular",
    "compute_J",
    "hexagon_residuals",
    "omega_embedding",
    "pentagon_residual",
    "polarize",
    "push_tensor",
    "pushforward_data",
    "quantize",
    "quantize_coboundary",
    "solve_associator_order2",
    "tn_exp",
    "tn_relations",
    "tn_substitute",
    "twist_hopf",
    "twisted_associator",
]


# -- the algebras T_n -------------------------------------------------------------------


def _gen(i: int, j: int) -> tuple:
    if i == j:
        raise ValueError("t_ii is not a generator")
    return (i, j) if i < j else (j, i)


class TnElement:
    """Noncommutative polynomial in the t_ij (1 <= i < j <= n) over K[lam]/lam^N."""

    __slots__ = ("n", "order", "terms")

    def __init__(self, n: int, terms: Mapping | None = None, order: int = 3):
        self.n = n
        self.order = order
        self.terms: dict = {}
        for mono, c in (terms or {}).items():
            mono = tuple(_gen(*g) for g in mono)
            for a, b in mono:
                if not (1 <= a < b <= n):
                    raise ValueError(f"t_{a}{b} is not a generator of T_{n}")
            c = c if isinstance(c, TruncSeries) else TruncSeries.const(Fraction(c), order)
            _acc(self.terms, mono, c.truncate(order) if c.order >= order else _pad(c, order))

    @classmethod
    def gen(cls, n: int, i: int, j: int, order: int = 3) -> "TnElement":
        return cls(n, {((i, j),): 1}, order)

    @classmethod
    def one(cls, n: int, order: int = 3) -> "TnElement":
        return cls(n, {(): 1}, order)

    def _new(self, terms) -> "TnElement":
        t = TnElement.__new__(TnElement)
        t.n, t.order, t.terms = self.n, self.order, terms
        return t

    def __add__(self, other: "TnElement") -> "TnElement":
        out = dict(self.terms)
        for k, v in other.terms.items():
            _acc(out, k, v)
        return self._new(out)

    def __neg__(self) -> "TnElement":
        return self._new({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "TnElement") -> "TnElement":
        return self + (-other)

    def scale(self, s) -> "TnElement":
        out: dict = {}
        for k, v in self.terms.items():
            _acc(out, k, v * s)
        return self._new(out)

    def __mul__(self, other: "TnElement") -> "TnElement":
        if not isinstance(other, TnElement):
            return self.scale(other)
        out: dict = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                if v1.valuation() + v2.valuation() >= self.order:
                    continue
                _acc(out, k1 + k2, v1 * v2)
        return self._new(out)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, TnElement):
            return NotImplemented
        return self.n == other.n and self.order == other.order and self.terms == other.terms

    __hash__ = None

    def lam_coefficient(self, k: int) -> dict:
        return {m: v.c[k] for m, v in self.terms.items() if k < v.order and v.c[k] != 0}

    def cable(self, n: int, parts: Sequence[Sequence[int]]) -> "TnElement":
        """Coproduct-type map T_m -> T_n: t_ij -> sum over a in parts[i], b in parts[j] of t_ab."""
        result: dict = {}
        for mono, c in self.terms.items():
            images = [()]
            for i, j in mono:
                opts = [_gen(a, b) for a in parts[i - 1] for b in parts[j - 1]]
                images = [m + (g,) for m in images for g in opts]
            for m in images:
                _acc(result, m, c)
        t = TnElement.__new__(TnElement)
        t.n, t.order, t.terms = n, self.order, result
        return t

    def relabel(self, perm: Sequence[int]) -> "TnElement":
        """t_ij -> t_{perm(i) perm(j)} (perm is 1-based, perm[i-1] = image of i)."""
        return self.cable(self.n, [[p] for p in perm])

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: (len(m), m)):
            mono = "*".join(f"t{a}{b}" for a, b in m) or "1"
            parts.append(f"({self.terms[m]!r})*{mono}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        terms = []
        for m in sorted(self.terms, key=lambda m: (len(m), m)):
            terms.append({"indices": [f"t{a}{b}" for a, b in m], "coeff": [str(x) for x in self.terms[m].c]})
        return {"terms": terms}


def _pad(c: TruncSeries, order: int) -> TruncSeries:
    zero = c.c[0] * 0
    return TruncSeries(c.c + (zero,) * (order - c.order))


def tn_exp(x: TnElement) -> TnElement:
    out = TnElement.one(x.n, x.order)
    term = TnElement.one(x.n, x.order)
    for k in range(1, x.order):
        term = (term * x).scale(Fraction(1, k))
        out = out + term
    return out


def tn_commutator(a: TnElement, b: TnElement) -> TnElement:
    return a * b - b * a


def tn_relations(n: int, degree: int = 2) -> list[dict]:
    """Spanning set of the degree-``degree`` part of the two-sided relation ideal.

    Generators of the ideal: [t_ij, t_kl] for disjoint pairs and
    [t_ij, t_ik + t_jk]; they are multiplied by monomials on both sides to
    fill the requested degree.
    """
    gens = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    rels: list[dict] = []
    for a in gens:
        for b in gens:
            if a < b and not set(a) & set(b):
                rels.append({(a, b): Fraction(1), (b, a): Fraction(-1)})
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                if len({i, j, k}) < 3 or i > j:
                    continue
                tij, tik, tjk = _gen(i, j), _gen(i, k), _gen(j, k)
                r: dict = {}
                for g in (tik, tjk):
                    r[(tij, g)] = r.get((tij, g), Fraction(0)) + 1
                    r[(g, tij)] = r.get((g, tij), Fraction(0)) - 1
                rels.append({k2: v for k2, v in r.items() if v})
    pad = degree - 2
    if pad == 0:
        return rels
    monos = [()]
    for _ in range(pad):
        monos = [m + (g,) for m in monos for g in gens]
    out = []
    for r in rels:
        for m in monos:
            for split in range(pad + 1):
                out.append({m[:split] + k + m[split:]: v for k, v in r.items()})
    return out


class TnReducer:
    """Normal form modulo the T_n relations, degree by degree."""

    def __init__(self, n: int, max_degree: int = 2):
        self.n = n
        self.echelons = {}
        for d in range(2, max_degree + 1):
            e = SparseEchelon()
            for r in tn_relations(n, d):
                e.add(r)
            self.echelons[d] = e

    def reduce_scalar(self, vec: Mapping) -> dict:
        """Reduce a scalar-coefficient combination of monomials."""
        by_deg: dict = {}
        for m, c in vec.items():
            by_deg.setdefault(len(m), {})[m] = c
        out: dict = {}
        for d, part in by_deg.items():
            e = self.echelons.get(d)
            out.update(e.reduce(part) if e is not None else {m: c for m, c in part.items() if c != 0})
        return out

    def reduce(self, x: TnElement) -> dict:
        """``{lam power: reduced scalar vector}`` with zero parts dropped."""
        out = {}
        for k in range(x.order):
            red = self.reduce_scalar(x.lam_coefficient(k))
            if red:
                out[k] = red
        return out


def check_tn_relations(gens: Mapping[tuple, object], n: int, mul: Callable, zero_test: Callable) -> list[Violation]:
    """Verify that images of the t_ij satisfy the T_n relations.

    ``gens[(i, j)]`` is the image of t_ij, ``mul`` multiplies images and
    ``zero_test`` decides vanishing.
    """
    out: list[Violation] = []
    keys = sorted(gens)
    for a in keys:
        for b in keys:
            if a < b and not set(a) & set(b):
                res = mul(gens[a], gens[b]) - mul(gens[b], gens[a])
                if not zero_test(res):
                    out.append(Violation("tn_disjoint", (f"t{a[0]}{a[1]}", f"t{b[0]}{b[1]}"), res))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(1, n + 1):
                if k in (i, j):
                    continue
                s = gens[_gen(i, k)] + gens[_gen(j, k)]
                res = mul(gens[(i, j)], s) - mul(s, gens[(i, j)])
                if not zero_test(res):
                    out.append(Violation("tn_infinitesimal_braid", (f"t{i}{j}", f"k={k}"), res))
    return out


# -- associator ---------------------------------------------------------------------------


@dataclass
class AssociatorSolution:
    c: Fraction
    pentagon_residual: dict
    hexagon_residuals: dict
    trivial_hexagon_residuals: dict
    unique: bool

    def to_json(self) -> dict:
        def enc(red):
            return {
                str(k): [{"indices": [f"t{a}{b}" for a, b in m], "coeff": str(v)} for m, v in sorted(vec.items())]
                for k, vec in red.items()
            }

        return {
            "c": str(self.c),
            "unique": self.unique,
            "pentagon_residual": enc(self.pentagon_residual),
            "hexagon_residuals": {k: enc(v) for k, v in self.hexagon_residuals.items()},
            "c0_hexagon_residuals": {k: enc(v) for k, v in self.trivial_hexagon_residuals.items()},
        }


def associator_ansatz(c, order: int = 3) -> TnElement:
    """Phi = 1 + lam^2 c [t12, t23] in T_3."""
    lam2 = TruncSeries.lam(order, 2, Fraction(c))
    t12, t23 = TnElement.gen(3, 1, 2, order), TnElement.gen(3, 2, 3, order)
    return TnElement.one(3, order) + tn_commutator(t12, t23).scale(lam2)


def associator_inverse(phi: TnElement) -> TnElement:
    x = phi - TnElement.one(phi.n, phi.order)
    out = TnElement.one(phi.n, phi.order)
    term = TnElement.one(phi.n, phi.order)
    for _ in range(1, phi.order):
        term = -(term * x)
        out = out + term
    return out


def pentagon_residual(phi: TnElement) -> TnElement:
    """Phi_{1,2,34} Phi_{12,3,4} - Phi_{2,3,4} Phi_{1,23,4} Phi_{1,2,3} in T_4."""
    p = lambda parts: phi.cable(4, parts)  # noqa: E731
    lhs = p([[1], [2], [3, 4]]) * p([[1, 2], [3], [4]])
    rhs = p([[2], [3], [4]]) * p([[1], [2, 3], [4]]) * p([[1], [2], [3]])
    return lhs - rhs


def hexagon_residuals(phi: TnElement) -> dict:
    """Both hexagons in T_3 with R = exp(lam t/2).

    (Delta (x) id)R = Phi_312 R13 Phi_132^-1 R23 Phi_123
    (id (x) Delta)R = Phi_231^-1 R13 Phi_213 R12 Phi_123^-1

    where Phi_{abc} places the three factors of Phi in slots a, b, c.
    """
    order = phi.order
    half = TruncSeries.lam(order, 1, Fraction(1, 2))

    def r(i, j):
        return tn_exp(TnElement.gen(3, i, j, order).scale(half))

    def placed(perm):
        return phi.relabel(perm)

    inv = associator_inverse
    t13_23 = (TnElement.gen(3, 1, 3, order) + TnElement.gen(3, 2, 3, order)).scale(half)
    t12_13 = (TnElement.gen(3, 1, 2, order) + TnElement.gen(3, 1, 3, order)).scale(half)
    h1 = tn_exp(t13_23) - placed([3, 1, 2]) * r(1, 3) * inv(placed([1, 3, 2])) * r(2, 3) * phi
    h2 = tn_exp(t12_13) - inv(placed([2, 3, 1])) * r(1, 3) * placed([2, 1, 3]) * r(1, 2) * inv(phi)
    return {"hexagon_1": h1, "hexagon_2": h2}


def solve_associator_order2() -> AssociatorSolution:
    """Find c with pentagon and hexagons holding mod lam^3 for Phi = 1 + lam^2 c [t12, t23].

    All residuals are affine in c modulo lam^3, so they are evaluated at c = 0
    and c = 1, reduced modulo the T_n relations, and the resulting linear
    equations are solved exactly.
    """
    red3 = TnReducer(3)
    red4 = TnReducer(4)
    eqs: list[tuple[dict, dict]] = []  # (value at 0, slope) per scalar coordinate

    def affine(fn, reducer):
        r0 = reducer.reduce(fn(associator_ansatz(0)))
        r1 = reducer.reduce(fn(associator_ansatz(1)))
        keys = {(k, m) for k, v in r0.items() for m in v} | {(k, m) for k, v in r1.items() for m in v}
        for k, m in sorted(keys):
            a = r0.get(k, {}).get(m, 0)
            b = r1.get(k, {}).get(m, 0)
            eqs.append((a, b - a))

    affine(pentagon_residual, red4)
    for name in ("hexagon_1", "hexagon_2"):
        affine(lambda phi, name=name: hexagon_residuals(phi)[name], red3)
    c = None
    unique = False
    for a, s in eqs:
        if s != 0:
            cand = Fraction(-a) / Fraction(s)
            if c is None:
                c = cand
                unique = True
            elif cand != c:
                raise ArithmeticError("associator equations are inconsistent")
        elif a != 0:
            raise ArithmeticError("associator equations have a c-independent obstruction")
    if c is None:
        c = Fraction(0)
    phi = associator_ansatz(c)
    zero = associator_ansatz(0)
    return AssociatorSolution(
        c=c,
        pentagon_residual=red4.reduce(pentagon_residual(phi)),
        hexagon_residuals={k: red3.reduce(v) for k, v in hexagon_residuals(phi).items()},
        trivial_hexagon_residuals={k: red3.reduce(v) for k, v in hexagon_residuals(zero).items()},
        unique=unique,
    )


# -- Omega on tensor powers ------------------------------------------------------------------


def omega_embedding(omega: DeformedTensor, i: int, j: int, n: int, order: int) -> DeformedTensor:
    """Omega placed in slots i, j (1-based) of an n-fold tensor, units elsewhere."""
    return omega.at_order(order).embed([i - 1, j - 1], n)


def tn_substitute(x: TnElement, omega: DeformedTensor, u: UEA, order: int | None = None) -> DeformedTensor:
    """Image of x under t_ij -> Omega_ij in U^(x)n."""
    order = order or x.order
    n = x.n
    cache: dict = {}
    out = DeformedTensor.zero(u.basis, n, order)
    for mono, c in x.terms.items():
        term = DeformedTensor.unit(u.basis, n, order)
        for g in mono:
            if g not in cache:
                cache[g] = omega_embedding(omega, g[0], g[1], n, order)
            term = u.tensor_mul(term, cache[g])
        out = out + term.scale(c.truncate(order) if c.order >= order else _pad(c, order))
    return out


# -- Drinfeld-category maps on Verma tensors ------------------------------------------------


class _VermaOps:
    """Operators from Omega acting on tensor products of M+ and M-."""

    def __init__(self, pair: VermaPair, omega: DeformedTensor, order: int):
        self.pair = pair
        self.omega = omega
        self.order = order
        self._emb: dict = {}

    def omega_on(self, i: int, j: int, v: DeformedTensor, sides) -> DeformedTensor:
        key = (i, j, v.arity)
        if key not in self._emb:
            self._emb[key] = omega_embedding(self.omega, i, j, v.arity, self.order)
        return self.pair.act_tensor(self._emb[key], v, sides)

    def tn_on(self, x: TnElement, v: DeformedTensor, sides) -> DeformedTensor:
        """Act by x in T_n with t_ij -> Omega_ij on the Verma tensor v."""
        out = DeformedTensor.zero(v.basis, v.arity, self.order)
        for mono, c in x.terms.items():
            w = v
            for g in reversed(mono):
                w = self.omega_on(g[0], g[1], w, sides)
                if not w:
                    break
            if w:
                out = out + w.scale(c.truncate(self.order) if c.order >= self.order else _pad(c, self.order))
        return out

    def exp_omega(self, i: int, j: int, v: DeformedTensor, sides) -> DeformedTensor:
        """exp(lam Omega_ij / 2) v."""
        out = v
        term = v
        for k in range(1, self.order):
            term = self.omega_on(i, j, term, sides).scale(TruncSeries.lam(self.order, 1, Fraction(1, 2 * k)))
            out = out + term
        return out


def beta_map(pair: VermaPair, omega: DeformedTensor, v: DeformedTensor, i: int, sides, order: int) -> tuple:
    """beta = tau exp(lam Omega/2) on slots i, i+1 (1-based); returns (vector, new sides)."""
    ops = _VermaOps(pair, omega, order)
    w = ops.exp_omega(i, i + 1, v.at_order(order), sides)
    sides = list(sides)
    sides[i - 1], sides[i] = sides[i], sides[i - 1]
    return koszul_flip(w, i), tuple(sides)


def compute_J(
    b: ColorLieBialgebra,
    N: int,
    associator_c: Fraction | None = None,
    pair: VermaPair | None = None,
) -> DeformedTensor:
    """Twist J = (phi^-1 (x) phi^-1)(Phi^-1_{1,2,34} Phi_{2,3,4} beta_23 Phi^-1_{2,3,4} Phi_{1,2,34} (1+ (x) 1+ (x) 1- (x) 1-)).

    ``b`` must be a double (output of :func:`double`).  For N = 3 the
    order-lam^2 associator coefficient is required.
    """
    if N < 1:
        raise ValueError("truncation order must be >= 1")
    if N > 3:
        raise ValueError("only orders N <= 3 are supported (associator known to lam^2)")
    if N == 3 and associator_c is None:
        raise ValueError("N = 3 needs the order-2 associator coefficient (solve_associator_order2)")
    data = b.double_data
    pair = pair or VermaPair(b.algebra)
    basis = b.basis
    omega = data.omega
    ops = _VermaOps(pair, omega, N)
    v = DeformedTensor.unit(basis, 4, N)
    sides = ("+", "+", "-", "-")
    if N == 3 and associator_c != 0:
        phi = associator_ansatz(associator_c, N)
        phi_inv = associator_inverse(phi)
        p_1_2_34 = phi.cable(4, [[1], [2], [3, 4]])
        p_1_2_34_inv = phi_inv.cable(4, [[1], [2], [3, 4]])
        p_2_3_4 = phi.cable(4, [[2], [3], [4]])
        p_2_3_4_inv = phi_inv.cable(4, [[2], [3], [4]])
        v = ops.tn_on(p_1_2_34, v, sides)
        v = ops.tn_on(p_2_3_4_inv, v, sides)
        v, sides = beta_map(pair, omega, v, 2, sides, N)
        v = ops.tn_on(p_2_3_4, v, sides)
        v = ops.tn_on(p_1_2_34_inv, v, sides)
    else:
        v, sides = beta_map(pair, omega, v, 2, sides, N)
    if sides != ("+", "-", "+", "-"):
        raise AssertionError("unexpected module arrangement after beta")
    return _phi_inverse_pair(pair, v)


def _phi_inverse_pair(pair: VermaPair, v: DeformedTensor) -> DeformedTensor:
    """(phi^-1 (x) phi^-1) on M+ (x) M- (x) M+ (x) M-; phi^-1 has degree 0, so no signs."""
    order = v.order
    basis = v.basis
    cache: dict = {}

    def inv(a, b):
        key = (a, b)
        if key not in cache:
            cache[key] = pair.phi_inverse(DeformedTensor(basis, 2, {(a, b): 1}, order))
        return cache[key]

    out: dict = {}
    for (w1, w2, w3, w4), c in v.items():
        left = inv(w1, w2)
        right = inv(w3, w4)
        for (u1,), c1 in left.items():
            for (u2,), c2 in right.items():
                _acc(out, (u1, u2), c * c1 * c2)
    return DeformedTensor._raw(basis, 2, out, order)


# -- twisted Hopf structure -------------------------------------------------------------------


@dataclass
class QuasiHopfData:
    """Twisted structure on U(D)[lam]/lam^N."""

    uea: UEA
    order: int
    J: DeformedTensor
    J_inv: DeformedTensor
    R: DeformedTensor
    Q: DeformedTensor
    Q_inv: DeformedTensor
    omega: DeformedTensor
    r: DeformedTensor
    antipode_form: str = "Q^-1 S0 Q"
    phi: DeformedTensor | None = None
    _delta_cache: dict = field(default_factory=dict, repr=False)
    _s_cache: dict = field(default_factory=dict, repr=False)

    def delta_word(self, w: tuple) -> DeformedTensor:
        hit = self._delta_cache.get(w)
        if hit is None:
            u = self.uea
            d0 = DeformedTensor(u.basis, 2, u.coproduct_word(w), self.order)
            hit = u.tensor_mul(u.tensor_mul(self.J_inv, d0), self.J)
            self._delta_cache[w] = hit
        return hit

    def delta(self, a: DeformedTensor) -> DeformedTensor:
        return self.uea.apply_slot(a, 0, self.delta_word)

    def delta_op(self, a: DeformedTensor) -> DeformedTensor:
        return koszul_flip(self.delta(a), 1)

    def counit_word(self, w: tuple) -> DeformedTensor:
        return DeformedTensor(self.uea.basis, 0, {(): 1} if not w else {}, self.order)

    def antipode_word(self, w: tuple) -> DeformedTensor:
        hit = self._s_cache.get(w)
        if hit is None:
            u = self.uea
            s0 = DeformedTensor(u.basis, 1, {(x,): c for x, c in u.antipode0_word(w).items()}, self.order)
            if self.antipode_form == "Q^-1 S0 Q":
                hit = u.tensor_mul(u.tensor_mul(self.Q_inv, s0), self.Q)
            else:
                hit = u.tensor_mul(u.tensor_mul(self.Q, s0), self.Q_inv)
            self._s_cache[w] = hit
        return hit


def twist_hopf(
    J: DeformedTensor,
    uea: UEA,
    omega: DeformedTensor,
    r: DeformedTensor | None = None,
    r_formula: str = "J21^-1 e^(lam Omega/2) J",
    antipode_form: str = "Q^-1 S0 Q",
) -> QuasiHopfData:
    """Delta = J^-1 Delta0 J, S from Q = mu(S0 (x) id)J, and R.

    ``r_formula`` selects R = J21^-1 exp(lam Omega/2) J (default) or the
    variant ``"(J21)^-1 e^(lam Omega/2)"`` without the right factor.
    """
    N = J.order
    const = J.lam_coefficient(0)
    if const != DeformedTensor.unit(uea.basis, 2, 1):
        raise ValueError("J must have lam^0 part 1 (x) 1 to be invertible here")
    J_inv = uea.inverse(J)
    omega_n = omega.at_order(N)
    e_omega = uea.exp(omega_n.scale(TruncSeries.lam(N, 1, Fraction(1, 2))))
    J21_inv = uea.inverse(koszul_flip(J, 1))
    if r_formula == "J21^-1 e^(lam Omega/2) J":
        R = uea.tensor_mul(uea.tensor_mul(J21_inv, e_omega), J)
    elif r_formula == "(J21)^-1 e^(lam Omega/2)":
        R = uea.tensor_mul(J21_inv, e_omega)
    else:
        raise ValueError(f"unknown R formula {r_formula!r}")
    Q = uea.multiply_slots(uea.apply_slot(J, 0, uea.antipode0_map(N)), 0)
    Q_inv = uea.inverse(Q)
    return QuasiHopfData(uea, N, J, J_inv, R, Q, Q_inv, omega_n, r if r is not None else omega_n, antipode_form)


def check_quasitriangular(q: QuasiHopfData, word_bound: int = 2) -> list[Violation]:
    """R Delta(a) = Delta^op(a) R, (Delta (x) id)R = R13 R23, (id (x) Delta)R = R13 R12,
    counit normalisation of R and J, coassociativity and the antipode, all mod lam^N."""
    u = q.uea
    N = q.order
    names = u.basis
    R = q.R
    out: list[Violation] = []
    zero = u.basis.group.zero
    for label, t in (("J", q.J), ("R", q.R)):
        if not t.is_homogeneous(zero):
            out.append(Violation("degree", (label,), None, f"{label} is not of degree 0"))
    one1 = DeformedTensor.unit(u.basis, 1, N)
    for label, t in (("R", R), ("J", q.J)):
        for slot in (0, 1):
            res = u.apply_slot(t, slot, q.counit_word) - one1
            if res:
                out.append(Violation("counit_normalization", (label, f"slot{slot + 1}"), res))
    lhs = u.apply_slot(R, 0, q.delta_word)
    rhs = u.tensor_mul(R.embed([0, 2], 3), R.embed([1, 2], 3))
    res = lhs - rhs
    if res:
        out.append(Violation("delta_x_id_R", (), res))
    lhs = u.apply_slot(R, 1, q.delta_word)
    rhs = u.tensor_mul(R.embed([0, 2], 3), R.embed([0, 1], 3))
    res = lhs - rhs
    if res:
        out.append(Violation("id_x_delta_R", (), res))
    for w in u.normal_words(word_bound):
        loc = (names.word_label(w),)
        x = DeformedTensor(u.basis, 1, {(w,): 1}, N)
        d = q.delta_word(w)
        res = u.tensor_mul(R, d) - u.tensor_mul(koszul_flip(d, 1), R)
        if res:
            out.append(Violation("R_intertwines", loc, res))
        res = u.apply_slot(d, 0, q.delta_word) - u.apply_slot(d, 1, q.delta_word)
        if res:
            out.append(Violation("coassociativity", loc, res))
        for slot in (0, 1):
            res = u.apply_slot(d, slot, q.counit_word) - x
            if res:
                out.append(Violation("counit", loc + (f"slot{slot + 1}",), res))
        unit = one1.scale(TruncSeries.const(u.field(1 if not w else 0), N))
        for slot, label in ((0, "S(x1)x2"), (1, "x1S(x2)")):
            res = u.multiply_slots(u.apply_slot(d, slot, q.antipode_word), 0) - unit
            if res:
                out.append(Violation("antipode", loc + (label,), res))
    return out


def twisted_associator(q: QuasiHopfData, phi: DeformedTensor | None = None) -> DeformedTensor:
    """J23^-1 (id (x) Delta0)(J^-1) Phi (Delta0 (x) id)(J) J12; equals 1 when the twist trivialises Phi."""
    u = q.uea
    N = q.order
    d0 = u.delta0_map(N)
    phi = phi if phi is not None else DeformedTensor.unit(u.basis, 3, N)
    a = u.tensor_mul(q.J_inv.embed([1, 2], 3), u.apply_slot(q.J_inv, 1, d0))
    b = u.tensor_mul(u.apply_slot(q.J, 0, d0), q.J.embed([0, 1], 3))
    return u.tensor_mul(u.tensor_mul(a, phi), b)


def check_classical_limit(q: QuasiHopfData, b: ColorLieBialgebra) -> list[Violation]:
    """lam-coefficient of Delta(x) - Delta^op(x) equals delta(x); R = 1 + lam r mod lam^2.

    ``b`` is the double whose cobracket is compared; when it remembers the
    bialgebra it was built from, the restriction to g is compared too.
    """
    u = q.uea
    names = u.basis.names
    out: list[Violation] = []
    if q.order < 2:
        out.append(Violation("order", (), q.order, "classical limit needs N >= 2"))
        return out
    for i in range(u.basis.dim):
        d = q.delta_word((i,))
        diff = (d - koszul_flip(d, 1)).lam_coefficient(1)
        res = diff - b.delta(i)
        if res:
            out.append(Violation("classical_limit", (names[i],), res))
    src = getattr(b, "source", None)
    if src is not None:
        for i in range(src.basis.dim):
            if b.delta(i) != DeformedTensor(b.basis, 2, dict(src.delta(i).items()), 1):
                out.append(Violation("double_restriction", (names[i],), b.delta(i)))
    expect = DeformedTensor.unit(u.basis, 2, 2) + q.r.at_order(2).scale(TruncSeries.lam(2))
    res = q.R.at_order(2) - expect
    if res:
        out.append(Violation("R_classical", (), res))
    return out


def polarize(R: DeformedTensor, functional: Mapping, side: str, uea: UEA) -> DeformedTensor:
    """p+(f) = (id (x) f)(R) with sign eps(f, first slot); p-(f) = (f (x) id)(R).

    ``functional`` maps normal words to scalars; it must be homogeneous.
    """
    b = uea.basis
    f = {tuple(b.index(x) for x in w) if not isinstance(w, tuple) or any(isinstance(x, str) for x in w) else w: b.field(c) for w, c in functional.items()}
    degs = {b.group.neg(b.word_degree(w)) for w, c in f.items() if c != 0}
    if len(degs) > 1:
        raise ValueError("functional must be homogeneous")
    fdeg = degs.pop() if degs else b.group.zero
    out: dict = {}
    for (w1, w2), c in R.items():
        if side == "+":
            val = f.get(w2)
            if val:
                _acc(out, (w1,), c * (val * b.eps(fdeg, b.word_degree(w1))))
        elif side == "-":
            val = f.get(w1)
            if val:
                _acc(out, (w2,), c * val)
        else:
            raise ValueError("side must be '+' or '-'")
    return DeformedTensor._raw(b, 1, out, R.order)


# -- pipeline ------------------------------------------------------------------------------


@dataclass
class Quantization:
    double: ColorLieBialgebra
    pair: VermaPair
    J: DeformedTensor
    hopf: QuasiHopfData
    associator: AssociatorSolution | None = None


def quantize(b: ColorLieBialgebra, N: int = 2, associator: AssociatorSolution | None = None) -> Quantization:
    """Double b, compute J at order N and twist the Hopf structure of U(D)."""
    d = double(b)
    pair = VermaPair(d.algebra)
    if N == 3 and associator is None:
        associator = solve_associator_order2()
    J = compute_J(d, N, associator.c if associator else None, pair)
    uea = pair.std
    hopf = twist_hopf(J, uea, d.double_data.omega, d.double_data.r)
    return Quantization(d, pair, J, hopf, associator)


# -- quasitriangular and triangular inputs ------------------------------------------------


@dataclass
class Pushforward:
    """g+ = left legs of r with its induced bialgebra, its double and pi: D(g+) -> a.

    ``images[i]`` is pi of the i-th double basis element as a vector of a.
    """

    plus: ColorLieBialgebra
    double: ColorLieBialgebra
    images: tuple
    violations: list


def _r_matrix(r: DeformedTensor) -> dict:
    m: dict = {}
    for ((j,), (k,)), c in r.items():
        m[(j, k)] = c.c[0]
    return m


def pushforward_data(b: ColorLieBialgebra) -> Pushforward:
    """Split r = sum u_i (x) v_i with independent homogeneous u_i and build pi.

    g+ = span(u_i) is closed under the bracket and the cobracket x.r when r is
    quasitriangular; pi sends u_i to u_i and the dual element of u_i to v_i.
    Any failure of these properties is reported rather than assumed away.
    """
    from .colorlie import ColorLieAlgebra, check_color_bialgebra, check_color_lie, classify_r
    from .linalg import SpanCoordinates
    from .tensoralg import GradedBasis

    if b.rmatrix is None:
        raise ValueError("bialgebra has no r-matrix")
    kind = classify_r(b)
    if kind.kind == "not_qt":
        raise ValueError("r is not quasitriangular: " + ", ".join(sorted({v.check for v in kind.violations})))
    a = b.algebra
    ab = a.basis
    m = _r_matrix(b.rmatrix)
    cols: dict = {}
    for (j, k), c in m.items():
        cols.setdefault(k, {})[j] = c
    plus_vecs: list[dict] = []
    ech = SparseEchelon()
    for k in sorted(cols):
        col = cols[k]
        vec = {next(iter(col)): 1} if len(col) == 1 else dict(col)
        if ech.add(vec):
            plus_vecs.append(vec)
    coords = SpanCoordinates(plus_vecs)
    p = len(plus_vecs)
    # r = sum_k c_k (x) e_k = sum_i u_i (x) v_i with v_i = sum_k A_ik e_k
    v_vecs: list[dict] = [{} for _ in range(p)]
    for k, col in cols.items():
        for i, c in coords(col).items():
            v_vecs[i][k] = c

    def vec_degree(vec):
        degs = {ab.degree(j) for j in vec}
        if len(degs) != 1:
            raise ValueError("r does not split into homogeneous legs")
        return degs.pop()

    names = [ab.names[next(iter(v))] if len(v) == 1 else f"u{i + 1}" for i, v in enumerate(plus_vecs)]
    while len(set(names)) != len(names):
        names = [f"u{i + 1}" for i in range(p)]
    pbasis = GradedBasis(names, [vec_degree(v) for v in plus_vecs], ab.eps)
    violations: list[Violation] = []
    bracket: dict = {}
    for i in range(p):
        for j in range(p):
            br = a.bracket(plus_vecs[i], plus_vecs[j])
            cc = coords(br)
            if cc is None:
                violations.append(Violation("plus_closed", (names[i], names[j]), a.vector(br)))
            elif cc:
                bracket[(i, j)] = cc
    palg = ColorLieAlgebra(pbasis, {}, complete=False)
    palg.table = bracket
    cob: dict = {}
    for i in range(p):
        t = b.delta_vec(plus_vecs[i])
        rows: dict = {}
        for ((j,), (k,)), c in t.items():
            rows.setdefault(k, {})[j] = c.c[0]
        first: dict = {}
        ok = True
        for k, col in rows.items():
            cc = coords(col)
            if cc is None:
                ok = False
                break
            for q, c in cc.items():
                first.setdefault(q, {})[k] = c
        out: dict = {}
        if ok:
            for q, row in first.items():
                cc = coords(row)
                if cc is None:
                    ok = False
                    break
                for s, c in cc.items():
                    if c != 0:
                        out[(q, s)] = c
        if not ok:
            violations.append(Violation("plus_cobracket", (names[i],), t))
        elif out:
            cob[i] = out
    plus = ColorLieBialgebra(palg, cob)
    violations += check_color_lie(palg) + check_color_bialgebra(plus)
    d = double(plus)
    images = tuple(plus_vecs) + tuple(v_vecs)
    db = d.basis
    for i in range(db.dim):
        for j in range(db.dim):
            lhs: dict = {}
            for k, c in d.algebra.bracket_basis(i, j).items():
                for x, y in images[k].items():
                    lhs[x] = lhs.get(x, 0) + c * y
            rhs = a.bracket(images[i], images[j])
            diff = {x: lhs.get(x, 0) - rhs.get(x, 0) for x in set(lhs) | set(rhs)}
            diff = {x: c for x, c in diff.items() if c != 0}
            if diff:
                violations.append(Violation("pi_morphism", (db.names[i], db.names[j]), a.vector(diff)))
    return Pushforward(plus, d, images, violations)


def push_tensor(t: DeformedTensor, images: Sequence[Mapping], uea: UEA) -> DeformedTensor:
    """Apply the algebra map U(D) -> U(a) induced by ``images`` slot by slot (degree 0, no signs)."""
    order = t.order
    cache: dict = {(): uea.one(1, order)}

    def img(w):
        if w not in cache:
            head = img(w[:-1])
            cache[w] = uea.tensor_mul(head, uea.element({(k,): c for k, c in images[w[-1]].items()}, order))
        return cache[w]

    out = DeformedTensor.zero(uea.basis, t.arity, order)
    for key, c in t.items():
        parts = [img(w) for w in key]
        acc: dict = {(): TruncSeries.const(uea.field(1), order)}
        for part in parts:
            new: dict = {}
            for k1, c1 in acc.items():
                for (w,), c2 in part.items():
                    _acc(new, k1 + (w,), c1 * c2)
            acc = new
        out = out + DeformedTensor._raw(uea.basis, t.arity, acc, order).scale(c)
    return out


@dataclass
class CoboundaryQuantization:
    """Quantization of (a, r) obtained by pushing the twist of D(g+) along pi."""

    bialgebra: ColorLieBialgebra
    kind: str
    push: Pushforward
    J: DeformedTensor
    hopf: QuasiHopfData
    associator: AssociatorSolution | None = None


def quantize_coboundary(b: ColorLieBialgebra, N: int = 2, associator: AssociatorSolution | None = None) -> CoboundaryQuantization:
    """Quantize a quasitriangular (a, r) on U(a) itself.

    The twist of D(g+) is pushed along pi, Omega_a = r + r21 and
    R = J21^-1 exp(lam Omega_a / 2) J; for triangular r, Omega_a = 0.
    """
    from .colorlie import classify_r

    kind = classify_r(b).kind
    push = pushforward_data(b)
    if N == 3 and associator is None:
        associator = solve_associator_order2()
    J_d = compute_J(push.double, N, associator.c if associator else None)
    uea = UEA(b.algebra)
    J = push_tensor(J_d, push.images, uea)
    r = uea.from_g_tensor(b.rmatrix, N)
    hopf = twist_hopf(J, uea, r + koszul_flip(r, 1), r)
    return CoboundaryQuantization(b, kind, push, J, hopf, associator)


def check_triangular(q: QuasiHopfData) -> list[Violation]:
    """R21 R = 1 (x) 1 mod lam^N."""
    u = q.uea
    res = u.tensor_mul(koszul_flip(q.R, 1), q.R) - DeformedTensor.unit(u.basis, 2, q.order)
    return [Violation("R21_R", (), res)] if res else []
