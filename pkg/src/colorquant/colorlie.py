"""Color Lie algebras and bialgebras given by structure constants.

Vectors of g are plain dicts ``{basis_index: scalar}``; tensors over g are
:class:`DeformedTensor` objects whose slots hold single basis elements and
whose coefficients are constant (order-1) series.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .grading import CommutationFactor, validate_commutation_factor
from .report import Violation
from .scalars import Scalar, TruncSeries
from .tensoralg import DeformedTensor, GradedBasis, adjoint_act, apply_permutation_sigma, koszul_flip

__all__ = [
    "ColorLieAlgebra",
    "ColorLieBialgebra",
    "ManinPairing",
    "RClassification",
    "check_color_bialgebra",
    "check_color_lie",
    "check_manin",
    "classify_r",
    "cyb",
    "double",
    "natural_pairing",
    "scheunert_twist",
    "standard_r",
]

DUAL_PREFIX = "α_"


def _clean(vec: Mapping) -> dict:
    return {k: v for k, v in vec.items() if v != 0}


def _vec_add(out: dict, vec: Mapping, scale=1) -> None:
    for k, v in vec.items():
        s = out.get(k, 0) + v * scale
        if s == 0:
            out.pop(k, None)
        else:
            out[k] = s


class ColorLieAlgebra:
    """Bracket [x_i, x_j] = sum_k table[(i, j)][k] x_k over a graded basis.

    Pairs given only in one order are completed by eps-antisymmetry
    [x_j, x_i] = -eps(x_j, x_i) [x_i, x_j]; pairs given in both orders are
    kept verbatim so the checker can report inconsistencies.
    """

    def __init__(self, basis: GradedBasis, bracket: Mapping | None = None, complete: bool = True):
        self.basis = basis
        table: dict = {}
        for (i, j), terms in (bracket or {}).items():
            i, j = basis.index(i), basis.index(j)
            vec = _clean({basis.index(k): basis.field(c) for k, c in dict(terms).items()})
            if (i, j) in table:
                raise ValueError(f"bracket pair ({basis.names[i]}, {basis.names[j]}) given twice")
            table[(i, j)] = vec
        if complete:
            for (i, j), vec in list(table.items()):
                if (j, i) not in table:
                    s = -basis.eps(basis.degree(j), basis.degree(i))
                    table[(j, i)] = {k: c * s for k, c in vec.items()}
        self.table = {k: v for k, v in table.items() if v}

    @property
    def field(self):
        return self.basis.field

    @property
    def dim(self) -> int:
        return self.basis.dim

    def bracket_basis(self, i: int, j: int) -> dict:
        return self.table.get((i, j), {})

    def bracket(self, u: Mapping, v: Mapping) -> dict:
        out: dict = {}
        for i, a in u.items():
            for j, b in v.items():
                br = self.table.get((i, j))
                if br:
                    _vec_add(out, br, a * b)
        return out

    def eps_idx(self, i: int, j: int) -> Scalar:
        return self.basis.eps(self.basis.degree(i), self.basis.degree(j))

    def vector(self, vec: Mapping) -> DeformedTensor:
        """Vector as an arity-1 tensor (used for residual reporting)."""
        return DeformedTensor(self.basis, 1, {((k,),): c for k, c in vec.items()}, 1)

    def act(self, x, t: DeformedTensor) -> DeformedTensor:
        """Adjoint action of a basis element on a tensor over g."""
        return adjoint_act(x, t, self.table)

    def structure_constants(self) -> dict:
        """``{(name_i, name_j): {name_k: scalar}}`` for every nonzero bracket."""
        n = self.basis.names
        return {(n[i], n[j]): {n[k]: c for k, c in sorted(v.items())} for (i, j), v in sorted(self.table.items())}

    def __eq__(self, other) -> bool:
        return isinstance(other, ColorLieAlgebra) and other.basis == self.basis and other.table == self.table

    def __repr__(self) -> str:
        return f"ColorLieAlgebra({list(self.basis.names)})"


def check_color_lie(alg: ColorLieAlgebra) -> list[Violation]:
    """Report degree-0, eps-antisymmetry and color Jacobi violations.

    Jacobi is checked in the form
    eps(c,a)[a,[b,c]] + eps(a,b)[b,[c,a]] + eps(b,c)[c,[a,b]] = 0
    on every index triple i <= j <= k.
    """
    b = alg.basis
    names = b.names
    out: list[Violation] = []
    for i, j in sorted(alg.table):
        for k in sorted(alg.table[(i, j)]):
            if b.group.add(b.degree(i), b.degree(j)) != b.degree(k):
                out.append(Violation("degree", (names[i], names[j], names[k]), alg.table[(i, j)][k]))
    n = b.dim
    for i in range(n):
        for j in range(i, n):
            res = dict(alg.bracket_basis(i, j))
            _vec_add(res, alg.bracket_basis(j, i), alg.eps_idx(i, j))
            if res:
                out.append(Violation("antisymmetry", (names[i], names[j]), alg.vector(res)))
    for i in range(n):
        for j in range(i, n):
            for k in range(j, n):
                res = jacobiator(alg, i, j, k)
                if res:
                    out.append(Violation("jacobi", (names[i], names[j], names[k]), alg.vector(res)))
    return out


def jacobiator(alg: ColorLieAlgebra, a: int, b: int, c: int) -> dict:
    e = alg.eps_idx
    out: dict = {}
    for x, y, z, s in ((a, b, c, e(c, a)), (b, c, a, e(a, b)), (c, a, b, e(b, c))):
        _vec_add(out, alg.bracket({x: 1}, alg.bracket_basis(y, z)), s)
    return out


# -- bialgebras ---------------------------------------------------------------------


class ColorLieBialgebra:
    """Color Lie algebra with cobracket delta(x_i) = sum d[i][(j, k)] x_j (x) x_k.

    ``rmatrix`` is an optional arity-2 tensor; ``coboundary`` declares that the
    cobracket is meant to equal x.r, which :func:`classify_r` then verifies.
    """

    def __init__(
        self,
        algebra: ColorLieAlgebra,
        cobracket: Mapping | None = None,
        rmatrix: DeformedTensor | None = None,
        coboundary: bool = False,
    ):
        self.algebra = algebra
        b = algebra.basis
        self.cobracket: dict = {}
        for i, terms in (cobracket or {}).items():
            i = b.index(i)
            vec = {}
            for (j, k), c in dict(terms).items():
                c = b.field(c)
                if c != 0:
                    vec[(b.index(j), b.index(k))] = c
            if vec:
                self.cobracket[i] = vec
        if rmatrix is not None and rmatrix.arity != 2:
            raise ValueError("r-matrix must have arity 2")
        self.rmatrix = rmatrix
        self.coboundary = coboundary

    @classmethod
    def from_r(cls, algebra: ColorLieAlgebra, r: DeformedTensor) -> "ColorLieBialgebra":
        """Coboundary bialgebra delta(x) = x.r."""
        cob = {}
        for i in range(algebra.dim):
            t = algebra.act(i, r)
            cob[i] = {(k[0][0], k[1][0]): v.c[0] for k, v in t.items()}
        return cls(algebra, cob, r, coboundary=True)

    @property
    def basis(self) -> GradedBasis:
        return self.algebra.basis

    def delta(self, i: int) -> DeformedTensor:
        terms = {((j,), (k,)): c for (j, k), c in self.cobracket.get(i, {}).items()}
        return DeformedTensor(self.basis, 2, terms, 1)

    def delta_vec(self, vec: Mapping) -> DeformedTensor:
        out = DeformedTensor.zero(self.basis, 2)
        for i, c in vec.items():
            out = out + self.delta(i).scale(c)
        return out


def _apply_delta_first(b: ColorLieBialgebra, t: DeformedTensor) -> DeformedTensor:
    """(delta (x) id) on an arity-2 tensor; delta has degree 0 so no sign."""
    terms: dict = {}
    for (u, v), c in t.items():
        for (j, k), d in b.cobracket.get(u[0], {}).items():
            key = ((j,), (k,), v)
            s = terms.get(key, 0) + c.c[0] * d
            terms[key] = s
    return DeformedTensor(b.basis, 3, terms, 1)


def check_color_bialgebra(b: ColorLieBialgebra) -> list[Violation]:
    """Report cobracket degree, antisymmetry, co-Jacobi and cocycle violations."""
    basis = b.basis
    names = basis.names
    alg = b.algebra
    out: list[Violation] = []
    for i in sorted(b.cobracket):
        for (j, k), c in sorted(b.cobracket[i].items()):
            if basis.group.add(basis.degree(j), basis.degree(k)) != basis.degree(i):
                out.append(Violation("cobracket_degree", (names[i], names[j], names[k]), c))
    for i in range(basis.dim):
        d = b.delta(i)
        res = d + koszul_flip(d, 1)
        if res:
            out.append(Violation("cobracket_antisymmetry", (names[i],), res))
        dd = _apply_delta_first(b, d)
        s1 = apply_permutation_sigma(dd)
        s2 = apply_permutation_sigma(s1)
        res = dd + s1 + s2
        if res:
            out.append(Violation("co_jacobi", (names[i],), res))
    for i in range(basis.dim):
        for j in range(basis.dim):
            lhs = b.delta_vec(alg.bracket_basis(i, j))
            rhs = alg.act(i, b.delta(j)) - alg.act(j, b.delta(i)).scale(alg.eps_idx(i, j))
            res = lhs - rhs
            if res:
                out.append(Violation("cocycle", (names[i], names[j]), res))
    return out


# -- classical Yang-Baxter ---------------------------------------------------------


def cyb(r: DeformedTensor, alg: ColorLieAlgebra) -> DeformedTensor:
    """[r12, r13] + [r12, r23] + [r13, r23] for a degree-0 r.

    For homogeneous degree-0 terms a(x)b and c(x)d the three commutators
    collapse to eps(b,c)[a,c](x)b(x)d + a(x)[b,c](x)d + eps(b,c) a(x)c(x)[b,d].
    """
    if r.arity != 2:
        raise ValueError("r must have arity 2")
    if not r.is_homogeneous(alg.basis.group.zero):
        raise ValueError("r must be homogeneous of degree 0")
    items = [(k[0][0], k[1][0], v) for k, v in r.items()]
    order = r.order
    terms: dict = {}

    def acc(key, val):
        cur = terms.get(key)
        terms[key] = val if cur is None else cur + val

    for a, bb, s in items:
        for c, d, t in items:
            st = s * t
            e = alg.eps_idx(bb, c)
            for k, x in alg.bracket_basis(a, c).items():
                acc(((k,), (bb,), (d,)), st * (x * e))
            for k, x in alg.bracket_basis(bb, c).items():
                acc(((a,), (k,), (d,)), st * x)
            for k, x in alg.bracket_basis(bb, d).items():
                acc(((a,), (c,), (k,)), st * (x * e))
    return DeformedTensor(alg.basis, 3, terms, order)


@dataclass
class RClassification:
    kind: str  # "not_qt", "quasitriangular" or "triangular"
    violations: list[Violation] = field(default_factory=list)


def classify_r(b: ColorLieBialgebra) -> RClassification:
    """Classify the bialgebra's r-matrix; coboundary bialgebras also get delta = x.r checked."""
    r = b.rmatrix
    if r is None:
        raise ValueError("bialgebra has no r-matrix")
    alg = b.algebra
    names = alg.basis.names
    out: list[Violation] = []
    qt = True
    if not r.is_homogeneous(alg.basis.group.zero):
        out.append(Violation("r_degree", (), r, "r is not homogeneous of degree 0"))
        qt = False
    else:
        res = cyb(r, alg)
        if res:
            out.append(Violation("cyb", (), res))
            qt = False
    omega = r + r.flip()
    for i in range(alg.dim):
        res = alg.act(i, omega)
        if res:
            out.append(Violation("omega_invariance", (names[i],), res))
            qt = False
    if b.coboundary:
        for i in range(alg.dim):
            res = b.delta(i) - alg.act(i, r)
            if res:
                out.append(Violation("coboundary", (names[i],), res))
    if not qt:
        return RClassification("not_qt", out)
    return RClassification("triangular" if omega.is_zero() else "quasitriangular", out)


# -- Drinfeld double -----------------------------------------------------------------


@dataclass
class DoubleData:
    """Extra data of D(g): the canonical r, Casimir Omega and index maps."""

    r: DeformedTensor
    omega: DeformedTensor
    g_indices: tuple
    dual_indices: tuple


def double(b: ColorLieBialgebra) -> ColorLieBialgebra:
    """Drinfeld double g + g* as a coboundary bialgebra with r = sum x_i (x) alpha^i.

    The result carries ``.double_data`` (:class:`DoubleData`).  Dual elements
    are labelled ``"α_" + name`` (primed on a clash) and have degree -deg x_i.  The mixed brackets
    come from invariance of the natural pairing; nothing is trusted, so a
    non-bialgebra input shows up as Jacobi failures of the result.
    """
    g = b.algebra
    gb = g.basis
    n = gb.dim
    group = gb.group
    names = list(gb.names)
    for x in gb.names:
        label = DUAL_PREFIX + x
        while label in names or label in gb.names:
            label += "'"
        names.append(label)
    degrees = list(gb.degrees) + [group.neg(d) for d in gb.degrees]
    basis = GradedBasis(names, degrees, gb.eps, halves=["+"] * n + ["-"] * n)
    eps = lambda i, j: basis.eps(basis.degree(i), basis.degree(j))  # noqa: E731
    # dual index of x_i is n + i

    table: dict = {}

    def put(i, j, k, c):
        if c != 0:
            vec = table.setdefault((i, j), {})
            s = vec.get(k, 0) + c
            if s == 0:
                vec.pop(k)
            else:
                vec[k] = s

    for (i, j), vec in g.table.items():
        for k, c in vec.items():
            put(i, j, k, c)
    # [alpha^l, alpha^k] = sum_m d^m_{lk} eps(alpha^k, x_l) alpha^m
    for m, vec in b.cobracket.items():
        for (l, k), d in vec.items():
            put(n + l, n + k, n + m, d * eps(n + k, l))

    def dual_bracket(l, k):
        return table.get((n + l, n + k), {})

    for j in range(n):
        for l in range(n):
            s = eps(j, n + l)
            # g* part: -eps(x_j, alpha^l) C_{jm}^l alpha^m
            for m in range(n):
                c = g.bracket_basis(j, m).get(l, 0)
                if c:
                    put(j, n + l, n + m, -s * c)
            # g part: coefficient of x_m is B^{lm}_j eps(x_j, alpha^j) / eps(x_m, alpha^m)
            for m in range(n):
                c = dual_bracket(l, m).get(n + j, 0)
                if c:
                    put(j, n + l, m, c * eps(j, n + j) / eps(m, n + m))
    for j in range(n):
        for l in range(n):
            vec = table.get((j, n + l))
            if vec:
                s = -eps(n + l, j)
                table[(n + l, j)] = {k: c * s for k, c in vec.items()}
    alg = ColorLieAlgebra(basis, {}, complete=False)
    alg.table = {k: v for k, v in table.items() if v}

    r = DeformedTensor(basis, 2, {((i,), (n + i,)): 1 for i in range(n)}, 1)
    out = ColorLieBialgebra.from_r(alg, r)
    out.double_data = DoubleData(r, r + r.flip(), tuple(range(n)), tuple(range(n, 2 * n)))
    out.source = b
    return out


# -- Manin triples -------------------------------------------------------------------


class ManinPairing:
    """Bilinear form given by its Gram matrix ``{(i, j): scalar}``."""

    def __init__(self, basis: GradedBasis, gram: Mapping):
        self.basis = basis
        self.gram = {(basis.index(i), basis.index(j)): basis.field(c) for (i, j), c in gram.items() if c != 0}

    def __call__(self, u: Mapping, v: Mapping) -> Scalar:
        out = self.basis.field(0)
        for i, a in u.items():
            for j, c in v.items():
                g = self.gram.get((i, j))
                if g is not None:
                    out = out + a * c * g
        return out


def natural_pairing(d: ColorLieBialgebra) -> ManinPairing:
    """(alpha^i, x_j) = delta_ij and its eps-symmetric partner on a double."""
    data = d.double_data
    basis = d.basis
    gram = {}
    for i, di in zip(data.g_indices, data.dual_indices):
        gram[(di, i)] = 1
        gram[(i, di)] = basis.eps(basis.degree(i), basis.degree(di))
    return ManinPairing(basis, gram)


def _rank(rows: list[list]) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][col]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col] / p
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def check_manin(alg: ColorLieAlgebra, pairing: ManinPairing, split: tuple[Sequence, Sequence]) -> list[Violation]:
    """Check that (alg, pairing, split) is a color Manin triple."""
    b = alg.basis
    names = b.names
    n = b.dim
    plus = [b.index(x) for x in split[0]]
    minus = [b.index(x) for x in split[1]]
    out: list[Violation] = []
    if sorted(plus + minus) != list(range(n)):
        out.append(Violation("partition", (), None, "p+ and p- must partition the basis"))
        return out
    e = alg.eps_idx
    for i in range(n):
        for j in range(i, n):
            res = pairing({i: 1}, {j: 1}) - e(i, j) * pairing({j: 1}, {i: 1})
            if res != 0:
                out.append(Violation("symmetry", (names[i], names[j]), res))
    gram = [[pairing({i: 1}, {j: 1}) for j in range(n)] for i in range(n)]
    rank = _rank(gram)
    if rank < n:
        out.append(Violation("nondegeneracy", (), rank, f"rank {rank} < {n}"))
    for i in range(n):
        for j in range(n):
            bij = alg.bracket_basis(i, j)
            for k in range(n):
                res = pairing(bij, {k: 1}) + e(i, j) * pairing({j: 1}, alg.bracket_basis(i, k))
                if res != 0:
                    out.append(Violation("invariance", (names[i], names[j], names[k]), res))
    for label, half in (("p+", plus), ("p-", minus)):
        hs = set(half)
        for i in half:
            for j in half:
                if pairing({i: 1}, {j: 1}) != 0:
                    out.append(Violation("isotropy", (label, names[i], names[j]), pairing({i: 1}, {j: 1})))
                stray = {k: c for k, c in alg.bracket_basis(i, j).items() if k not in hs}
                if stray:
                    out.append(Violation("closure", (label, names[i], names[j]), alg.vector(stray)))
    return out


# -- twists and standard r-matrices ----------------------------------------------------


def scheunert_twist(alg: ColorLieAlgebra, sigma: CommutationFactor) -> ColorLieAlgebra:
    """[x, y]' = sigma(x, y)[x, y], with commutation factor sigma(a,b)/sigma(b,a) * eps."""
    if sigma.group != alg.basis.group:
        raise ValueError("sigma lives on a different grading group")
    bad = validate_commutation_factor(sigma, antisymmetric=False)
    if bad:
        raise ValueError(f"sigma is not a bicharacter on this group: {bad[0].note} at {bad[0].location}")
    b = alg.basis
    new_eps = sigma.antisymmetrized() * b.eps
    nb = GradedBasis(b.names, b.degrees, new_eps, b.halves)
    table = {}
    for (i, j), vec in alg.table.items():
        s = sigma(b.degree(i), b.degree(j))
        table[(i, j)] = {k: c * s for k, c in vec.items()}
    out = ColorLieAlgebra(nb, {}, complete=False)
    out.table = table
    return out


def standard_r(
    alg: ColorLieAlgebra,
    cartan: Iterable[str],
    roots: Iterable[tuple[str, str]],
    coefficients: Mapping[tuple[str, str], object],
) -> DeformedTensor:
    """sum c_i h_i (x) h_i + sum c_a e_a (x) f_a with caller-supplied coefficients."""
    b = alg.basis
    terms: dict = {}
    pairs = [(h, h) for h in cartan] + [tuple(p) for p in roots]
    for left, right in pairs:
        if (left, right) not in coefficients:
            raise ValueError(f"no coefficient supplied for {left} (x) {right}")
        key = ((b.index(left),), (b.index(right),))
        terms[key] = terms.get(key, 0) + b.field(coefficients[(left, right)])
    return DeformedTensor(b, 2, terms, 1)
