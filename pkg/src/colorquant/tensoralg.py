"""Sparse graded tensors with Koszul-signed slot permutations.

A :class:`DeformedTensor` of arity k stores terms ``key -> TruncSeries`` where
``key`` is a k-tuple of *words*; a word is a tuple of basis indices.  Tensors
over g itself use words of length one, while elements of U(g)^{(x)k} use PBW
words, so the same container (and the same sign bookkeeping) serves r, Omega,
CYB residuals, J and R.  The empty word is the unit of U(g).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

from .grading import CommutationFactor, GradingGroup
from .scalars import Scalar, TruncSeries

__all__ = [
    "DeformedTensor",
    "GradedBasis",
    "GradedMap",
    "adjoint_act",
    "apply_permutation_sigma",
    "koszul_compose_tensor_maps",
    "koszul_flip",
    "koszul_sign",
]

Word = tuple
Key = tuple


class GradedBasis:
    """Finite homogeneous basis of a color vector space.

    ``halves`` optionally tags each element ``"+"`` or ``"-"``; the Drinfeld
    double uses it to remember which elements came from g and which from g*.
    """

    def __init__(
        self,
        names: Sequence[str],
        degrees: Sequence,
        eps: CommutationFactor,
        halves: Sequence[str] | None = None,
    ):
        names = list(names)
        if len(set(names)) != len(names):
            raise ValueError("basis labels must be distinct")
        if len(degrees) != len(names):
            raise ValueError("one degree per basis label is required")
        for n in names:
            if not isinstance(n, str) or not n:
                raise ValueError(f"bad basis label {n!r}")
        self.names = tuple(names)
        self.eps = eps
        self.group: GradingGroup = eps.group
        self.degrees = tuple(self.group.element(d) for d in degrees)
        self.halves = tuple(halves) if halves is not None else None
        self._index = {n: i for i, n in enumerate(self.names)}
        self._wdeg: dict = {(): self.group.zero}

    @property
    def dim(self) -> int:
        return len(self.names)

    @property
    def field(self):
        return self.eps.field

    def index(self, name) -> int:
        if isinstance(name, int):
            return name
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown basis label {name!r}") from None

    def degree(self, i: int) -> tuple:
        return self.degrees[i]

    def word_degree(self, word: Word) -> tuple:
        d = self._wdeg.get(word)
        if d is None:
            d = self.group.sum(self.degrees[i] for i in word)
            self._wdeg[word] = d
        return d

    def key_degree(self, key: Key) -> tuple:
        return self.group.sum(self.word_degree(w) for w in key)

    def sign(self, a: tuple, b: tuple) -> Scalar:
        """eps(a, b) on group elements."""
        return self.eps(a, b)

    def self_sign(self, i: int) -> Scalar:
        d = self.degrees[i]
        return self.eps(d, d)

    def word_label(self, word: Word) -> str:
        return "*".join(self.names[i] for i in word) if word else "1"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GradedBasis)
            and other.names == self.names
            and other.degrees == self.degrees
            and other.eps == self.eps
        )

    def __hash__(self) -> int:
        return hash((self.names, self.degrees))

    def __repr__(self) -> str:
        return f"GradedBasis({list(self.names)})"


def koszul_sign(basis: GradedBasis, degrees: Sequence[tuple], positions: Sequence[int]) -> Scalar:
    """Sign picked up when factor i (of degree degrees[i]) moves to positions[i].

    Every pair that changes relative order contributes eps(d_i, d_j), with i
    the factor that was originally on the left.
    """
    s = basis.field(1)
    n = len(positions)
    for i in range(n):
        di = degrees[i]
        if not any(di):
            continue
        for j in range(i + 1, n):
            if positions[i] > positions[j]:
                dj = degrees[j]
                if any(dj):
                    s = s * basis.eps(di, dj)
    return s


class DeformedTensor:
    """Sparse element of (tensor power of U(g)) with coefficients in K[lam]/lam^N."""

    __slots__ = ("basis", "arity", "order", "terms")

    def __init__(self, basis: GradedBasis, arity: int, terms: Mapping | None = None, order: int = 1):
        self.basis = basis
        self.arity = arity
        self.order = order
        clean: dict = {}
        if terms:
            for k, v in terms.items():
                if len(k) != arity:
                    raise ValueError(f"key {k} does not have arity {arity}")
                s = v if isinstance(v, TruncSeries) else TruncSeries.const(basis.field(v), order)
                if s.order != order:
                    s = _reorder(s, order)
                if not s.is_zero():
                    clean[k] = s
        self.terms = clean

    # -- constructors ---------------------------------------------------------
    @classmethod
    def _raw(cls, basis, arity, terms, order) -> "DeformedTensor":
        t = cls.__new__(cls)
        t.basis, t.arity, t.order, t.terms = basis, arity, order, terms
        return t

    @classmethod
    def zero(cls, basis: GradedBasis, arity: int, order: int = 1) -> "DeformedTensor":
        return cls._raw(basis, arity, {}, order)

    @classmethod
    def unit(cls, basis: GradedBasis, arity: int, order: int = 1) -> "DeformedTensor":
        one = TruncSeries.const(basis.field(1), order)
        return cls._raw(basis, arity, {((),) * arity: one}, order)

    @classmethod
    def from_labels(cls, basis: GradedBasis, data: Mapping, order: int = 1) -> "DeformedTensor":
        """Build from ``{(label_or_word, ...): coeff}``.

        A slot given as a string is a single basis element, a list/tuple of
        labels is a word, and ``()`` or ``"1"`` is the unit.
        """
        terms: dict = {}
        arity = None
        for k, v in data.items():
            if isinstance(k, str):
                k = (k,)
            key = tuple(_parse_slot(basis, s) for s in k)
            arity = len(key) if arity is None else arity
            if len(key) != arity:
                raise ValueError("inconsistent arity")
            coeff = v if isinstance(v, TruncSeries) else TruncSeries.const(basis.field(v), order)
            terms[key] = terms.get(key, 0) + coeff if key in terms else coeff
        return cls(basis, arity or 0, terms, order)

    # -- basic protocol -------------------------------------------------------
    def __len__(self) -> int:
        return len(self.terms)

    def items(self):
        return self.terms.items()

    def keys(self):
        return self.terms.keys()

    def coefficient(self, key) -> TruncSeries:
        key = tuple(_parse_slot(self.basis, s) for s in key)
        return self.terms.get(key, TruncSeries.const(self.basis.field(0), self.order))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _check(self, other: "DeformedTensor") -> None:
        if other.arity != self.arity:
            raise ValueError(f"arity mismatch {self.arity} vs {other.arity}")
        if other.basis is not self.basis and other.basis != self.basis:
            raise ValueError("basis mismatch")

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)) and other == 0:
            return self.is_zero()
        if not isinstance(other, DeformedTensor):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None  # mutable-looking container; compare by value only

    def at_order(self, order: int) -> "DeformedTensor":
        """Truncate, or pad with zero higher coefficients (treats self as exact)."""
        if order == self.order:
            return self
        return DeformedTensor(self.basis, self.arity, {k: _reorder(v, order) for k, v in self.terms.items()}, order)

    def lam_coefficient(self, k: int) -> "DeformedTensor":
        """The coefficient of lam^k, as an order-1 tensor."""
        out = {}
        for key, v in self.terms.items():
            if k < v.order and v.c[k]:
                out[key] = TruncSeries((v.c[k],))
        return DeformedTensor._raw(self.basis, self.arity, out, 1)

    def __add__(self, other: "DeformedTensor") -> "DeformedTensor":
        self._check(other)
        order = min(self.order, other.order)
        out = {k: v.truncate(order) for k, v in self.terms.items()}
        for k, v in other.terms.items():
            cur = out.get(k)
            s = v.truncate(order) if cur is None else cur + v
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return DeformedTensor._raw(self.basis, self.arity, out, order)

    def __neg__(self) -> "DeformedTensor":
        return DeformedTensor._raw(self.basis, self.arity, {k: -v for k, v in self.terms.items()}, self.order)

    def __sub__(self, other: "DeformedTensor") -> "DeformedTensor":
        return self + (-other)

    def scale(self, s) -> "DeformedTensor":
        out = {}
        for k, v in self.terms.items():
            w = v * s
            if not w.is_zero():
                out[k] = w
        order = min(self.order, s.order) if isinstance(s, TruncSeries) else self.order
        return DeformedTensor._raw(self.basis, self.arity, {k: w.truncate(order) for k, w in out.items()}, order)

    __rmul__ = scale

    def __mul__(self, s) -> "DeformedTensor":
        if isinstance(s, DeformedTensor):
            raise TypeError("use UEA.tensor_mul for products in U(g)^(x)k")
        return self.scale(s)

    # -- grading ----------------------------------------------------------------
    def key_degree(self, key: Key) -> tuple:
        return self.basis.key_degree(key)

    def degrees(self) -> set:
        return {self.basis.key_degree(k) for k in self.terms}

    def is_homogeneous(self, degree=None) -> bool:
        ds = self.degrees()
        if degree is None:
            return len(ds) <= 1
        return ds <= {self.basis.group.element(degree)}

    # -- slot manipulation -------------------------------------------------------
    def permute(self, positions: Sequence[int]) -> "DeformedTensor":
        """Move factor i to slot positions[i] (0-based) with the Koszul sign."""
        if sorted(positions) != list(range(self.arity)):
            raise ValueError(f"{positions} is not a permutation of the slots")
        out: dict = {}
        b = self.basis
        for key, v in self.terms.items():
            degs = [b.word_degree(w) for w in key]
            s = koszul_sign(b, degs, positions)
            new = [None] * self.arity
            for i, p in enumerate(positions):
                new[p] = key[i]
            _acc(out, tuple(new), v if s == 1 else v * s)
        return DeformedTensor._raw(b, self.arity, out, self.order)

    def embed(self, positions: Sequence[int], arity: int) -> "DeformedTensor":
        """Place factor i in slot positions[i] of an arity-``arity`` tensor; units elsewhere."""
        if len(positions) != self.arity or len(set(positions)) != len(positions):
            raise ValueError("positions must be distinct, one per factor")
        rest = [p for p in range(arity) if p not in positions]
        padded = DeformedTensor._raw(
            self.basis, arity, {k + ((),) * len(rest): v for k, v in self.terms.items()}, self.order
        )
        return padded.permute(list(positions) + rest)

    def otimes(self, other: "DeformedTensor") -> "DeformedTensor":
        """Concatenate tensor factors (no sign: coefficients are scalars)."""
        order = min(self.order, other.order)
        out: dict = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                _acc(out, k1 + k2, v1 * v2)
        return DeformedTensor._raw(self.basis, self.arity + other.arity, out, order)

    def flip(self) -> "DeformedTensor":
        """Koszul flip tau of an arity-2 tensor."""
        return koszul_flip(self, 1)

    def map_coefficients(self, fn) -> "DeformedTensor":
        return DeformedTensor(self.basis, self.arity, {k: fn(v) for k, v in self.terms.items()}, self.order)

    # -- display / serialisation --------------------------------------------------
    def to_json(self) -> dict:
        b = self.basis
        terms = []
        for key in sorted(self.terms):
            idx = [b.names[w[0]] if len(w) == 1 else [b.names[i] for i in w] for w in key]
            terms.append({"indices": idx, "coeff": [str(x) for x in self.terms[key].c]})
        return {"arity": self.arity, "order": self.order, "terms": terms}

    @classmethod
    def from_json(cls, basis: GradedBasis, payload) -> "DeformedTensor":
        if isinstance(payload, dict):
            raw_terms = payload.get("terms", [])
            order = payload.get("order")
            arity = payload.get("arity")
        else:
            raw_terms, order, arity = payload, None, None
        if order is None:
            order = max((len(t["coeff"]) if isinstance(t["coeff"], list) else 1 for t in raw_terms), default=1)
        terms: dict = {}
        for t in raw_terms:
            key = tuple(_parse_slot(basis, s) for s in t["indices"])
            if arity is None:
                arity = len(key)
            c = t["coeff"]
            c = c if isinstance(c, list) else [c]
            coeffs = [basis.field(x) for x in c] + [basis.field(0)] * (order - len(c))
            s = TruncSeries(coeffs[:order])
            _acc(terms, key, s)
        return cls(basis, arity or 0, terms, order)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        b = self.basis
        parts = []
        for key in sorted(self.terms):
            v = self.terms[key]
            mono = "(x)".join(b.word_label(w) for w in key)
            nz = [(k, x) for k, x in enumerate(v.c) if x]
            if nz == [(0, 1)]:
                parts.append(mono)
            elif len(nz) == 1 and nz[0][0] == 0:
                parts.append(f"{nz[0][1]}*{mono}")
            else:
                parts.append(f"[{_series_str(v)}]*{mono}")
        return " + ".join(parts)


def _series_str(v: TruncSeries) -> str:
    out = []
    for k, x in enumerate(v.c):
        if x:
            out.append(str(x) if k == 0 else f"{x}*lam" + (f"^{k}" if k > 1 else ""))
    return " + ".join(out)


def _reorder(s: TruncSeries, order: int) -> TruncSeries:
    if order <= s.order:
        return s.truncate(order)
    zero = s.c[0] * 0
    return TruncSeries(s.c + (zero,) * (order - s.order))


def _acc(d: dict, key, v: TruncSeries) -> None:
    cur = d.get(key)
    if cur is None:
        if not v.is_zero():
            d[key] = v
        return
    s = cur + v
    if s.is_zero():
        del d[key]
    else:
        d[key] = s


def _parse_slot(basis: GradedBasis, s) -> Word:
    if isinstance(s, str):
        return () if s == "1" else (basis.index(s),)
    if isinstance(s, int):
        return (s,)
    return tuple(basis.index(x) for x in s)


# -- operations -------------------------------------------------------------------


def koszul_flip(t: DeformedTensor, i: int) -> DeformedTensor:
    """Swap slots i and i+1 (1-based), multiplying by eps of the swapped degrees."""
    if not 1 <= i < t.arity:
        raise IndexError(f"flip position {i} out of range for arity {t.arity}")
    pos = list(range(t.arity))
    pos[i - 1], pos[i] = i, i - 1
    return t.permute(pos)


def apply_permutation_sigma(t: DeformedTensor) -> DeformedTensor:
    """a(x)b(x)c -> eps(a, b+c) b(x)c(x)a."""
    if t.arity != 3:
        raise ValueError("sigma acts on arity-3 tensors")
    return t.permute([2, 0, 1])


class GradedMap:
    """Homogeneous linear map between spans of graded bases.

    ``matrix`` maps ``(target_index, source_index)`` to a coefficient.
    """

    def __init__(self, source: GradedBasis, target: GradedBasis, matrix: Mapping, degree=None, order: int = 1):
        self.source = source
        self.target = target
        self.order = order
        self.degree = target.group.element(degree) if degree is not None else target.group.zero
        self.matrix: dict = {}
        for (ti, si), c in matrix.items():
            ti, si = target.index(ti), source.index(si)
            s = c if isinstance(c, TruncSeries) else TruncSeries.const(target.field(c), order)
            if s.is_zero():
                continue
            expect = target.group.add(source.degree(si), self.degree)
            if target.degree(ti) != expect:
                raise ValueError(
                    f"entry ({target.names[ti]}, {source.names[si]}) is inconsistent with map degree {self.degree}"
                )
            self.matrix[(ti, si)] = s
        self._cols: dict = {}
        for (ti, si), s in self.matrix.items():
            self._cols.setdefault(si, []).append((ti, s))

    @classmethod
    def identity(cls, basis: GradedBasis, order: int = 1) -> "GradedMap":
        return cls(basis, basis, {(i, i): 1 for i in range(basis.dim)}, order=order)

    def column(self, si: int):
        return self._cols.get(si, [])


def koszul_compose_tensor_maps(f: GradedMap, g: GradedMap, t: DeformedTensor) -> DeformedTensor:
    """(f (x) g)(x (x) y) = eps(deg g, deg x) f(x) (x) g(y) on an arity-2 tensor over g."""
    if t.arity != 2:
        raise ValueError("expected an arity-2 tensor")
    if f.source != t.basis or g.source != t.basis:
        raise ValueError("basis mismatch between maps and tensor")
    target = f.target
    if g.target != target:
        raise ValueError("maps must share a target basis")
    out: dict = {}
    order = min(t.order, f.order, g.order)
    for (wx, wy), c in t.terms.items():
        if len(wx) != 1 or len(wy) != 1:
            raise ValueError("tensor slots must hold basis elements")
        x, y = wx[0], wy[0]
        sign = t.basis.eps(g.degree, t.basis.degree(x))
        for tx, a in f.column(x):
            for ty, b in g.column(y):
                _acc(out, ((tx,), (ty,)), (c * a * b * sign).truncate(order))
    return DeformedTensor._raw(target, 2, out, order)


def adjoint_act(x: int, t: DeformedTensor, bracket: Mapping) -> DeformedTensor:
    """Leibniz action x.(y1 (x) ... (x) yk) with Koszul signs.

    ``bracket[(i, j)]`` is a dict ``{k: c}`` giving [x_i, x_j]; missing pairs
    are zero.  ``x`` is a basis index or label.
    """
    b = t.basis
    x = b.index(x)
    dx = b.degree(x)
    out: dict = {}
    for key, c in t.terms.items():
        prefix = b.group.zero
        for pos, w in enumerate(key):
            if len(w) != 1:
                raise ValueError("adjoint_act expects slots holding basis elements")
            y = w[0]
            br = bracket.get((x, y))
            if br:
                s = b.eps(dx, prefix)
                for k, ck in br.items():
                    new = key[:pos] + ((k,),) + key[pos + 1 :]
                    _acc(out, new, c * (ck * s))
            prefix = b.group.add(prefix, b.degree(y))
    return DeformedTensor._raw(b, t.arity, out, t.order)


def tensor_from_vectors(basis: GradedBasis, vectors: Iterable[Mapping], order: int = 1) -> DeformedTensor:
    """Pure tensor v1 (x) ... (x) vk from coefficient dicts ``{index: scalar}`` (no signs)."""
    vectors = list(vectors)
    terms: dict = {}
    for combo in product(*[list(v.items()) for v in vectors]):
        key = tuple((i,) for i, _ in combo)
        c = basis.field(1)
        for _, a in combo:
            c = c * a
        _acc(terms, key, TruncSeries.const(c, order))
    return DeformedTensor._raw(basis, len(vectors), terms, order)
