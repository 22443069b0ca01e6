"""Color universal enveloping algebras, their Hopf structure and Verma modules.

Elements of U(g)^(x)k are arity-k :class:`DeformedTensor` objects whose slots
hold PBW-normal words.  Products of such tensors follow the Koszul rule

    (a1 (x) ... (x) ak)(b1 (x) ... (x) bk) = prod_{i>j} eps(a_i, b_j) a1 b1 (x) ... (x) ak bk.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterator, Mapping, Sequence

from . import kernel
from ._straighten import _acc as _scalar_acc
from .colorlie import ColorLieAlgebra, ColorLieBialgebra
from .report import Violation
from .scalars import TruncSeries
from .tensoralg import DeformedTensor, GradedBasis, _acc, koszul_flip

__all__ = [
    "HopfData",
    "UEA",
    "VermaPair",
    "check_hopf",
    "coproduct0",
    "i_pm",
    "pbw_normalize",
    "phi_inverse",
    "phi_iso",
    "uea_mul",
    "verma_act",
]


class UEA:
    """U(g) with PBW normal forms for a chosen total order of the basis.

    ``order`` lists basis indices from smallest to largest (default:
    declaration order).  Normal words list letters in that order and never
    repeat an odd letter.
    """

    def __init__(self, alg: ColorLieAlgebra, order: Sequence[int] | None = None, straightener=None):
        self.alg = alg
        self.basis: GradedBasis = alg.basis
        b = self.basis
        n = b.dim
        order = list(order) if order is not None else list(range(n))
        if sorted(order) != list(range(n)):
            raise ValueError("order must be a permutation of the basis indices")
        self.order = tuple(order)
        self.rank = [0] * n
        for p, i in enumerate(order):
            self.rank[i] = p
        eps = [[b.eps(b.degree(i), b.degree(j)) for j in range(n)] for i in range(n)]
        odd = []
        for i in range(n):
            if eps[i][i] not in (1, -1):
                raise ValueError(f"eps(d, d) = {eps[i][i]} for {b.names[i]}; a commutation factor needs +-1")
            odd.append(eps[i][i] == -1)
        self.odd = odd
        self.eps_table = eps
        bracket = {k: tuple(sorted(v.items())) for k, v in alg.table.items()}
        cls = straightener or kernel.Straightener
        self.kernel = cls(self.rank, eps, bracket, odd, b.field(1))
        self._mul_cache: dict = {}
        self._cop_cache: dict = {}
        self._s0_cache: dict = {}

    # -- words -----------------------------------------------------------------
    @property
    def field(self):
        return self.basis.field

    def is_normal(self, word) -> bool:
        r = self.rank
        for a, b in zip(word, word[1:]):
            if r[a] > r[b] or (a == b and self.odd[a]):
                return False
        return True

    def normalize(self, word) -> dict:
        word = tuple(self.basis.index(x) for x in word)
        return self.kernel.normalize(word)

    def mul_words(self, a: tuple, b: tuple) -> dict:
        """Normal form of a*b for normal words a, b."""
        key = (a, b)
        hit = self._mul_cache.get(key)
        if hit is None:
            hit = self.kernel.mul(a, b)
            self._mul_cache[key] = hit
        return hit

    def normal_words(self, max_len: int, letters: Sequence[int] | None = None) -> Iterator[tuple]:
        """All normal words of length <= max_len, by length then order."""
        letters = sorted(letters if letters is not None else range(self.basis.dim), key=lambda i: self.rank[i])
        yield ()
        for length in range(1, max_len + 1):
            yield from self._words_of_length(letters, length, 0)

    def _words_of_length(self, letters, length, start) -> Iterator[tuple]:
        if length == 0:
            yield ()
            return
        for p in range(start, len(letters)):
            x = letters[p]
            nxt = p + 1 if self.odd[x] else p
            for rest in self._words_of_length(letters, length - 1, nxt):
                yield (x,) + rest

    def word_degree(self, w: tuple) -> tuple:
        return self.basis.word_degree(w)

    # -- elements ----------------------------------------------------------------
    def element(self, data: Mapping, order: int = 1) -> DeformedTensor:
        """Arity-1 element from ``{word: coeff}``, normalising every word."""
        out: dict = {}
        for w, c in data.items():
            if isinstance(w, str):
                w = (w,)
            c = c if isinstance(c, TruncSeries) else TruncSeries.const(self.field(c), order)
            for u, d in self.normalize(w).items():
                _acc(out, (u,), c * d)
        return DeformedTensor(self.basis, 1, out, order)

    def letter(self, x, order: int = 1) -> DeformedTensor:
        return self.element({(self.basis.index(x),): 1}, order)

    def one(self, arity: int = 1, order: int = 1) -> DeformedTensor:
        return DeformedTensor.unit(self.basis, arity, order)

    def from_g_tensor(self, t: DeformedTensor, order: int | None = None) -> DeformedTensor:
        """View a tensor over g (length-1 slots) as an element of U(g)^(x)k."""
        order = order or t.order
        return t.at_order(order) if t.basis == self.basis else DeformedTensor(self.basis, t.arity, dict(t.items()), order)

    def key_sign(self, ka: tuple, kb: tuple):
        """prod_{i>j} eps(a_i, b_j) for the Koszul product of two keys."""
        wd = self.basis.word_degree
        add = self.basis.group.add
        s = 1
        prefix = self.basis.group.zero
        for i in range(1, len(ka)):
            prefix = add(prefix, wd(kb[i - 1]))
            if ka[i] and any(prefix):
                e = self.basis.eps(wd(ka[i]), prefix)
                if e != 1:
                    s = s * e
        return s

    def tensor_mul(self, a: DeformedTensor, b: DeformedTensor) -> DeformedTensor:
        """Koszul-signed product in U(g)^(x)k."""
        if a.arity != b.arity:
            raise ValueError("arity mismatch")
        order = min(a.order, b.order)
        out: dict = {}
        k = a.arity
        for ka, ca in a.items():
            for kb, cb in b.items():
                s = self.key_sign(ka, kb)
                c = ca * cb
                if s != 1:
                    c = c * s
                if c.is_zero():
                    continue
                partial = {(): c}
                for i in range(k):
                    prod = self.mul_words(ka[i], kb[i])
                    nxt = {}
                    for key, v in partial.items():
                        for w, d in prod.items():
                            nxt[key + (w,)] = v * d if d != 1 else v
                    partial = nxt
                for key, v in partial.items():
                    _acc(out, key, v)
        return DeformedTensor._raw(self.basis, k, out, order)

    mul = tensor_mul

    def power(self, t: DeformedTensor, n: int) -> DeformedTensor:
        out = self.one(t.arity, t.order)
        for _ in range(n):
            out = self.tensor_mul(out, t)
        return out

    def exp(self, t: DeformedTensor) -> DeformedTensor:
        """exp(t) for t divisible by lam, truncated at the tensor's order."""
        if any(v.c[0] for v in t.terms.values()):
            raise ValueError("exp needs a tensor with zero lam^0 part")
        out = self.one(t.arity, t.order)
        term = self.one(t.arity, t.order)
        for k in range(1, t.order):
            term = self.tensor_mul(term, t).scale(self.field(1) / k)
            out = out + term
        return out

    def inverse(self, t: DeformedTensor) -> DeformedTensor:
        """Inverse of 1 + X with X divisible by lam."""
        x = t - self.one(t.arity, t.order)
        if any(v.c[0] for v in x.terms.values()):
            raise ValueError("only elements with lam^0 part equal to 1 are inverted here")
        out = self.one(t.arity, t.order)
        term = self.one(t.arity, t.order)
        for _ in range(1, t.order):
            term = -self.tensor_mul(term, x)
            out = out + term
        return out

    def commutator(self, a: DeformedTensor, b: DeformedTensor) -> DeformedTensor:
        """Plain commutator ab - ba (both sides degree 0 in all uses)."""
        return self.tensor_mul(a, b) - self.tensor_mul(b, a)

    # -- Hopf structure ------------------------------------------------------------
    def coproduct_word(self, w: tuple) -> dict:
        """Delta0 of a normal word as ``{(w1, w2): scalar}``.

        Delta0(x1...xk) = sum over subsets S of sign * x_S (x) x_rest, the sign
        collecting eps(x_i, x_j) for every i not in S preceding j in S.
        """
        hit = self._cop_cache.get(w)
        if hit is not None:
            return hit
        b = self.basis
        degs = [b.degree(x) for x in w]
        one = self.field(1)
        out: dict = {}
        k = len(w)
        for size in range(k + 1):
            for sub in combinations(range(k), size):
                chosen = set(sub)
                s = one
                for j in sub:
                    for i in range(j):
                        if i not in chosen:
                            s = s * b.eps(degs[i], degs[j])
                left = tuple(w[i] for i in sub)
                right = tuple(w[i] for i in range(k) if i not in chosen)
                key = (left, right)
                out[key] = out.get(key, 0) + s
        out = {k2: v for k2, v in out.items() if v != 0}
        self._cop_cache[w] = out
        return out

    def counit_word(self, w: tuple):
        return self.field(1) if not w else self.field(0)

    def antipode0_word(self, w: tuple) -> dict:
        """S0(x1...xk) = (-1)^k prod_{i<j} eps(x_i, x_j) xk...x1, normalised."""
        hit = self._s0_cache.get(w)
        if hit is not None:
            return hit
        b = self.basis
        s = self.field(-1) ** len(w)
        for i in range(len(w)):
            for j in range(i + 1, len(w)):
                s = s * b.eps(b.degree(w[i]), b.degree(w[j]))
        out = {u: c * s for u, c in self.kernel.normalize(tuple(reversed(w))).items()}
        self._s0_cache[w] = out
        return out

    def apply_slot(self, t: DeformedTensor, slot: int, fn: Callable[[tuple], DeformedTensor]) -> DeformedTensor:
        """Apply a degree-0 map U -> U^(x)m to slot ``slot`` (0-based) of t."""
        out: dict = {}
        arity = None
        for key, c in t.items():
            img = fn(key[slot])
            arity = t.arity - 1 + img.arity
            for ik, ic in img.items():
                _acc(out, key[:slot] + ik + key[slot + 1 :], c * ic)
        if arity is None:
            probe = fn(())
            arity = t.arity - 1 + probe.arity
        return DeformedTensor._raw(self.basis, arity, out, t.order)

    def delta0_map(self, order: int) -> Callable[[tuple], DeformedTensor]:
        def fn(w):
            return DeformedTensor(self.basis, 2, self.coproduct_word(w), order)

        return fn

    def counit_map(self, order: int) -> Callable[[tuple], DeformedTensor]:
        def fn(w):
            return DeformedTensor(self.basis, 0, {(): 1} if not w else {}, order)

        return fn

    def antipode0_map(self, order: int) -> Callable[[tuple], DeformedTensor]:
        def fn(w):
            return DeformedTensor(self.basis, 1, {(u,): c for u, c in self.antipode0_word(w).items()}, order)

        return fn

    def multiply_slots(self, t: DeformedTensor, i: int) -> DeformedTensor:
        """mu on adjacent slots i, i+1 (0-based); no sign since they are adjacent."""
        out: dict = {}
        for key, c in t.items():
            for w, d in self.mul_words(key[i], key[i + 1]).items():
                _acc(out, key[:i] + (w,) + key[i + 2 :], c * d)
        return DeformedTensor._raw(self.basis, t.arity - 1, out, t.order)

    def coproduct0(self, a: DeformedTensor) -> DeformedTensor:
        return self.apply_slot(a, 0, self.delta0_map(a.order))


def pbw_normalize(word: Sequence, alg: ColorLieAlgebra, strategy: str = "insert", order: Sequence[int] | None = None) -> dict:
    """Normal form of a word.

    ``strategy="insert"`` uses the memoised kernel; ``"leftmost"`` and
    ``"rightmost"`` run naive rewriting on the first or last offending pair,
    which serves as an independent check of confluence.
    """
    u = UEA(alg, order)
    word = tuple(alg.basis.index(x) for x in word)
    if strategy == "insert":
        return u.normalize(word)
    if strategy not in ("leftmost", "rightmost"):
        raise ValueError(f"unknown strategy {strategy!r}")
    return _rewrite(u, word, strategy == "leftmost")


def _rewrite(u: UEA, word: tuple, leftmost: bool, guard: int = 200000) -> dict:
    one = u.field(1)
    half = one / 2
    todo = {word: one}
    done: dict = {}
    steps = 0
    while todo:
        w, c = todo.popitem()
        rng = range(len(w) - 1) if leftmost else range(len(w) - 2, -1, -1)
        pos = None
        for p in rng:
            a, b = w[p], w[p + 1]
            if u.rank[a] > u.rank[b] or (a == b and u.odd[a]):
                pos = p
                break
        if pos is None:
            _scalar_acc(done, w, c)
            continue
        steps += 1
        if steps > guard:
            raise RuntimeError("PBW rewriting did not terminate within the step guard")
        a, b = w[pos], w[pos + 1]
        pre, post = w[:pos], w[pos + 2 :]
        if a == b:
            for k, x in u.alg.bracket_basis(a, a).items():
                _scalar_acc(todo, pre + (k,) + post, c * x * half)
        else:
            _scalar_acc(todo, pre + (b, a) + post, c * u.eps_table[a][b])
            for k, x in u.alg.bracket_basis(a, b).items():
                _scalar_acc(todo, pre + (k,) + post, c * x)
    return done


def uea_mul(u: UEA, a: DeformedTensor, b: DeformedTensor) -> DeformedTensor:
    return u.tensor_mul(a, b)


def coproduct0(u: UEA, a: DeformedTensor) -> DeformedTensor:
    return u.coproduct0(a)


@dataclass
class HopfData:
    """Coproduct, counit and antipode of U(g) as maps on normal words."""

    coproduct: Callable[[tuple], DeformedTensor]
    counit: Callable[[tuple], DeformedTensor]
    antipode: Callable[[tuple], DeformedTensor]

    @classmethod
    def standard(cls, u: UEA, order: int = 1) -> "HopfData":
        return cls(u.delta0_map(order), u.counit_map(order), u.antipode0_map(order))


def check_hopf(u: UEA, hopf: HopfData | None = None, word_length_bound: int = 3, order: int = 1) -> list[Violation]:
    """Coassociativity, counit, two-sided antipode and primitivity on normal words."""
    hopf = hopf or HopfData.standard(u, order)
    names = u.basis
    out: list[Violation] = []
    for w in u.normal_words(word_length_bound):
        loc = (names.word_label(w),)
        x = DeformedTensor(u.basis, 1, {(w,): 1}, order)
        d = u.apply_slot(x, 0, hopf.coproduct)
        res = u.apply_slot(d, 0, hopf.coproduct) - u.apply_slot(d, 1, hopf.coproduct)
        if res:
            out.append(Violation("coassociativity", loc, res))
        for slot in (0, 1):
            res = u.apply_slot(d, slot, hopf.counit) - x
            if res:
                out.append(Violation("counit", loc + (f"slot{slot + 1}",), res))
        eps_x = u.apply_slot(x, 0, hopf.counit)
        unit = DeformedTensor(u.basis, 1, {((),): c for _, c in eps_x.items()}, order)
        for slot, label in ((0, "S(x1)x2"), (1, "x1S(x2)")):
            res = u.multiply_slots(u.apply_slot(d, slot, hopf.antipode), 0) - unit
            if res:
                out.append(Violation("antipode", loc + (label,), res))
        if len(w) == 1:
            prim = DeformedTensor(u.basis, 2, {(w, ()): 1, ((), w): 1}, order)
            res = d - prim
            if res:
                out.append(Violation("primitive", loc, res))
    return out


# -- Verma modules ---------------------------------------------------------------------


class VermaPair:
    """The modules M+ = U(g-)1+ and M- = U(g+)1- of a double.

    g+ are the basis elements tagged "+" (the original g), g- those tagged
    "-" (its dual).  ``std`` is U(D) with g+ letters first; the M+ side uses
    the order with g- letters first so that annihilating letters end up on
    the right.
    """

    def __init__(self, alg: ColorLieAlgebra, straightener=None):
        b = alg.basis
        if b.halves is None:
            raise ValueError("Verma modules need a basis split into '+' and '-' halves")
        self.plus_letters = tuple(i for i, h in enumerate(b.halves) if h == "+")
        self.minus_letters = tuple(i for i, h in enumerate(b.halves) if h == "-")
        self.std = UEA(alg, list(self.plus_letters) + list(self.minus_letters), straightener)
        self.side_uea = {
            "+": UEA(alg, list(self.minus_letters) + list(self.plus_letters), straightener),
            "-": self.std,
        }
        self.killers = {"+": frozenset(self.plus_letters), "-": frozenset(self.minus_letters)}
        self.basis = b
        self._act_cache: dict = {}

    def act_word(self, a: tuple, v: tuple, side: str) -> dict:
        """a . (v 1_side) for a word a (any order) and a Verma word v."""
        key = (a, v, side)
        hit = self._act_cache.get(key)
        if hit is None:
            kill = self.killers[side]
            prod = self.side_uea[side].kernel.mul(a, v)
            hit = {w: c for w, c in prod.items() if not any(x in kill for x in w)}
            self._act_cache[key] = hit
        return hit

    def act_tensor(self, a: DeformedTensor, v: DeformedTensor, sides: Sequence[str]) -> DeformedTensor:
        """Slotwise Koszul-signed action of a in U(D)^(x)k on M_{s1} (x) ... (x) M_{sk}."""
        if a.arity != v.arity or len(sides) != v.arity:
            raise ValueError("arity mismatch")
        order = min(a.order, v.order)
        out: dict = {}
        for ka, ca in a.items():
            for kv, cv in v.items():
                s = self.std.key_sign(ka, kv)
                c = ca * cv
                if s != 1:
                    c = c * s
                partial = {(): c}
                for i, side in enumerate(sides):
                    img = self.act_word(ka[i], kv[i], side)
                    if not img:
                        partial = {}
                        break
                    nxt = {}
                    for key, val in partial.items():
                        for w, d in img.items():
                            nxt[key + (w,)] = val * d
                    partial = nxt
                for key, val in partial.items():
                    _acc(out, key, val)
        return DeformedTensor._raw(self.basis, a.arity, out, order)

    def vacuum(self, arity: int, order: int = 1) -> DeformedTensor:
        return DeformedTensor.unit(self.basis, arity, order)

    def phi(self, u: DeformedTensor) -> DeformedTensor:
        """phi(u) = u.(1+ (x) 1-) in M+ (x) M-."""
        d = self.std.coproduct0(u)
        return self.act_tensor(d, self.vacuum(2, u.order), ("+", "-"))

    def phi_inverse(self, t: DeformedTensor) -> DeformedTensor:
        """Invert phi by peeling off the term with the longest M+ word."""
        order = t.order
        out: dict = {}
        rest = t
        guard = 0
        while rest:
            guard += 1
            if guard > 100000:
                raise RuntimeError("phi inverse did not terminate")
            key = max(rest.keys(), key=lambda k: (len(k[0]), k))
            a, b = key
            c = rest.terms[key]
            for w, d in self.std.mul_words(a, b).items():
                _acc(out, (w,), c * d)
            # phi(a b) = a.(1+ (x) b 1-)
            img = self.act_tensor(
                DeformedTensor(self.basis, 2, self.std.coproduct_word(a), order),
                DeformedTensor(self.basis, 2, {((), b): 1}, order),
                ("+", "-"),
            )
            rest = rest - img.scale(c)
        return DeformedTensor._raw(self.basis, 1, out, order)

    def i_pm(self, v: DeformedTensor, side: str) -> DeformedTensor:
        """i+-(u 1) = Delta0(u).(1 (x) 1): Verma words are subwords, already normal."""
        return self.side_uea[side].coproduct0(v)


def verma_act(pair: VermaPair, x, v: DeformedTensor, side: str) -> DeformedTensor:
    a = DeformedTensor(pair.basis, 1, {((pair.basis.index(x),),): 1}, v.order)
    return pair.act_tensor(a, v, (side,))


def phi_iso(pair: VermaPair, u: DeformedTensor) -> DeformedTensor:
    return pair.phi(u)


def phi_inverse(pair: VermaPair, t: DeformedTensor) -> DeformedTensor:
    return pair.phi_inverse(t)


def i_pm(pair: VermaPair, v: DeformedTensor, side: str) -> DeformedTensor:
    return pair.i_pm(v, side)
