"""Exact scalars: rationals extended by a root of unity, and truncated series.

Elements of the cyclotomic field Q(zeta_m) are stored in the power basis
``1, zeta, ..., zeta^(phi(m)-1)``.  For conductors 1 and 2 the field is just Q
and elements are plain :class:`fractions.Fraction` objects, which keeps the
common case (integer gradings with trivial or super signs) fast.

:class:`TruncSeries` is the ring K[lambda]/(lambda^N) in which every
deformation computation takes place.
"""

from __future__ import annotations

import ast
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Sequence, Union

__all__ = [
    "Cyc",
    "CyclotomicField",
    "ScalarError",
    "TruncSeries",
    "cyclotomic_polynomial",
    "parse_scalar",
    "scalar_arith",
    "series_exp",
]


class ScalarError(ArithmeticError):
    """Raised on division by zero or on mixing incompatible fields."""


# -- integer / rational polynomial helpers (lists, low degree first) ---------


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    b = _trim(list(b))
    if not b:
        raise ScalarError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = Fraction(b[-1])
    while len(_trim(a)) >= len(b):
        shift = len(a) - len(b)
        c = Fraction(a[-1]) / lead
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] -= c * bi
        a.pop()
    return _trim(q), _trim(a)


def _poly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of the m-th cyclotomic polynomial, low degree first."""
    if m < 1:
        raise ValueError("conductor must be positive")
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num, rem = _poly_divmod(num, list(cyclotomic_polynomial(d)))
            assert not rem
    return tuple(int(c) for c in num)


def _totient(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


# -- cyclotomic field --------------------------------------------------------


class Cyc:
    """Element of Q(zeta_m) for m with phi(m) > 1."""

    __slots__ = ("m", "c")

    def __init__(self, m: int, coeffs: Iterable):
        self.m = m
        self.c = tuple(Fraction(x) for x in coeffs)

    # construction helpers
    @staticmethod
    def _reduce(m: int, poly: list) -> "Cyc":
        mod = cyclotomic_polynomial(m)
        n = len(mod) - 1
        poly = [Fraction(x) for x in poly]
        for k in range(len(poly) - 1, n - 1, -1):
            c = poly[k]
            if c:
                # x^k = x^(k-n) * x^n and x^n = -(mod[0] + ... + mod[n-1] x^(n-1))
                for i in range(n):
                    poly[k - n + i] -= c * mod[i]
            poly[k] = Fraction(0)
        poly = poly[:n] + [Fraction(0)] * (n - len(poly))
        return Cyc(m, poly)

    def _coerce(self, other) -> "Cyc | None":
        if isinstance(other, Cyc):
            if other.m != self.m:
                raise ScalarError(f"mixed conductors {self.m} and {other.m}")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyc(self.m, [other] + [0] * (len(self.c) - 1))
        return None

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def __bool__(self) -> bool:
        return any(self.c)

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.c == o.c

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.c[0])
        return hash((self.m, self.c))

    def __neg__(self) -> "Cyc":
        return Cyc(self.m, [-x for x in self.c])

    def __pos__(self) -> "Cyc":
        return self

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyc(self.m, [a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyc(self.m, [a - b for a, b in zip(self.c, o.c)])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyc(self.m, [a * other for a in self.c])
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyc._reduce(self.m, _poly_mul(self.c, o.c))

    __rmul__ = __mul__

    def inverse(self) -> "Cyc":
        if not self:
            raise ScalarError("division by zero in cyclotomic field")
        # extended Euclid: s*self + t*mod = g (constant)
        mod = [Fraction(x) for x in cyclotomic_polynomial(self.m)]
        r0, r1 = mod, _trim(list(self.c))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            s = _trim([a - b for a, b in _zip_longest(s0, _poly_mul(q, s1))])
            r0, r1, s0, s1 = r1, r, s1, s
        g = r1[0]
        return Cyc._reduce(self.m, [x / g for x in s1])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ScalarError("division by zero")
            return Cyc(self.m, [a / other for a in self.c])
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> "Cyc":
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        out = Cyc(self.m, [1] + [0] * (len(self.c) - 1))
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __repr__(self) -> str:
        return f"Cyc({self.m}, {str(self)!r})"

    def __str__(self) -> str:
        parts = []
        for k, a in enumerate(self.c):
            if not a:
                continue
            mono = "" if k == 0 else ("zeta" if k == 1 else f"zeta^{k}")
            if not mono:
                parts.append(str(a))
            elif a == 1:
                parts.append(mono)
            elif a == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{a}*{mono}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def _zip_longest(a: list, b: list):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return zip(a, b)


Scalar = Union[Fraction, Cyc]


class CyclotomicField:
    """The field Q(zeta_m); a single conductor is fixed per session.

    Calling the field converts ints, Fractions, strings and field elements into
    canonical scalars.  For m in (1, 2) the canonical scalar type is Fraction.
    """

    def __init__(self, m: int = 1):
        if m < 1:
            raise ValueError("conductor must be a positive integer")
        self.m = m
        self.degree = _totient(m)

    @property
    def rational(self) -> bool:
        return self.degree == 1

    @property
    def zeta(self) -> Scalar:
        if self.m == 1:
            return Fraction(1)
        if self.m == 2:
            return Fraction(-1)
        return Cyc(self.m, [0, 1] + [0] * (self.degree - 2))

    def __call__(self, value) -> Scalar:
        if isinstance(value, str):
            return parse_scalar(value, self)
        if isinstance(value, Cyc):
            if value.m != self.m:
                raise ScalarError(f"mixed conductors {value.m} and {self.m}")
            return value
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, (int, Fraction)):
            if self.rational:
                return Fraction(value)
            return Cyc(self.m, [value] + [0] * (self.degree - 1))
        raise TypeError(f"cannot convert {type(value).__name__} to a scalar")

    def __eq__(self, other) -> bool:
        return isinstance(other, CyclotomicField) and other.m == self.m

    def __hash__(self) -> int:
        return hash(("CyclotomicField", self.m))

    def __repr__(self) -> str:
        return f"CyclotomicField({self.m})"


_RATIONAL = CyclotomicField(1)


def parse_scalar(text: str, field: CyclotomicField | None = None) -> Scalar:
    """Parse an exact scalar literal such as ``"1/4"``, ``"-2"`` or ``"1 + zeta^2"``.

    The symbol ``zeta`` is the field's primitive root; ``i`` is accepted when
    4 divides the conductor.  Floats are rejected.
    """
    field = field or _RATIONAL
    src = text.strip().replace("^", "**")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"bad scalar literal {text!r}") from exc

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or not isinstance(node.value, int):
                raise ValueError(f"only integer literals allowed in {text!r}")
            return field(node.value)
        if isinstance(node, ast.Name):
            if node.id == "zeta":
                return field.zeta
            if node.id == "i" and field.m % 4 == 0:
                return field.zeta ** (field.m // 4)
            raise ValueError(f"unknown symbol {node.id!r} in {text!r}")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                exp = node.right
                neg = False
                if isinstance(exp, ast.UnaryOp) and isinstance(exp.op, ast.USub):
                    neg, exp = True, exp.operand
                if not (isinstance(exp, ast.Constant) and type(exp.value) is int):
                    raise ValueError(f"exponents must be integers in {text!r}")
                return ev(node.left) ** (-exp.value if neg else exp.value)
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                if b == 0:
                    raise ScalarError(f"division by zero in {text!r}")
                return a / b
        raise ValueError(f"unsupported syntax in scalar literal {text!r}")

    value = ev(tree)
    return value if isinstance(value, Cyc) else field(value)


def scalar_arith(a: Scalar, b: Scalar | None, op: str) -> Scalar:
    """Exact field arithmetic; ``op`` is one of ``add``, ``mul``, ``inv``."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        if a == 0:
            raise ScalarError("inverse of zero")
        return 1 / a if isinstance(a, Fraction) else a.inverse()
    raise ValueError(f"unknown operation {op!r}")


# -- truncated formal series -------------------------------------------------


class TruncSeries:
    """c0 + c1*lam + ... + c_{N-1}*lam^(N-1) modulo lam^N."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Sequence):
        if not coeffs:
            raise ValueError("truncation order must be at least 1")
        self.c = tuple(coeffs)

    @classmethod
    def const(cls, value, order: int) -> "TruncSeries":
        return cls((value,) + (value * 0,) * (order - 1))

    @classmethod
    def lam(cls, order: int, power: int = 1, coeff=Fraction(1)) -> "TruncSeries":
        zero = coeff * 0
        c = [zero] * order
        if power < order:
            c[power] = coeff
        return cls(c)

    @property
    def order(self) -> int:
        return len(self.c)

    def __getitem__(self, k: int):
        return self.c[k]

    def is_zero(self) -> bool:
        return not any(self.c)

    def __bool__(self) -> bool:
        return any(self.c)

    def valuation(self) -> int:
        for k, x in enumerate(self.c):
            if x:
                return k
        return self.order

    def truncate(self, order: int) -> "TruncSeries":
        if order >= self.order:
            return self
        return TruncSeries(self.c[:order])

    def _lift(self, other):
        if isinstance(other, TruncSeries):
            return other
        return TruncSeries.const(other, self.order)

    def __eq__(self, other) -> bool:
        if isinstance(other, TruncSeries):
            n = min(self.order, other.order)
            return self.c[:n] == other.c[:n]
        try:
            return self.c[0] == other and not any(self.c[1:])
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        return hash(self.c)

    def __neg__(self) -> "TruncSeries":
        return TruncSeries([-x for x in self.c])

    def __add__(self, other) -> "TruncSeries":
        if not isinstance(other, TruncSeries):
            return TruncSeries((self.c[0] + other,) + self.c[1:])
        return TruncSeries([a + b for a, b in zip(self.c, other.c)])

    __radd__ = __add__

    def __sub__(self, other) -> "TruncSeries":
        if not isinstance(other, TruncSeries):
            return TruncSeries((self.c[0] - other,) + self.c[1:])
        return TruncSeries([a - b for a, b in zip(self.c, other.c)])

    def __rsub__(self, other) -> "TruncSeries":
        return (-self) + other

    def __mul__(self, other) -> "TruncSeries":
        if not isinstance(other, TruncSeries):
            return TruncSeries([a * other for a in self.c])
        a, b = self.c, other.c
        n = min(len(a), len(b))
        if n == 1:
            return TruncSeries((a[0] * b[0],))
        out = []
        for k in range(n):
            s = a[0] * b[k]
            for i in range(1, k + 1):
                if a[i]:
                    s += a[i] * b[k - i]
            out.append(s)
        return TruncSeries(out)

    __rmul__ = __mul__

    def scale(self, s) -> "TruncSeries":
        return TruncSeries([a * s for a in self.c])

    def inverse(self) -> "TruncSeries":
        a = self.c
        if not a[0]:
            raise ScalarError("series with zero constant term is not invertible")
        inv0 = 1 / a[0]
        out = [inv0]
        for k in range(1, len(a)):
            s = a[1] * out[k - 1]
            for i in range(2, k + 1):
                s += a[i] * out[k - i]
            out.append(-s * inv0)
        return TruncSeries(out)

    def __truediv__(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            return self * other.inverse()
        if other == 0:
            raise ScalarError("division by zero")
        return TruncSeries([a / other for a in self.c])

    def __rtruediv__(self, other) -> "TruncSeries":
        return TruncSeries.const(other, self.order) * self.inverse()

    def __pow__(self, k: int) -> "TruncSeries":
        if k < 0:
            return self.inverse() ** (-k)
        out = TruncSeries.const(self.c[0] * 0 + 1, self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def exp(self) -> "TruncSeries":
        return series_exp(self)

    def __repr__(self) -> str:
        terms = []
        for k, x in enumerate(self.c):
            if not x:
                continue
            s = str(x)
            if k == 0:
                terms.append(s)
            else:
                lam = "lam" if k == 1 else f"lam^{k}"
                terms.append(lam if x == 1 else f"({s})*{lam}")
        return "TruncSeries(" + (" + ".join(terms) or "0") + f"; N={self.order})"


def series_exp(a: TruncSeries) -> TruncSeries:
    """exp(a) = sum a^k / k! mod lam^N; requires a zero constant term."""
    if a.c[0]:
        raise ScalarError("exp needs a series with zero constant term")
    one = a.c[0] * 0 + 1
    out = TruncSeries.const(one, a.order)
    power = TruncSeries.const(one, a.order)
    for k in range(1, a.order):
        power = power * a
        out = out + power.scale(Fraction(1, factorial(k)))
    return out
