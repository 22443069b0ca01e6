"""Independent reference computations used to audit the library.

Nothing here calls the library's straightening, tensor or bracket code; the
oracles work directly from structure-constant dictionaries, matrices and
generating functions.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product


def structure_constants(alg) -> tuple[list[str], dict]:
    """(names, {(a, b): {c: coeff}}) with labels instead of indices."""
    names = list(alg.basis.names)
    table = {}
    for (i, j), vec in alg.table.items():
        table[(names[i], names[j])] = {names[k]: Fraction(c) for k, c in vec.items()}
    return names, table


def cyb_expansion(r: dict, table: dict) -> dict:
    """CYB(r) for trivial commutation factor by the triple-index expansion.

    ``r`` maps (a, b) label pairs to coefficients; the result maps label
    triples to coefficients.
    """
    out: dict = {}

    def acc(key, c):
        v = out.get(key, 0) + c
        if v:
            out[key] = v
        else:
            out.pop(key, None)

    for ((a, b), c1), ((c, d), c2) in product(r.items(), repeat=2):
        w = Fraction(c1) * Fraction(c2)
        for k, x in table.get((a, c), {}).items():  # [r12, r13]
            acc((k, b, d), w * x)
        for k, x in table.get((b, c), {}).items():  # [r12, r23]
            acc((a, k, d), w * x)
        for k, x in table.get((b, d), {}).items():  # [r13, r23]
            acc((a, c, k), w * x)
    return out


# -- 2x2 matrix model of sl2 --------------------------------------------------------

SL2_MATRICES = {
    "h": [[1, 0], [0, -1]],
    "e": [[0, 1], [0, 0]],
    "f": [[0, 0], [1, 0]],
}


def mat_mul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    return [[sum(Fraction(a[i][k]) * b[k][j] for k in range(m)) for j in range(p)] for i in range(n)]


def mat_add(a, b, s=1):
    return [[Fraction(x) + s * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def kron(a, b):
    return [[Fraction(x) * y for x in ra for y in rb] for ra in a for rb in b]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(n):
    return [[Fraction(0)] * n for _ in range(n)]


def rep3(t: dict, mats: dict):
    """Image of a label-triple tensor under rho (x) rho (x) rho."""
    n = len(next(iter(mats.values())))
    out = zeros(n**3)
    for (a, b, c), x in t.items():
        out = mat_add(out, kron(kron(mats[a], mats[b]), mats[c]), x)
    return out


def cyb_matrix(r: dict, mats: dict):
    """CYB(r) evaluated in End(V^3) as commutators of Kronecker products."""
    n = len(next(iter(mats.values())))
    one = identity(n)
    r12, r13, r23 = zeros(n**3), zeros(n**3), zeros(n**3)
    for (a, b), c in r.items():
        c = Fraction(c)
        r12 = mat_add(r12, kron(kron(mats[a], mats[b]), one), c)
        r13 = mat_add(r13, kron(kron(mats[a], one), mats[b]), c)
        r23 = mat_add(r23, kron(kron(one, mats[a]), mats[b]), c)

    def comm(x, y):
        return mat_add(mat_mul(x, y), mat_mul(y, x), -1)

    return mat_add(mat_add(comm(r12, r13), comm(r12, r23)), comm(r13, r23))


# -- PBW counting ----------------------------------------------------------------------


def color_symmetric_counts(n_even: int, n_odd: int, max_len: int) -> list[int]:
    """Monomials of each degree in S(even) (x) Lambda(odd), from the generating function."""
    poly = [1] + [0] * max_len
    for _ in range(n_even):  # multiply by 1 / (1 - t)
        for k in range(1, max_len + 1):
            poly[k] += poly[k - 1]
    for _ in range(n_odd):  # multiply by 1 + t
        for k in range(max_len, 0, -1):
            poly[k] += poly[k - 1]
    return poly


def rank(rows: list[dict]) -> int:
    """Rank of sparse row vectors by plain Gaussian elimination."""
    pivots: dict = {}
    r = 0
    for row in rows:
        v = {k: Fraction(c) if not hasattr(c, "m") else c for k, c in row.items() if c != 0}
        while v:
            k = max(v)
            if k not in pivots:
                lead = v[k]
                pivots[k] = {kk: c / lead for kk, c in v.items()}
                r += 1
                break
            c = v[k]
            for kk, x in pivots[k].items():
                s = v.get(kk, 0) - c * x
                if s == 0:
                    v.pop(kk, None)
                else:
                    v[kk] = s
    return r


# -- binomials ---------------------------------------------------------------------------


def gaussian_binomial_coeffs(m: int, n: int) -> dict:
    """[m+n choose n] in the variable q (not symmetric Laurent form): {power: coeff}.

    Computed by the q-Pascal recursion on partitions in an m x n box.
    """
    table: dict = {}

    def rec(a, b):
        if (a, b) in table:
            return table[(a, b)]
        if a == 0 or b == 0:
            out = {0: 1}
        else:
            # [a+b, b] = [a+b-1, b-1] + q^b [a+b-1, b]
            out = dict(rec(a, b - 1))
            for p, c in rec(a - 1, b).items():
                out[p + b] = out.get(p + b, 0) + c
        table[(a, b)] = out
        return out

    return rec(m, n)
