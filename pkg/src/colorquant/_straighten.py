"""Pure-Python PBW straightening kernel.

Letters are ints, words are tuples of letters.  A word is normal when the
ranks of its letters are non-decreasing and no odd letter (eps(d, d) = -1)
repeats.  :class:`Straightener` multiplies a letter into a normal word using

    x y w = eps(x, y) y (x w) + [x, y] w     (rank x > rank y)
    x x w = 1/2 [x, x] w                     (x odd)

with every (letter, word) result memoised.  Coefficients are whatever exact
scalar type the caller supplies; the kernel only adds and multiplies them.

The compiled twin in ``_straighten_c.pyx`` implements the same class.
"""

from __future__ import annotations


class Straightener:
    def __init__(self, rank, eps, bracket, odd, one):
        """``rank[i]`` orders letters, ``eps[i][j]`` = eps(d_i, d_j),
        ``bracket[(i, j)]`` = tuple of (k, c), ``odd[i]`` flags eps(d_i, d_i) = -1,
        and ``one`` is the scalar 1."""
        self.rank = list(rank)
        self.eps = [list(row) for row in eps]
        self.bracket = {k: tuple(v) for k, v in bracket.items() if v}
        self.odd = [bool(x) for x in odd]
        self.one = one
        self.half = one / 2
        self.memo = {}
        self.steps = 0

    def insert(self, x, w):
        """Normal form of the letter x times the normal word w."""
        key = (x, w)
        res = self.memo.get(key)
        if res is not None:
            return res
        self.steps += 1
        rank = self.rank
        if not w or rank[x] < rank[w[0]]:
            res = {(x,) + w: self.one}
        else:
            y = w[0]
            rest = w[1:]
            if x == y:
                if self.odd[x]:
                    res = {}
                    for k, c in self.bracket.get((x, x), ()):
                        c = c * self.half
                        for u, d in self.insert(k, rest).items():
                            _acc(res, u, c * d)
                else:
                    res = {(x,) + w: self.one}
            else:
                res = {}
                e = self.eps[x][y]
                for u, d in self.insert(x, rest).items():
                    ed = e * d
                    for v, f in self.insert(y, u).items():
                        _acc(res, v, ed * f)
                for k, c in self.bracket.get((x, y), ()):
                    for u, d in self.insert(k, rest).items():
                        _acc(res, u, c * d)
        self.memo[key] = res
        return res

    def mul(self, a, b):
        """Normal form of a*b where b is normal (a may be any word)."""
        res = {b: self.one}
        for x in reversed(a):
            new = {}
            for w, c in res.items():
                for u, d in self.insert(x, w).items():
                    _acc(new, u, c * d)
            res = new
        return res

    def normalize(self, word):
        return self.mul(word, ())


def _acc(d, key, val):
    cur = d.get(key)
    if cur is None:
        if val:
            d[key] = val
    else:
        s = cur + val
        if s:
            d[key] = s
        else:
            del d[key]
