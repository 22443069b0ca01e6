# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled PBW straightening kernel (same algorithm as ``_straighten.py``).

Rational coefficients that are integers are kept as Python ints inside the
recursion, where arithmetic is much cheaper than on ``Fraction``; results are
converted back to field scalars when they leave :meth:`mul`.
"""

from fractions import Fraction

from cpython.mem cimport PyMem_Free, PyMem_Malloc


cdef inline void _acc(dict d, object key, object val):
    cdef object cur = d.get(key)
    if cur is None:
        if val:
            d[key] = val
    else:
        s = cur + val
        if s:
            d[key] = s
        else:
            del d[key]


cdef object _intify(object c):
    if type(c) is Fraction and c.denominator == 1:
        return int(c.numerator)
    return c


cdef class Straightener:
    cdef public list rank
    cdef public list eps
    cdef public dict bracket
    cdef public list odd
    cdef public object one
    cdef public object half
    cdef public dict memo
    cdef public long steps
    cdef object _one_int
    cdef list _eps
    cdef dict _bracket
    cdef int* _rank
    cdef int _n

    def __cinit__(self, rank, eps, bracket, odd, one):
        self._n = 0
        self._rank = NULL

    def __init__(self, rank, eps, bracket, odd, one):
        self.rank = list(rank)
        self.eps = [list(row) for row in eps]
        self.bracket = {k: tuple(v) for k, v in bracket.items() if v}
        self.odd = [bool(x) for x in odd]
        self.one = one
        self.half = one / 2
        self.memo = {}
        self.steps = 0
        self._one_int = _intify(one)
        self._eps = [[_intify(x) for x in row] for row in self.eps]
        self._bracket = {k: tuple((kk, _intify(c)) for kk, c in v) for k, v in self.bracket.items()}
        self._n = len(self.rank)
        self._rank = <int*> PyMem_Malloc(max(self._n, 1) * sizeof(int))
        for i in range(self._n):
            self._rank[i] = self.rank[i]

    def __dealloc__(self):
        if self._rank != NULL:
            PyMem_Free(self._rank)

    cpdef dict insert(self, int x, tuple w):
        cdef tuple key = (x, w)
        cdef object hit = self.memo.get(key)
        if hit is not None:
            return <dict> hit
        self.steps += 1
        cdef dict res
        cdef int y, k
        cdef tuple rest, u, v
        cdef object c, d, e, ed, f
        if len(w) == 0 or self._rank[x] < self._rank[<int> w[0]]:
            res = {(x,) + w: self._one_int}
        else:
            y = w[0]
            rest = w[1:]
            if x == y:
                if self.odd[x]:
                    res = {}
                    for k, c in self._bracket.get((x, x), ()):
                        c = c * self.half
                        for u, d in self.insert(k, rest).items():
                            _acc(res, u, c * d)
                else:
                    res = {(x,) + w: self._one_int}
            else:
                res = {}
                e = self._eps[x][y]
                for u, d in self.insert(x, rest).items():
                    ed = e * d
                    for v, f in self.insert(y, u).items():
                        _acc(res, v, ed * f)
                for k, c in self._bracket.get((x, y), ()):
                    for u, d in self.insert(k, rest).items():
                        _acc(res, u, c * d)
        self.memo[key] = res
        return res

    cpdef dict _mul_raw(self, tuple a, tuple b):
        cdef dict res = {b: self._one_int}
        cdef dict new
        cdef tuple w, u
        cdef object c, d
        cdef Py_ssize_t i
        for i in range(len(a) - 1, -1, -1):
            new = {}
            for w, c in res.items():
                for u, d in self.insert(a[i], w).items():
                    _acc(new, u, c * d)
            res = new
        return res

    cpdef dict mul(self, tuple a, tuple b):
        cdef dict raw = self._mul_raw(a, b)
        cdef object one = self.one
        if type(self._one_int) is not int:
            return raw
        return {w: (one * c if type(c) is int else c) for w, c in raw.items()}

    def normalize(self, tuple word):
        return self.mul(word, ())
