# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled hot kernels (Cython).

Entries stay Python ints: coefficients outgrow 64 bits quickly, so only the
loop indices and list access are typed.  Mirrors ``_pykernels`` exactly.
"""
from math import comb, factorial

BACKEND = "cython"


def bareiss_echelon(rows, Py_ssize_t ncols):
    cdef list a = [list(row) for row in rows]
    cdef Py_ssize_t m = len(a)
    cdef Py_ssize_t r = 0, c, i, j, p
    cdef list pivots = []
    cdef list row_r, row_i
    prev = 1
    for c in range(ncols):
        if r >= m:
            break
        p = -1
        for i in range(r, m):
            if (<list>a[i])[c] != 0:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            a[p], a[r] = a[r], a[p]
        row_r = <list>a[r]
        piv = row_r[c]
        for i in range(r + 1, m):
            row_i = <list>a[i]
            f = row_i[c]
            if f == 0:
                if prev == piv:
                    continue
                for j in range(c + 1, ncols):
                    x = row_i[j]
                    if x:
                        row_i[j] = (piv * x) // prev
                continue
            for j in range(c + 1, ncols):
                row_i[j] = (piv * row_i[j] - f * row_r[j]) // prev
            row_i[c] = 0
        pivots.append(c)
        prev = piv
        r += 1
    return r, pivots, a


def berkowitz(rows):
    cdef Py_ssize_t n = len(rows)
    cdef Py_ssize_t r, i, j, k, lv, lc, step
    cdef list vect, col, R, C, v, nv, new, row_i
    if n == 0:
        return [1]
    vect = [1, -rows[0][0]]
    for r in range(1, n):
        R = [rows[i][r] for i in range(r)]
        C = list(rows[r][:r])
        a = rows[r][r]
        col = [1, -a]
        v = R
        for step in range(r):
            s = 0
            for i in range(r):
                s += C[i] * v[i]
            col.append(-s)
            nv = [0] * r
            for i in range(r):
                row_i = <list>rows[i]
                acc = 0
                for j in range(r):
                    x = row_i[j]
                    if x:
                        acc += x * v[j]
                nv[i] = acc
            v = nv
        new = [0] * (r + 2)
        lv = len(vect)
        lc = len(col)
        for i in range(r + 2):
            acc = 0
            for j in range(lv):
                k = i - j
                if 0 <= k < lc:
                    acc += col[k] * vect[j]
            new[i] = acc
        vect = new
    return vect[::-1]


cdef list _dx_pow(int b, int a):
    cdef int k
    cdef int top = a if a < b else b
    return [(comb(b, k) * comb(a, k) * factorial(k), k) for k in range(top + 1)]


def weyl_mul_terms(dict p, dict q, Py_ssize_t dim):
    cdef dict out = {}
    cdef dict cache = {}
    cdef Py_ssize_t i
    cdef int bi, ai, x0, d0, k
    cdef list partial, nxt, exp
    cdef tuple a1, b1, a2, b2, al, be, key
    for k1, c1 in p.items():
        a1 = <tuple>k1[0]
        b1 = <tuple>k1[1]
        for k2, c2 in q.items():
            a2 = <tuple>k2[0]
            b2 = <tuple>k2[1]
            partial = [((), (), 1)]
            for i in range(dim):
                bi = b1[i]
                ai = a2[i]
                key = (bi, ai)
                exp = cache.get(key)
                if exp is None:
                    exp = _dx_pow(bi, ai)
                    cache[key] = exp
                x0 = a1[i]
                d0 = b2[i]
                nxt = []
                for item in partial:
                    al = <tuple>item[0]
                    be = <tuple>item[1]
                    w = item[2]
                    for e in exp:
                        k = e[1]
                        nxt.append((al + (x0 + ai - k,), be + (bi - k + d0,), w * e[0]))
                partial = nxt
            c = c1 * c2
            for item in partial:
                key = (item[0], item[1])
                val = out.get(key, 0) + c * item[2]
                if val:
                    out[key] = val
                else:
                    out.pop(key, None)
    return out


def weyl_mul_euler(dict p, list n, c):
    cdef dict out = {}
    cdef Py_ssize_t dim = len(n)
    cdef Py_ssize_t i
    cdef tuple a, b, key
    for k, v in p.items():
        a = <tuple>k[0]
        b = <tuple>k[1]
        diag = c
        for i in range(dim):
            ni = n[i]
            if ni:
                diag += ni * b[i]
                key = (a[:i] + (a[i] + 1,) + a[i + 1:], b[:i] + (b[i] + 1,) + b[i + 1:])
                out[key] = out.get(key, 0) + ni * v
        if diag:
            out[k] = out.get(k, 0) + diag * v
    return {k: v for k, v in out.items() if v}
