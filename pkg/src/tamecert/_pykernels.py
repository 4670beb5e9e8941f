"""Pure-Python hot kernels.

Same signatures as the compiled ``_kernels`` extension; ``tamecert._backend``
picks whichever is importable.  All arithmetic is on Python ints (or on the
Fraction coefficients handed in by the caller), never floats.
"""
from math import comb, factorial

BACKEND = "python"


def bareiss_echelon(rows, ncols):
    """Fraction-free forward elimination of an integer matrix.

    Works on a copy.  Pivot search is "first nonzero in the column" so the
    result is reproducible.  Returns ``(rank, pivot_columns, echelon_rows)``
    where the first ``rank`` rows of ``echelon_rows`` are in row echelon form.
    """
    a = [list(r) for r in rows]
    m = len(a)
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r >= m:
            break
        p = -1
        for i in range(r, m):
            if a[i][c] != 0:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            a[p], a[r] = a[r], a[p]
        piv = a[r][c]
        row_r = a[r]
        for i in range(r + 1, m):
            row_i = a[i]
            f = row_i[c]
            if f == 0:
                if prev != piv:
                    for j in range(c + 1, ncols):
                        if row_i[j]:
                            row_i[j] = (piv * row_i[j]) // prev
                continue
            for j in range(c + 1, ncols):
                row_i[j] = (piv * row_i[j] - f * row_r[j]) // prev
            row_i[c] = 0
        # rows above the pivot block are untouched; the remaining lower rows
        # share the common divisor ``prev`` (Sylvester identity)
        pivots.append(c)
        prev = piv
        r += 1
    return r, pivots, a


def berkowitz(rows):
    """Characteristic polynomial det(t*I - A) of a square integer matrix.

    Division-free; returns ascending coefficients ``[c_0, ..., c_n]`` with
    ``c_n == 1``.
    """
    n = len(rows)
    if n == 0:
        return [1]
    # vect holds coefficients in descending order, leading first
    vect = [1, -rows[0][0]]
    for r in range(1, n):
        # A = [[M, R], [C, a]] with M the leading r x r block
        R = [rows[i][r] for i in range(r)]
        C = rows[r][:r]
        a = rows[r][r]
        col = [1, -a]
        # powers: C * M^k * R for k = 0 .. r-1
        v = R
        for _ in range(r):
            s = 0
            for i in range(r):
                s += C[i] * v[i]
            col.append(-s)
            nv = [0] * r
            for i in range(r):
                row_i = rows[i]
                acc = 0
                for j in range(r):
                    x = row_i[j]
                    if x:
                        acc += x * v[j]
                nv[i] = acc
            v = nv
        # Toeplitz product: new = T(col) * vect, length r + 2
        new = [0] * (r + 2)
        lv = len(vect)
        for i in range(r + 2):
            acc = 0
            for j in range(lv):
                k = i - j
                if 0 <= k < len(col):
                    acc += col[k] * vect[j]
            new[i] = acc
        vect = new
    return vect[::-1]


def _dx_pow(b, a):
    # D^b x^a = sum_k C(b,k) C(a,k) k! x^(a-k) D^(b-k)
    return [(comb(b, k) * comb(a, k) * factorial(k), k) for k in range(min(a, b) + 1)]


def weyl_mul_terms(p, q, dim):
    """Normal-ordered product of two term maps.

    ``p`` and ``q`` map ``(alpha, beta)`` exponent tuples to coefficients.
    Zero coefficients are dropped from the result.
    """
    out = {}
    cache = {}
    for (a1, b1), c1 in p.items():
        for (a2, b2), c2 in q.items():
            # per-coordinate expansions of D^b1_i x^a2_i
            partial = [((), (), 1)]
            for i in range(dim):
                bi, ai = b1[i], a2[i]
                key = (bi, ai)
                exp = cache.get(key)
                if exp is None:
                    exp = _dx_pow(bi, ai)
                    cache[key] = exp
                x0 = a1[i]
                d0 = b2[i]
                nxt = []
                for (al, be, w) in partial:
                    for (coef, k) in exp:
                        nxt.append((al + (x0 + ai - k,), be + (bi - k + d0,), w * coef))
                partial = nxt
            c = c1 * c2
            for (al, be, w) in partial:
                key = (al, be)
                v = out.get(key, 0) + c * w
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
    return out


def weyl_mul_euler(p, n, c):
    """Product ``p * (sum_i n_i x_i D_i + c)`` in normal order.

    Uses ``x^a D^b * x_i D_i = x^(a+e_i) D^(b+e_i) + b_i x^a D^b``.
    """
    out = {}
    dim = len(n)
    for (a, b), v in p.items():
        diag = c
        for i in range(dim):
            ni = n[i]
            if ni:
                diag += ni * b[i]
                key = (a[:i] + (a[i] + 1,) + a[i + 1:], b[:i] + (b[i] + 1,) + b[i + 1:])
                out[key] = out.get(key, 0) + ni * v
        if diag:
            out[(a, b)] = out.get((a, b), 0) + diag * v
    return {k: v for k, v in out.items() if v}
