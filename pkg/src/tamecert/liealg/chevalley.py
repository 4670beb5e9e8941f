"""Chevalley bases with integer structure constants.

Basis order: positive root vectors ``e_alpha`` (height, then coefficients),
then ``h_1 .. h_l``, then the negative root vectors in the same order as the
positive ones.  For ``A1`` this is ``(e, h, f)``.

The constants ``N_{r,s}`` in ``[e_r, e_s] = N_{r,s} e_{r+s}`` are fixed by
choosing ``N_{alpha,beta} = +(p+1)`` on every extraspecial pair and
propagating with the standard relations; Jacobi is then checked on all basis
triples.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..exact import QMatrix, char_poly, Q
from .roots import RootSystem, RootSystemError, cartan_matrix


class ChevalleyError(RuntimeError):
    """Structure constants failed a consistency check (an implementation bug)."""


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _neg(a):
    return tuple(-x for x in a)


def structure_constants(rs: RootSystem) -> dict:
    """``{(r, s): N_{r,s}}`` for every pair of roots with ``r + s`` a root."""
    pos_order = {r: k for k, r in enumerate(rs.positive)}
    is_root = rs.index.__contains__

    def is_pos(r):
        return r in pos_order

    extraspecial = {}
    for xi in rs.positive:
        if sum(xi) < 2:
            continue
        for a in rs.positive:
            b = _sub(xi, a)
            if is_pos(b):
                extraspecial[xi] = (a, b)
                break

    def p_string(a, b):
        p = 0
        cur = _sub(b, a)
        while is_root(cur):
            p += 1
            cur = _sub(cur, a)
        return p

    memo: dict = {}

    def N(r, s) -> Fraction:
        if not is_root(_add(r, s)):
            return Fraction(0)
        key = (r, s)
        if key in memo:
            return memo[key]
        rp, sp = is_pos(r), is_pos(s)
        if rp and sp:
            if pos_order[r] > pos_order[s]:
                val = -N(s, r)
            else:
                xi = _add(r, s)
                a, b = extraspecial[xi]
                if (r, s) == (a, b):
                    val = Fraction(p_string(a, b) + 1)
                else:
                    na, nb = _neg(a), _neg(b)
                    t1 = Fraction(0)
                    if is_root(_sub(s, a)):
                        t1 = N(s, na) * N(r, nb) / rs.inner(_sub(s, a), _sub(s, a))
                    t2 = Fraction(0)
                    if is_root(_sub(r, a)):
                        t2 = N(na, r) * N(s, nb) / rs.inner(_sub(r, a), _sub(r, a))
                    val = rs.inner(xi, xi) / N(a, b) * (t1 + t2)
        elif not rp and not sp:
            val = -N(_neg(r), _neg(s))
        else:
            t = _neg(_add(r, s))
            if is_pos(s) == is_pos(t):
                val = rs.inner(t, t) / rs.inner(r, r) * N(s, t)
            else:
                val = rs.inner(t, t) / rs.inner(s, s) * N(t, r)
        memo[key] = val
        return val

    out = {}
    for r in rs.roots:
        for s in rs.roots:
            if is_root(_add(r, s)):
                v = N(r, s)
                if v.denominator != 1 or v == 0:
                    raise ChevalleyError(f"non-integral structure constant N{r},{s} = {v}")
                out[(r, s)] = int(v)
    return out


@dataclass(frozen=True)
class CharPolyProfile:
    p: list
    l: int
    delta: Fraction


class ChevalleyAlgebra:
    """Semisimple Lie algebra over Q on a Chevalley basis."""

    def __init__(self, rs: RootSystem, verify: bool = True):
        self.rs = rs
        self.rank = rs.rank
        m = rs.num_positive
        l = rs.rank
        self.num_positive = m
        self.dim = 2 * m + l
        self.labels = []
        for r in rs.positive:
            self.labels.append("e" if l == 1 else "e" + "".join(map(str, r)))
        self.labels += ["h" if l == 1 else f"h{i + 1}" for i in range(l)]
        for r in rs.positive:
            self.labels.append("f" if l == 1 else "f" + "".join(map(str, r)))
        Nc = structure_constants(rs)
        self.N = Nc
        # table[a][b] = {k: coeff} for [b_a, b_b]
        dim = self.dim
        table = [[{} for _ in range(dim)] for _ in range(dim)]
        for a in range(dim):
            for b in range(dim):
                table[a][b] = self._bracket_basis(a, b, Nc)
        self.table = table
        # ad matrices of basis vectors as integer rows
        self._ad = []
        for a in range(dim):
            M = [[0] * dim for _ in range(dim)]
            for b in range(dim):
                for k, c in table[a][b].items():
                    M[k][b] = c
            self._ad.append(M)
        if verify:
            bad = self.jacobi_failures()
            if bad:
                raise ChevalleyError(f"Jacobi identity fails on {len(bad)} triples, e.g. {bad[0]}")

    # basis bookkeeping
    def root_of(self, a: int):
        m, l = self.num_positive, self.rank
        if a < m:
            return self.rs.positive[a]
        if a >= m + l:
            return _neg(self.rs.positive[a - m - l])
        return None

    def basis_of_root(self, r) -> int:
        i = self.rs.index[tuple(r)]
        m, l = self.num_positive, self.rank
        return i if i < m else i + l

    def h_index(self, i: int) -> int:
        return self.num_positive + i

    def coroot(self, r) -> list[Fraction]:
        """``h_r`` in the ``h_i`` basis: ``sum c_i (alpha_i,alpha_i)/(r,r) h_i``."""
        rr = self.rs.inner(r, r)
        return [Fraction(2 * c * self.rs.d[i], 1) / rr for i, c in enumerate(r)]

    def _bracket_basis(self, a, b, Nc) -> dict:
        ra, rb = self.root_of(a), self.root_of(b)
        if ra is None and rb is None:
            return {}
        if ra is None:
            i = a - self.num_positive
            c = self.rs.pairing(rb, i)
            return {b: c} if c else {}
        if rb is None:
            i = b - self.num_positive
            c = -self.rs.pairing(ra, i)
            return {a: c} if c else {}
        s = _add(ra, rb)
        if all(x == 0 for x in s):
            out = {}
            for i, c in enumerate(self.coroot(ra)):
                if c:
                    if c.denominator != 1:
                        raise ChevalleyError("non-integral coroot")
                    out[self.h_index(i)] = int(c)
            return out
        if s in self.rs.index:
            return {self.basis_of_root(s): Nc[(ra, rb)]}
        return {}

    # elements are lists of Fractions of length dim
    def zero(self) -> list[Fraction]:
        return [Fraction(0)] * self.dim

    def basis_vector(self, a: int) -> list[Fraction]:
        v = self.zero()
        v[a] = Fraction(1)
        return v

    def bracket(self, x, y) -> list[Fraction]:
        out = [Fraction(0)] * self.dim
        for a, xa in enumerate(x):
            if not xa:
                continue
            row = self.table[a]
            for b, yb in enumerate(y):
                if not yb:
                    continue
                for k, c in row[b].items():
                    out[k] += xa * yb * c
        return out

    def ad(self, x) -> QMatrix:
        if len(x) != self.dim:
            raise ValueError("element length does not match algebra dimension")
        M = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for a, xa in enumerate(x):
            if not xa:
                continue
            A = self._ad[a]
            xa = Q(xa)
            for i in range(self.dim):
                Ai = A[i]
                Mi = M[i]
                for j in range(self.dim):
                    if Ai[j]:
                        Mi[j] += xa * Ai[j]
        return QMatrix(M, self.dim)

    def ad_basis(self, a: int) -> list[list[int]]:
        return self._ad[a]

    def killing_matrix(self) -> QMatrix:
        if not hasattr(self, "_killing"):
            n = self.dim
            K = [[0] * n for _ in range(n)]
            for a in range(n):
                A = self._ad[a]
                for b in range(a, n):
                    B = self._ad[b]
                    t = 0
                    for i in range(n):
                        Ai = A[i]
                        for j in range(n):
                            if Ai[j] and B[j][i]:
                                t += Ai[j] * B[j][i]
                    K[a][b] = K[b][a] = t
            self._killing = QMatrix(K, n)
        return self._killing

    def killing(self, x, y) -> Fraction:
        K = self.killing_matrix().entries
        s = Fraction(0)
        for a, xa in enumerate(x):
            if xa:
                for b, yb in enumerate(y):
                    if yb and K[a][b]:
                        s += xa * yb * K[a][b]
        return s

    def jacobi_failures(self, limit: int = 5) -> list:
        dim = self.dim
        t = self.table
        bad = []
        for a in range(dim):
            for b in range(a, dim):
                if {k: -v for k, v in t[b][a].items()} != t[a][b]:
                    bad.append((a, b, b))
        if bad:
            return bad[:limit]

        def br(a, v: dict) -> dict:
            out: dict = {}
            for k, c in v.items():
                for k2, c2 in t[a][k].items():
                    out[k2] = out.get(k2, 0) + c * c2
            return out

        for a in range(dim):
            for b in range(a + 1, dim):
                for c in range(b + 1, dim):
                    acc: dict = {}
                    for (x, y, z) in ((a, b, c), (b, c, a), (c, a, b)):
                        for k, v in br(x, t[y][z]).items():
                            acc[k] = acc.get(k, 0) + v
                    if any(acc.values()):
                        bad.append((a, b, c))
                        if len(bad) >= limit:
                            return bad
        return bad


@lru_cache(maxsize=32)
def _chevalley_cached(cartan_key) -> ChevalleyAlgebra:
    return ChevalleyAlgebra(RootSystem([list(r) for r in cartan_key]))


def chevalley(rs_or_cartan) -> ChevalleyAlgebra:
    """Chevalley algebra from a RootSystem, a Cartan matrix or a type string."""
    if isinstance(rs_or_cartan, str):
        rs_or_cartan = cartan_matrix(rs_or_cartan)
    if isinstance(rs_or_cartan, RootSystem):
        cartan = rs_or_cartan.cartan
    else:
        cartan = rs_or_cartan
    return _chevalley_cached(tuple(tuple(int(x) for x in r) for r in cartan))


def ad(alg: ChevalleyAlgebra, x) -> QMatrix:
    return alg.ad(x)


def delta_profile(alg: ChevalleyAlgebra, x) -> CharPolyProfile:
    """``p_i(x)`` from ``det(t - ad x) = sum (-1)^(n-i) p_i(x) t^i``; ``delta = p_l``."""
    c = char_poly(alg.ad(x))
    n = alg.dim
    p = [c[i] if (n - i) % 2 == 0 else -c[i] for i in range(n + 1)]
    return CharPolyProfile(p=p, l=alg.rank, delta=p[alg.rank])


def cartan_element(alg: ChevalleyAlgebra, H) -> list[Fraction]:
    """``sum H_i h_i`` as an algebra element."""
    v = alg.zero()
    for i, x in enumerate(H):
        v[alg.h_index(i)] = Q(x)
    return v


__all__ = [
    "ChevalleyAlgebra",
    "ChevalleyError",
    "CharPolyProfile",
    "RootSystemError",
    "ad",
    "cartan_element",
    "chevalley",
    "delta_profile",
    "structure_constants",
]
