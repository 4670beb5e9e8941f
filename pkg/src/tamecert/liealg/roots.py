"""Cartan matrices, root systems and a generic finite root set.

Cartan matrices follow ``A[i][j] = alpha_j(h_i) = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i)``
with Bourbaki numbering, so ``B2 = [[2, -1], [-2, 2]]`` (``alpha_2`` short) and
``G2 = [[2, -3], [-1, 2]]`` (``alpha_1`` short).
"""
from __future__ import annotations

import re
from collections import deque
from fractions import Fraction
from itertools import product
from typing import Sequence

from ..exact import QMatrix, Q, coordinates, kernel_basis, rank as mat_rank

ROOT_CAP = 1000
WEYL_CAP = 60000


class RootSystemError(TypeError):
    """Input is not a Cartan matrix of finite type."""


# --- Cartan matrices ----------------------------------------------------------

def _chain(n):
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
        if i + 1 < n:
            a[i][i + 1] = a[i + 1][i] = -1
    return a


def _simple_cartan(letter: str, n: int) -> list[list[int]]:
    if letter == "A" and n >= 1:
        return _chain(n)
    if letter == "B" and n >= 2:
        a = _chain(n)
        a[n - 1][n - 2] = -2
        return a
    if letter == "C" and n >= 2:
        a = _chain(n)
        a[n - 2][n - 1] = -2
        return a
    if letter == "D" and n >= 4:
        a = _chain(n - 1) + [[0] * n]
        for r in a[: n - 1]:
            r.append(0)
        a[n - 1][n - 1] = 2
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
        return a
    if letter == "E" and n in (6, 7, 8):
        a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, n - 1)]
        for i, j in edges:
            a[i][j] = a[j][i] = -1
        return a
    if letter == "F" and n == 4:
        a = _chain(4)
        a[2][1] = -2
        return a
    if letter == "G" and n == 2:
        return [[2, -3], [-1, 2]]
    raise RootSystemError(f"unknown Cartan type {letter}{n}")


def block_diagonal(blocks: Sequence[Sequence[Sequence[int]]]) -> list[list[int]]:
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
        off += len(b)
    return out


def cartan_matrix(name: str) -> list[list[int]]:
    """Cartan matrix from a type string such as ``"A3"``, ``"G2"`` or ``"A1xB2"``."""
    parts = [p for p in re.split(r"[x+*]", name.replace(" ", "")) if p]
    if not parts:
        raise RootSystemError("empty type string")
    blocks = []
    for p in parts:
        m = re.fullmatch(r"([A-Ga-g])(\d+)", p)
        if not m:
            raise RootSystemError(f"cannot parse type {p!r}")
        blocks.append(_simple_cartan(m.group(1).upper(), int(m.group(2))))
    return block_diagonal(blocks)


def components(cartan: Sequence[Sequence[int]]) -> list[list[int]]:
    """Connected components of the Dynkin diagram, each sorted."""
    n = len(cartan)
    seen = [False] * n
    out = []
    for s in range(n):
        if seen[s]:
            continue
        comp, todo = [], [s]
        seen[s] = True
        while todo:
            i = todo.pop()
            comp.append(i)
            for j in range(n):
                if not seen[j] and cartan[i][j] != 0:
                    seen[j] = True
                    todo.append(j)
        out.append(sorted(comp))
    return out


def symmetrizer(cartan: Sequence[Sequence[int]]) -> list[Fraction]:
    """``d_i = (alpha_i, alpha_i)/2`` with ``d_i A_ij = d_j A_ji``; shortest roots get 1."""
    n = len(cartan)
    for i in range(n):
        if cartan[i][i] != 2:
            raise RootSystemError("Cartan diagonal must be 2")
        for j in range(n):
            if i != j and (cartan[i][j] > 0 or (cartan[i][j] == 0) != (cartan[j][i] == 0)):
                raise RootSystemError("invalid off-diagonal Cartan entries")
    d: list = [None] * n
    for comp in components(cartan):
        d[comp[0]] = Fraction(1)
        todo = [comp[0]]
        while todo:
            i = todo.pop()
            for j in comp:
                if j != i and cartan[i][j] != 0:
                    val = d[i] * cartan[i][j] / cartan[j][i]
                    if d[j] is None:
                        d[j] = val
                        todo.append(j)
                    elif d[j] != val:
                        raise RootSystemError("Cartan matrix is not symmetrizable")
        m = min(d[i] for i in comp)
        for i in comp:
            d[i] = d[i] / m
    return d


# --- root system from a Cartan matrix -------------------------------------------

class RootSystem:
    """Roots as integer coefficient vectors in the simple-root basis.

    ``roots`` lists the positive roots ordered by (height, coefficients), then
    the negatives in the same order.
    """

    def __init__(self, cartan):
        cartan = [list(map(int, r)) for r in cartan]
        n = len(cartan)
        if any(len(r) != n for r in cartan) or n == 0:
            raise RootSystemError("Cartan matrix must be square and nonempty")
        self.cartan = cartan
        self.rank = n
        self.d = symmetrizer(cartan)
        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        found = set(simple)
        todo = deque(simple)
        while todo:
            b = todo.popleft()
            for i in range(n):
                c = self.pairing(b, i)
                nb = tuple(b[k] - (c if k == i else 0) for k in range(n))
                if nb not in found:
                    found.add(nb)
                    if len(found) > ROOT_CAP:
                        raise RootSystemError("reflection closure exceeds cap; Cartan matrix is not of finite type")
                    todo.append(nb)
        pos = sorted((r for r in found if all(x >= 0 for x in r)), key=lambda r: (sum(r), r))
        if len(pos) * 2 != len(found):
            raise RootSystemError("root set is not split into positive and negative roots")
        self.positive = pos
        self.roots = pos + [tuple(-x for x in r) for r in pos]
        self.index = {r: i for i, r in enumerate(self.roots)}
        self.num_positive = len(pos)

    def pairing(self, beta, i) -> int:
        """``beta(h_i) = sum_j beta_j A_ij``."""
        return sum(beta[j] * self.cartan[i][j] for j in range(self.rank))

    def functional(self, beta) -> tuple:
        return tuple(self.pairing(beta, i) for i in range(self.rank))

    def inner(self, a, b) -> Fraction:
        # (alpha_i, alpha_j) = d_i A_ij
        s = Fraction(0)
        for i in range(self.rank):
            if a[i]:
                for j in range(self.rank):
                    if b[j]:
                        s += a[i] * b[j] * self.d[i] * self.cartan[i][j]
        return s

    def is_root(self, beta) -> bool:
        return tuple(beta) in self.index

    def height(self, beta) -> int:
        return sum(beta)

    def __len__(self):
        return len(self.roots)

    def root_set(self) -> "RootSet":
        """Generic view: roots as functionals on the Cartan subalgebra in the ``h_i`` basis."""
        funcs = [self.functional(r) for r in self.roots]
        # inner product on functionals: (f, g) = c_f^T B c_g with f = A c
        gram_roots = QMatrix([[self.inner(a, b) for b in self.roots] for a in self.roots])
        return RootSet(funcs, _dual_gram(funcs, gram_roots))


def build_root_system(cartan) -> RootSystem:
    return RootSystem(cartan)


def _dual_gram(funcs, gram_roots: QMatrix) -> QMatrix:
    """Gram matrix ``G`` on functional coordinates with ``f G g^T`` matching ``gram_roots``."""
    n = len(funcs[0])
    basis_idx = []
    for i, f in enumerate(funcs):
        if mat_rank(QMatrix([funcs[j] for j in basis_idx + [i]])) > len(basis_idx):
            basis_idx.append(i)
        if len(basis_idx) == n:
            break
    F = QMatrix([funcs[i] for i in basis_idx])  # rows are basis functionals
    Gb = QMatrix([[gram_roots[i, j] for j in basis_idx] for i in basis_idx])
    Finv = inverse(F)
    return Finv @ Gb @ Finv.transpose()


def inverse(m: QMatrix) -> QMatrix:
    n = m.rows
    if not m.is_square:
        raise ValueError("inverse of a non-square matrix")
    cols = []
    for j in range(n):
        e = [Fraction(int(i == j)) for i in range(n)]
        cols.append(coordinates(e, [m.column(k) for k in range(n)]))
    return QMatrix.from_columns(cols, n)


# --- generic root sets ------------------------------------------------------------

def _small_vectors(n: int):
    """Integer vectors ordered by max-norm then lexicographically."""
    r = 1
    while True:
        for v in product(range(-r, r + 1), repeat=n):
            if max(abs(x) for x in v) == r:
                yield v
        r += 1


class RootSet:
    """A finite (possibly non-reduced) root system given by functionals.

    ``funcs`` are the roots as coordinate vectors of linear forms on a space
    with a fixed basis; ``gram`` is the inner product on those coordinates.
    Construction picks a deterministic positive system and sorts the roots
    as: positive roots by (height, coordinates), then their negatives.
    """

    def __init__(self, funcs, gram: QMatrix):
        fs = {tuple(Q(x) for x in f) for f in funcs}
        if not fs:
            raise RootSystemError("empty root set")
        self.dim = len(next(iter(fs)))
        self.gram = gram
        for f in fs:
            if tuple(-x for x in f) not in fs:
                raise RootSystemError("root set is not symmetric")
        # positive system from the first small vector on which no root vanishes
        for v in _small_vectors(self.dim):
            vals = [sum(a * b for a, b in zip(f, v)) for f in fs]
            if all(vals):
                break
        pos = [f for f in fs if sum(a * b for a, b in zip(f, v)) > 0]
        pos_set = set(pos)
        simple = [f for f in pos if not any(
            tuple(a - b for a, b in zip(f, g)) in pos_set for g in pos)]
        simple.sort()
        self.simple_funcs = simple
        heights = {}
        for f in pos:
            c = coordinates(list(f), [list(s) for s in simple]) if simple else []
            heights[f] = sum(c)
        pos.sort(key=lambda f: (heights[f], f))
        self.roots = pos + [tuple(-x for x in f) for f in pos]
        self.num_positive = len(pos)
        self.index = {f: i for i, f in enumerate(self.roots)}
        self.height = [heights[f] for f in pos] + [-heights[f] for f in pos]
        self.simple = [self.index[f] for f in simple]
        self.rank = len(simple)
        n = len(self.roots)
        self.neg = [self.index[tuple(-x for x in f)] for f in self.roots]
        self._sum = {}
        for i in range(n):
            for j in range(n):
                s = tuple(a + b for a, b in zip(self.roots[i], self.roots[j]))
                k = self.index.get(s)
                if k is not None:
                    self._sum[(i, j)] = k
        self._ip = [[self._inner_f(a, b) for b in self.roots] for a in self.roots]
        self._weyl = None

    def _inner_f(self, a, b) -> Fraction:
        g = self.gram.entries
        s = Fraction(0)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y and g[i][j]:
                        s += x * y * g[i][j]
        return s

    def __len__(self):
        return len(self.roots)

    def inner(self, i: int, j: int) -> Fraction:
        return self._ip[i][j]

    def sum_index(self, i: int, j: int):
        return self._sum.get((i, j))

    def is_positive(self, i: int) -> bool:
        return i < self.num_positive

    def is_reduced(self) -> bool:
        return not any(tuple(2 * x for x in f) in self.index for f in self.roots)

    def reflection_perm(self, i: int) -> tuple:
        """Permutation of root indices induced by the reflection in root ``i``."""
        out = []
        a = self.roots[i]
        aa = self._ip[i][i]
        for j, f in enumerate(self.roots):
            c = 2 * self._ip[j][i] / aa
            out.append(self.index[tuple(x - c * y for x, y in zip(f, a))])
        return tuple(out)

    def weyl_perms(self, cap: int = WEYL_CAP) -> list[tuple]:
        """All Weyl group elements as root permutations (BFS from the identity)."""
        if self._weyl is not None:
            return self._weyl
        gens = [self.reflection_perm(i) for i in self.simple]
        ident = tuple(range(len(self.roots)))
        seen = {ident}
        order = [ident]
        todo = deque([ident])
        while todo:
            g = todo.popleft()
            for s in gens:
                h = tuple(s[k] for k in g)
                if h not in seen:
                    seen.add(h)
                    order.append(h)
                    if len(order) > cap:
                        raise RootSystemError(f"Weyl group larger than cap {cap}")
                    todo.append(h)
        self._weyl = order
        return order

    def span_rank(self, idx) -> int:
        idx = list(idx)
        if not idx:
            return 0
        return mat_rank(QMatrix([self.roots[i] for i in idx]))

    def annihilator(self, idx) -> list[list[Fraction]]:
        """Basis of ``{H : f(H) = 0 for f in idx}``, i.e. ``h_P^perp``."""
        idx = list(idx)
        if not idx:
            return [[Fraction(int(i == j)) for i in range(self.dim)] for j in range(self.dim)]
        return kernel_basis(QMatrix([self.roots[i] for i in idx]))

    def evaluate(self, i: int, H) -> Fraction:
        return sum((a * b for a, b in zip(self.roots[i], H) if a and b), Fraction(0))

    def saturation(self, idx) -> frozenset:
        """All roots vanishing on the common kernel of ``idx``."""
        ker = self.annihilator(idx)
        return frozenset(i for i in range(len(self.roots)) if all(self.evaluate(i, H) == 0 for H in ker))


def dynkin_label(rs: RootSet, idx) -> str:
    """Type of the root subsystem ``idx`` (a closed symmetric subset), e.g. ``"A1+A1~"``.

    A trailing ``~`` marks a component whose roots are all shorter than the
    longest roots of the ambient irreducible component.
    """
    idx = sorted(idx)
    if not idx:
        return "0"
    comps = subsystem_components(rs, idx)
    labels = []
    for comp in comps:
        labels.append(_classify_component(rs, comp))
    labels.sort(key=_label_key)
    return "+".join(labels)


def _label_key(lbl):
    m = re.match(r"([A-Z]+)(\d+)(~?)", lbl)
    return (m.group(1), -int(m.group(2)), m.group(3))


def subsystem_components(rs: RootSet, idx) -> list[list[int]]:
    """Irreducible components of a root subsystem, as sorted index lists."""
    idx = sorted(idx)
    seen = set()
    comps = []
    for s in idx:
        if s in seen:
            continue
        comp, todo = [], [s]
        seen.add(s)
        while todo:
            i = todo.pop()
            comp.append(i)
            for j in idx:
                if j not in seen and rs.inner(i, j) != 0:
                    seen.add(j)
                    todo.append(j)
        comps.append(sorted(comp))
    return comps


def subsystem_simple(rs: RootSet, comp) -> list[int]:
    """Simple roots of a subsystem with respect to the ambient positive system."""
    pos = [i for i in comp if rs.is_positive(i)]
    pos_set = set(pos)
    out = []
    for i in pos:
        dec = False
        for j in pos:
            if j == i:
                continue
            diff = tuple(a - b for a, b in zip(rs.roots[i], rs.roots[j]))
            k = rs.index.get(diff)
            if k is not None and k in pos_set:
                dec = True
                break
        if not dec:
            out.append(i)
    return out


def subsystem_cartan(rs: RootSet, simple) -> list[list[int]]:
    out = []
    for i in simple:
        row = []
        for j in simple:
            v = 2 * rs.inner(i, j) / rs.inner(i, i)
            if v.denominator != 1:
                raise RootSystemError("non-integral Cartan entry")
            row.append(int(v))
        out.append(row)
    return out


def _ambient_max_length(rs: RootSet, i: int) -> Fraction:
    comp = next(c for c in _ambient_components(rs) if i in c)
    return max(rs.inner(j, j) for j in comp)


def _ambient_components(rs: RootSet):
    if not hasattr(rs, "_amb"):
        rs._amb = subsystem_components(rs, range(len(rs)))
    return rs._amb


def chain_order(cartan, simple):
    """Order the simple roots of a type A component along the Dynkin chain."""
    n = len(simple)
    if n == 1:
        return list(simple)
    adj = {a: [b for b in range(n) if b != a and cartan[a][b] != 0] for a in range(n)}
    start = min(a for a in range(n) if len(adj[a]) == 1)
    order = [start]
    prev = None
    cur = start
    while len(order) < n:
        nxt = [b for b in adj[cur] if b != prev][0]
        order.append(nxt)
        prev, cur = cur, nxt
    return [simple[k] for k in order]


def classify_cartan(cartan) -> str:
    """Type letter and rank of a connected Cartan matrix (reduced system)."""
    n = len(cartan)
    rs = RootSystem(cartan)
    nroots = len(rs.roots)
    lengths = {rs.d[i] for i in range(n)}
    laced = len(lengths) == 1
    if laced:
        if nroots == n * (n + 1):
            return f"A{n}"
        if n >= 4 and nroots == 2 * n * (n - 1):
            return f"D{n}"
        if n in (6, 7, 8) and nroots == {6: 72, 7: 126, 8: 240}[n]:
            return f"E{n}"
    else:
        if n == 2 and nroots == 12:
            return "G2"
        if n == 4 and nroots == 48:
            return "F4"
        if nroots == 2 * n * n:
            if n == 2:
                return "B2"
            long_count = sum(1 for i in range(n) if rs.d[i] == max(lengths))
            return f"B{n}" if long_count == n - 1 else f"C{n}"
    raise RootSystemError("unrecognized Cartan matrix")


def _classify_component(rs: RootSet, comp) -> str:
    reduced = [i for i in comp if not any(
        tuple(Fraction(x, 2) for x in rs.roots[i]) == rs.roots[j] for j in comp)]
    simple = subsystem_simple(rs, reduced)
    cartan = subsystem_cartan(rs, simple)
    label = classify_cartan(cartan)
    if len(reduced) != len(comp):
        # doubled roots present: only BC_n arises among irreducible systems
        return f"BC{len(simple)}"
    if label[0] == "A":
        amb = _ambient_max_length(rs, comp[0])
        if rs.inner(comp[0], comp[0]) < amb:
            label += "~"
    return label
