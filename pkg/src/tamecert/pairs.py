"""Symmetric pairs ``(g, sigma)`` given by descriptor data.

A descriptor names a Chevalley algebra by its Cartan matrix, an involution by
the images of the basis vectors, and a Cartan subspace ``a`` of ``p`` by a
spanning list.  Everything supplied is validated; nothing is searched for.

JSON layout (rationals as ``"p/q"`` strings or integers)::

    {"type": "diagonal" | "<free text>",
     "cartan": [[int]],
     "involution": {"basis_images": [[rational]]},   # row i = sigma(b_i)
     "cartan_subspace": [[rational]],
     "nilpotent_data": {"<class_id>/<orbit>": {"weights": [int], "distinguished": bool}}}
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Mapping

from .exact import QMatrix, Q, char_poly, fmt_q, kernel_basis, poly_eval, row_space_basis, span_dim
from .liealg.chevalley import ChevalleyAlgebra, ChevalleyError, chevalley
from .liealg.roots import RootSet, RootSystemError, block_diagonal, cartan_matrix, inverse
from .liealg.sl2 import lambda_invariant
from .strata import (
    OrbitData,
    StrataError,
    Stratum,
    SubpairDescriptor,
    class_ids,
    component_permutations,
    dynkin_label,
    factor_orbits,
    generic_point,
    mu_invariant,
    product_orbits,
    saturated_classes,
)


class DescriptorError(ValueError):
    """The descriptor is malformed or fails validation."""


@dataclass
class SymmetricPair:
    kind: str
    algebra: ChevalleyAlgebra
    sigma: QMatrix  # column j is sigma(b_j)
    a_basis: list
    nilpotent_data: dict
    k_basis: list = field(default_factory=list)
    p_basis: list = field(default_factory=list)
    root_spaces: dict = field(default_factory=dict)  # functional -> basis of g_alpha
    rootset: RootSet | None = None
    raw: dict = field(default_factory=dict)

    @property
    def dim_p(self) -> int:
        return len(self.p_basis)

    @property
    def m_basis(self) -> list:
        zero = tuple(Fraction(0) for _ in self.a_basis)
        g0 = self.root_spaces[zero]
        return [v for v in _intersect_basis(g0, self.k_basis)]


def _parse_vec(row, n, what) -> list[Fraction]:
    if not isinstance(row, list) or len(row) != n:
        raise DescriptorError(f"{what}: expected a list of {n} rationals")
    try:
        return [Q(x) for x in row]
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise DescriptorError(f"{what}: bad rational ({exc})") from None


def _intersect_basis(u, v):
    from .exact import intersect

    return intersect(u, v)


def _mat_vec(M: QMatrix, v):
    return M.apply(v)


def load_descriptor(data) -> SymmetricPair:
    """Parse and validate a descriptor dictionary."""
    if not isinstance(data, Mapping):
        raise DescriptorError("descriptor must be a JSON object")
    for key in ("type", "cartan", "involution", "cartan_subspace"):
        if key not in data:
            raise DescriptorError(f"missing field {key!r}")
    kind = data["type"]
    if not isinstance(kind, str):
        raise DescriptorError("'type' must be a string")
    cartan = data["cartan"]
    if not (isinstance(cartan, list) and cartan and all(isinstance(r, list) for r in cartan)):
        raise DescriptorError("'cartan' must be a nonempty integer matrix")
    try:
        alg = chevalley([[int(x) for x in r] for r in cartan])
    except (RootSystemError, ChevalleyError, ValueError, TypeError) as exc:
        raise DescriptorError(f"bad Cartan matrix: {exc}") from None
    n = alg.dim
    inv = data["involution"]
    if not isinstance(inv, Mapping) or "basis_images" not in inv:
        raise DescriptorError("'involution' must contain 'basis_images'")
    imgs = inv["basis_images"]
    if not isinstance(imgs, list) or len(imgs) != n:
        raise DescriptorError(f"'basis_images' must list {n} vectors")
    images = [_parse_vec(r, n, f"basis_images[{i}]") for i, r in enumerate(imgs)]
    sigma = QMatrix.from_columns(images, n)
    a_rows = data["cartan_subspace"]
    if not isinstance(a_rows, list) or not a_rows:
        raise DescriptorError("'cartan_subspace' must be a nonempty list of vectors")
    a_basis = [_parse_vec(r, n, f"cartan_subspace[{i}]") for i, r in enumerate(a_rows)]
    nil = data.get("nilpotent_data") or {}
    if not isinstance(nil, Mapping):
        raise DescriptorError("'nilpotent_data' must be an object")
    for key, entry in nil.items():
        if "/" not in key:
            raise DescriptorError(f"nilpotent_data key {key!r} must look like '<class_id>/<orbit>'")
        if not isinstance(entry, Mapping) or not isinstance(entry.get("weights"), list):
            raise DescriptorError(f"nilpotent_data[{key!r}] needs a 'weights' list")
        if not all(isinstance(w, int) and w >= 0 for w in entry["weights"]):
            raise DescriptorError(f"nilpotent_data[{key!r}]: weights must be nonnegative integers")
    pair = SymmetricPair(kind=kind, algebra=alg, sigma=sigma, a_basis=a_basis, nilpotent_data=dict(nil),
                         raw=dict(data))
    validate(pair)
    return pair


def validate(pair: SymmetricPair) -> None:
    alg, S = pair.algebra, pair.sigma
    n = alg.dim
    if not (S @ S) == QMatrix.identity(n):
        raise DescriptorError("involution does not square to the identity")
    cols = [S.column(j) for j in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            lhs = _mat_vec(S, alg.bracket(alg.basis_vector(a), alg.basis_vector(b)))
            if lhs != alg.bracket(cols[a], cols[b]):
                raise DescriptorError(f"involution does not preserve the bracket of basis vectors {a}, {b}")
    K = alg.killing_matrix()
    if not (S.transpose() @ K @ S) == K:
        raise DescriptorError("involution does not preserve the Killing form")
    pair.k_basis = kernel_basis(S - QMatrix.identity(n))
    pair.p_basis = kernel_basis(S + QMatrix.identity(n))
    for i, v in enumerate(pair.a_basis):
        if _mat_vec(S, v) != [-x for x in v]:
            raise DescriptorError(f"cartan_subspace[{i}] is not in p")
    if span_dim(pair.a_basis) != len(pair.a_basis):
        raise DescriptorError("cartan_subspace vectors are linearly dependent")
    for i, u in enumerate(pair.a_basis):
        for j in range(i + 1, len(pair.a_basis)):
            if any(alg.bracket(u, pair.a_basis[j])):
                raise DescriptorError("cartan_subspace is not abelian")
    pair.root_spaces = joint_eigenspaces(alg, pair.a_basis)
    zero = tuple(Fraction(0) for _ in pair.a_basis)
    g0 = pair.root_spaces.get(zero, [])
    if len(_intersect_basis(g0, pair.p_basis)) != len(pair.a_basis):
        raise DescriptorError("a is not maximal abelian in p: its centralizer in p is larger")
    funcs = [f for f in pair.root_spaces if f != zero]
    if not funcs:
        raise DescriptorError("no restricted roots: a acts trivially")
    for f in funcs:
        neg = tuple(-x for x in f)
        ga = pair.root_spaces[f]
        if neg not in pair.root_spaces:
            raise DescriptorError("restricted roots are not symmetric")
        both = ga + pair.root_spaces[neg]
        dp = len(_intersect_basis(both, pair.p_basis))
        dk = len(_intersect_basis(both, pair.k_basis))
        if not len(ga) == dp == dk:
            raise DescriptorError(f"dim g_alpha = {len(ga)} but p- and k-parts have dims {dp}, {dk}")
    Ka = QMatrix([[alg.killing(u, v) for v in pair.a_basis] for u in pair.a_basis])
    try:
        gram = inverse(Ka)
    except ValueError:
        raise DescriptorError("Killing form is degenerate on a") from None
    try:
        pair.rootset = RootSet(funcs, gram)
    except (RootSystemError, ValueError) as exc:
        raise DescriptorError(f"restricted roots do not form a root system: {exc}") from None
    if pair.kind == "diagonal":
        if any(len(pair.root_spaces[f]) != 2 for f in funcs):
            raise DescriptorError("diagonal pair: every restricted root space must have dimension 2")
        if len(pair.m_basis) != len(pair.a_basis):
            raise DescriptorError("diagonal pair: dim m must equal dim a")


def rational_eigenvalues(M: QMatrix) -> list[Fraction]:
    """Eigenvalues of ``M`` in Q, assuming ``M`` is diagonalizable over Q.

    Scale to an integer matrix; its rational eigenvalues are integers bounded by
    the largest absolute row sum, and each candidate is tested on the
    characteristic polynomial.
    """
    L = 1
    for r in M.entries:
        for x in r:
            L = lcm(L, x.denominator)
    Mi = M.scale(L)
    cp = char_poly(Mi)
    bound = max((sum(abs(x) for x in r) for r in Mi.entries), default=0)
    vals = [Fraction(k) for k in range(-int(bound), int(bound) + 1) if poly_eval(cp, k) == 0]
    total = sum(len(kernel_basis(Mi - QMatrix.identity(M.rows).scale(v))) for v in vals)
    if total != M.rows:
        raise DescriptorError("ad(a) is not diagonalizable over Q")
    return [v / L for v in vals]


def joint_eigenspaces(alg: ChevalleyAlgebra, a_basis) -> dict:
    """``{(alpha(a_1), ..., alpha(a_r)): basis of g_alpha}``."""
    n = alg.dim
    spaces = {(): [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]}
    for v in a_basis:
        M = alg.ad(v)
        vals = rational_eigenvalues(M)
        nxt = {}
        for key, V in spaces.items():
            Vm = QMatrix.from_columns(V, n)
            for lam in vals:
                A = (M - QMatrix.identity(n).scale(lam)) @ Vm
                ker = kernel_basis(A)
                if ker:
                    W = [Vm.apply(c) for c in ker]
                    nxt[key + (lam,)] = row_space_basis(W)
        spaces = nxt
    return spaces


def restricted_roots(pair: SymmetricPair) -> dict:
    """``{functional: dim g_alpha}`` over the nonzero restricted roots."""
    zero = tuple(Fraction(0) for _ in pair.a_basis)
    return {f: len(b) for f, b in pair.root_spaces.items() if f != zero}


def subpair(pair: SymmetricPair, P, class_id: str | None = None) -> SubpairDescriptor:
    """Centralizer pair at a generic ``s`` in ``(a_P^perp)'``.

    The derived algebra of ``g^s`` is ``g_P`` plus ``[m, m] + sum [g_alpha, g_-alpha]``;
    that last space is sigma-stable, so its ``p``-part is a projection.
    """
    rs = pair.rootset
    alg = pair.algebra
    P = frozenset(P)
    H = generic_point(rs, P)
    s = [sum((h * v[i] for h, v in zip(H, pair.a_basis)), Fraction(0)) for i in range(alg.dim)]
    zero = tuple(Fraction(0) for _ in pair.a_basis)
    g0 = pair.root_spaces[zero]
    gP = {i: pair.root_spaces[rs.roots[i]] for i in P}
    expected = len(g0) + sum(len(b) for b in gP.values())
    if len(kernel_basis(alg.ad(s))) != expected:
        raise StrataError("generic point has an unexpected centralizer")
    brackets = []
    m = pair.m_basis
    for i, u in enumerate(m):
        for v in m[i + 1:]:
            brackets.append(alg.bracket(u, v))
    for i in P:
        if rs.is_positive(i):
            for u in gP[i]:
                for v in gP[rs.neg[i]]:
                    brackets.append(alg.bracket(u, v))
    S = pair.sigma
    p_parts = [[(x - y) / 2 for x, y in zip(b, S.apply(b))] for b in brackets]
    rank_s = span_dim([v for v in p_parts if any(v)]) if any(any(v) for v in p_parts) else 0
    derived0 = span_dim([b for b in brackets if any(b)]) if any(any(b) for b in brackets) else 0
    p_P = sum(len(gP[i]) for i in P if rs.is_positive(i))
    label = dynkin_label(rs, P)
    return SubpairDescriptor(
        class_id=class_id or label,
        label=label,
        members=P,
        reduced_dim=rank_s + p_P,
        rank_s=rank_s,
        dim_s=derived0 + sum(len(b) for b in gP.values()),
        witness=H,
        center_dim=len(pair.a_basis) - rank_s,
    )


@dataclass
class PairClasses:
    classes: list
    ids: list
    subs: list
    orbits: list  # per class, list of OrbitData
    unknown_keys: list


def pair_classes(pair: SymmetricPair) -> PairClasses:
    rs = pair.rootset
    classes = saturated_classes(rs)
    ids = class_ids(rs, classes)
    subs = [subpair(pair, P, cid) for P, cid in zip(classes, ids)]
    orbits = []
    used = set()
    for P, cid, sub in zip(classes, ids, subs):
        if pair.kind == "diagonal":
            orbs = product_orbits(factor_orbits(rs, P, _type_keyed(pair.nilpotent_data)),
                                  component_permutations(rs, P))
        else:
            orbs = []
            for key in sorted(pair.nilpotent_data):
                c, _, name = key.partition("/")
                if c != cid:
                    continue
                used.add(key)
                entry = pair.nilpotent_data[key]
                ws = tuple(sorted(entry["weights"], reverse=True))
                if len(ws) > sub.reduced_dim:
                    raise DescriptorError(f"nilpotent_data[{key!r}] has more weights than redim = {sub.reduced_dim}")
                orbs.append(OrbitData(name, ws, bool(entry.get("distinguished", False))))
            if not any(o.label == "0" for o in orbs):
                orbs.append(OrbitData("0", (0,) * sub.reduced_dim, sub.reduced_dim == 0))
        orbits.append(orbs)
    unknown = [] if pair.kind == "diagonal" else sorted(set(pair.nilpotent_data) - used)
    if unknown:
        raise DescriptorError(f"nilpotent_data keys {unknown} name no class; classes are {ids}")
    return PairClasses(classes, ids, subs, orbits, unknown)


def _type_keyed(nil: Mapping) -> dict:
    # the diagonal type reuses the algebra convention: orbit lists keyed by factor type
    return {k: v for k, v in nil.items() if isinstance(v, list)}


def class_lambdas(pc: PairClasses) -> list:
    """``lambda_{p^s}`` per class: min over distinguished orbits, ``None`` if none supplied."""
    out = []
    for sub, orbs in zip(pc.subs, pc.orbits):
        vals = [lambda_invariant(o.weights, sub.reduced_dim) for o in orbs if o.distinguished]
        out.append(min(vals) if vals else None)
    return out


@dataclass
class NiceResult:
    ok: bool | None
    witnesses: list
    missing: list


def nice_pair_check(pair: SymmetricPair, pc: PairClasses | None = None) -> NiceResult:
    """``lambda_{p^s} > 0`` for every class with nonzero reduced part."""
    pc = pc or pair_classes(pair)
    lams = class_lambdas(pc)
    witnesses, missing = [], []
    for cid, sub, lam in zip(pc.ids, pc.subs, lams):
        if sub.reduced_dim == 0:
            continue
        if lam is None:
            missing.append(cid)
        elif lam <= 0:
            witnesses.append((cid, lam))
    if witnesses:
        return NiceResult(False, witnesses, missing)
    if missing:
        return NiceResult(None, [], missing)
    return NiceResult(True, [], [])


def enumerate_strata_pair(pair: SymmetricPair, pc: PairClasses | None = None):
    """Strata ``(P, O)`` of ``p``; returns ``(strata, missing_class_ids)``.

    A stratum whose ``mu`` cannot be computed carries ``mu_bound = None``.
    """
    pc = pc or pair_classes(pair)
    rs = pair.rootset
    lams = class_lambdas(pc)
    out, missing_all = [], set()
    for k, (cid, sub, orbs) in enumerate(zip(pc.ids, pc.subs, pc.orbits)):
        mu, missing = mu_invariant(rs, pc.classes, pc.subs, lams, k)
        if missing:
            missing_all.update(missing)
            mu = None
        for o in orbs:
            lam = lambda_invariant(o.weights, sub.reduced_dim)
            out.append(Stratum(
                class_id=cid,
                p_label=sub.label,
                orbit_label=o.label,
                codim=len(o.weights),
                trace_t=Fraction(lam + sub.reduced_dim, 2),
                mu_bound=mu,
                lam=lam,
                redim=sub.reduced_dim,
                rank_s=sub.rank_s,
                conic=True,
                distinguished=o.distinguished,
                weights=o.weights,
                partitions=o.partitions,
            ))
    return out, sorted(missing_all)


# --- builders ---------------------------------------------------------------------------

def diagonal_descriptor(cartan_or_name) -> dict:
    """Descriptor of ``(g x g, diagonal)``: sigma swaps the copies, ``a = {(h, -h)}``."""
    cart = cartan_matrix(cartan_or_name) if isinstance(cartan_or_name, str) else [list(r) for r in cartan_or_name]
    l = len(cart)
    big = block_diagonal([cart, cart])
    alg = chevalley(big)
    n = alg.dim
    rs = alg.rs

    def swap_root(r):
        return tuple(r[l:]) + tuple(r[:l])

    images = []
    for b in range(n):
        r = alg.root_of(b)
        if r is None:
            i = b - alg.num_positive
            target = alg.h_index((i + l) % (2 * l))
        else:
            target = alg.basis_of_root(swap_root(r))
        images.append([fmt_q(int(k == target)) for k in range(n)])
    a_rows = []
    for i in range(l):
        v = [0] * n
        v[alg.h_index(i)] = 1
        v[alg.h_index(i + l)] = -1
        a_rows.append([fmt_q(x) for x in v])
    del rs
    return {
        "type": "diagonal",
        "cartan": big,
        "involution": {"basis_images": images},
        "cartan_subspace": a_rows,
        "nilpotent_data": {},
    }


def sl2_so2_descriptor(nilpotent_data: Mapping | None = None) -> dict:
    """``sigma(e) = -f``, ``sigma(h) = -h``; ``a`` spanned by ``h``."""
    return {
        "type": "sl2/so2",
        "cartan": [[2]],
        "involution": {"basis_images": [["0/1", "0/1", "-1/1"], ["0/1", "-1/1", "0/1"], ["-1/1", "0/1", "0/1"]]},
        "cartan_subspace": [["0/1", "1/1", "0/1"]],
        "nilpotent_data": dict(nilpotent_data or {}),
    }
