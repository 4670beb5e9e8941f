"""Stratification of a semisimple algebra by centralizer type and nilpotent orbit.

A class is a closed symmetric root subset ``P`` up to the Weyl group.  For a
generic ``s`` with ``alpha(s) = 0`` exactly for ``alpha in P`` the centralizer
is ``g^s = h_P^perp + q_P`` with ``q_P = h_P + g_P`` semisimple, and a stratum
is the union of the orbits through ``s + n`` with ``n`` in a fixed nilpotent
orbit of ``q_P``.

The generic machinery works on a :class:`RootSet`, so the same code serves
ordinary roots (on ``h``) and restricted roots of a symmetric pair (on ``a``).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Mapping, Sequence

from .exact import kernel_basis
from .liealg.chevalley import ChevalleyAlgebra, cartan_element
from .liealg.roots import (
    RootSet,
    chain_order,
    dynkin_label,
    subsystem_cartan,
    subsystem_components,
    subsystem_simple,
    _classify_component,
)
from .liealg.sl2 import adjoint_weights_sln, dominates, lambda_invariant, partitions

RANK_CAP = 4


class StrataError(ValueError):
    pass


class UnsupportedFactorError(StrataError):
    """A simple factor is not of type A and no orbit data was supplied."""


class NotSaturatedError(StrataError):
    def __init__(self, members, saturation):
        super().__init__("no generic point: some root outside P vanishes on h_P^perp")
        self.members = members
        self.saturation = saturation


# --- closed symmetric subsets ---------------------------------------------------

def is_closed_symmetric(rs: RootSet, members) -> bool:
    ms = set(members)
    for i in ms:
        if rs.neg[i] not in ms:
            return False
        for j in ms:
            k = rs.sum_index(i, j)
            if k is not None and k not in ms:
                return False
    return True


def closure(rs: RootSet, members) -> frozenset:
    """Smallest closed symmetric subset containing ``members``."""
    ms = set(members) | {rs.neg[i] for i in members}
    todo = deque(ms)
    while todo:
        i = todo.popleft()
        for j in list(ms):
            for k in (rs.sum_index(i, j), rs.sum_index(j, i)):
                if k is not None and k not in ms:
                    ms.add(k)
                    ms.add(rs.neg[k])
                    todo.append(k)
                    todo.append(rs.neg[k])
    return frozenset(ms)


def canonical(rs: RootSet, members) -> tuple:
    """Lexicographically least sorted image of ``members`` under the Weyl group."""
    ms = list(members)
    return min(tuple(sorted(g[i] for i in ms)) for g in rs.weyl_perms())


def _check_cap(rs: RootSet, cap: int):
    if rs.rank > cap:
        raise StrataError(f"rank {rs.rank} exceeds the enumeration cap {cap}")


def closed_symmetric_subsets(rs: RootSet, cap: int = RANK_CAP) -> list[frozenset]:
    """One representative per Weyl class, found by growing closures breadth first."""
    _check_cap(rs, cap)
    seen = {canonical(rs, ()): frozenset()}
    todo = deque([frozenset()])
    while todo:
        P = todo.popleft()
        for i in range(rs.num_positive):
            if i in P:
                continue
            Q = closure(rs, P | {i})
            c = canonical(rs, Q)
            if c not in seen:
                seen[c] = frozenset(c)
                todo.append(frozenset(c))
    return _sorted_classes(rs, seen.values())


def closed_symmetric_subsets_bruteforce(rs: RootSet, cap: int = RANK_CAP) -> list[frozenset]:
    """Every symmetric subset filtered by closure; quadratic in ``2^|Phi+|``."""
    _check_cap(rs, cap)
    m = rs.num_positive
    seen = {}
    for mask in range(1 << m):
        members = [i for i in range(m) if mask >> i & 1]
        members += [rs.neg[i] for i in members]
        if is_closed_symmetric(rs, members):
            c = canonical(rs, members)
            seen.setdefault(c, frozenset(c))
    return _sorted_classes(rs, seen.values())


def _sorted_classes(rs, classes):
    return sorted(classes, key=lambda P: (len(P), dynkin_label(rs, P), tuple(sorted(P))))


def saturated_classes(rs: RootSet, cap: int = RANK_CAP) -> list[frozenset]:
    """Classes of subsets equal to their saturation; these index the strata."""
    out = {}
    for P in closed_symmetric_subsets(rs, cap):
        S = rs.saturation(P)
        c = canonical(rs, S)
        out.setdefault(c, frozenset(c))
    return _sorted_classes(rs, out.values())


def class_ids(rs: RootSet, classes: Sequence[frozenset]) -> list[str]:
    """Type labels, with ``#k`` appended when two classes share a label."""
    labels = [dynkin_label(rs, P) for P in classes]
    out = []
    for i, l in enumerate(labels):
        dup = [j for j, m in enumerate(labels) if m == l]
        out.append(l if len(dup) == 1 else f"{l}#{dup.index(i) + 1}")
    return out


def conjugate_into(rs: RootSet, Q, P) -> bool:
    """Whether some Weyl group element maps ``Q`` into ``P``."""
    P = set(P)
    return any(all(g[i] in P for i in Q) for g in rs.weyl_perms())


# --- generic points ------------------------------------------------------------------

def generic_point(rs: RootSet, P) -> list[Fraction]:
    """Small integer point ``H`` with ``alpha(H) = 0`` exactly for ``alpha in P``."""
    P = frozenset(P)
    ker = rs.annihilator(P)
    sat = rs.saturation(P)
    if sat != P:
        raise NotSaturatedError(P, sat)
    outside = [i for i in range(len(rs)) if i not in P]
    k = len(ker)
    if k == 0 or not outside:
        return [Fraction(0)] * rs.dim
    r = 1
    while True:
        for c in product(range(-r, r + 1), repeat=k):
            if max(abs(x) for x in c) != r:
                continue
            H = [sum((ci * v[j] for ci, v in zip(c, ker)), Fraction(0)) for j in range(rs.dim)]
            if all(rs.evaluate(i, H) != 0 for i in outside):
                return H
        r += 1


# --- orbit data ---------------------------------------------------------------------

@dataclass(frozen=True)
class OrbitData:
    label: str
    weights: tuple
    distinguished: bool
    partitions: tuple | None = None  # per type A factor, when known


def factor_orbits(rs: RootSet, P, nilpotent_data: Mapping | None = None) -> list[list[OrbitData]]:
    """Nilpotent orbits of each simple factor of ``q_P``.

    Type A factors are enumerated by partitions; other types come from
    ``nilpotent_data[type]`` as a list of ``{"label", "weights", "distinguished"}``.
    """
    out = []
    for comp in subsystem_components(rs, P):
        label = _classify_component(rs, comp)
        letter = label.rstrip("~")
        simple = subsystem_simple(rs, comp)
        dim_factor = len(comp) + len(simple)
        if letter.startswith("A"):
            n = int(letter[1:]) + 1
            orbits = [
                OrbitData(
                    label="[" + ",".join(map(str, p)) + "]",
                    weights=tuple(adjoint_weights_sln(p)),
                    distinguished=len(p) == 1,
                    partitions=(p,),
                )
                for p in partitions(n)
            ]
        else:
            data = (nilpotent_data or {}).get(letter)
            if data is None:
                raise UnsupportedFactorError(
                    f"factor {letter} is not of type A; supply its orbits under nilpotent_data[{letter!r}]")
            orbits = []
            for entry in data:
                ws = tuple(sorted((int(x) for x in entry["weights"]), reverse=True))
                if sum(w + 1 for w in ws) != dim_factor:
                    raise StrataError(f"weights for {letter} orbit {entry.get('label')} do not add up to dim {dim_factor}")
                orbits.append(OrbitData(str(entry["label"]), ws, bool(entry.get("distinguished", False))))
            if not any(all(w == 0 for w in o.weights) for o in orbits):
                orbits.append(OrbitData("0", (0,) * dim_factor, False))
        out.append(orbits)
    return out


def component_permutations(rs: RootSet, P) -> list[tuple]:
    """Permutations of the simple factors of ``q_P`` induced by ``{w in W : wP = P}``."""
    P = frozenset(P)
    comps = [frozenset(c) for c in subsystem_components(rs, P)]
    where = {i: k for k, c in enumerate(comps) for i in c}
    perms = set()
    for g in rs.weyl_perms():
        if all(g[i] in P for i in P):
            perms.add(tuple(where[g[next(iter(c))]] for c in comps))
    return sorted(perms)


def product_orbits(factors: list[list[OrbitData]], symmetries: Sequence[tuple] = ()) -> list[OrbitData]:
    """Orbits of ``q_P`` as products over factors.

    Combinations related by a permutation in ``symmetries`` lie in the same
    stratum; the first one in enumeration order is kept.
    """
    if not factors:
        return [OrbitData("0", (), True, ())]
    out = []
    seen = set()
    for idx in product(*(range(len(f)) for f in factors)):
        # an orbit combo of the factor moved to position perm[k]
        images = []
        for perm in symmetries:
            moved = [None] * len(idx)
            for k, j in enumerate(perm):
                moved[j] = idx[k]
            images.append(tuple(moved))
        if any(im in seen for im in images):
            continue
        seen.add(idx)
        combo = [factors[k][j] for k, j in enumerate(idx)]
        ws = tuple(sorted((w for o in combo for w in o.weights), reverse=True))
        parts = None
        if all(o.partitions is not None for o in combo):
            parts = tuple(o.partitions[0] for o in combo)
        out.append(OrbitData("x".join(o.label for o in combo), ws, all(o.distinguished for o in combo), parts))
    return out


# --- centralizer classes ---------------------------------------------------------------

@dataclass
class SubpairDescriptor:
    class_id: str
    label: str
    members: frozenset
    reduced_dim: int
    rank_s: int
    dim_s: int
    witness: list  # coordinates of a generic point on the Cartan (or a) basis
    center_dim: int


def centralizer_of_class(rs: RootSet, P, class_id: str | None = None) -> SubpairDescriptor:
    """``q_P = h_P + g_P``: ``d_s = |P| + rank P``, ``r_s = rank P``."""
    P = frozenset(P)
    r = rs.span_rank(P)
    H = generic_point(rs, P)
    label = dynkin_label(rs, P)
    return SubpairDescriptor(
        class_id=class_id or label,
        label=label,
        members=P,
        reduced_dim=len(P) + r,
        rank_s=r,
        dim_s=len(P) + r,
        witness=H,
        center_dim=rs.dim - r,
    )


# --- strata ----------------------------------------------------------------------------

@dataclass
class Stratum:
    class_id: str
    p_label: str
    orbit_label: str
    codim: int
    trace_t: Fraction
    mu_bound: Fraction
    lam: int
    redim: int
    rank_s: int
    conic: bool
    distinguished: bool
    weights: tuple
    partitions: tuple | None = field(default=None, repr=False)

    def key(self):
        return (self.class_id, self.orbit_label)


def mu_invariant(rs: RootSet, classes, subs: Sequence[SubpairDescriptor], lambdas: Sequence, target: int):
    """``min (lambda_Q - redim_Q)/2`` over classes ``Q`` conjugate into class ``target``.

    ``lambdas[k]`` is ``lambda_{p^s}`` of class ``k`` or ``None`` when unknown;
    returns ``(mu, missing_class_ids)``.
    """
    best = None
    missing = []
    P = classes[target]
    for k, Qc in enumerate(classes):
        if len(Qc) > len(P) or not conjugate_into(rs, Qc, P):
            continue
        if subs[k].reduced_dim == 0:
            val = Fraction(0)
        elif lambdas[k] is None:
            missing.append(subs[k].class_id)
            continue
        else:
            val = Fraction(lambdas[k] - subs[k].reduced_dim, 2)
        if best is None or val < best:
            best = val
    return best, missing


def _root_set_of(alg: ChevalleyAlgebra) -> RootSet:
    if not hasattr(alg, "_root_set"):
        alg._root_set = alg.rs.root_set()
    return alg._root_set


def enumerate_strata_diagonal(alg: ChevalleyAlgebra, nilpotent_data: Mapping | None = None,
                              check_witness: bool = True) -> list[Stratum]:
    """All strata of ``g`` with codimension, trace and root bound."""
    rs = _root_set_of(alg)
    classes = saturated_classes(rs)
    ids = class_ids(rs, classes)
    subs = [centralizer_of_class(rs, P, cid) for P, cid in zip(classes, ids)]
    orbit_lists = [product_orbits(factor_orbits(rs, P, nilpotent_data), component_permutations(rs, P))
                   for P in classes]
    lambdas = []
    for sub, orbits in zip(subs, orbit_lists):
        dist = [lambda_invariant(o.weights, sub.reduced_dim) for o in orbits if o.distinguished]
        lambdas.append(min(dist) if dist else None)
    out = []
    for k, (P, sub, orbits) in enumerate(zip(classes, subs, orbit_lists)):
        mu, missing = mu_invariant(rs, classes, subs, lambdas, k)
        if missing:
            raise StrataError(f"no distinguished orbit data for classes {missing}")
        for o in orbits:
            lam = lambda_invariant(o.weights, sub.reduced_dim)
            codim = lam
            if check_witness and o.partitions is not None:
                got = witness_codim(alg, rs, P, sub, o.partitions)
                if got != codim:
                    raise StrataError(f"codimension mismatch for {sub.class_id}/{o.label}: {got} vs {codim}")
            out.append(Stratum(
                class_id=sub.class_id,
                p_label=sub.label,
                orbit_label=o.label,
                codim=codim,
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
    return out


def witness_nilpotent(alg: ChevalleyAlgebra, rs: RootSet, P, parts) -> list:
    """Sum of root vectors along each type A chain of ``P``, broken at block boundaries."""
    v = alg.zero()
    for comp, p in zip(subsystem_components(rs, P), parts):
        simple = subsystem_simple(rs, comp)
        chain = chain_order(subsystem_cartan(rs, simple), simple)
        bounds = set()
        acc = 0
        for x in p:
            acc += x
            bounds.add(acc)
        for pos, i in enumerate(chain):
            if pos + 1 not in bounds:
                coeffs = _root_coefficients(alg, rs.roots[i])
                v[alg.basis_of_root(coeffs)] = Fraction(1)
    return v


def _root_coefficients(alg: ChevalleyAlgebra, func) -> tuple:
    for r in alg.rs.roots:
        if alg.rs.functional(r) == tuple(func):
            return r
    raise StrataError("functional is not a root")


def witness_codim(alg, rs, P, sub: SubpairDescriptor, parts) -> int:
    """``dim ker ad(s + n) - dim h_P^perp`` on explicit witnesses."""
    s = cartan_element(alg, sub.witness)
    n = witness_nilpotent(alg, rs, P, parts)
    x = [a + b for a, b in zip(s, n)]
    return len(kernel_basis(alg.ad(x))) - sub.center_dim


def closure_violations(strata: Sequence[Stratum]) -> list:
    """Pairs in one class where a smaller orbit (dominance) fails to have larger codim."""
    bad = []
    by_class: dict = {}
    for s in strata:
        by_class.setdefault(s.class_id, []).append(s)
    for group in by_class.values():
        for a, b in combinations(group, 2):
            if a.partitions is None or b.partitions is None:
                continue
            for lo, hi in ((a, b), (b, a)):
                if all(dominates(h, l) for h, l in zip(hi.partitions, lo.partitions)):
                    if not lo.codim > hi.codim:
                        bad.append((lo.key(), hi.key()))
    return bad


def delta_of_algebra(alg: ChevalleyAlgebra) -> Fraction:
    """``(1+u)/(1-u)`` with ``u = min r_s/d_s`` over classes with ``d_s > 0``."""
    rs = _root_set_of(alg)
    u = None
    for P in saturated_classes(rs):
        sub = centralizer_of_class(rs, P)
        if sub.dim_s > 0:
            q = Fraction(sub.rank_s, sub.dim_s)
            u = q if u is None or q < u else u
    return (1 + u) / (1 - u)


def delta_from_strata(strata: Sequence[Stratum]):
    """``min -t/mu`` over strata with ``mu < 0``; ``None`` when there are none."""
    vals = [-s.trace_t / s.mu_bound for s in strata if s.mu_bound < 0]
    return min(vals) if vals else None


def stratum_classes(alg: ChevalleyAlgebra):
    """``(classes, ids, subpair descriptors)`` for an algebra."""
    rs = _root_set_of(alg)
    classes = saturated_classes(rs)
    ids = class_ids(rs, classes)
    return classes, ids, [centralizer_of_class(rs, P, c) for P, c in zip(classes, ids)]


def root_set(alg: ChevalleyAlgebra) -> RootSet:
    return _root_set_of(alg)
