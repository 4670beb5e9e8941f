"""Quasi-b-functions of monomial ideals and tameness predicates.

For positive integer weights ``n`` on fiber coordinates ``t_1..t_d`` with
Euler field ``eta = sum n_i t_i D_i``, the polynomial

    b_N(T) = prod_{k<N} prod_{a in A_k} (T + |n| + a),
    A_k = { <n, alpha> : |alpha| = k },

satisfies ``b_N(eta) = sum_{|alpha|=N} C_alpha t^alpha`` for explicit
operators ``C_alpha``.  :func:`certify_membership` builds those operators and
re-expands the sum before returning it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable

from .exact import Q
from .weyl import BPoly, WeightVector, WeylElement, euler_poly, fiber_monomial, mul_euler, multiply


class CertificateError(RuntimeError):
    """A membership certificate failed to re-expand; always an implementation bug."""


def _multi_indices(d: int, N: int):
    # all alpha in N^d with |alpha| = N, in lexicographic order (descending)
    for combo in combinations_with_replacement(range(d), N):
        a = [0] * d
        for i in combo:
            a[i] += 1
        yield tuple(a)


def weight_sums(w: WeightVector, N: int) -> set[Fraction]:
    """``A_N = {<n, alpha> : |alpha| = N}``."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    if N == 0:
        return {Fraction(0)}
    if not w.weights:
        return set()
    return {sum(c, Fraction(0)) for c in combinations_with_replacement(w.weights, N)}


def b_n_poly(w: WeightVector, N: int) -> BPoly:
    """Roots ``-|n| - a`` for ``a in A_k``, ``0 <= k < N``."""
    if N < 1:
        raise ValueError("N must be at least 1")
    tr = w.trace
    roots: dict[Fraction, int] = {}
    for k in range(N):
        for a in weight_sums(w, k):
            r = -tr - a
            roots[r] = roots.get(r, 0) + 1
    return BPoly(roots)


def support_bpoly(w: WeightVector, M: int) -> BPoly:
    """``b_N`` with ``N = (M-1)d + 1``, for a section killed by ``t_i^M``."""
    if M < 1:
        raise ValueError("annihilation exponent must be at least 1")
    return b_n_poly(w, (M - 1) * w.d + 1)


@dataclass
class MembershipCertificate:
    weights: WeightVector
    N: int
    decomposition: list  # [(WeylElement, alpha)]
    bpoly: BPoly = field(repr=False, default=None)

    def expand(self) -> WeylElement:
        w = self.weights
        total = WeylElement(w.dim, {}, w.base_count)
        for coeff, alpha in self.decomposition:
            total = total + multiply(coeff, fiber_monomial(w, alpha))
        return total

    def target(self) -> WeylElement:
        return euler_poly(self.bpoly, self.weights)

    def verify(self) -> bool:
        return self.expand() == self.target()


def certify_membership(w: WeightVector, N: int) -> MembershipCertificate:
    """Write ``b_N(eta)`` in the left ideal generated by ``t^alpha``, ``|alpha| = N``.

    Induction on ``N``.  For ``N = 1``: ``eta + |n| = sum n_i D_i t_i``.  Going
    from ``N`` to ``N + 1`` uses ``t^alpha f(eta) = f(eta - <alpha,n>) t^alpha``:
    the factor ``T + |n|`` of the shifted polynomial is split off as
    ``sum n_i D_i t_i``, and the remaining factors form ``c_alpha``.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    if not w.weights:
        raise ValueError("need at least one fiber coordinate")
    if not w.is_integral():
        raise ValueError("weights must be integers; normalize first")
    dim, b0, d = w.dim, w.base_count, w.d
    n = w.weights
    tr = w.trace
    ders = [WeylElement.der(b0 + i, dim, b0).scale(n[i]) for i in range(d)]

    coeffs: dict[tuple, WeylElement] = {}
    for i in range(d):
        e = [0] * d
        e[i] = 1
        coeffs[tuple(e)] = ders[i]

    for k in range(1, N):
        A = sorted(weight_sums(w, k))
        nxt: dict[tuple, WeylElement] = {}
        for alpha, C in coeffs.items():
            s = sum((a * x for a, x in zip(alpha, n)), Fraction(0))
            # apply c_alpha(eta) one linear factor at a time: each step costs
            # O(|C| d) instead of a full product with c_alpha(eta)
            base = C
            for a in A:
                if a != s:
                    base = mul_euler(base, w, tr + a - s)
            for i in range(d):
                beta = list(alpha)
                beta[i] += 1
                beta = tuple(beta)
                term = multiply(base, ders[i])
                nxt[beta] = nxt[beta] + term if beta in nxt else term
        coeffs = nxt

    cert = MembershipCertificate(
        weights=w,
        N=N,
        decomposition=[(coeffs[a], a) for a in sorted(coeffs)],
        bpoly=b_n_poly(w, N),
    )
    if not cert.verify():
        raise CertificateError(f"certificate for w={w.weights}, N={N} does not re-expand to b_N(eta)")
    return cert


# --- tameness predicates -----------------------------------------------------

@dataclass(frozen=True)
class TameVerdictInput:
    roots: tuple
    trace: Fraction
    codim: int
    conic: bool = False
    conormal_escape: bool = False

    def __post_init__(self):
        object.__setattr__(self, "roots", tuple(Q(r) for r in self.roots))
        object.__setattr__(self, "trace", Q(self.trace))
        if self.codim < 0:
            raise ValueError("codim must be nonnegative")
        if self.codim > 0 and self.trace <= 0:
            raise ValueError("trace must be positive on a stratum of positive codimension")


def delta_tame_along(v: TameVerdictInput, delta) -> bool:
    """Every root strictly above ``-trace/delta`` (vacuous on open strata)."""
    delta = Q(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    if v.codim == 0:
        return True
    bound = -v.trace / delta
    return all(r > bound for r in v.roots)


def tame_along(v: TameVerdictInput) -> bool:
    return delta_tame_along(v, 1)


def conic_tame_along(v: TameVerdictInput) -> bool:
    return tame_along(v) and (v.conic or v.codim == 0)


def weak_tame_along(v: TameVerdictInput) -> bool:
    return tame_along(v) or v.conormal_escape


def integer_weight_vectors(max_d: int, max_weight: int) -> Iterable[WeightVector]:
    """Every integer weight vector with ``1 <= d <= max_d`` and entries in ``1..max_weight``."""
    from itertools import product

    for d in range(1, max_d + 1):
        for ws in product(range(1, max_weight + 1), repeat=d):
            yield WeightVector(ws)
