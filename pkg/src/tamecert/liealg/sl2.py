"""sl_2 weight bookkeeping and type-A nilpotent orbits.

A nilpotent of ``sl_n`` with Jordan type ``p`` makes the natural module
``V = sum E(p_i - 1)``; the adjoint module is ``V (x) V*`` minus one trivial
summand.
"""
from __future__ import annotations

from collections import Counter
from typing import Iterable, Sequence

from .chevalley import ChevalleyAlgebra
from .roots import chain_order


def partitions(n: int, max_part: int | None = None) -> list[tuple[int, ...]]:
    """Partitions of ``n`` in reverse lexicographic order, ``(n)`` first."""
    if max_part is None:
        max_part = n
    if n == 0:
        return [()]
    out = []
    for k in range(min(n, max_part), 0, -1):
        for rest in partitions(n - k, k):
            out.append((k,) + rest)
    return out


def transpose(p: Sequence[int]) -> tuple[int, ...]:
    if not p:
        return ()
    return tuple(sum(1 for x in p if x > i) for i in range(max(p)))


def dominates(p: Sequence[int], q: Sequence[int]) -> bool:
    """``p >= q`` in dominance order (same total)."""
    if sum(p) != sum(q):
        raise ValueError("partitions of different integers")
    a = b = 0
    for i in range(max(len(p), len(q))):
        a += p[i] if i < len(p) else 0
        b += q[i] if i < len(q) else 0
        if a < b:
            return False
    return True


def clebsch_gordan(a: int, b: int) -> list[int]:
    """Highest weights of ``E(a) (x) E(b)``: ``a+b, a+b-2, ..., |a-b|``."""
    if a < 0 or b < 0:
        raise ValueError("highest weights are nonnegative")
    return [a + b - 2 * k for k in range(min(a, b) + 1)]


def adjoint_weights_sln(p: Sequence[int]) -> list[int]:
    """Highest weights of sl_2 acting on sl_n through a nilpotent of Jordan type ``p``."""
    p = sorted(p, reverse=True)
    if sum(p) < 2 or any(x <= 0 for x in p):
        raise ValueError("need a partition of n >= 2")
    c: Counter = Counter()
    for x in p:
        for y in p:
            c.update(clebsch_gordan(x - 1, y - 1))
    c[0] -= 1
    return sorted(c.elements(), reverse=True)


def lambda_invariant(weights: Iterable[int], dim_p: int) -> int:
    """``sum (lambda_j + 2) - dim_p``."""
    return sum(w + 2 for w in weights) - dim_p


def centralizer_dim_sln(p: Sequence[int]) -> int:
    """``sum (p^T_i)^2 - 1``."""
    return sum(x * x for x in transpose(sorted(p, reverse=True))) - 1


def jordan_representative(alg: ChevalleyAlgebra, p: Sequence[int]) -> list:
    """Nilpotent of Jordan type ``p`` in ``sl_n`` (type ``A_{n-1}`` in Bourbaki order).

    Sum of the simple root vectors ``e_{alpha_i}`` except at block boundaries.
    """
    n = alg.rank + 1
    p = sorted(p, reverse=True)
    if sum(p) != n:
        raise ValueError(f"partition of {sum(p)} for sl_{n}")
    cart = alg.rs.cartan
    chain = chain_order(cart, list(range(alg.rank)))
    if chain != list(range(alg.rank)) and chain != list(range(alg.rank))[::-1]:
        raise ValueError("algebra is not of type A in chain order")
    bounds = set()
    acc = 0
    for x in p:
        acc += x
        bounds.add(acc)
    v = alg.zero()
    for i in range(alg.rank):
        if (i + 1) not in bounds:
            r = tuple(int(k == i) for k in range(alg.rank))
            v[alg.basis_of_root(r)] = 1
    return v
