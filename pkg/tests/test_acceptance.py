"""One pass/fail line per acceptance criterion.

All comparisons are exact (tolerance zero); runtime limits are pinned below.
"""
import json
import random
import time
from fractions import Fraction

import pytest

from conftest import ACCEPTANCE_LINES
from tamecert.certify import certify_diagonal, certify_pair, comparable, hk_zero_stratum_bound, verify_bn_suite
from tamecert.exact import kernel_basis
from tamecert.liealg import (
    adjoint_weights_sln, cartan_element, centralizer_dim_sln, chevalley, delta_profile, jordan_representative,
    lambda_invariant, partitions,
)
from tamecert.pairs import diagonal_descriptor, load_descriptor
from tamecert.strata import closure_violations, delta_from_strata, delta_of_algebra, enumerate_strata_diagonal
from tamecert.weyl import WeightVector, WeylElement, commutator, euler_field, fourier, sign_flip, theta, v_degree

TOL = 0  # exact rationals everywhere
LIMIT_1, LIMIT_2, LIMIT_4 = 10.0, 60.0, 30.0


def report(n, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def _rand_weyl(rng, dim, terms=3, deg=2):
    t = {}
    for _ in range(terms):
        a = tuple(rng.randint(0, deg) for _ in range(dim))
        b = tuple(rng.randint(0, deg) for _ in range(dim))
        t[(a, b)] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return WeylElement(dim, t)


def test_criterion_1_delta_two_routes():
    t0 = time.perf_counter()
    rows = []
    for n in (2, 3, 4, 5):
        alg = chevalley(f"A{n - 1}")
        d_formula = delta_of_algebra(alg)
        d_strata = delta_from_strata(enumerate_strata_diagonal(alg))
        target = 1 + Fraction(2, n)
        rows.append((n, d_formula, d_strata, abs(d_formula - target) <= TOL and abs(d_strata - target) <= TOL))
    dt = time.perf_counter() - t0
    ok = all(r[3] for r in rows) and dt < LIMIT_1
    report(1, ok, "delta(sl_n) = 1 + 2/n both routes: "
           + ", ".join(f"n={n}: {a}|{b}" for n, a, b, _ in rows) + f" ({dt:.2f}s < {LIMIT_1}s)")


def test_criterion_2_bn_suite():
    t0 = time.perf_counter()
    s = verify_bn_suite(3, 3, 5)
    dt = time.perf_counter() - t0
    ok = s.ok and s.checked == 195 and dt < LIMIT_2
    report(2, ok, f"{s.checked} certificates, {len(s.failures)} expansion failures, "
           f"{len(s.root_audit_failures)} root audit failures ({dt:.1f}s < {LIMIT_2}s)")


def test_criterion_3_fourier():
    theta_ok = all(fourier(theta(n)) == -theta(n) - n for n in range(1, 7))
    rng = random.Random(20260101)
    hom_fail = 0
    for _ in range(1000):
        dim = rng.randint(1, 2)
        p, q = _rand_weyl(rng, dim), _rand_weyl(rng, dim)
        if fourier(p * q) != fourier(p) * fourier(q):
            hom_fail += 1
    flip_fail = sum(1 for _ in range(200) if (lambda p: fourier(fourier(p)) != sign_flip(p))(_rand_weyl(rng, 3)))
    ok = theta_ok and hom_fail == 0 and flip_fail == 0
    report(3, ok, f"theta transform n=1..6 {'ok' if theta_ok else 'FAILED'}, "
           f"homomorphism 1000 products {hom_fail} failures, double transform {flip_fail} failures")


def test_criterion_4_three_way_lambda():
    t0 = time.perf_counter()
    checked, bad = 0, []
    for n in range(2, 6):
        alg = chevalley(f"A{n - 1}")
        for p in partitions(n):
            lam = lambda_invariant(adjoint_weights_sln(p), alg.dim)
            a = centralizer_dim_sln(p)
            b = len(kernel_basis(alg.ad(jordan_representative(alg, p))))
            checked += 1
            if not lam == a == b:
                bad.append((p, lam, a, b))
    dt = time.perf_counter() - t0
    ok = not bad and dt < LIMIT_4
    report(4, ok, f"{checked} partitions of n<=5, {len(bad)} disagreements ({dt:.2f}s < {LIMIT_4}s)")


def test_criterion_5_strata_counts():
    s2 = enumerate_strata_diagonal(chevalley("A1"))
    s3 = enumerate_strata_diagonal(chevalley("A2"))
    codims = sorted(s.codim for s in s2)
    viol = closure_violations(s2) + closure_violations(s3)
    ok = len(s2) == 3 and codims == [0, 1, 3] and len(s3) == 6 and not viol
    report(5, ok, f"sl_2 {len(s2)} strata codims {codims}; sl_3 {len(s3)} strata; {len(viol)} closure violations")


def test_criterion_6_zero_stratum():
    names = ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2"]
    bad = []
    for name in names:
        alg = chevalley(name)
        mu, tame = hk_zero_stratum_bound(alg)
        if mu != Fraction(alg.rank - alg.dim, 2) or not tame:
            bad.append(name)
    z = certify_diagonal("A2").to_json()["zero_stratum"]
    ok = not bad and z["fourier"]["roots_agree"] and z["fourier"]["theta_transform_ok"]
    report(6, ok, f"mu = (rank-dim)/2 and tame_at_zero for {len(names) - len(bad)}/{len(names)} algebras; "
           f"report spot check mu={z['mu']}")


def test_criterion_7_pair_path():
    same = {}
    for name in ("A1", "A2"):
        a = certify_diagonal(name).dumps()
        b = certify_pair(load_descriptor(diagonal_descriptor(name))).dumps()
        same[name] = comparable(json.loads(a)) == comparable(json.loads(b))
    report(7, all(same.values()), "diagonal pair report equals algebra report (subject/provenance excluded): "
           + ", ".join(f"{k} {'same' if v else 'DIFFERENT'}" for k, v in same.items()))


def test_criterion_8_property_suites():
    rng = random.Random(8)
    fails = {}
    # associativity
    fails["associativity"] = sum(
        1 for _ in range(100)
        if (lambda p, q, r: (p * q) * r != p * (q * r))(*(_rand_weyl(rng, 2) for _ in range(3))))
    # grading identity with one base and two fiber coordinates
    g = 0
    for _ in range(100):
        w = WeightVector([rng.randint(1, 4), rng.randint(1, 4)], base_count=1)
        a = tuple(rng.randint(0, 3) for _ in range(3))
        b = tuple(rng.randint(0, 3) for _ in range(3))
        m = WeylElement(3, {(a, b): 1}, 1)
        deg = sum((a[1 + j] - b[1 + j]) * n for j, n in enumerate(w.weights))
        g += commutator(euler_field(w), m) != m.scale(deg)
    fails["grading"] = g
    # v_degree subadditivity
    v = 0
    for _ in range(100):
        w = WeightVector([rng.randint(1, 3), rng.randint(1, 3)])
        p, q = _rand_weyl(rng, 2), _rand_weyl(rng, 2)
        pq = p * q
        if not (p.is_zero() or q.is_zero() or pq.is_zero()):
            v += v_degree(pq, w) > v_degree(p, w) + v_degree(q, w)
    fails["v_degree"] = v
    # Jacobi through rank 3
    fails["jacobi"] = sum(len(chevalley(n).jacobi_failures(limit=1))
                          for n in ["A1", "A2", "A3", "B2", "B3", "C3", "G2", "A1xA1", "A1xB2"])
    # Killing invariance and Delta(h) = prod alpha(h)
    k = d = 0
    for name in ["A2", "B2", "G2", "A3"]:
        alg = chevalley(name)
        for _ in range(10):
            x, y, z = ([Fraction(rng.randint(-3, 3)) for _ in range(alg.dim)] for _ in range(3))
            k += alg.killing(alg.bracket(x, y), z) != alg.killing(x, alg.bracket(y, z))
        for _ in range(3):
            H = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(alg.rank)]
            prod = Fraction(1)
            for r in alg.rs.roots:
                prod *= sum(r[j] * alg.rs.cartan[i][j] * H[i] for i in range(alg.rank) for j in range(alg.rank))
            d += delta_profile(alg, cartan_element(alg, H)).delta != prod
    fails["killing"] = k
    fails["delta_h"] = d
    report(8, not any(fails.values()), "failures " + ", ".join(f"{k}={v}" for k, v in fails.items()))
