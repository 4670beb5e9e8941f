import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import weyl, exps, coeffs
from tamecert.weyl import (
    NEG_INF, BPoly, WeightVector, WeylDimensionError, WeylElement, WeylParseError, commutator, euler_field,
    euler_poly, fourier, infer_base, mul_euler, parse, sign_flip, theta, to_text, v_degree,
)


# --- oracle: action on polynomials ---------------------------------------------------------

def _falling(m, k):
    out = 1
    for j in range(k):
        out *= m - j
    return out


def act(p: WeylElement, poly: dict) -> dict:
    """Apply ``p`` to a polynomial ``{exponent: coeff}`` term by term."""
    out = {}
    for (a, b), c in p.terms.items():
        for m, f in poly.items():
            k = c * f
            for mi, bi in zip(m, b):
                k *= _falling(mi, bi)
            if k:
                e = tuple(mi - bi + ai for mi, bi, ai in zip(m, b, a))
                out[e] = out.get(e, 0) + k
    return {e: c for e, c in out.items() if c}


def agree_on_polynomials(p: WeylElement, q: WeylElement) -> bool:
    """Equal actions on all monomials up to the larger derivative order identify the operators."""
    top = max((max(b, default=0) for (_, b) in list(p.terms) + list(q.terms)), default=0)
    for m in itertools.product(range(top + 1), repeat=p.dim):
        if act(p, {m: 1}) != act(q, {m: 1}):
            return False
    return True


@given(weyl(2), weyl(2))
def test_product_matches_composition(p, q):
    # (p q)(x^m) = p(q(x^m))
    pq = p * q
    top = max((sum(b) for (_, b) in list(pq.terms) + list(q.terms)), default=0)
    for m in itertools.product(range(top + 1), repeat=2):
        assert act(pq, {m: 1}) == act(p, act(q, {m: 1}))


@given(weyl(2), weyl(2), weyl(2))
def test_associativity(p, q, r):
    assert (p * q) * r == p * (q * r)


@given(weyl(2), weyl(2), weyl(2))
def test_distributivity(p, q, r):
    assert p * (q + r) == p * q + p * r


def test_basic_relations():
    t = WeylElement.pos(0, 1)
    d = WeylElement.der(0, 1)
    assert d * t == t * d + 1
    assert commutator(d, t) == WeylElement.const(1, 1)


@given(st.lists(st.integers(1, 4), min_size=2, max_size=2), exps(3), exps(3), coeffs)
def test_grading_identity(ws, a, b, c):
    # one base coordinate, two fiber coordinates
    w = WeightVector(ws, base_count=1)
    m = WeylElement(3, {(a, b): c}, 1)
    deg = sum((a[1 + j] - b[1 + j]) * n for j, n in enumerate(w.weights))
    assert commutator(euler_field(w), m) == m.scale(deg)


@given(weyl(2), weyl(2), st.lists(st.integers(1, 4), min_size=2, max_size=2))
def test_v_degree_subadditive(p, q, ws):
    w = WeightVector(ws)
    pq = p * q
    if p.is_zero() or q.is_zero():
        assert v_degree(pq, w) is NEG_INF
        return
    if not pq.is_zero():
        assert v_degree(pq, w) <= v_degree(p, w) + v_degree(q, w)


def test_v_degree_zero_is_neg_inf():
    assert v_degree(WeylElement(1), WeightVector([1])) is NEG_INF


@given(weyl(2), weyl(2))
def test_fourier_homomorphism(p, q):
    assert fourier(p * q) == fourier(p) * fourier(q)
    assert fourier(p + q) == fourier(p) + fourier(q)


@given(weyl(3))
def test_double_fourier_is_sign_flip(p):
    assert fourier(fourier(p)) == sign_flip(p)


@pytest.mark.parametrize("n", range(1, 7))
def test_theta_transform(n):
    th = theta(n)
    assert fourier(th) == -th - n


@given(weyl(2), st.lists(st.integers(1, 3), min_size=2, max_size=2),
       st.fractions(min_value=-3, max_value=3, max_denominator=2))
def test_mul_euler_matches_product(p, ws, c):
    w = WeightVector(ws)
    assert mul_euler(p, w, c) == p * (euler_field(w) + c)


def test_euler_poly_factors():
    w = WeightVector([1, 2])
    b = BPoly([-1, -3])
    eta = euler_field(w)
    assert euler_poly(b, w) == (eta + 1) * (eta + 3)


def test_bpoly_basics():
    b = BPoly({-2: 2, -1: 1})
    assert b.degree == 3
    assert b.coeffs() == [4, 8, 5, 1]
    assert b(0) == 4
    assert BPoly.from_json(b.to_json()).roots == b.roots
    assert BPoly([-1, -2]).contains(BPoly([-1]))
    assert not BPoly([-1]).contains(BPoly([-1, -1]))


def test_text_sample_roundtrip():
    text = "3*t1^2*Dt1 - 1/2*x1*Dt2"
    p = parse(text, 3)
    assert infer_base(text, 3) == 1
    assert to_text(p) == text


@given(weyl(3, base=1))
def test_parse_print_roundtrip(p):
    assert parse(to_text(p), 3, base=1) == p


def test_parse_multiplies_in_order():
    assert parse("Dx1*x1", 1) == parse("x1*Dx1 + 1", 1)


@pytest.mark.parametrize("bad", ["x1 +", "x3", "2**x1", "y1"])
def test_parse_errors(bad):
    with pytest.raises(WeylParseError):
        parse(bad, 2)


def test_dimension_mismatch():
    with pytest.raises(WeylDimensionError):
        WeylElement.pos(0, 1) * WeylElement.pos(0, 2)


def test_oracle_helper_detects_difference():
    t = WeylElement.pos(0, 1)
    d = WeylElement.der(0, 1)
    assert not agree_on_polynomials(d * t, t * d)
    assert agree_on_polynomials(d * t, t * d + 1)


@given(exps(2), exps(2), st.lists(st.integers(1, 4), min_size=2, max_size=2))
def test_bracket_with_euler_is_v_degree(a, b, ws):
    w = WeightVector(ws)
    m = WeylElement(2, {(a, b): 1})
    assert commutator(m, euler_field(w)) == m.scale(v_degree(m, w))


def test_euler_bracket_examples():
    w = WeightVector([1, 2])
    t2 = WeylElement.pos(1, 2)
    assert commutator(euler_field(w), t2) == t2.scale(2)
    assert commutator(euler_field(WeightVector([1, 1])), parse("t1*Dt2", 2, base=0)).is_zero()
    t1 = WeylElement.pos(0, 1)
    assert t1 * parse("t1*Dt1", 1, base=0) == (parse("t1*Dt1", 1, base=0) - 1) * t1
