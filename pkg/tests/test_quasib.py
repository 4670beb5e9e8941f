from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tamecert.quasib import (
    TameVerdictInput, b_n_poly, certify_membership, conic_tame_along, delta_tame_along, integer_weight_vectors,
    support_bpoly, tame_along, weak_tame_along, weight_sums,
)
from tamecert.weyl import BPoly, WeightVector, euler_field


def test_weight_sums():
    assert weight_sums(WeightVector([1, 2]), 2) == {2, 3, 4}
    assert weight_sums(WeightVector([1, 2]), 0) == {0}


def test_bn_single_weight():
    # w = (1), N = 2: (eta + 1)(eta + 2)
    w = WeightVector([1])
    cert = certify_membership(w, 2)
    eta = euler_field(w)
    assert cert.expand() == (eta + 1) * (eta + 2)


def test_bn_known_roots():
    assert b_n_poly(WeightVector([1, 2]), 2).root_list() == [-5, -4, -3]


@given(st.lists(st.integers(1, 3), min_size=1, max_size=2), st.integers(1, 3))
def test_certificate_reexpands(ws, N):
    w = WeightVector(ws)
    cert = certify_membership(w, N)
    assert cert.verify()
    # independent target: generic operator product instead of the Euler kernel
    assert cert.expand() == cert.bpoly.at_operator(euler_field(w))
    assert all(sum(a) == N for _, a in cert.decomposition)


@given(st.lists(st.integers(1, 5), min_size=1, max_size=3), st.integers(1, 5))
def test_bn_roots_are_integers_below_trace(ws, N):
    w = WeightVector(ws)
    roots = b_n_poly(w, N).root_list()
    assert all(r.denominator == 1 and r <= -w.trace for r in roots)
    assert len(roots) == sum(len(weight_sums(w, k)) for k in range(N))


@given(st.lists(st.integers(1, 3), min_size=1, max_size=2), st.integers(1, 4))
def test_bn_divisibility_chain(ws, N):
    w = WeightVector(ws)
    assert b_n_poly(w, N + 1).contains(b_n_poly(w, N))


def test_base_coordinates_are_spectators():
    w = WeightVector([2], base_count=1)
    assert certify_membership(w, 2).verify()


def test_support_bpoly():
    w = WeightVector([1, 1])
    assert support_bpoly(w, 2) == b_n_poly(w, 3)


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        certify_membership(WeightVector([Fraction(1, 2)]), 1)
    with pytest.raises(ValueError):
        certify_membership(WeightVector([1]), 0)
    with pytest.raises(ValueError):
        WeightVector([0])


def test_normalized():
    w, beta = WeightVector([Fraction(2, 3), Fraction(4, 3)]).normalized()
    assert w.weights == (1, 2) and beta == Fraction(2, 3)


def test_integer_weight_vectors_count():
    assert sum(1 for _ in integer_weight_vectors(3, 3)) == 3 + 9 + 27


def test_verdicts():
    v = TameVerdictInput(roots=(-1,), trace=2, codim=1, conic=True)
    assert tame_along(v) and conic_tame_along(v) and delta_tame_along(v, Fraction(3, 2))
    assert not delta_tame_along(v, 2)
    bad = TameVerdictInput(roots=(-3,), trace=2, codim=1, conormal_escape=True)
    assert not tame_along(bad) and weak_tame_along(bad)
    open_ = TameVerdictInput(roots=(-100,), trace=0, codim=0)
    assert tame_along(open_) and conic_tame_along(open_)
    with pytest.raises(ValueError):
        TameVerdictInput(roots=(), trace=0, codim=2)
    with pytest.raises(ValueError):
        delta_tame_along(v, 0)


@given(st.fractions(min_value=-5, max_value=0, max_denominator=3),
       st.fractions(min_value=Fraction(1, 2), max_value=6, max_denominator=3),
       st.fractions(min_value=Fraction(1, 4), max_value=3, max_denominator=4))
def test_delta_monotone(mu, t, delta):
    # delta-tame at delta implies delta-tame at every smaller delta
    v = TameVerdictInput(roots=(mu,), trace=t, codim=1)
    if delta_tame_along(v, delta):
        assert delta_tame_along(v, delta / 2)
