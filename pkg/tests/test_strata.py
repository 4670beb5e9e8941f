from fractions import Fraction

import pytest

from tamecert.liealg import chevalley
from tamecert.strata import (
    UnsupportedFactorError, class_ids, closed_symmetric_subsets, closed_symmetric_subsets_bruteforce,
    closure_violations, delta_from_strata, delta_of_algebra, enumerate_strata_diagonal, is_closed_symmetric,
    root_set, saturated_classes,
)

EXPECTED_COUNTS = {"A1": 3, "A2": 6, "A3": 14, "A4": 27}


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2", "A3", "B3", "C3"])
def test_class_enumeration_matches_bruteforce(name):
    rs = root_set(chevalley(name))
    assert len(closed_symmetric_subsets(rs)) == len(closed_symmetric_subsets_bruteforce(rs))
    for P in closed_symmetric_subsets(rs):
        assert is_closed_symmetric(rs, P)


def test_saturated_classes_b2():
    rs = root_set(chevalley("B2"))
    assert len(closed_symmetric_subsets(rs)) == 5
    assert len(saturated_classes(rs)) == 4


def test_class_ids_unique():
    rs = root_set(chevalley("A3"))
    ids = class_ids(rs, saturated_classes(rs))
    assert len(set(ids)) == len(ids)


def test_sl2_strata():
    strata = enumerate_strata_diagonal(chevalley("A1"))
    assert sorted(s.codim for s in strata) == [0, 1, 3]
    pos = [s for s in strata if s.codim > 0]
    assert sorted((s.trace_t, s.mu_bound) for s in pos) == [(2, -1), (3, -1)]


@pytest.mark.parametrize("name", list(EXPECTED_COUNTS))
def test_counts_and_closure(name):
    strata = enumerate_strata_diagonal(chevalley(name))
    assert len(strata) == EXPECTED_COUNTS[name]
    assert closure_violations(strata) == []
    keys = [s.key() for s in strata]
    assert len(set(keys)) == len(keys)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_delta_two_routes(n):
    alg = chevalley(f"A{n - 1}")
    d1 = delta_of_algebra(alg)
    d2 = delta_from_strata(enumerate_strata_diagonal(alg))
    assert d1 == d2 == 1 + Fraction(2, n)


@pytest.mark.parametrize("name", ["A1", "A2", "A3"])
def test_stratum_invariants(name):
    for s in enumerate_strata_diagonal(chevalley(name)):
        assert s.codim == s.lam
        assert 2 * s.trace_t == s.lam + s.redim
        if s.redim > 0:
            assert s.lam > 0 and s.mu_bound < 0
        # the bound leaves room for the trace: tameness on every stratum
        assert s.codim == 0 or s.mu_bound > -s.trace_t


def test_non_type_a_needs_data():
    with pytest.raises(UnsupportedFactorError):
        enumerate_strata_diagonal(chevalley("B2"))


def test_sl3_codims():
    assert sorted(s.codim for s in enumerate_strata_diagonal(chevalley("A2"))) == [0, 1, 2, 3, 4, 8]


@pytest.mark.parametrize("name", ["A2", "A3"])
def test_mu_plus_trace(name):
    # mu + t = (rank_s + lambda)/2 on every stratum; it equals rank_s on regular orbits
    for s in enumerate_strata_diagonal(chevalley(name)):
        assert s.mu_bound + s.trace_t == Fraction(s.rank_s + s.lam, 2)
        if s.distinguished and s.redim > 0:
            assert s.mu_bound + s.trace_t == s.rank_s
