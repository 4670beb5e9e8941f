from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tamecert import _pykernels
from tamecert.exact import (
    QMatrix, Q, char_poly, coordinates, fmt_q, in_span, intersect, kernel_basis, poly_eval, rank, span_dim,
)

small = st.fractions(min_value=-6, max_value=6, max_denominator=4)


def matrices(rows=st.integers(1, 5), cols=st.integers(1, 5)):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(st.lists(small, min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0]))


def square(n=st.integers(1, 5)):
    return n.flatmap(lambda k: st.lists(st.lists(small, min_size=k, max_size=k), min_size=k, max_size=k))


def faddeev_leverrier(m: QMatrix):
    """Independent char poly oracle: ``M_k = A M_{k-1} + c_{n-k+1} I``."""
    n = m.rows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    M = QMatrix.zeros(n, n)
    for k in range(1, n + 1):
        M = m @ M + QMatrix.identity(n).scale(coeffs[n - k + 1])
        coeffs[n - k] = -(m @ M).trace() / k
    return coeffs


def test_q_rejects_floats():
    with pytest.raises(TypeError):
        Q(0.5)
    assert Q("3/6") == Fraction(1, 2)
    assert fmt_q(2) == "2/1" and fmt_q(Fraction(-1, 3)) == "-1/3"


def test_char_poly_known():
    m = QMatrix([[2, 1], [1, 2]])
    assert char_poly(m) == [3, -4, 1]


@given(square())
def test_char_poly_matches_faddeev_leverrier(rows):
    m = QMatrix(rows)
    assert char_poly(m) == faddeev_leverrier(m)


@given(square())
def test_cayley_hamilton(rows):
    m = QMatrix(rows)
    acc = QMatrix.zeros(m.rows, m.rows)
    for c in reversed(char_poly(m)):
        acc = acc @ m + QMatrix.identity(m.rows).scale(c)
    assert acc.is_zero()


@given(matrices())
def test_rank_nullity_and_kernel(rows):
    m = QMatrix(rows)
    ker = kernel_basis(m)
    assert rank(m) + len(ker) == m.cols
    for v in ker:
        assert all(x == 0 for x in m.apply(v))
    if ker:
        assert span_dim(ker) == len(ker)


@given(matrices())
def test_rank_transpose(rows):
    m = QMatrix(rows)
    assert rank(m) == rank(m.transpose())


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=3),
       st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=3))
def test_intersection_dimension(u, v):
    w = intersect(u, v)
    assert len(w) == span_dim(u) + span_dim(v) - span_dim(u + v)
    for x in w:
        assert in_span(x, u) and in_span(x, v)


@given(st.lists(small, min_size=3, max_size=3))
def test_coordinates_roundtrip(c):
    basis = [[1, 2, 0], [0, 1, 1], [1, 0, 3]]
    vec = [sum(ci * Fraction(b[i]) for ci, b in zip(c, basis)) for i in range(3)]
    assert coordinates(vec, basis) == c


def test_poly_eval():
    assert poly_eval([1, 0, 1], 3) == 10


@given(st.lists(st.lists(st.integers(-20, 20), min_size=5, max_size=5), min_size=1, max_size=6))
def test_bareiss_parity(rows):
    try:
        from tamecert import _kernels
    except ImportError:
        pytest.skip("compiled extension not built")
    assert _kernels.bareiss_echelon([r[:] for r in rows], 5) == _pykernels.bareiss_echelon([r[:] for r in rows], 5)


@given(st.integers(1, 6).flatmap(lambda n: st.lists(
    st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_berkowitz_parity(rows):
    try:
        from tamecert import _kernels
    except ImportError:
        pytest.skip("compiled extension not built")
    assert _kernels.berkowitz(rows) == _pykernels.berkowitz(rows)


def test_small_examples():
    from tamecert.liealg import chevalley

    assert char_poly(QMatrix.identity(2)) == [1, -2, 1]
    assert char_poly(QMatrix.zeros(3, 3)) == [0, 0, 0, 1]
    alg = chevalley("A1")
    assert char_poly(alg.ad(alg.basis_vector(1))) == [0, -4, 0, 1]
    assert kernel_basis(alg.ad(alg.basis_vector(0))) == [[1, 0, 0]]
    with pytest.raises(Exception):
        char_poly(QMatrix([[1, 2]]))
