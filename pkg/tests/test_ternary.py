import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from twistlift._exact import det
from twistlift.ternary import (
    TernaryForm, enumerate_vectors, equivalent, reduce, reduce_with_transform, short_vectors,
    theta_coefficients,
)
from conftest import FIXTURE_FORMS, Q1_27, Q2_27


def test_evaluate():
    assert Q1_27((0, 0, 0)) == 0
    assert Q1_27((1, 0, 0)) == 4
    assert Q2_27((1, 0, 0)) == 7
    assert Q1_27.bilinear((1, 2, 3), (1, 2, 3)) == 2 * Q1_27((1, 2, 3))


def test_parse_and_print():
    assert str(Q2_27) == "7x^2+16y^2+31z^2+16yz+2xz+4xy"
    assert TernaryForm.parse(str(Q1_27)) == Q1_27
    assert TernaryForm.parse("4 27 28 0 -4 0") == Q1_27
    assert TernaryForm.parse("x^2 + y^2 + z^2") == TernaryForm(1, 1, 1, 0, 0, 0)
    with pytest.raises(ValueError):
        TernaryForm(1, 1, -1, 0, 0, 0)


def test_enumerate_examples():
    assert enumerate_vectors(Q1_27, 10) == [((-1, 0, 0), 4), ((0, 0, 0), 0), ((1, 0, 0), 4)]
    assert enumerate_vectors(Q2_27, 6) == [((0, 0, 0), 0)]
    assert enumerate_vectors(Q1_27, 0) == [((0, 0, 0), 0)]
    with pytest.raises(ValueError):
        enumerate_vectors(Q1_27, -1)


def _naive(Q, bound):
    r = math.isqrt(bound) + 1
    return sorted((v, Q(v)) for v in itertools.product(range(-r, r + 1), repeat=3) if Q(v) <= bound)


@pytest.mark.parametrize("Q", FIXTURE_FORMS, ids=str)
def test_enumerate_exhaustive(Q):
    # every fixture form has minimum >= 4, so |v_i| <= sqrt(bound) is a safe box
    for bound in (0, 50, 400, 2000):
        got = enumerate_vectors(Q, bound)
        assert got == _naive(Q, bound)
        assert len({v for v, _ in got}) == len(got)


def test_theta_examples():
    t1, t2 = theta_coefficients(Q1_27, 45), theta_coefficients(Q2_27, 45)
    assert t1[0] == Fraction(1, 2)
    g = {n: t1[n] - t2[n] for n in range(1, 46) if t1[n] != t2[n]}
    assert g == {4: 1, 7: -1, 19: -1, 28: 1, 40: -2, 43: 2}
    assert t1[4] == 1
    assert all(c == 0 for c in t2[1:7])


def test_reduce_examples():
    assert reduce(TernaryForm.parse("4x^2+27y^2+28z^2+4xz")) == Q1_27
    assert reduce(Q1_27) == reduce(reduce(Q1_27))
    raw = TernaryForm.parse("36x^2+27y^2+4z^2+12xz")
    assert reduce(raw) == Q1_27


def test_reduce_transform_is_unimodular():
    for Q in FIXTURE_FORMS:
        R, T = reduce_with_transform(Q)
        assert Q.transform(T) == R
        assert abs(det(T)) == 1


def test_equivalent():
    I = equivalent(Q1_27, Q1_27)
    assert I is not None and Q1_27.transform(I) == Q1_27
    assert equivalent(Q1_27, Q2_27) is None


unimodular = st.sampled_from([
    [[1, 0, 0], [0, 1, 0], [0, 0, 1]], [[1, 1, 0], [0, 1, 0], [0, 0, 1]], [[0, 1, 0], [1, 0, 0], [0, 0, -1]],
    [[1, 0, -2], [0, 1, 1], [0, 0, 1]], [[2, 1, 0], [1, 1, 0], [0, 0, 1]], [[1, 0, 0], [3, 1, 0], [-1, 2, 1]],
])


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(FIXTURE_FORMS), unimodular, unimodular)
def test_reduce_is_class_invariant(Q, A, B):
    P = Q.transform(A).transform(B)
    assert reduce(P) == reduce(Q)
    T = equivalent(P, Q)
    assert T is not None and Q.transform(T) == P


def test_discriminants_constant_per_level():
    assert Q1_27.discriminant == Q2_27.discriminant
    assert len({Q.discriminant for Q in FIXTURE_FORMS[3:]}) == 1


def test_short_vectors_rational():
    got = {x for x, v in short_vectors([[Fraction(1, 2), 0], [0, 2]], 2)}
    want = {(x, y) for x in range(-3, 4) for y in range(-2, 3) if Fraction(x * x, 2) + 2 * y * y <= 2}
    assert got == want
