import itertools

import pytest
from hypothesis import given, strategies as st

from twistlift.numbers import (
    TypePattern, factorize, fundamental_discriminants, is_fundamental, is_prime, kronecker,
    least_nonresidue, primitive_root, rank1_decompose, rank_mod_p, type_of,
)
from conftest import FIXTURE_FORMS, Q1_27, Q1_75, Q2_27, Q_15


@pytest.mark.parametrize("a,n,expected", [(1, 5, 1), (-4, 3, -1), (-7, 3, -1), (2, 7, 1), (3, 7, -1),
                                          (5, 0, 0), (-1, 0, 1), (3, -5, -1), (-3, -5, 1), (5, 8, -1),
                                          (6, 4, 0), (0, 1, 1), (0, 3, 0)])
def test_kronecker_values(a, n, expected):
    assert kronecker(a, n) == expected


def test_kronecker_matches_euler_criterion():
    for p in (3, 5, 7, 11, 13, 101):
        for a in range(-30, 30):
            euler = pow(a % p, (p - 1) // 2, p)
            assert kronecker(a, p) == (0 if a % p == 0 else 1 if euler == 1 else -1)


small = st.integers(-200, 200)


@given(small, small, small)
def test_kronecker_multiplicative_top(a, b, n):
    assert kronecker(a, n) * kronecker(b, n) == kronecker(a * b, n)


@given(small, small, small)
def test_kronecker_multiplicative_bottom(a, m, n):
    assert kronecker(a, m) * kronecker(a, n) == kronecker(a, m * n)


@pytest.mark.parametrize("D,expected", [(12, True), (-12, False), (9, False), (1, True), (-4, True),
                                        (-3, True), (8, True), (-8, True), (5, True), (-20, True),
                                        (16, False), (0, False), (2, False), (-1, False), (-95, True)])
def test_is_fundamental(D, expected):
    assert is_fundamental(D) is expected


def test_fundamental_brute_force():
    def brute(D):
        if D == 1:
            return True
        for f in range(2, 40):
            if D % (f * f) == 0 and (D // (f * f)) % 4 in (0, 1) and D // (f * f) != 0:
                return False
        return D % 4 in (0, 1) and D not in (0,)
    for D in range(-400, 401):
        if D in (0,):
            continue
        assert is_fundamental(D) == brute(D), D
    assert fundamental_discriminants(-8, -3) == [-8, -7, -4, -3]


@pytest.mark.parametrize("D,primes,text", [(-4, [3], "(-)"), (-20, [3, 5], "(+,0)"), (5, [3, 5], "(-,0)"),
                                           (1, [3, 5], "(+,+)")])
def test_type_of(D, primes, text):
    assert str(type_of(D, primes)) == text
    assert type_of(D, primes) == TypePattern.parse(text, primes)


def test_type_zero_iff_divides():
    for D in fundamental_discriminants(-300, 300):
        for s, p in zip(type_of(D, [3, 5, 7]).signs, (3, 5, 7)):
            assert (s == 0) == (D % p == 0)


def test_type_rejects_even_and_bad_patterns():
    with pytest.raises(ValueError):
        type_of(5, [2])
    with pytest.raises(ValueError):
        TypePattern((5, 3), (1, 1))


def test_small_helpers():
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert least_nonresidue(7) == 3 and least_nonresidue(17) == 3
    assert primitive_root(5) == 2 and primitive_root(7) == 3 and primitive_root(13) == 2


def test_rank1_examples():
    assert rank1_decompose(Q1_27.gram, 3)[0] == (1, 0, 1)
    ell, _ = rank1_decompose(Q2_27.gram, 3)
    assert ell in ((2, 1, 2), (1, 2, 1))
    assert rank1_decompose(Q1_75.gram, 5) == ((1, 0, 2), 4)


def _rank1_cases():
    for Q in FIXTURE_FORMS:
        for p in (3, 5, 7, 11, 13, 17, 19, 23):
            if rank_mod_p(Q.gram, p) == 1:
                yield Q, p


def test_rank1_exhaustive():
    cases = list(_rank1_cases())
    assert len(cases) >= 6
    for Q, p in cases:
        ell, u = rank1_decompose(Q.gram, p)
        assert 1 <= next(t for t in ell if t) <= (p - 1) // 2
        for v in itertools.product(range(p), repeat=3):
            lv = sum(a * b for a, b in zip(ell, v))
            assert (Q(v) - u * lv * lv) % p == 0


def test_rank1_rejects_full_rank():
    with pytest.raises(ValueError):
        rank1_decompose(Q_15.gram, 7)
