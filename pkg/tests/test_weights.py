import itertools

import numpy as np
import pytest

from twistlift.numbers import kronecker, rank1_decompose
from twistlift.weights import (
    FIRST, CalibrationError, calibrate_signs, cone_points, evaluate, first_kind, second_kind,
    second_kind_character,
)
from conftest import FIXTURE_FORMS, Q1_27, Q1_75, Q2_27, Q3_75, Q_15

FIRST_KIND_PRIMES = (7, 13, 17, 19, 23)


def test_second_kind_examples():
    w = second_kind(Q1_27, 3)
    assert [w(v) for v in ((1, 0, 0), (0, 1, 0), (1, 0, 2))] == [1, 0, 0]
    assert second_kind(Q_15, 5)((1, 0, 2)) == 0
    # the linear form is 2x+y+2z up to the normalizing sign
    w2 = second_kind(Q2_27, 3)
    sign = w2((1, 0, 0)) * kronecker(2, 3)
    assert sign in (1, -1)
    assert all(w2(v) == sign * kronecker(2 * v[0] + v[1] + 2 * v[2], 3)
               for v in itertools.product(range(3), repeat=3))


def test_second_kind_character_is_odd():
    for p in (3, 5, 7, 11, 13, 19, 29, 37):
        psi = second_kind_character(p)
        assert psi(0) == 0
        assert all(psi(-r) == -psi(r) and abs(psi(r)) == 1 for r in range(1, p))
        if p % 4 == 3:
            assert all(psi(r) == kronecker(r, p) for r in range(p))
    assert [second_kind_character(5)(r) for r in range(1, 5)] == [1, 1, -1, -1]
    with pytest.raises(ValueError):
        second_kind_character(17)


@pytest.mark.parametrize("Q,p", [(Q1_27, 3), (Q2_27, 3), (Q_15, 3), (Q_15, 5), (Q1_75, 5), (Q3_75, 3),
                                 (Q3_75, 5)])
def test_second_kind_zero_set(Q, p):
    w = second_kind(Q, p)
    ell, _ = rank1_decompose(Q.gram, p)
    for v in itertools.product(range(p), repeat=3):
        zero = sum(a * b for a, b in zip(ell, v)) % p == 0
        assert (w(v) == 0) == zero
        assert w(v) == w(tuple(x + p for x in v)) == evaluate(w, v)


def test_printed_first_kind_rules():
    def rule1(v):
        x, _, z = v
        if Q1_27(v) % 7:
            return 0
        return kronecker(x, 7) if x % 7 else kronecker(5 * z, 7)

    def rule2(v):
        x, y, z = v
        if Q2_27(v) % 7:
            return 0
        t = 3 * y + 5 * z
        return kronecker(t, 7) if t % 7 else kronecker(6 * x, 7)

    for Q, rule in ((Q1_27, rule1), (Q2_27, rule2)):
        w = first_kind(Q, 7)
        signs = {w(v) * rule(v) for v in itertools.product(range(7), repeat=3) if w(v) or rule(v)}
        assert len(signs) == 1
    assert first_kind(Q1_27, 7).base_point == (0, 0, 1)
    assert {first_kind(Q1_27, 7)(v) * rule1(v) for v in itertools.product(range(7), repeat=3) if rule1(v)} == {-1}


def _forms_for(l):
    return [Q for Q in FIXTURE_FORMS if (Q.discriminant // 8) % l]


@pytest.mark.parametrize("l", FIRST_KIND_PRIMES)
def test_first_kind_support_homogeneity_periodicity(l):
    for Q in _forms_for(l):
        w = first_kind(Q, l)
        table = w.table
        for v in itertools.product(range(l), repeat=3):
            value = int(table[v])
            if value:
                assert Q(v) % l == 0
            if Q(v) % l == 0:
                for lam in range(1, l):
                    scaled = tuple(lam * x % l for x in v)
                    assert int(table[scaled]) == kronecker(lam, l) * value
        assert w((1, 2, 3)) == w((1 + l, 2 - l, 3 + 2 * l))
        assert w((0, 0, 0)) == 0


@pytest.mark.parametrize("l", FIRST_KIND_PRIMES)
def test_first_kind_base_point_independence(l):
    for Q in _forms_for(l):
        reference = first_kind(Q, l).table.astype(int)
        points = cone_points(Q, l)
        for w in points[:: max(1, len(points) // 12)]:
            other = first_kind(Q, l, base_point=w).table.astype(int)
            assert np.array_equal(other, reference) or np.array_equal(other, -reference)


def test_first_kind_errors():
    with pytest.raises(ValueError):
        first_kind(Q1_27, 3)
    with pytest.raises(ValueError):
        first_kind(Q1_27, 7, base_point=(1, 0, 0))
    with pytest.raises(ValueError):
        second_kind(Q1_27, 7)


def test_vectorized_values_match_pointwise():
    w = first_kind(Q2_27, 7).with_sign(-1)
    X, Y, Z = (np.arange(-9, 9) for _ in range(3))
    got = w.values(X, Y, Z)
    assert list(got) == [w((x, y, z)) for x, y, z in zip(X, Y, Z)]
    assert w.kind == FIRST


def test_negation_parity_of_families(fx27, fx15, fx75):
    for fx in (fx27, fx15, fx75):
        for family in fx.families.values():
            for Q in set(fx.forms):
                ws = family.weights(Q)
                for v in itertools.product(range(-3, 4), repeat=3):
                    minus = tuple(-x for x in v)
                    a = np.prod([w(v) for w in ws]) if ws else 1
                    b = np.prod([w(minus) for w in ws]) if ws else 1
                    assert a == b


def test_calibration_examples(workspaces):
    ws = workspaces["15a"]
    assert ws.lift("g1").signs == (1, -1)
    assert ws.lift("g17").signs == (1, -1)
    assert workspaces["27a"].lift("imaginary").signs == (1, 1)
    assert workspaces["27a"].lift("real").signs == (1, 1)


def test_calibration_rejects_incoherent_data():
    thetas = [[0, 1, 0, 2, 1], [0, 0, 1, 1, 0]]

    def admissible(bound):
        return [(-n, 1) for n in range(1, bound + 1)]

    with pytest.raises(CalibrationError):
        calibrate_signs(thetas, [1, -1], admissible, lambda D: float(abs(D)))
    with pytest.raises(CalibrationError):
        calibrate_signs([[0, 1, 2], [0, 1, 2]], [1, -1], admissible, lambda D: 1.0)
