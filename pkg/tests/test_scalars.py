import pytest
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from qsigma.scalars import (LOG, ONE, Q, RmElement, S, ZERO, jet_exp,
                            q_power_ratio, rm_one, scalar, scalar_str)


def test_field_examples():
    assert (Q - 1) + 1 == Q
    assert (Q ** 2 - 1) / (Q - 1) == Q + 1
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_equality_is_canonical():
    a = (Q ** 2 - S ** 2) / (Q - S)
    assert a == Q + S
    assert -Q / (1 - Q) == Q / (Q - 1)


def test_scalar_coercion():
    assert scalar(3) == 3
    assert scalar(Fraction(3, 4)) * 4 == 3
    with pytest.raises(TypeError):
        scalar(1.5)


def test_q_power_ratio_examples():
    assert q_power_ratio(Q ** 3, Q) == 2
    assert q_power_ratio(S / Q, S) == -1
    assert q_power_ratio(S, Q + 1) is None
    assert q_power_ratio(2 * Q ** 5, 2 * Q ** 2) == 3
    assert q_power_ratio(2 * Q, Q) is None
    with pytest.raises(ZeroDivisionError):
        q_power_ratio(ZERO, Q)


def test_q_power_ratio_consistency():
    for a, b in [(Q ** 4 * S, Q * S), (S, S), (S / Q ** 2, S * Q)]:
        k = q_power_ratio(a, b)
        assert k is not None
        assert a == Q ** k * b


def test_jet_exp_examples():
    assert jet_exp(0, 3) == rm_one(3)
    assert jet_exp(1, 1) == RmElement((ONE, LOG))
    assert jet_exp(2, 2) == RmElement((ONE, 2 * LOG, 2 * LOG ** 2))


def test_jet_exp_inverse_and_additivity():
    for m in range(4):
        for k in (-10, -3, -1, 2, 7, 10):
            for kp in (-10, -2, 1, 5, 10):
                assert jet_exp(k, m) * jet_exp(kp, m) == jet_exp(k + kp, m)
        assert jet_exp(5, m) * jet_exp(-5, m) == rm_one(m)


def test_rm_arithmetic_truncates():
    t = RmElement((ZERO, ONE))
    assert (t * t).is_zero  # m = 1 kills t^2
    assert (t + t).coeffs == (ZERO, 2 * ONE)
    with pytest.raises(ValueError):
        t + rm_one(2)


_scalars = st.sampled_from([
    ONE, scalar(2), scalar(-3), scalar(Fraction(1, 2)), Q, S, LOG,
    Q + 1, Q * S, S - Q, ONE / Q, (Q - 1) / (S + 2), Q ** 2 * S, LOG * Q - 1,
])


@settings(max_examples=60, deadline=None)
@given(_scalars, _scalars, _scalars)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a


@settings(max_examples=30, deadline=None)
@given(_scalars)
def test_field_inverses(a):
    if a != ZERO:
        assert a * (ONE / a) == ONE


@settings(max_examples=40, deadline=None)
@given(_scalars)
def test_scalar_str_parses_back(a):
    from qsigma.grammar import parse_scalar
    assert parse_scalar(scalar_str(a)) == a
