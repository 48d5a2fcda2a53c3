import random

import pytest

from qsigma.laurent import LaurentPoly
from qsigma.quasipoly import (QuasiPolynomial, annihilates_window, berlekamp_massey,
                              congruence_classes, congruence_classes_of,
                              interpolate_finite, jet_at_zero, min_annihilator,
                              qp_eval, qp_values, scale_bases)
from qsigma.scalars import ONE, Q, S, ZERO, scalar
from qsigma.suites import rand_qp

QP = QuasiPolynomial


def test_eval_examples():
    assert qp_eval(QP({1: [1]}), 5) == ONE
    assert qp_eval(QP({Q: [1]}), 3) == Q ** 3
    assert qp_eval(QP({1: [0, 1]}), -2) == -2


def test_representation_is_trimmed():
    assert QP({Q: [0]}).is_zero
    assert QP({Q: [1, 0]}) == QP({Q: [1]})
    with pytest.raises(ValueError):
        QP({ZERO: [1]})


def test_min_annihilator_examples():
    assert min_annihilator(QP({Q: [1]})) == LaurentPoly({1: 1, 0: -Q})
    assert min_annihilator(QP.zero()) == LaurentPoly.one()
    sq = min_annihilator(QP({1: [0, 1]}))
    assert sq == LaurentPoly({2: 1, 1: -2, 0: 1})  # (x-1)^2


def test_annihilates_window_examples():
    assert annihilates_window(LaurentPoly({1: 1, 0: -Q}), QP({Q: [1]}), 40)
    assert not annihilates_window(LaurentPoly({1: 1, 0: -1}), QP({Q: [1]}), 40)
    assert annihilates_window(LaurentPoly({1: 1, 0: 5}), QP.zero(), 10)


def test_qp_values_matches_eval():
    P = QP({Q: [1, 1], 1: [2]})
    vals = qp_values(P, -4, 4)
    for i, n in enumerate(range(-4, 5)):
        assert vals[i] == qp_eval(P, n)


def test_scale_bases():
    assert scale_bases(QP({1: [1]}), Q) == QP({Q: [1]})
    assert scale_bases(QP({Q: [0, 1]}), ONE / Q) == QP({1: [0, 1]})
    P = QP({S: [2]})
    assert scale_bases(P, ONE) == P
    with pytest.raises(ZeroDivisionError):
        scale_bases(P, ZERO)


def test_scale_commutes_with_eval():
    rng = random.Random(4)
    for _ in range(25):
        P = rand_qp(rng)
        for c in (Q, S, scalar(2)):
            for n in (-3, 0, 2):
                assert qp_eval(scale_bases(P, c), n) == c ** n * qp_eval(P, n)


def test_congruence_classes_examples():
    classes = congruence_classes_of([S, S / Q])
    assert len(classes) == 1
    rep, members = classes[0]
    assert rep == S and [k for k, _ in members] == [0, 1]

    classes = congruence_classes_of([ONE, S])
    assert len(classes) == 2

    classes = congruence_classes_of([Q ** 2, Q ** 5])
    assert len(classes) == 1
    rep, members = classes[0]
    assert rep == Q ** 5 and [k for k, _ in members] == [0, 3]


def test_congruence_classes_partition():
    P = QP({S: [1], S / Q: [2], 1: [1], Q ** 3: [1]})
    classes = congruence_classes(P)
    seen = [b for _, members in classes for _, b in members]
    assert sorted(map(str, seen)) == sorted(map(str, P.bases()))
    assert len(classes) == 2


def test_jet_at_zero():
    P = QP({Q: [1, 1, 1]})
    assert jet_at_zero(P, Q, 0) == ONE
    assert jet_at_zero(P, Q, 1) == ONE
    assert jet_at_zero(P, Q, 2) == 2  # 2! * 1
    assert jet_at_zero(QP({1: [0, 1]}), 1, 1) == ONE
    assert jet_at_zero(QP({1: [0, 0, 1]}), 1, 1) == ZERO
    assert jet_at_zero(P, S, 0) == ZERO


def test_berlekamp_massey_geometric():
    seq = [Q ** n for n in range(8)]
    conn = berlekamp_massey(seq)
    assert conn == [ONE, -Q]


def test_interpolate_examples():
    assert interpolate_finite({n: ZERO for n in range(-5, 6)}).is_zero
    got = interpolate_finite({n: Q ** n for n in range(-10, 11)})
    assert got == QP({Q: [1]})
    spike = {n: (ONE if n == 1 else ZERO) for n in range(-10, 11)}
    assert interpolate_finite(spike) is None


def test_interpolate_polynomial_times_power():
    data = {n: (scalar(n) + 1) * S ** n for n in range(-6, 7)}
    got = interpolate_finite(data)
    assert got == QP({S: [1, 1]})
    for n, v in data.items():
        assert qp_eval(got, n) == v


def test_interpolate_respects_bound():
    P = QP({Q: [1], S: [1], 1: [1]})
    data = {n: qp_eval(P, n) for n in range(-8, 9)}
    assert interpolate_finite(data, bound=2) is None
    assert interpolate_finite(data, bound=16) == P


def test_theorem_correspondence_random():
    rng = random.Random(12)
    for _ in range(20):
        P = rand_qp(rng)
        b = min_annihilator(P)
        assert annihilates_window(b, P, 40)
        for root in P.bases():
            factor = LaurentPoly({1: ONE, 0: -root})
            from qsigma.laurent import _dense, _dense_divmod
            quo, rem = _dense_divmod(_dense(b), _dense(factor))
            assert all(c == ZERO for c in rem)
            assert not annihilates_window(LaurentPoly.from_coeffs(quo), P, 40)
