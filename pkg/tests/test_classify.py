import random
from fractions import Fraction

import pytest

from qsigma.classify import (LabelFunctional, ModuleDescriptor, SSqWeight, check_qf,
                             delta_of, labels_of_module, roundtrip, synthesize,
                             tensor_labels, weight_from_raw_labels)
from qsigma.embedding import phi_hat
from qsigma.infmatrix import GlWeight, LabelSeq
from qsigma.laurent import LaurentPoly
from qsigma.quasipoly import QuasiPolynomial, annihilates_window, qp_eval
from qsigma.scalars import ONE, Q, S, ZERO, scalar, scalar_str
from qsigma.superalgebra import Element
from qsigma.suites import rand_glweight

QP = QuasiPolynomial
HALF = Fraction(1, 2)
LP = LaurentPoly


def test_weight_invariant():
    with pytest.raises(ValueError):
        SSqWeight(QP({Q: [1]}), QP({1: [1]}), 5)
    w = SSqWeight(QP({Q: [1]}), QP({1: [1]}), 0)
    assert w.c == ZERO
    with pytest.raises(ValueError):
        SSqWeight(QP.zero(), QP({1: [2]}), 2, zero_split=(1, 2))
    w = SSqWeight(QP.zero(), QP({1: [2]}), 2, zero_split=(ZERO, scalar(2)))
    assert w.zero_split == (ZERO, scalar(2))


def test_check_qf_examples():
    ok, b12, b21 = check_qf(SSqWeight(QP({Q: [1]}), QP({1: [1]}), 0))
    assert ok
    assert b12 == LP({1: 1, 0: -Q})
    assert b21 == LP({1: 1, 0: -1})
    ok, b12, b21 = check_qf(SSqWeight.zero())
    assert ok and b12 == LP.one() and b21 == LP.one()


def test_check_qf_annihilation_windows():
    w = SSqWeight(QP({Q: [1], S: [0, 1]}), QP({1: [2], S: [1]}),
                  qp_eval(QP({1: [2], S: [1]}), 0) - qp_eval(QP({Q: [1], S: [0, 1]}), 0))
    _, b12, b21 = check_qf(w)
    assert annihilates_window(b12, w.p12, 40)
    assert annihilates_window(b21, w.p21, 40)


def test_raw_labels_route():
    window = {n: ZERO for n in range(-8, 9)}
    spike = dict(window)
    spike[1] = ONE
    assert weight_from_raw_labels(spike, {}, 0) is None

    geometric = {n: Q ** n for n in range(-8, 9)}
    w = weight_from_raw_labels(geometric, {}, 0)
    assert w is not None
    # Delta_{n,1} = q^n, Delta_{n,2} = 0: P21 = q^n, P12 = q^{2n}
    assert w.p21 == QP({Q: [1]})
    assert w.p12 == QP({Q ** 2: [1]})
    assert qp_eval(w.p12, 0) == qp_eval(w.p21, 0) - w.c


def test_delta_of_examples():
    same = SSqWeight(QP({1: [1]}), QP({1: [1]}), 0)
    for n in (-2, 1, 3):
        assert delta_of(same, n, 1) == ZERO
    w = SSqWeight(QP({1: [1]}), QP({1: [2]}), 1)
    assert delta_of(w, 1, 1) == -ONE / (Q - 1)
    assert delta_of(w, 1, 2) == 2 + ONE / (Q - 1)
    with pytest.raises(ValueError):
        delta_of(w, 0, 1)
    split = SSqWeight(QP({1: [1]}), QP({1: [2]}), 1, zero_split=(ZERO, scalar(2)))
    assert delta_of(split, 0, 2) == 2


def test_labels_of_module_single_half_label():
    w = GlWeight.make(0, [0], [LabelSeq.make()], [LabelSeq.make(0, 0, {1: 1})])
    lab = labels_of_module(ModuleDescriptor(S, 0, w))
    assert lab.p12 == QP({S / Q: [1]})
    assert lab.p21 == QP({S / Q: [1]})
    assert lab.c == ZERO


def test_labels_of_module_zero_and_charge():
    zero = labels_of_module(ModuleDescriptor(S, 0, GlWeight.zero()))
    assert zero.p12.is_zero and zero.p21.is_zero and zero.c == ZERO

    charged = labels_of_module(ModuleDescriptor(S, 0, GlWeight.make(0, [1])))
    assert charged.p12 == QP({S: [-1]})
    assert charged.p21.is_zero
    assert charged.c == ONE


def test_labels_of_module_requires_quasifinite():
    bad = GlWeight.make(0, [0], [LabelSeq.make(1, 1)], [LabelSeq.make()])
    with pytest.raises(ValueError):
        ModuleDescriptor(S, 0, bad)


def _functional_on_image(w: GlWeight, op, window=8):
    total = ZERO
    for num in range(-window, window + 1):
        for idx in (Fraction(num), Fraction(num) - HALF):
            v = op.entry(idx, idx)
            if v.is_zero:
                continue
            for l in range(w.m + 1):
                total += v.coeffs[l] * w.label(idx, l)
    for l in range(w.m + 1):
        total += op.central.coeffs[l] * w.charge(l)
    return total


def test_labels_match_direct_pairing_oracle():
    # evaluate the weight on embedded diagonal monomials directly and
    # compare against the assembled quasipolynomials, k in -3..3
    rng = random.Random(13)
    for _ in range(6):
        w = rand_glweight(rng, m_max=2)
        lab = labels_of_module(ModuleDescriptor(S, w.m, w))
        for k in range(-3, 4):
            d1 = _functional_on_image(
                w, phi_hat(Element.term(0, (1, 1), LP.monomial(k)), S, w.m))
            d2 = _functional_on_image(
                w, phi_hat(Element.term(0, (2, 2), LP.monomial(k)), S, w.m))
            if k == 0:
                assert d1 + d2 == qp_eval(lab.p21, 0)
            else:
                assert d1 + d2 == qp_eval(lab.p21, k)
                assert Q ** k * d1 + d2 == qp_eval(lab.p12, k)
        cc = _functional_on_image(w, phi_hat(Element.central_term(ONE), S, w.m))
        assert cc == lab.c


def test_label_functional_consistency():
    w = SSqWeight(QP({Q: [1]}), QP({1: [1]}), 0)
    lam = LabelFunctional(w)
    x = Element({(0, (1, 1)): LP({2: ONE}), (0, (2, 2)): LP({2: ONE})})
    assert lam.evaluate(x) == qp_eval(w.p21, 2)
    with pytest.raises(ValueError):
        lam.evaluate(Element.term(1, (1, 1), LP.one()))
    unbalanced = Element({(0, (1, 1)): LP.one()})
    with pytest.raises(ValueError):
        lam.evaluate(unbalanced)


def test_tensor_labels():
    assert tensor_labels([]) == SSqWeight.zero()
    w1 = GlWeight.make(0, [0], [LabelSeq.make()], [LabelSeq.make(0, 0, {1: 1})])
    d1 = ModuleDescriptor(S, 0, w1)
    single = tensor_labels([d1])
    assert single == labels_of_module(d1)
    d2 = ModuleDescriptor(ONE, 0, GlWeight.make(0, [1]))
    pair = tensor_labels([d1, d2])
    assert pair.p12 == single.p12 + QP({1: [-1]})
    assert pair.p21 == single.p21
    assert pair.c == ONE
    # commutative and associative as weight addition
    assert tensor_labels([d2, d1]) == pair


def test_synthesize_examples():
    assert synthesize(QP.zero(), QP.zero()) == []
    target = QP({S / Q: [1]})
    descs = synthesize(target, target)
    assert len(descs) == 1
    d = descs[0]
    assert d.s == S / Q and d.m == 0
    assert d.weight.half_seqs[0].exceptions() == {0: ONE}
    assert d.weight.int_seqs[0].exceptions() == {}
    assert d.weight.charge(0) == ZERO

    mixed = synthesize(QP({1: [1], S: [2]}), QP({1: [1], S: [2]}))
    assert len(mixed) == 2
    assert {scalar_str(d.s) for d in mixed} == {"1", "s"}


def test_synthesized_weights_are_quasifinite():
    from qsigma.infmatrix import gl_quasifinite
    rng = random.Random(19)
    for _ in range(8):
        w = rand_glweight(rng, m_max=2, with_tails=True)
        lab = labels_of_module(ModuleDescriptor(S, w.m, w))
        for d in synthesize(lab.p12, lab.p21):
            ok, _ = gl_quasifinite(d.weight)
            assert ok


def test_roundtrip_corpus():
    assert roundtrip(QP.zero(), QP.zero()).passed
    assert roundtrip(QP({S / Q: [1]}), QP({S / Q: [1]})).passed
    rng = random.Random(29)
    for n in range(10):
        points = [ONE, S] if n % 2 == 0 else [S]
        descriptors = []
        for s_pt in points:
            w = rand_glweight(rng, m_max=2, with_tails=(n % 3 == 0))
            descriptors.append(ModuleDescriptor(s_pt, w.m, w))
        lab = tensor_labels(descriptors)
        report = roundtrip(lab.p12, lab.p21)
        assert report.passed, str(report)


def test_roundtrip_rejected_sign_fixture():
    # adopting c = P12(0) - P21(0) breaks the round trip; the diff is a
    # pinned regression fixture
    lab = labels_of_module(ModuleDescriptor(S, 0, GlWeight.make(0, [1])))
    flipped = qp_eval(lab.p12, 0) - qp_eval(lab.p21, 0)
    report = roundtrip(lab.p12, lab.p21, central=flipped)
    assert not report.passed
    assert str(report) == (
        "roundtrip: fail\n"
        "  central charge: expected -1, got 1"
    )


def test_labels_of_module_c_identity_emerges():
    rng = random.Random(37)
    for _ in range(10):
        w = rand_glweight(rng, m_max=2, with_tails=True)
        lab = labels_of_module(ModuleDescriptor(S, w.m, w))
        assert qp_eval(lab.p21, 0) - qp_eval(lab.p12, 0) == lab.c
