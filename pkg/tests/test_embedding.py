import random
from fractions import Fraction

import pytest

from qsigma.embedding import (banded_bracket_window, cocycle_of_images, kernel_test,
                              kernel_witness, module_action, phi, phi_hat, phi_multi,
                              window)
from qsigma.laurent import LaurentPoly
from qsigma.scalars import LOG, ONE, Q, RmElement, S, ZERO, jet_exp, rm_one, rm_zero, scalar
from qsigma.superalgebra import Element, grade_decompose, psi, superbracket
from qsigma.suites import rand_degree_pair, rand_homog_element

LP = LaurentPoly
HALF = Fraction(1, 2)


def term(n, sector, d):
    return Element.term(n, sector, LP(d))


def test_phi_entries():
    op = phi(term(1, (1, 1), {1: 1}), S, 0)  # z T E11
    assert op.entry(-1, 0) == RmElement((S,))
    assert op.entry(0, 1) == RmElement((S / Q,))
    assert op.entry(0, 0).is_zero

    op12 = phi(term(0, (1, 2), {0: 1}), S, 0)
    assert op12.entry(0, -HALF) == rm_one(0)

    op_jet = phi(term(0, (1, 1), {1: 1}), S, 1)
    assert op_jet.entry(0, 0) == RmElement((S, S * LOG))


def test_phi_rejects_central():
    with pytest.raises(ValueError):
        phi(Element.central_term(ONE), S, 0)


def test_phi_hat_examples():
    assert phi_hat(Element.central_term(ONE), S, 2).central == rm_one(2)
    corr = phi_hat(term(0, (1, 1), {1: 1}), S, 0)
    assert corr.central == RmElement((S / (ONE - Q),))
    assert phi_hat(term(0, (1, 1), {0: 1}), S, 1).central.is_zero
    # off-diagonal and nonzero z-degree terms are uncorrected
    assert phi_hat(term(0, (1, 2), {3: 1}), S, 1).central.is_zero
    assert phi_hat(term(2, (1, 1), {3: 1}), S, 1).central.is_zero
    # i = 2 carries the opposite sign
    corr22 = phi_hat(term(0, (2, 2), {1: 1}), S, 0)
    assert corr22.central == RmElement((-S / (ONE - Q),))


def test_window_examples():
    op = phi(term(1, (1, 1), {1: 1}), S, 0)
    win = window(op, -1, 1)
    assert win == {(Fraction(-1), Fraction(0)): RmElement((S,)),
                   (Fraction(0), Fraction(1)): RmElement((S / Q,))}
    assert window(phi(Element.zero(), S, 0), -2, 2) == {}
    ident = window(phi(term(0, (1, 1), {0: 1}), S, 0), 0, 1)
    assert ident == {(Fraction(0), Fraction(0)): rm_one(0),
                     (Fraction(1), Fraction(1)): rm_one(0)}
    with pytest.raises(ValueError):
        window(op, 2, -2)


def test_module_action_examples():
    assert module_action(term(1, (1, 1), {2: 1}), 0, S) == {Fraction(-1): S ** 2}
    assert module_action(term(0, (2, 1), {0: 1}), 0, S) == {-HALF: ONE}
    assert module_action(term(0, (1, 2), {0: 1}), -HALF, S) == {Fraction(0): ONE}
    with pytest.raises(ValueError):
        module_action(Element.central_term(ONE), 0, S)


def test_intertwining_random():
    rng = random.Random(17)
    for _ in range(30):
        x = rand_homog_element(rng, allow_central=False)
        op = phi(x, S, 0)
        for num in (-2, 0, 3):
            for idx in (Fraction(num), Fraction(num) - HALF):
                acted = module_action(x, idx, S)
                expected = {}
                for off in op.offsets():
                    row = idx + off
                    v = op.entry(row, idx)
                    if not v.is_zero:
                        expected[row] = v.coeffs[0]
                assert acted == expected


def test_kernel_witness_examples():
    assert kernel_test(Element.zero(), S, 0)
    wit = kernel_witness(term(1, (1, 1), {1: 1}), S, 0)
    assert wit == ((Fraction(-1), Fraction(0)), RmElement((S,)))
    assert not kernel_test(term(1, (1, 1), {1: 1}), S, 0)
    # coefficients may involve s: the witness moves off the vanishing point
    wit = kernel_witness(Element.term(0, (1, 1), LP({1: ONE, 0: -S})), S, 0)
    (i, j), value = wit
    assert i == j and not value.is_zero


def test_injectivity_random():
    rng = random.Random(21)
    for _ in range(40):
        x = rand_homog_element(rng, allow_central=False)
        if x.terms:
            assert not kernel_test(x, S, 0)


def test_phi_multi():
    x = term(0, (1, 1), {0: 1})
    assert len(phi_multi(x, [S], [1])) == 1
    with pytest.raises(ValueError):
        phi_multi(x, [S, Q * S], [0, 0])
    ops = phi_multi(x, [S, scalar(1)], [0, 1])
    assert ops[0].m == 0 and ops[1].m == 1


def test_homomorphism_window_random():
    rng = random.Random(31)
    for trial in range(25):
        m = trial % 3
        x = rand_homog_element(rng)
        y = rand_homog_element(rng)
        lhs = phi_hat(superbracket(x, y), S, m)
        rhs_win, rhs_central = banded_bracket_window(
            phi_hat(x, S, m), phi_hat(y, S, m), -6, 6)
        assert lhs.window(-6, 6) == rhs_win
        assert lhs.central == rhs_central


def test_cocycle_pullback_matches_corrected_bracket():
    # C(phi x, phi y) equals the central jet of phi_hat([x, y]); it
    # differs from the bare cocycle psi by the diagonal corrections
    rng = random.Random(41)
    for _ in range(40):
        x, y = rand_degree_pair(rng)
        got = cocycle_of_images(phi(x, S, 0), phi(y, S, 0))
        assert got == phi_hat(superbracket(x, y), S, 0).central


def test_cocycle_pullback_correction_term_witness():
    # the pullback picks up s/(1-q)-type corrections: psi alone differs
    x = term(1, (1, 1), {0: 1})
    y = term(-1, (1, 1), {1: 1})
    got = cocycle_of_images(phi(x, S, 0), phi(y, S, 0))
    assert psi(x, y) == ZERO
    assert got == RmElement((S,))


def test_cocycle_pullback_on_correction_free_pairs():
    pairs = [
        (term(1, (1, 1), {1: 1}), term(-1, (1, 1), {-1: 1})),
        (term(2, (1, 1), {0: 1}), term(-2, (1, 1), {0: 1})),
        (term(1, (1, 2), {0: 1}), term(1, (2, 1), {0: 1})),
    ]
    for x, y in pairs:
        got = cocycle_of_images(phi(x, S, 0), phi(y, S, 0))
        assert got == RmElement((psi(x, y),))


def test_gradation_shift_under_phi():
    # even components embed degree-preservingly; odd sectors shift by
    # -1 (E12 parts) and +1 (E21 parts) relative to the algebra grading
    samples = [
        (term(2, (1, 1), {1: 1}), Fraction(2), Fraction(2)),
        (term(2, (2, 2), {1: 1}), Fraction(2), Fraction(2)),
        (term(3, (1, 2), {0: 1}), Fraction(7, 2), Fraction(5, 2)),
        (term(3, (2, 1), {0: 1}), Fraction(5, 2), Fraction(7, 2)),
    ]
    for x, alg_deg, mat_deg in samples:
        (deg,) = grade_decompose(x)
        assert deg == alg_deg
        op = phi(x, S, 0)
        (off,) = op.offsets()
        assert -off == mat_deg
