import random
from fractions import Fraction

import pytest

from qsigma.infmatrix import (GlWeight, HalfDiagonal, LabelSeq, MatrixElement,
                              cocycle_entries, gl_g0a, gl_nondegenerate,
                              gl_quasifinite, glinf_bracket, principal_degree,
                              sector_map, supertrace)
from qsigma.scalars import ONE, ZERO, rm_from_scalar, rm_one, rm_t_power, rm_zero, scalar
from qsigma.suites import rand_glweight, rand_scalar

HALF = Fraction(1, 2)


def unit(i, j, m=0):
    return MatrixElement.unit(m, i, j)


def test_cocycle_examples():
    assert glinf_bracket(unit(1, 0), unit(0, 1)).central == -rm_one(0)
    assert glinf_bracket(unit(HALF, 0), unit(0, HALF)).central == rm_one(0)
    assert glinf_bracket(unit(2, 1), unit(1, 2)).central == rm_zero(0)


def test_supertrace():
    assert supertrace(unit(0, 0)) == rm_one(0)
    assert supertrace(unit(HALF, HALF)) == -rm_one(0)
    assert supertrace(unit(0, 1)) == rm_zero(0)


def test_sector_map_examples():
    assert sector_map(3, 4, (2, 2)) == (Fraction(5, 2), Fraction(7, 2))
    assert sector_map(3, 4, (1, 2)) == (Fraction(3), Fraction(7, 2))
    assert sector_map(3, 4, (1, 1)) == (Fraction(3), Fraction(4))
    assert sector_map(3, 4, (2, 1)) == (Fraction(5, 2), Fraction(4))


def test_sector_map_transports_products():
    # E_ij M_ab . E_kl M_cd = delta_jk delta_bc E_il M_ad must commute with
    # the half-integer identification on all 16 sector pairs
    sectors = ((1, 1), (1, 2), (2, 1), (2, 2))
    i, j, k, l = 0, 1, 1, 2
    for ab in sectors:
        for cd in sectors:
            lhs_nonzero = (j == k) and (ab[1] == cd[0])
            r1, c1 = sector_map(i, j, ab)
            r2, c2 = sector_map(k, l, cd)
            assert (c1 == r2) == lhs_nonzero
            if lhs_nonzero:
                assert (r1, c2) == sector_map(i, l, (ab[0], cd[1]))


def test_principal_degree():
    A = unit(0, 1)
    assert set(principal_degree(A)) == {Fraction(1)}
    assert set(principal_degree(unit(HALF, 0))) == {Fraction(-1, 2)}
    central = MatrixElement.central_term(0, rm_one(0))
    assert set(principal_degree(central)) == {Fraction(0)}


def test_bracket_antisymmetry_and_jacobi():
    rng = random.Random(6)

    def rand_mat(m):
        par = rng.randint(0, 1)
        entries = {}
        for _ in range(rng.randint(1, 3)):
            r = Fraction(rng.randint(-4, 4), 2)
            off = Fraction(rng.randint(-2, 2)) + (HALF if par else 0)
            entries[(r, r + off)] = rm_from_scalar(rand_scalar(rng), m)
        return MatrixElement(m, entries)

    for trial in range(40):
        m = trial % 3
        A, B, C = rand_mat(m), rand_mat(m), rand_mat(m)
        pa, pb = A.parity(), B.parity()
        if pa is None or pb is None:
            continue
        sign = -1 if pa * pb == 0 else 1
        anti = glinf_bracket(A, B) - glinf_bracket(B, A).scale(scalar(sign))
        assert anti.is_zero
        lhs = glinf_bracket(A, glinf_bracket(B, C))
        rhs = glinf_bracket(glinf_bracket(A, B), C)
        tail = glinf_bracket(B, glinf_bracket(A, C))
        if pa * pb == 1:
            tail = tail.scale(scalar(-1))
        diff = lhs - rhs - tail
        assert diff.is_zero


def test_bracket_order_mismatch():
    with pytest.raises(ValueError):
        glinf_bracket(unit(0, 0, 0), unit(0, 0, 1))


def test_gl_quasifinite_examples():
    zero = GlWeight.zero()
    ok, violations = gl_quasifinite(zero)
    assert ok and not violations

    charged = GlWeight.make(0, [1])
    ok, violations = gl_quasifinite(charged)
    assert ok
    assert violations == [(0, HALF)]

    tails = GlWeight.make(0, [0], [LabelSeq.make(1, 1)], [LabelSeq.make()])
    ok, violations = gl_quasifinite(tails)
    assert not ok


def test_gl_quasifinite_tail_consistent_extension():
    w = GlWeight.make(0, [0],
                      [LabelSeq.make(2, 0, {0: 1})],
                      [LabelSeq.make(-2, 0, {0: 1})])
    ok1, v1 = gl_quasifinite(w)
    wider = GlWeight.make(0, [0],
                          [LabelSeq.make(2, 0, {-2: 2, -1: 2, 0: 1, 1: 0})],
                          [LabelSeq.make(-2, 0, {-2: -2, -1: -2, 0: 1, 1: 0})])
    ok2, v2 = gl_quasifinite(wider)
    assert ok1 == ok2
    assert {v for v in v1} == {v for v in v2}


def test_labelseq_dense_hull_rule():
    with pytest.raises(ValueError):
        LabelSeq.make(1, 0, {0: 1, 2: 1})
    seq = LabelSeq.make(0, 0, {0: 1, 2: 1})
    assert seq.at(1) == ZERO
    assert seq.at(-5) == ZERO and seq.at(7) == ZERO


def test_half_diagonal_nondegenerate():
    assert gl_nondegenerate(HalfDiagonal.make(0))
    zero_default = HalfDiagonal.make(0, default_int=rm_zero(0))
    assert not gl_nondegenerate(zero_default)
    nil = HalfDiagonal.make(1, default_int=rm_t_power(1, 1), default_half=rm_one(1))
    assert not gl_nondegenerate(nil)


def test_gl_g0a_examples():
    a = HalfDiagonal.make(1, values={0: rm_t_power(1, 1), 1: rm_zero(1)})
    desc = gl_g0a(a)
    assert desc["int"] == rm_one(1) and desc["half"] == rm_one(1)
    assert desc["exceptions"][Fraction(0)] == rm_t_power(1, 1)
    assert desc["exceptions"][Fraction(1)] == rm_zero(1)


def test_sp2_windowed():
    # degree -k elements annihilated by all windowed degree 1/2 brackets vanish
    rng = random.Random(8)
    for k in (HALF, Fraction(1), Fraction(3, 2)):
        for _ in range(10):
            m = rng.randint(0, 1)
            entries = {}
            for _ in range(rng.randint(1, 3)):
                j = Fraction(rng.randint(-4, 4), 2)
                entries[(j + k, j)] = rm_from_scalar(rand_scalar(rng), m)
            A = MatrixElement(m, entries)
            support = [j for (_, j) in A.entries]
            if not support:
                continue
            lo = min(support) - k - 1
            hi = max(i for (i, _) in A.entries) + k + 1
            killed = True
            t = lo
            while t <= hi:
                if not glinf_bracket(A, MatrixElement.unit(m, t - HALF, t)).is_zero:
                    killed = False
                    break
                t += HALF
            assert not killed
