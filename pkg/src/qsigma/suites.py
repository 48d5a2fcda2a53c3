"""Seeded randomized property suites, shared by the CLI and the tests.

Every suite is deterministic given (seed, cases) and returns a result
object with the failures it saw.  Case generation uses plain
random.Random so runs are reproducible across platforms.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import classify, embedding, grammar, parabolic
from .infmatrix import GlWeight, LabelSeq, MatrixElement, glinf_bracket, gl_quasifinite
from .laurent import LaurentPoly
from .quasipoly import QuasiPolynomial, annihilates_window, min_annihilator, qp_eval
from .scalars import ONE, Q, S, ZERO, rm_from_scalar, scalar
from .superalgebra import (Element, act_on_superline, assoc_mul, grade_decompose,
                           superbracket)

HALF = Fraction(1, 2)


@dataclass
class SuiteResult:
    name: str
    cases: int
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self, seed: int) -> str:
        passed = self.cases - len(self.failures)
        return f"suite {self.name}: {passed}/{self.cases} pass (seed {seed})"


# -- generators ---------------------------------------------------------------

_COEFF_POOL = (1, -1, 2, -2, 3, -3)


def rand_scalar(rng, symbols=True):
    c = scalar(rng.choice(_COEFF_POOL))
    if symbols and rng.random() < 0.4:
        c = c * Q ** rng.randint(-1, 1)
    if symbols and rng.random() < 0.2:
        c = c * S ** rng.randint(0, 1)
    return c

def rand_laurent(rng, span=3, max_terms=3, symbols=True) -> LaurentPoly:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        terms[rng.randint(-span, span)] = rand_scalar(rng, symbols)
    return LaurentPoly(terms)


EVEN_SECTORS = ((1, 1), (2, 2))
ODD_SECTORS = ((1, 2), (2, 1))


def rand_homog_element(rng, parity=None, zspan=3, span=3, allow_central=True) -> Element:
    if parity is None:
        parity = rng.randint(0, 1)
    sectors = EVEN_SECTORS if parity == 0 else ODD_SECTORS
    terms = {}
    for _ in range(rng.randint(1, 2)):
        key = (rng.randint(-zspan, zspan), rng.choice(sectors))
        f = rand_laurent(rng, span)
        terms[key] = terms.get(key, LaurentPoly.zero()) + f
    central = ZERO
    if parity == 0 and allow_central and rng.random() < 0.3:
        central = rand_scalar(rng)
    return Element(terms, central=central)


def rand_element(rng, zspan=3, span=3) -> Element:
    x = rand_homog_element(rng, 0, zspan, span)
    if rng.random() < 0.6:
        x = x + rand_homog_element(rng, 1, zspan, span, allow_central=False)
    return x


def rand_degree_pair(rng, rmax=3):
    """Homogeneous pair with opposite nonzero z-degrees (r, -r)."""
    r = rng.randint(1, rmax)
    sec1 = rng.choice(EVEN_SECTORS + ODD_SECTORS)
    # sector pairing with nonzero products half the time
    if rng.random() < 0.7:
        sec2 = (sec1[1], sec1[0])
    else:
        sec2 = rng.choice(EVEN_SECTORS + ODD_SECTORS)
    x = Element({(r, sec1): rand_laurent(rng)})
    y = Element({(-r, sec2): rand_laurent(rng)})
    return x, y


def rand_labelseq(rng, lo=-2, hi=2, density=0.5) -> dict:
    return {k: rng.choice(_COEFF_POOL) for k in range(lo, hi + 1) if rng.random() < density}


def rand_glweight(rng, m_max=2, with_tails=False) -> GlWeight:
    m = rng.randint(0, m_max)
    int_seqs = []
    half_seqs = []
    for _ in range(m + 1):
        if with_tails and rng.random() < 0.5:
            gamma = scalar(rng.choice(_COEFF_POOL))
            delta = scalar(rng.choice(_COEFF_POOL))
            lo, hi = -2, 2
            int_seqs.append(LabelSeq.make(gamma, delta,
                                          {k: rng.choice(_COEFF_POOL) for k in range(lo, hi + 1)}))
            half_seqs.append(LabelSeq.make(-gamma, -delta,
                                           {k: rng.choice(_COEFF_POOL) for k in range(lo, hi + 1)}))
        else:
            int_seqs.append(LabelSeq.make(0, 0, rand_labelseq(rng)))
            half_seqs.append(LabelSeq.make(0, 0, rand_labelseq(rng)))
    charges = [rng.choice(_COEFF_POOL + (0, 0)) for _ in range(m + 1)]
    return GlWeight.make(m, charges, int_seqs, half_seqs)


_QP_BASES = None


def _qp_base_pool():
    global _QP_BASES
    if _QP_BASES is None:
        _QP_BASES = (ONE, scalar(2), Q, Q ** 2, ONE / Q, S, S / Q, S * Q, scalar(3))
    return _QP_BASES


def rand_qp(rng, max_bases=3, max_deg=2) -> QuasiPolynomial:
    pool = list(_qp_base_pool())
    rng.shuffle(pool)
    terms = {}
    for b in pool[: rng.randint(1, max_bases)]:
        deg = rng.randint(0, max_deg)
        coeffs = [scalar(rng.choice(_COEFF_POOL + (0,))) for _ in range(deg)]
        coeffs.append(scalar(rng.choice(_COEFF_POOL)))
        terms[b] = coeffs
    return QuasiPolynomial(terms)


# -- suites -------------------------------------------------------------------

def suite_jacobi(seed: int, cases: int) -> SuiteResult:
    """Super-antisymmetry and the extended super-Jacobi identity."""
    rng = random.Random(seed)
    res = SuiteResult("jacobi", cases)
    for n in range(cases):
        x = rand_homog_element(rng)
        y = rand_homog_element(rng)
        z = rand_homog_element(rng)
        px, py = x.parity(), y.parity()
        sign = -1 if px * py == 0 else 1
        anti = superbracket(x, y) - superbracket(y, x).scale(sign)
        if not anti.is_zero:
            res.failures.append(f"case {n}: antisymmetry: {x} | {y}")
            continue
        lhs = superbracket(x, superbracket(y, z))
        rhs = superbracket(superbracket(x, y), z)
        tail = superbracket(y, superbracket(x, z))
        if px * y.parity() == 1:
            tail = tail.scale(-ONE)
        if not (lhs - rhs - tail).is_zero:
            res.failures.append(f"case {n}: jacobi: {x} | {y} | {z}")
    return res


def suite_product(seed: int, cases: int) -> SuiteResult:
    """assoc_mul agrees with composition of the superline action."""
    rng = random.Random(seed)
    res = SuiteResult("product", cases)
    for n in range(cases):
        x = rand_homog_element(rng, allow_central=False)
        y = rand_homog_element(rng, allow_central=False)
        xy = assoc_mul(x, y)
        bad = False
        for k in range(-5, 6):
            for comp in (1, 2):
                v = (k, comp)
                direct = act_on_superline(xy, v)
                chained = act_on_superline(x, act_on_superline(y, v))
                if direct != chained:
                    bad = True
                    break
            if bad:
                break
        if bad:
            res.failures.append(f"case {n}: {x} | {y} at {v}")
    return res


def suite_cocycle(seed: int, cases: int) -> SuiteResult:
    """Central part of the embedded bracket at order 0.

    C(phi x, phi y) equals the central jet of phi_hat([x, y]); the bare
    cocycle psi differs from the pullback exactly by the diagonal
    correction terms.
    """
    rng = random.Random(seed)
    res = SuiteResult("cocycle", cases)
    for n in range(cases):
        x, y = rand_degree_pair(rng)
        a = embedding.phi(x, S, 0)
        b = embedding.phi(y, S, 0)
        got = embedding.cocycle_of_images(a, b)
        want = embedding.phi_hat(superbracket(x, y), S, 0).central
        if got != want:
            res.failures.append(f"case {n}: {x} | {y}")
    return res


def suite_homomorphism(seed: int, cases: int) -> SuiteResult:
    """Entry-wise bracket homomorphism on a window, central parts included."""
    rng = random.Random(seed)
    res = SuiteResult("homomorphism", cases)
    W = 6
    for n in range(cases):
        m = n % 3
        x = rand_homog_element(rng)
        y = rand_homog_element(rng)
        lhs_op = embedding.phi_hat(superbracket(x, y), S, m)
        lhs_win = lhs_op.window(-W, W)
        rhs_win, rhs_central = embedding.banded_bracket_window(
            embedding.phi_hat(x, S, m), embedding.phi_hat(y, S, m), -W, W)
        if lhs_win != rhs_win or lhs_op.central != rhs_central:
            res.failures.append(f"case {n} (m={m}): {x} | {y}")
    return res


def suite_intertwine(seed: int, cases: int) -> SuiteResult:
    """Module action matches the matrix image on basis vectors."""
    rng = random.Random(seed)
    res = SuiteResult("intertwine", cases)
    for n in range(cases):
        x = rand_homog_element(rng, allow_central=False)
        op = embedding.phi(x, S, 0)
        bad = None
        for num in range(-4, 5):
            for idx in (Fraction(num), Fraction(num) - HALF):
                acted = embedding.module_action(x, idx, S)
                expected = {}
                for off in op.offsets():
                    row = idx + off
                    v = op.entry(row, idx)
                    if not v.is_zero:
                        expected[row] = expected.get(row, ZERO) + v.coeffs[0]
                expected = {k: v for k, v in expected.items() if v != ZERO}
                if acted != expected:
                    bad = idx
                    break
            if bad is not None:
                break
        if bad is not None:
            res.failures.append(f"case {n}: {x} at v_{bad}")
    return res


def suite_grading(seed: int, cases: int) -> SuiteResult:
    """Bracket additivity of the principal gradation."""
    rng = random.Random(seed)
    res = SuiteResult("grading", cases)
    for n in range(cases):
        x = rand_element(rng)
        y = rand_element(rng)
        gx = grade_decompose(x)
        gy = grade_decompose(y)
        bad = False
        for dx, cx in gx.items():
            for dy, cy in gy.items():
                br = superbracket(cx, cy)
                comps = grade_decompose(br)
                if any(d != dx + dy for d in comps):
                    bad = True
        total = Element.zero()
        for comp in gx.values():
            total = total + comp
        if total != x:
            bad = True
        if bad:
            res.failures.append(f"case {n}: {x} | {y}")
    return res


def suite_quasipoly(seed: int, cases: int) -> SuiteResult:
    """Minimal annihilators kill the series; dropping a root breaks it."""
    rng = random.Random(seed)
    res = SuiteResult("quasipoly", cases)
    for n in range(cases):
        P = rand_qp(rng)
        b = min_annihilator(P)
        if not annihilates_window(b, P, 40):
            res.failures.append(f"case {n}: annihilator fails: {P}")
            continue
        bad = False
        for root in set(P.bases()):
            factor = LaurentPoly({1: ONE, 0: -root})
            quotient = _poly_quotient(b, factor)
            if annihilates_window(quotient, P, 40):
                bad = True
                break
        if bad:
            res.failures.append(f"case {n}: dropped root still annihilates: {P}")
    return res


def _poly_quotient(b: LaurentPoly, factor: LaurentPoly) -> LaurentPoly:
    from .laurent import _dense, _dense_divmod
    quo, rem = _dense_divmod(_dense(b), _dense(factor))
    if any(c != ZERO for c in rem):
        raise ValueError("factor does not divide")
    return LaurentPoly.from_coeffs(quo)


def suite_singular(seed: int, cases: int) -> SuiteResult:
    """Annihilator pairs pass the depth-1/2 singularity test; a perturbed
    label fails it."""
    rng = random.Random(seed)
    res = SuiteResult("singular", cases)
    for n in range(cases):
        p12 = rand_qp(rng, max_bases=2, max_deg=1)
        p21 = rand_qp(rng, max_bases=2, max_deg=1)
        w = classify.SSqWeight(p12, p21, qp_eval(p21, 0) - qp_eval(p12, 0))
        _, b12, b21 = classify.check_qf(w)
        d = parabolic.HalfElement(b12, b21)
        if not parabolic.singular_vector_check(w, d, window=6):
            res.failures.append(f"case {n}: base check fails")
            continue
        n0 = rng.choice([-2, -1, 1, 2])
        i0 = rng.choice([1, 2])
        lam = classify.LabelFunctional(w, {(n0, i0): ONE})
        if parabolic.singular_vector_check(lam, d, window=6):
            res.failures.append(f"case {n}: perturbed label still singular")
    return res


def suite_glqf(seed: int, cases: int) -> SuiteResult:
    """Tail-based quasifiniteness agrees with a direct pair-sum scan."""
    rng = random.Random(seed)
    res = SuiteResult("glqf", cases)
    for n in range(cases):
        w = rand_glweight(rng, with_tails=(n % 2 == 1))
        got, _ = gl_quasifinite(w)
        want = _direct_scan_quasifinite(w)
        if got != want:
            res.failures.append(f"case {n}: verdict {got} vs scan {want}")
    return res


def _direct_scan_quasifinite(w: GlWeight, pad: int = 4) -> bool:
    hull = [0]
    for l in range(w.m + 1):
        hull += [k for k, _ in w.int_seqs[l].values]
        hull += [k for k, _ in w.half_seqs[l].values]
    lo, hi = min(hull) - pad, max(hull) + pad
    # any violation strictly outside the hull persists into the constant
    # tails, so sampling both parities at each edge decides finiteness
    for l in range(w.m + 1):
        for edge in (Fraction(lo), Fraction(lo) + HALF, Fraction(hi) - HALF, Fraction(hi)):
            v = w.label(edge, l) + w.label(edge - HALF, l)
            if edge == HALF:
                v += w.charge(l)
            if v != ZERO:
                return False
    return True


def suite_sp2(seed: int, cases: int) -> SuiteResult:
    """Windowed faithfulness of degree-1/2 brackets on negative elements."""
    rng = random.Random(seed)
    res = SuiteResult("sp2", cases)
    for n in range(cases):
        k = rng.choice((HALF, Fraction(1), Fraction(3, 2)))
        m = rng.randint(0, 1)
        entries = {}
        support = []
        for _ in range(rng.randint(1, 3)):
            j = Fraction(rng.randint(-2, 2)) + (HALF if rng.random() < 0.5 else 0)
            entries[(j + k, j)] = rm_from_scalar(rand_scalar(rng), m)
            support.append(j)
        A = MatrixElement(m, entries)
        if A.is_zero:
            continue
        lo = min(min(support), min(j + k for j in support)) - k - 1
        hi = max(max(support), max(j + k for j in support)) + k + 1
        found = False
        t = lo
        while t <= hi:
            b = MatrixElement.unit(m, t - HALF, t)
            if not glinf_bracket(A, b).is_zero:
                found = True
                break
            t += HALF
        if not found:
            res.failures.append(f"case {n}: nonzero element killed by the window")
    return res


def suite_roundtrip(seed: int, cases: int) -> SuiteResult:
    """Classification round trip on weights pulled back from matrix modules."""
    rng = random.Random(seed)
    res = SuiteResult("roundtrip", cases)
    for n in range(cases):
        points = [ONE, S] if n % 2 == 0 else [S]
        descriptors = []
        for s_pt in points:
            w = rand_glweight(rng, m_max=2)
            descriptors.append(classify.ModuleDescriptor(s_pt, w.m, w))
        labels = classify.tensor_labels(descriptors)
        report = classify.roundtrip(labels.p12, labels.p21)
        if not report.passed:
            res.failures.append(f"case {n}: {report}")
    return res


def suite_parseprint(seed: int, cases: int) -> SuiteResult:
    """parse(print(x)) is the identity on random elements."""
    rng = random.Random(seed)
    res = SuiteResult("parseprint", cases)
    for n in range(cases):
        x = rand_element(rng)
        text = str(x)
        back = grammar.parse_element(text)
        if back != x:
            res.failures.append(f"case {n}: {text}")
    return res


SUITES = {
    "jacobi": suite_jacobi,
    "product": suite_product,
    "cocycle": suite_cocycle,
    "homomorphism": suite_homomorphism,
    "intertwine": suite_intertwine,
    "grading": suite_grading,
    "quasipoly": suite_quasipoly,
    "singular": suite_singular,
    "glqf": suite_glqf,
    "sp2": suite_sp2,
    "roundtrip": suite_roundtrip,
    "parseprint": suite_parseprint,
}


def run_suite(name: str, seed: int, cases: int) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](seed, cases)
