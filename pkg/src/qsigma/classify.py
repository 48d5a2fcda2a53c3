"""Highest-weight data and the classification round trip.

Convention (fixed here once, used everywhere): the label Delta_{n,i} is
the value of the weight functional on T_q^n E_ii, and the central charge
c its value on C.  The two generating quasipolynomials then satisfy

    P21(n) = Delta_{n,1} + Delta_{n,2}            (all n)
    P12(n) = q^n Delta_{n,1} + Delta_{n,2}        (n != 0)
    P12(0) = P21(0) - c.

With this convention the pulled-back weights of matrix-algebra modules
produce exactly these quasipolynomials, with all bases in the single
class s q^Z, and the central-charge identity c = P21(0) - P12(0) emerges
from the formulas instead of being imposed.  The opposite assignment of
c is kept available in `roundtrip` as an explicit argument; it fails the
round trip and its diff is pinned by a regression fixture.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .infmatrix import GlWeight, HALF, LabelSeq, gl_quasifinite
from .laurent import LaurentPoly
from .quasipoly import (QuasiPolynomial, congruence_classes_of, interpolate_finite,
                        jet_at_zero, min_annihilator, qp_eval)
from .scalars import LOG, ONE, Q, Scalar, ZERO, scalar, scalar_str
from .superalgebra import Element


def _as_scalar(v):
    return v if isinstance(v, Scalar) else scalar(v)


@dataclass(frozen=True)
class SSqWeight:
    """Weight of the extended operator algebra: (P12, P21, c).

    The optional zero split records the individually chosen
    (Delta_{0,1}, Delta_{0,2}); it must sum to P21(0) and is never used
    by synthesis.
    """

    p12: QuasiPolynomial
    p21: QuasiPolynomial
    c: Scalar
    zero_split: tuple | None = None

    def __post_init__(self):
        c = _as_scalar(self.c)
        object.__setattr__(self, "c", c)
        if qp_eval(self.p21, 0) - qp_eval(self.p12, 0) != c:
            raise ValueError("inconsistent weight: c must equal P21(0) - P12(0)")
        if self.zero_split is not None:
            d1, d2 = (_as_scalar(v) for v in self.zero_split)
            object.__setattr__(self, "zero_split", (d1, d2))
            if d1 + d2 != qp_eval(self.p21, 0):
                raise ValueError("zero split must sum to P21(0)")

    @staticmethod
    def zero() -> "SSqWeight":
        return SSqWeight(QuasiPolynomial.zero(), QuasiPolynomial.zero(), ZERO)


def delta_of(w: SSqWeight, n: int, i: int):
    """Delta_{n,i} for n != 0 (n = 0 needs the optional zero split)."""
    if i not in (1, 2):
        raise ValueError("component must be 1 or 2")
    if n == 0:
        if w.zero_split is None:
            raise ValueError("Delta_{0,i} is underdetermined without a zero split")
        return w.zero_split[i - 1]
    d1 = (qp_eval(w.p12, n) - qp_eval(w.p21, n)) / (Q ** n - ONE)
    if i == 1:
        return d1
    return qp_eval(w.p21, n) - d1


class LabelFunctional:
    """Evaluation of a weight on the degree-0 subalgebra.

    `perturbations` maps (n, i) to an additive tweak of Delta_{n,i};
    this is how single-label perturbation experiments are expressed.
    """

    def __init__(self, weight: SSqWeight, perturbations=None):
        self.weight = weight
        self.perturbations = {
            (int(n), int(i)): _as_scalar(v)
            for (n, i), v in (perturbations or {}).items()
        }

    def _pert(self, n: int, i: int):
        return self.perturbations.get((n, i), ZERO)

    def delta(self, n: int, i: int):
        return delta_of(self.weight, n, i) + self._pert(n, i)

    def pair21(self, n: int):
        base = qp_eval(self.weight.p21, n)
        return base + self._pert(n, 1) + self._pert(n, 2)

    def evaluate(self, x: Element):
        """Apply the functional to a degree-0 element."""
        f11 = LaurentPoly.zero()
        f22 = LaurentPoly.zero()
        for (n, sector), f in x.terms.items():
            if n != 0 or sector not in ((1, 1), (2, 2)):
                raise ValueError("functional defined on the degree-0 part only")
            if sector == (1, 1):
                f11 = f11 + f
            else:
                f22 = f22 + f
        total = x.central * self.weight.c
        for l in sorted(set(f11.exponents()) | set(f22.exponents())):
            a, b = f11.coeff(l), f22.coeff(l)
            if l == 0:
                if a == b:
                    total += a * self.pair21(0)
                elif self.weight.zero_split is not None:
                    d1 = self.weight.zero_split[0] + self._pert(0, 1)
                    d2 = self.weight.zero_split[1] + self._pert(0, 2)
                    total += a * d1 + b * d2
                else:
                    raise ValueError("zero split required for unbalanced constant term")
            else:
                d1 = self.delta(l, 1)
                total += a * d1 + b * (self.pair21(l) - d1)
        return total

    def pair12(self, n: int):
        if n == 0:
            return self.pair21(0) - self.weight.c
        return qp_eval(self.weight.p12, n) + (Q ** n) * self._pert(n, 1) + self._pert(n, 2)


def check_qf(w: SSqWeight):
    """Quasifiniteness verdict with the two minimal annihilators.

    Any weight already presented by a quasipolynomial pair is
    quasifinite; raw finite label data goes through
    `weight_from_raw_labels`, which may fail to interpolate.
    """
    return True, min_annihilator(w.p12), min_annihilator(w.p21)


def weight_from_raw_labels(delta1, delta2, c, bound: int = 16):
    """Build an SSqWeight from raw label windows, or None.

    `delta1`/`delta2` map integers n to Delta_{n,i}; positions missing
    inside the key hull count as zero.  The value at n = 0 supplies the
    zero split.  Returns None when either generating sequence admits no
    quasipolynomial within the annihilator-degree bound.
    """
    c = _as_scalar(c)
    keys = set(delta1) | set(delta2) | {0}
    lo, hi = min(keys), max(keys)
    d1 = {n: _as_scalar(delta1.get(n, 0)) for n in range(lo, hi + 1)}
    d2 = {n: _as_scalar(delta2.get(n, 0)) for n in range(lo, hi + 1)}
    data21 = {n: d1[n] + d2[n] for n in range(lo, hi + 1)}
    data12 = {n: (Q ** n) * d1[n] + d2[n] for n in range(lo, hi + 1)}
    data12[0] = d1[0] + d2[0] - c
    p21 = interpolate_finite(data21, bound)
    if p21 is None:
        return None
    p12 = interpolate_finite(data12, bound)
    if p12 is None:
        return None
    return SSqWeight(p12, p21, c, zero_split=(d1[0], d2[0]))


# -- module side --------------------------------------------------------------

@dataclass(frozen=True)
class ModuleDescriptor:
    """One tensor factor: evaluation point, truncation order, weight."""

    s: Scalar
    m: int
    weight: GlWeight

    def __post_init__(self):
        object.__setattr__(self, "s", _as_scalar(self.s))
        ok, _ = gl_quasifinite(self.weight)
        if not ok:
            raise ValueError("module descriptors require quasifinite weights")


def _pair21(w: GlWeight, j: int, l: int):
    return w.label(j, l) + w.label(Fraction(j) - HALF, l)


def _pair12(w: GlWeight, j: int, l: int):
    return w.label(j + 1, l) + w.label(Fraction(j) - HALF, l)


def _probe_ints(w: GlWeight):
    # dense hull: exception parities may straddle a gap with nonzero pairs
    js = {0}
    for l in range(w.m + 1):
        for k, _ in w.int_seqs[l].values:
            js.add(int(k))
        for k, _ in w.half_seqs[l].values:
            js.add(int(k))
    return list(range(min(js) - 2, max(js) + 3))


def labels_of_module(d: ModuleDescriptor) -> SSqWeight:
    """The pulled-back weight of a matrix-algebra module.

    P21 collects the pair sums lambda_j + lambda_{j-1/2} at base s q^{-j}
    with jet factor (kL)^l / l!; P12 the pair sums
    lambda_{j+1} + lambda_{j-1/2} minus the residual central term
    s^k c_l (kL)^l / l!.  Quasifiniteness makes both collections finite.
    """
    w = d.weight
    ok, _ = gl_quasifinite(w)
    if not ok:
        raise ValueError("labels_of_module requires a quasifinite weight")
    p21_terms = {}
    p12_terms = {}
    for j in _probe_ints(w):
        base = d.s * Q ** (-j)
        c21 = []
        c12 = []
        for l in range(w.m + 1):
            jet = LOG ** l / scalar(factorial(l))
            c21.append(_pair21(w, j, l) * jet)
            c12.append(_pair12(w, j, l) * jet)
        if any(v != ZERO for v in c21):
            p21_terms[base] = c21
        if any(v != ZERO for v in c12):
            p12_terms[base] = c12
    p21 = QuasiPolynomial(p21_terms)
    p12 = QuasiPolynomial(p12_terms)
    residual = QuasiPolynomial({
        d.s: [w.charge(l) * LOG ** l / scalar(factorial(l)) for l in range(w.m + 1)]
    }) if any(w.charge(l) != ZERO for l in range(w.m + 1)) else QuasiPolynomial.zero()
    p12 = p12 - residual
    split = _zero_split_or_none(w)
    return SSqWeight(p12, p21, w.charge(0), zero_split=split)


def _zero_split_or_none(w: GlWeight):
    """Regularized (Delta_{0,1}, Delta_{0,2}): finite only for zero tails."""
    seq_i, seq_h = w.int_seqs[0], w.half_seqs[0]
    if any(t != ZERO for t in (seq_i.neg_tail, seq_i.pos_tail, seq_h.neg_tail, seq_h.pos_tail)):
        return None
    d1 = sum((v for _, v in seq_i.values), ZERO)
    d2 = sum((v for _, v in seq_h.values), ZERO)
    return (d1, d2)


def tensor_labels(descriptors) -> SSqWeight:
    """Highest weights add under tensor product."""
    p12 = QuasiPolynomial.zero()
    p21 = QuasiPolynomial.zero()
    c = ZERO
    splits = []
    for d in descriptors:
        wt = labels_of_module(d)
        p12 = p12 + wt.p12
        p21 = p21 + wt.p21
        c = c + wt.c
        splits.append(wt.zero_split)
    split = None
    if splits and all(sp is not None for sp in splits):
        split = (sum((sp[0] for sp in splits), ZERO), sum((sp[1] for sp in splits), ZERO))
    return SSqWeight(p12, p21, c, zero_split=split)


def synthesize(p12: QuasiPolynomial, p21: QuasiPolynomial):
    """Decompose a weight into one module descriptor per congruence class.

    For each class with representative base b and exponent list
    {0 = k_0 < k_1 < ...} the h-values are the jets of the class
    polynomials at 0 (divided by L^l, matching the jet factors used on
    the label side); charges are c_l = sum_k (h_{k-1/2} - h_k) and the
    labels solve

        lambda_j + lambda_{j-1/2}   = h_{j-1/2}
        lambda_{j+1} + lambda_{j-1/2} = h_j + delta_{j,0} c_l

    with zero tails, accumulating from large j downward.
    """
    bases = sorted(set(p12.bases()) | set(p21.bases()), key=scalar_str)
    if not bases:
        return []
    out = []
    for rep, members in congruence_classes_of(bases):
        base_of = dict((k, b) for k, b in members)
        ks = sorted(base_of)
        m_cls = 0
        for b in base_of.values():
            m_cls = max(m_cls, len(p12.poly(b)) - 1, len(p21.poly(b)) - 1)
        charges = []
        int_seqs = []
        half_seqs = []
        for l in range(m_cls + 1):
            ldiv = LOG ** l
            h12 = {}
            h21 = {}
            for k, b in base_of.items():
                h12[k] = jet_at_zero(p12, b, l) / ldiv
                h21[k] = jet_at_zero(p21, b, l) / ldiv
            c_l = sum((h21[k] - h12[k] for k in ks), ZERO)
            charges.append(c_l)
            kmax = max(ks)
            lam_int = {}
            suffix = ZERO
            for j in range(kmax, 0, -1):
                suffix += h21.get(j, ZERO) - h12.get(j, ZERO)
                if suffix != ZERO:
                    lam_int[j] = suffix
            lam_half = {}
            for j in range(0, kmax + 1):
                v = h21.get(j, ZERO) - lam_int.get(j, ZERO)
                if v != ZERO:
                    lam_half[j] = v
            int_seqs.append(LabelSeq.make(0, 0, lam_int))
            half_seqs.append(LabelSeq.make(0, 0, lam_half))
        weight = GlWeight.make(m_cls, charges, int_seqs, half_seqs)
        out.append(ModuleDescriptor(rep, m_cls, weight))
    return out


@dataclass
class RoundtripReport:
    passed: bool
    lines: list

    def __str__(self):
        if self.passed:
            return "roundtrip: pass"
        return "roundtrip: fail\n" + "\n".join(f"  {line}" for line in self.lines)


def _qp_diff_lines(tag, expected: QuasiPolynomial, got: QuasiPolynomial):
    lines = []
    bases = sorted(set(expected.bases()) | set(got.bases()), key=scalar_str)
    for b in bases:
        pe, pg = expected.poly(b), got.poly(b)
        if pe != pg:
            fmt = lambda p: "[" + ", ".join(scalar_str(c) for c in p) + "]"
            lines.append(f"{tag} base {scalar_str(b)}: expected {fmt(pe)}, got {fmt(pg)}")
    return lines


def roundtrip(p12: QuasiPolynomial, p21: QuasiPolynomial, central=None) -> RoundtripReport:
    """Check tensor_labels(synthesize(P12, P21)) == (P12, P21, c).

    `central` defaults to the adopted convention P21(0) - P12(0);
    passing the rejected opposite sign documents its failure.
    """
    expected_c = (_as_scalar(central) if central is not None
                  else qp_eval(p21, 0) - qp_eval(p12, 0))
    descriptors = synthesize(p12, p21)
    got = tensor_labels(descriptors)
    lines = []
    lines += _qp_diff_lines("p12", p12, got.p12)
    lines += _qp_diff_lines("p21", p21, got.p21)
    if got.c != expected_c:
        lines.append(f"central charge: expected {scalar_str(expected_c)}, got {scalar_str(got.c)}")
    return RoundtripReport(not lines, lines)
