"""Embeddings of the operator superalgebra into half-integer matrices
over R_m, one strand (shifted diagonal) per term.

phi sends z^k f(T_q) E_sector to the family of entries

    E11: (j-k, j)          E21: (j-k-1/2, j)
    E12: (j-k, j-1/2)      E22: (j-k-1/2, j-1/2)      (j over the integers)

with entry value the jet of f(s q^{-j+t}).  phi_hat additionally maps C
to the central 1 and corrects zero-degree diagonal terms T^k E_ii
(k != 0) by the central jet -(-1)^i s^k/(1-q^k) q^{kt}; with these
corrections it is a homomorphism of the centrally extended algebras.
"""

from __future__ import annotations

from fractions import Fraction

from .infmatrix import MatrixElement, cocycle_entries, index_parity, matrix_mul_entries
from .laurent import LaurentPoly, jet_eval, lp_eval
from .scalars import ONE, Q, RmElement, Scalar, ZERO, jet_exp, rm_from_scalar, rm_one, rm_zero, scalar
from .superalgebra import Element, sector_parity

HALF = Fraction(1, 2)


class BandedOperator:
    """Image of an element: finitely many strands plus a central jet."""

    __slots__ = ("s", "m", "strands", "central")

    def __init__(self, s, m: int, strands=None, central: RmElement | None = None):
        self.s = s if isinstance(s, Scalar) else scalar(s)
        if self.s == ZERO:
            raise ZeroDivisionError("the evaluation point s must be nonzero")
        self.m = m
        self.strands = dict(strands or {})
        self.central = central if central is not None else rm_zero(m)

    def parity(self):
        ps = {sector_parity(sec) for (_, sec) in self.strands}
        if not self.central.is_zero:
            ps.add(0)
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def offsets(self):
        out = set()
        for (n, sector), _ in self.strands.items():
            a, b = sector
            off = Fraction(-n)
            if a == 2:
                off -= HALF
            if b == 2:
                off += HALF
            out.add(off)
        return out

    def entry(self, i, j) -> RmElement:
        """Exact entry at row i, column j (half-integers)."""
        i, j = Fraction(i), Fraction(j)
        rowtype = 1 if i.denominator == 1 else 2
        coltype = 1 if j.denominator == 1 else 2
        jp = j if coltype == 1 else j + HALF
        n = jp - i - (HALF if rowtype == 2 else 0)
        if n.denominator != 1:
            return rm_zero(self.m)
        f = self.strands.get((int(n), (rowtype, coltype)))
        if f is None:
            return rm_zero(self.m)
        return jet_eval(f, self.s * Q ** (-int(jp)), self.m)

    def window(self, lo, hi) -> dict:
        """All nonzero entries with both indices in [lo, hi]."""
        lo, hi = Fraction(lo), Fraction(hi)
        if lo > hi:
            raise ValueError("empty window")
        out = {}
        for (n, (a, b)), f in self.strands.items():
            # iterate the integer strand parameter over columns in range
            jp_lo = int(lo) - 1
            jp_hi = int(hi) + 2
            for jp in range(jp_lo, jp_hi + 1):
                col = Fraction(jp) if b == 1 else Fraction(jp) - HALF
                if col < lo or col > hi:
                    continue
                row = Fraction(jp) - n - (HALF if a == 2 else 0)
                if row < lo or row > hi:
                    continue
                v = jet_eval(f, self.s * Q ** (-jp), self.m)
                if v.is_zero:
                    continue
                key = (row, col)
                prev = out.get(key)
                out[key] = v if prev is None else prev + v
        return out


def phi(x: Element, s, m: int) -> BandedOperator:
    """The plain embedding; defined only on the non-extended algebra."""
    if x.central != ZERO:
        raise ValueError("phi does not accept central terms; use phi_hat")
    return BandedOperator(s, m, dict(x.terms))


def phi_hat(x: Element, s, m: int) -> BandedOperator:
    """The embedding of the central extension (central corrections added)."""
    op = BandedOperator(s, m, dict(x.terms))
    s_ = op.s
    central = rm_zero(m)
    if x.central != ZERO:
        central = central + rm_one(m).scale(x.central)
    for (n, (i, j)), f in x.terms.items():
        if n != 0 or i != j:
            continue
        for k, coeff in f.terms():
            if k == 0:
                continue
            corr = jet_exp(k, m).scale(coeff * s_ ** k / (ONE - Q ** k))
            central = central + (corr if i == 1 else -corr)
    op.central = central
    return op


def window(op: BandedOperator, lo, hi) -> dict:
    if Fraction(lo) > Fraction(hi):
        raise ValueError("window bounds must satisfy lo <= hi")
    return op.window(lo, hi)


def module_action(x: Element, v, s):
    """Action on the half-integer-indexed module at jet level 0.

    `v` is a basis index (half-integer) or a dict {index: coefficient}.
    """
    if x.central != ZERO:
        raise ValueError("the central element does not act on the module")
    s = s if isinstance(s, Scalar) else scalar(s)
    if isinstance(v, (int, Fraction)):
        v = {Fraction(v): ONE}
    out = {}
    for idx, coeff in v.items():
        idx = Fraction(idx)
        coltype = 1 if idx.denominator == 1 else 2
        jp = int(idx) if coltype == 1 else int(idx + HALF)
        for (n, (a, b)), f in x.terms.items():
            if b != coltype:
                continue
            target = Fraction(jp) - n - (HALF if a == 2 else 0)
            val = coeff * lp_eval(f, s * Q ** (-jp))
            if val == ZERO:
                continue
            w = out.get(target, ZERO) + val
            if w == ZERO:
                out.pop(target, None)
            else:
                out[target] = w
    return out


def kernel_witness(x: Element, s, m: int):
    """A nonzero entry of phi(x), or None when x = 0.

    Entries never overlap across terms (index parities and the offset
    pin the term), so a witness for any single term is a witness for the
    whole image.
    """
    if not x.terms:
        return None
    (n, (a, b)), f = sorted(x.terms.items(), key=lambda kv: kv[0])[0]
    s = s if isinstance(s, Scalar) else scalar(s)
    span = f.degree - f.valuation
    for step in range(2 * span + 3):
        jp = (step + 1) // 2 * (1 if step % 2 == 0 else -1)
        value = jet_eval(f, s * Q ** (-jp), m)
        if not value.is_zero:
            row = Fraction(jp) - n - (HALF if a == 2 else 0)
            col = Fraction(jp) - (HALF if b == 2 else 0)
            return (row, col), value
    raise RuntimeError("no witness found; nonzero Laurent data must witness")


def kernel_test(x: Element, s, m: int) -> bool:
    """True iff x = 0: the embeddings are injective for any nonzero s."""
    if x.central != ZERO:
        return False
    return kernel_witness(x, s, m) is None


def phi_multi(x: Element, s_list, m_list):
    """Component-wise phi_hat at pairwise q-power-independent points."""
    from .scalars import q_power_ratio
    if len(s_list) != len(m_list):
        raise ValueError("need one truncation order per evaluation point")
    ss = [v if isinstance(v, Scalar) else scalar(v) for v in s_list]
    for i in range(len(ss)):
        for j in range(i + 1, len(ss)):
            if q_power_ratio(ss[i], ss[j]) is not None:
                raise ValueError(
                    "evaluation points must be q-power independent "
                    "(exponent congruence mod Z + tau^{-1}Z is excluded)")
    return [phi_hat(x, s, m) for s, m in zip(ss, m_list)]


# -- window arithmetic for the homomorphism oracle ---------------------------

def banded_bracket_window(A: BandedOperator, B: BandedOperator, lo, hi):
    """Entries of [A, B] on [lo, hi] plus the exact central cocycle value.

    The supercommutator is computed from materialized windows with a
    band-width margin, which is exact on the requested window; the
    cocycle needs only the straddle window [-D-1, D+1].
    """
    if A.m != B.m:
        raise ValueError("truncation order mismatch")
    pa, pb = A.parity(), B.parity()
    if pa is None or pb is None:
        raise ValueError("bracket windows need parity-homogeneous operators")
    m = A.m
    offs = A.offsets() | B.offsets()
    D = max((abs(o) for o in offs), default=Fraction(0))
    Di = int(D) + 1
    lo, hi = Fraction(lo), Fraction(hi)
    wa = A.window(lo - Di, hi + Di)
    wb = B.window(lo - Di, hi + Di)
    ab = matrix_mul_entries(wa, wb, m)
    ba = matrix_mul_entries(wb, wa, m)
    sign = -1 if pa * pb == 0 else 1
    out = {}
    for key, v in ab.items():
        i, j = key
        if lo <= i <= hi and lo <= j <= hi and not v.is_zero:
            out[key] = v
    for key, v in ba.items():
        i, j = key
        if not (lo <= i <= hi and lo <= j <= hi):
            continue
        w = v if sign == 1 else -v
        prev = out.get(key)
        w = w if prev is None else prev + w
        if w.is_zero:
            out.pop(key, None)
        else:
            out[key] = w
    ca = A.window(-Di - 1, Di + 1)
    cb = B.window(-Di - 1, Di + 1)
    central = cocycle_entries(ca, cb, m)
    return out, central


def cocycle_of_images(A: BandedOperator, B: BandedOperator) -> RmElement:
    """C(A, B) for banded images, via the finite straddle window."""
    if A.m != B.m:
        raise ValueError("truncation order mismatch")
    offs = A.offsets() | B.offsets()
    D = int(max((abs(o) for o in offs), default=Fraction(0))) + 1
    return cocycle_entries(A.window(-D - 1, D + 1), B.window(-D - 1, D + 1), A.m)
