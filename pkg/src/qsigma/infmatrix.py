"""Half-integer-indexed matrices over the truncated ring R_m, with the
central extension C(A, B) = Str([J, A] B), J = sum_{r <= 0} E_rr.

Matrix values here have finite support; the genuinely infinite objects
(band operators from the embeddings, half-diagonals for non-degeneracy)
carry their own structured types.  The cocycle is evaluated through the
closed form (chi(i <= 0) - chi(j <= 0)) (-1)^{2i} A_ij B_ji, which is a
finite sum for banded inputs because only index pairs straddling 0
contribute.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .scalars import ONE, RmElement, Scalar, ZERO, rm_from_scalar, rm_one, rm_t_power, rm_zero, scalar

HALF = Fraction(1, 2)


def _frac(x) -> Fraction:
    f = Fraction(x)
    if f.denominator not in (1, 2):
        raise ValueError(f"{x} is not a half-integer")
    return f


def index_parity(d: Fraction) -> int:
    return 0 if d.denominator == 1 else 1


class MatrixElement:
    """Finite-support matrix plus central part, all entries in R_m."""

    __slots__ = ("m", "entries", "central")

    def __init__(self, m: int, entries=None, central: RmElement | None = None):
        self.m = m
        data = {}
        if entries:
            for (i, j), v in entries.items():
                if v.m != m:
                    raise ValueError("entry truncation order mismatch")
                if not v.is_zero:
                    data[(_frac(i), _frac(j))] = v
        self.entries = data
        self.central = central if central is not None else rm_zero(m)
        if self.central.m != m:
            raise ValueError("central truncation order mismatch")

    @classmethod
    def unit(cls, m: int, i, j, value: RmElement | None = None) -> "MatrixElement":
        v = value if value is not None else rm_one(m)
        return cls(m, {(i, j): v})

    @classmethod
    def zero(cls, m: int) -> "MatrixElement":
        return cls(m)

    @classmethod
    def central_term(cls, m: int, value: RmElement) -> "MatrixElement":
        return cls(m, central=value)

    @property
    def is_zero(self) -> bool:
        return not self.entries and self.central.is_zero

    def parity(self):
        ps = {index_parity(i - j) for (i, j) in self.entries}
        if not self.central.is_zero:
            ps.add(0)
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def __eq__(self, other):
        if not isinstance(other, MatrixElement):
            return NotImplemented
        return (self.m == other.m and self.entries == other.entries
                and self.central == other.central)

    def __add__(self, other):
        if self.m != other.m:
            raise ValueError("truncation order mismatch")
        out = dict(self.entries)
        for key, v in other.entries.items():
            w = out.get(key)
            u = v if w is None else w + v
            if u.is_zero:
                out.pop(key, None)
            else:
                out[key] = u
        res = MatrixElement(self.m)
        res.entries = out
        res.central = self.central + other.central
        return res

    def __neg__(self):
        res = MatrixElement(self.m)
        res.entries = {k: -v for k, v in self.entries.items()}
        res.central = -self.central
        return res

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "MatrixElement":
        res = MatrixElement(self.m)
        res.entries = {}
        for k, v in self.entries.items():
            w = v.scale(c)
            if not w.is_zero:
                res.entries[k] = w
        res.central = self.central.scale(c)
        return res

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = [f"E[{i},{j}]*({v})" for (i, j), v in
                 sorted(self.entries.items(), key=lambda kv: kv[0])]
        if not self.central.is_zero:
            parts.append(f"K*({self.central})")
        return " + ".join(parts)


def matrix_mul_entries(a: dict, b: dict, m: int) -> dict:
    rows = {}
    for (j, l), v in b.items():
        rows.setdefault(j, []).append((l, v))
    out = {}
    for (i, j), u in a.items():
        for l, v in rows.get(j, ()):
            key = (i, l)
            w = u * v
            prev = out.get(key)
            w = w if prev is None else prev + w
            if w.is_zero:
                out.pop(key, None)
            else:
                out[key] = w
    return out


def cocycle_entries(a: dict, b: dict, m: int) -> RmElement:
    """C(A, B) = Str([J, A] B) evaluated over entry dictionaries."""
    total = rm_zero(m)
    for (i, j), u in a.items():
        w = (1 if i <= 0 else 0) - (1 if j <= 0 else 0)
        if w == 0:
            continue
        v = b.get((j, i))
        if v is None:
            continue
        sign = w if index_parity(i) == 0 else -w
        piece = u * v
        total = total + (piece if sign == 1 else -piece)
    return total


def glinf_bracket(A: MatrixElement, B: MatrixElement) -> MatrixElement:
    """Supercommutator plus the central cocycle value.

    Central slots of the inputs are inert.  Mixed-parity inputs are
    handled by bilinearity, with signs taken per entry pair.
    """
    if A.m != B.m:
        raise ValueError("truncation order mismatch")
    m = A.m
    out = {}

    def put(key, v, negate):
        if negate:
            v = -v
        prev = out.get(key)
        w = v if prev is None else prev + v
        if w.is_zero:
            out.pop(key, None)
        else:
            out[key] = w

    brows = {}
    for (k, l), v in B.entries.items():
        brows.setdefault(k, []).append((l, v))
    for (i, j), u in A.entries.items():
        for l, v in brows.get(j, ()):
            put((i, l), u * v, False)
    arows = {}
    for (i, j), u in A.entries.items():
        arows.setdefault(i, []).append((j, u))
    for (k, l), v in B.entries.items():
        pb = index_parity(k - l)
        for j, u in arows.get(l, ()):
            pa = index_parity(l - j)
            # sign -(-1)^{|A||B|}: negate unless both entries odd
            put((k, j), v * u, pa * pb == 0)
    res = MatrixElement(m)
    res.entries = out
    res.central = cocycle_entries(A.entries, B.entries, m)
    return res


def supertrace(A: MatrixElement) -> RmElement:
    """Str(A) = sum_r (-1)^{2r} a_rr (central part carries no trace)."""
    total = rm_zero(A.m)
    for (i, j), v in A.entries.items():
        if i != j:
            continue
        total = total + (v if index_parity(i) == 0 else -v)
    return total


def sector_map(i: int, j: int, sector):
    """Transport E_ij x M_sector to half-integer matrix indices."""
    i, j = Fraction(i), Fraction(j)
    a, b = sector
    row = i - HALF if a == 2 else i
    col = j - HALF if b == 2 else j
    return (row, col)


def principal_degree(A: MatrixElement):
    """Decompose by j - i; the central part sits in degree 0."""
    comps = {}
    for (i, j), v in A.entries.items():
        deg = j - i
        comp = comps.setdefault(deg, MatrixElement(A.m))
        comp.entries[(i, j)] = v
    if not A.central.is_zero:
        comp = comps.setdefault(Fraction(0), MatrixElement(A.m))
        comp.central = A.central
    return comps


# -- weights ----------------------------------------------------------------

@dataclass(frozen=True)
class LabelSeq:
    """Two-sided eventually-constant scalar sequence on integer keys.

    Positions below every exception take `neg_tail`, above every
    exception `pos_tail`.  Interior gaps are only meaningful when both
    tails vanish (then they read as 0); otherwise the exception hull must
    be dense.
    """

    neg_tail: Scalar
    pos_tail: Scalar
    values: tuple

    @staticmethod
    def make(neg_tail=0, pos_tail=0, values=None) -> "LabelSeq":
        neg = neg_tail if isinstance(neg_tail, Scalar) else scalar(neg_tail)
        pos = pos_tail if isinstance(pos_tail, Scalar) else scalar(pos_tail)
        vals = {}
        for k, v in (values or {}).items():
            vals[int(k)] = v if isinstance(v, Scalar) else scalar(v)
        if vals and (neg != ZERO or pos != ZERO):
            lo, hi = min(vals), max(vals)
            if any(k not in vals for k in range(lo, hi + 1)):
                raise ValueError("exception hull must be dense when tails are nonzero")
        return LabelSeq(neg, pos, tuple(sorted(vals.items())))

    def exceptions(self) -> dict:
        return dict(self.values)

    def at(self, k: int):
        vals = dict(self.values)
        if k in vals:
            return vals[k]
        if not vals:
            return self.pos_tail if k >= 0 else self.neg_tail
        lo, hi = self.values[0][0], self.values[-1][0]
        if k < lo:
            return self.neg_tail
        if k > hi:
            return self.pos_tail
        return ZERO


@dataclass(frozen=True)
class GlWeight:
    """Highest-weight data: charges c_l and label sequences per jet level.

    Integer-position labels live in int_seqs[l]; half-integer positions
    k - 1/2 are keyed by the integer k in half_seqs[l].
    """

    m: int
    charges: tuple
    int_seqs: tuple
    half_seqs: tuple

    @staticmethod
    def make(m: int, charges=None, int_seqs=None, half_seqs=None) -> "GlWeight":
        ch = list(charges or [])
        ch += [0] * (m + 1 - len(ch))
        ch = tuple(c if isinstance(c, Scalar) else scalar(c) for c in ch)
        def fill(seqs):
            seqs = list(seqs or [])
            seqs += [LabelSeq.make()] * (m + 1 - len(seqs))
            return tuple(seqs)
        return GlWeight(m, ch, fill(int_seqs), fill(half_seqs))

    @staticmethod
    def zero(m: int = 0) -> "GlWeight":
        return GlWeight.make(m)

    def label(self, k, l: int):
        """lambda(t^l E_kk) for a half-integer position k."""
        k = _frac(k)
        if k.denominator == 1:
            return self.int_seqs[l].at(int(k))
        return self.half_seqs[l].at(int(k + HALF))

    def charge(self, l: int):
        return self.charges[l]


def _pair_value(w: GlWeight, k: Fraction, l: int):
    v = w.label(k, l) + w.label(k - HALF, l)
    if k == HALF:
        v += w.charge(l)
    return v


def _probe_positions(w: GlWeight):
    # dense half-integer hull: gaps between the two parities' exceptions
    # can carry nonzero pair sums
    ks = {HALF}
    for l in range(w.m + 1):
        for key, _ in w.int_seqs[l].values:
            ks.add(Fraction(key))
        for key, _ in w.half_seqs[l].values:
            ks.add(Fraction(key) - HALF)
    lo, hi = min(ks) - 1, max(ks) + 1
    out = []
    k = lo
    while k <= hi:
        out.append(k)
        k += HALF
    return out


def gl_quasifinite(w: GlWeight):
    """Theorem-level check: pair sums vanish for all but finitely many k.

    With two-sided tails this reduces to tail cancellation per side and
    jet level; the returned list enumerates the violations over the
    exception window plus k = 1/2 (a marker entry with k None signals an
    infinite tail violation).
    """
    violations = []
    ok = True
    for l in range(w.m + 1):
        if w.int_seqs[l].neg_tail + w.half_seqs[l].neg_tail != ZERO:
            ok = False
            violations.append((l, None))
        if w.int_seqs[l].pos_tail + w.half_seqs[l].pos_tail != ZERO:
            ok = False
            violations.append((l, None))
    for l in range(w.m + 1):
        for k in _probe_positions(w):
            if _pair_value(w, k, l) != ZERO:
                violations.append((l, k))
    return ok, violations


# -- degree -1/2 half-diagonals ---------------------------------------------

@dataclass(frozen=True)
class HalfDiagonal:
    """a = sum_j a_j(t) E_{j+1/2, j} with cofinitely many default values.

    `default_int` applies at integer positions j, `default_half` at
    half-odd positions; `values` lists the finitely many exceptions.
    """

    m: int
    default_int: RmElement
    default_half: RmElement
    values: tuple

    @staticmethod
    def make(m: int, default_int=None, default_half=None, values=None) -> "HalfDiagonal":
        di = default_int if default_int is not None else rm_one(m)
        dh = default_half if default_half is not None else rm_one(m)
        vals = tuple(sorted(((_frac(k), v) for k, v in (values or {}).items())))
        for _, v in vals:
            if v.m != m:
                raise ValueError("exception truncation order mismatch")
        return HalfDiagonal(m, di, dh, vals)

    def at(self, j) -> RmElement:
        j = _frac(j)
        for k, v in self.values:
            if k == j:
                return v
        return self.default_int if j.denominator == 1 else self.default_half


def _is_invertible_constant(v: RmElement) -> bool:
    return v.coeffs[0] != ZERO and all(c == ZERO for c in v.coeffs[1:])


def gl_nondegenerate(a: HalfDiagonal) -> bool:
    """Non-degeneracy: the defaults are nonzero constants."""
    return _is_invertible_constant(a.default_int) and _is_invertible_constant(a.default_half)


def _rm_ideal_generator(v: RmElement) -> RmElement:
    """Canonical generator of the principal ideal (v) in R_m: 0, or t^ord."""
    for j, c in enumerate(v.coeffs):
        if c != ZERO:
            return rm_t_power(j, v.m)
    return rm_zero(v.m)


def gl_g0a(a: HalfDiagonal):
    """Position-wise ideals I_{a_j(t)} describing the depth-1/2 slice."""
    return {
        "int": _rm_ideal_generator(a.default_int),
        "half": _rm_ideal_generator(a.default_half),
        "exceptions": {j: _rm_ideal_generator(v) for j, v in a.values},
    }
