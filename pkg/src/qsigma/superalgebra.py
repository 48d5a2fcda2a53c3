"""The associative superalgebra of quantum pseudo-differential 2x2
supermatrices and its one-dimensional central extension.

Elements are finite sums of terms z^n * f(T_q) * E_ij plus a central
coefficient.  The product rule

    (z^m f(T_q)) (z^k g(T_q)) = z^{m+k} f(q^k T_q) g(T_q)

together with E_ij E_rs = delta_{jr} E_is defines the associative
structure; the superbracket adds the central 2-cocycle term.  Diagonal
sectors are even, off-diagonal odd.
"""

from __future__ import annotations

from fractions import Fraction

from .laurent import LaurentPoly, const_term, lp_eval, lp_scale_arg
from .scalars import ONE, Q, Scalar, ZERO, scalar, scalar_str, _is_bare

SECTORS = ((1, 1), (1, 2), (2, 1), (2, 2))

HALF = Fraction(1, 2)


def sector_parity(sector) -> int:
    i, j = sector
    return 0 if i == j else 1


class Element:
    """A member of the extended superalgebra."""

    __slots__ = ("terms", "central")

    def __init__(self, terms=None, central=ZERO):
        data = {}
        if terms:
            for (n, sector), f in terms.items():
                if sector not in SECTORS:
                    raise ValueError(f"unknown sector {sector!r}")
                if not f.is_zero:
                    data[(int(n), sector)] = f
        self.terms = data
        self.central = central if isinstance(central, Scalar) else scalar(central)

    @classmethod
    def zero(cls) -> "Element":
        return cls()

    @classmethod
    def term(cls, n: int, sector, f) -> "Element":
        if isinstance(f, (int,)) or isinstance(f, Scalar):
            f = LaurentPoly({0: f})
        return cls({(n, sector): f})

    @classmethod
    def central_term(cls, c) -> "Element":
        return cls(central=c)

    @classmethod
    def identity(cls) -> "Element":
        one = LaurentPoly.one()
        return cls({(0, (1, 1)): one, (0, (2, 2)): one})

    @property
    def is_zero(self) -> bool:
        return not self.terms and self.central == ZERO

    def parity(self):
        """0 or 1 for homogeneous elements, None for mixed; zero is 0."""
        ps = {sector_parity(sec) for (_, sec) in self.terms}
        if self.central != ZERO:
            ps.add(0)
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.terms == other.terms and self.central == other.central

    def __hash__(self):
        return hash((tuple(sorted(self.terms.items(), key=lambda kv: kv[0])), self.central))

    def __add__(self, other):
        out = dict(self.terms)
        for key, f in other.terms.items():
            g = out.get(key)
            h = f if g is None else g + f
            if h.is_zero:
                out.pop(key, None)
            else:
                out[key] = h
        res = Element()
        res.terms = out
        res.central = self.central + other.central
        return res

    def __neg__(self):
        res = Element()
        res.terms = {k: -f for k, f in self.terms.items()}
        res.central = -self.central
        return res

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Element":
        c = c if isinstance(c, Scalar) else scalar(c)
        if c == ZERO:
            return Element()
        res = Element()
        res.terms = {k: f.scale(c) for k, f in self.terms.items()}
        res.central = c * self.central
        return res

    def __mul__(self, other):
        if isinstance(other, Element):
            return assoc_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __str__(self):
        if self.is_zero:
            return "0"
        pieces = []
        for (n, (i, j)), f in sorted(self.terms.items(), key=lambda kv: kv[0]):
            part = ""
            if n != 0:
                part += f"z^{n}*"
            if f == LaurentPoly.one():
                part += f"E{i}{j}"
            else:
                part += f"({f.to_str()})*E{i}{j}"
            pieces.append(part)
        if self.central != ZERO:
            if self.central == ONE:
                pieces.append("C")
            else:
                cs = scalar_str(self.central)
                pieces.append((cs if _is_bare(cs) else f"({cs})") + "*C")
        return " + ".join(pieces)

    def __repr__(self):
        return f"Element({self})"


def assoc_mul(x: Element, y: Element) -> Element:
    """Associative product; central coefficients of the inputs are ignored."""
    out = Element()
    acc = {}
    for (n, (i, j)), f in x.terms.items():
        for (k, (r, t)), g in y.terms.items():
            if j != r:
                continue
            key = (n + k, (i, t))
            piece = lp_scale_arg(f, Q ** k) * g
            prev = acc.get(key)
            h = piece if prev is None else prev + piece
            if h.is_zero:
                acc.pop(key, None)
            else:
                acc[key] = h
    out.terms = acc
    return out


def _psi_pair(n1, sec1, f, n2, sec2, g):
    """Cocycle value on a single ordered pair of terms."""
    if n1 + n2 != 0 or n1 == 0:
        return ZERO
    if n1 < 0:
        sign = -((-1) ** (sector_parity(sec1) * sector_parity(sec2)))
        return sign * _psi_pair(n2, sec2, g, n1, sec1, f)
    i, j = sec1
    k, l = sec2
    if j != k or i != l:
        return ZERO
    r = n1
    total = ZERO
    for m in range(r):
        total += const_term(lp_scale_arg(f, Q ** (m - r)) * lp_scale_arg(g, Q ** m))
    return total if i == 1 else -total


def psi(x: Element, y: Element):
    """The central 2-cocycle, extended bilinearly over term pairs."""
    total = ZERO
    for (n1, sec1), f in x.terms.items():
        for (n2, sec2), g in y.terms.items():
            total += _psi_pair(n1, sec1, f, n2, sec2, g)
    return total


def superbracket(x: Element, y: Element) -> Element:
    """[x, y} = xy - (-1)^{|x||y|} yx + psi(x, y) C, per parity components."""
    acc = {}

    def put(key, piece):
        prev = acc.get(key)
        h = piece if prev is None else prev + piece
        if h.is_zero:
            acc.pop(key, None)
        else:
            acc[key] = h

    for (n1, s1), f in x.terms.items():
        p1 = sector_parity(s1)
        for (n2, s2), g in y.terms.items():
            p2 = sector_parity(s2)
            if s1[1] == s2[0]:
                put((n1 + n2, (s1[0], s2[1])), lp_scale_arg(f, Q ** n2) * g)
            if s2[1] == s1[0]:
                piece = lp_scale_arg(g, Q ** n1) * f
                if p1 * p2 == 0:
                    piece = -piece
                put((n1 + n2, (s2[0], s1[1])), piece)
    res = Element()
    res.terms = acc
    res.central = psi(x, y)
    return res


def str0(x: Element):
    """Supertrace of the z-degree-0 part: (f_11)_0 - (f_22)_0."""
    a = x.terms.get((0, (1, 1)))
    b = x.terms.get((0, (2, 2)))
    total = ZERO
    if a is not None:
        total += const_term(a)
    if b is not None:
        total -= const_term(b)
    return total


def sigma(x: Element) -> Element:
    """The automorphism f(T_q) E_ij -> f(q T_q) E_ij."""
    res = Element()
    res.terms = {key: lp_scale_arg(f, Q) for key, f in x.terms.items()}
    res.central = x.central
    return res


def grade_decompose(x: Element):
    """Split into principal-gradation components, keyed by half-integers.

    z^n diagonal terms and C sit in degree n; z^n E12 in degree n + 1/2;
    z^n E21 in degree n - 1/2.
    """
    comps = {}

    def bump(deg, key, f):
        comp = comps.setdefault(deg, Element())
        comp.terms[key] = f

    for (n, sector), f in x.terms.items():
        if sector_parity(sector) == 0:
            deg = Fraction(n)
        elif sector == (1, 2):
            deg = Fraction(n) + HALF
        else:
            deg = Fraction(n) - HALF
        bump(deg, (n, sector), f)
    if x.central != ZERO:
        comp = comps.setdefault(Fraction(0), Element())
        comp.central = x.central
    return comps


def act_on_superline(x: Element, v):
    """Oracle action on C[z, z^{-1}]^{1|1}.

    Basis vectors are (k, component) with component 1 or 2; the term
    z^{k'} f(T_q) E_ij sends (k, j) to f(q^k) (k + k', i).  `v` may be a
    single basis pair or a dict mapping pairs to coefficients.
    """
    if x.central != ZERO:
        raise ValueError("the central element does not act on the superline")
    if isinstance(v, tuple):
        v = {v: ONE}
    out = {}
    for (k, comp), coeff in v.items():
        for (kk, (i, j)), f in x.terms.items():
            if j != comp:
                continue
            val = coeff * lp_eval(f, Q ** k)
            key = (k + kk, i)
            w = out.get(key, ZERO) + val
            if w == ZERO:
                out.pop(key, None)
            else:
                out[key] = w
    return out
