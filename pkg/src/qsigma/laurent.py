"""Laurent polynomials in one variable over the scalar field.

The variable stands for the scaling operator T_q; the same type doubles
as ordinary polynomials in x for series annihilators.  Ideals of the
Laurent ring are principal, and generators are normalized monic with
nonzero constant term (monomials are units, so this fixes a unique
representative).
"""

from __future__ import annotations

from .scalars import ONE, RmElement, Scalar, ZERO, jet_exp, rm_zero, scalar, scalar_str, _is_bare


class LaurentPoly:
    """Finite map exponent -> nonzero Scalar coefficient."""

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for n, v in coeffs.items():
                v = v if isinstance(v, Scalar) else scalar(v)
                if v != ZERO:
                    c[int(n)] = v
        self._c = c

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: ONE})

    @classmethod
    def monomial(cls, n: int, coeff=1) -> "LaurentPoly":
        return cls({n: scalar(coeff) if not isinstance(coeff, Scalar) else coeff})

    @classmethod
    def from_coeffs(cls, coeffs, shift: int = 0) -> "LaurentPoly":
        """Build from an ascending coefficient list starting at exponent `shift`."""
        return cls({shift + i: c for i, c in enumerate(coeffs)})

    @property
    def is_zero(self) -> bool:
        return not self._c

    def terms(self):
        return sorted(self._c.items())

    def coeff(self, n: int):
        return self._c.get(n, ZERO)

    def exponents(self):
        return sorted(self._c)

    @property
    def degree(self):
        return max(self._c) if self._c else None

    @property
    def valuation(self):
        return min(self._c) if self._c else None

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        if other == 0:
            return self.is_zero
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.terms()))

    def __add__(self, other):
        out = dict(self._c)
        for n, v in other._c.items():
            w = out.get(n, ZERO) + v
            if w == ZERO:
                out.pop(n, None)
            else:
                out[n] = w
        res = LaurentPoly()
        res._c = out
        return res

    def __neg__(self):
        res = LaurentPoly()
        res._c = {n: -v for n, v in self._c.items()}
        return res

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            out = {}
            for n, a in self._c.items():
                for k, b in other._c.items():
                    m = n + k
                    w = out.get(m, ZERO) + a * b
                    if w == ZERO:
                        out.pop(m, None)
                    else:
                        out[m] = w
            res = LaurentPoly()
            res._c = out
            return res
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "LaurentPoly":
        c = c if isinstance(c, Scalar) else scalar(c)
        if c == ZERO:
            return LaurentPoly()
        res = LaurentPoly()
        res._c = {n: c * v for n, v in self._c.items()}
        return res

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by the monomial w^k."""
        res = LaurentPoly()
        res._c = {n + k: v for n, v in self._c.items()}
        return res

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"LaurentPoly({self.to_str()})"

    def to_str(self, var: str = "T") -> str:
        if self.is_zero:
            return "0"
        pieces = []
        for n, c in sorted(self._c.items(), reverse=True):
            body, neg = _term_str(c, var, n)
            if not pieces:
                pieces.append(f"-{body}" if neg else body)
            else:
                pieces.append(f" - {body}" if neg else f" + {body}")
        return "".join(pieces)


def _term_str(c, var, n):
    """Render c*var^n; returns (body, sign_was_stripped)."""
    neg = False
    if len(c.numer.terms()) == 1 and c.denom.terms():
        (_, lead), = c.numer.terms()
        if lead < 0:
            neg = True
            c = -c
    cs = scalar_str(c)
    if not _is_bare(cs):
        cs = f"({cs})"
    if n == 0:
        return cs, neg
    v = var if n == 1 else f"{var}^{n}"
    if c == ONE:
        return v, neg
    return f"{cs}*{v}", neg


def lp_scale_arg(f: LaurentPoly, c) -> LaurentPoly:
    """f(w) -> f(c*w): the coefficient of w^n picks up c^n."""
    c = c if isinstance(c, Scalar) else scalar(c)
    if c == ZERO:
        raise ZeroDivisionError("argument scaling by 0 is not invertible")
    res = LaurentPoly()
    res._c = {n: (c ** n) * v for n, v in f._c.items()}
    return res


def const_term(f: LaurentPoly):
    return f.coeff(0)


def lp_eval(f: LaurentPoly, c):
    """Evaluate f at the nonzero scalar point c."""
    c = c if isinstance(c, Scalar) else scalar(c)
    if c == ZERO:
        raise ZeroDivisionError("evaluation point must be nonzero")
    total = ZERO
    for n, v in f._c.items():
        total += v * c ** n
    return total


def jet_eval(f: LaurentPoly, c, m: int) -> RmElement:
    """The jet of f(c*q^t) in R_m: sum_n f_n c^n jet(q^{nt})."""
    c = c if isinstance(c, Scalar) else scalar(c)
    if c == ZERO:
        raise ZeroDivisionError("evaluation point must be nonzero")
    total = rm_zero(m)
    for n, v in f._c.items():
        total = total + jet_exp(n, m).scale(v * c ** n)
    return total


# -- polynomial division and ideal generators ------------------------------

def _dense(f: LaurentPoly):
    """Strip the monomial unit; return ascending coefficients with c[0] != 0."""
    v = f.valuation
    return [f.coeff(n) for n in range(v, f.degree + 1)]


def _dense_divmod(a, b):
    """Division with remainder for ascending dense coefficient lists."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    quo = [ZERO] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        if a[i] == ZERO:
            continue
        c = a[i] / lb
        quo[i - db] = c
        for j in range(db + 1):
            a[i - db + j] -= c * b[j]
    while len(a) > 1 and a[-1] == ZERO:
        a.pop()
    return quo, a


def _dense_gcd(a, b):
    while len(b) > 1 or b[0] != ZERO:
        _, r = _dense_divmod(a, b)
        while len(r) > 1 and r[0] == ZERO:
            r.pop(0)  # gcd in the Laurent ring: strip unit monomials
        a, b = b, r
    lead = a[-1]
    return [c / lead for c in a]


def normalize_generator(f: LaurentPoly) -> LaurentPoly:
    """Monic with nonzero constant term (the unit monomial stripped)."""
    if f.is_zero:
        return LaurentPoly()
    dense = _dense(f)
    lead = dense[-1]
    return LaurentPoly.from_coeffs([c / lead for c in dense])


def ideal_gcd(fs) -> LaurentPoly:
    """Generator of the Laurent ideal spanned by fs (0 for the zero ideal)."""
    acc = None
    for f in fs:
        if f.is_zero:
            continue
        d = _dense(f)
        acc = d if acc is None else _dense_gcd(acc, d)
        if len(acc) == 1:
            return LaurentPoly.one()
    if acc is None:
        return LaurentPoly.zero()
    lead = acc[-1]
    return LaurentPoly.from_coeffs([c / lead for c in acc])


def lp_divides(g: LaurentPoly, f: LaurentPoly) -> bool:
    """Laurent-sense divisibility (up to unit monomials)."""
    if g.is_zero:
        return f.is_zero
    if f.is_zero:
        return True
    _, rem = _dense_divmod(_dense(f), _dense(g))
    return len(rem) == 1 and rem[0] == ZERO
