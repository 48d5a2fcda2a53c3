"""Exact scalar arithmetic.

The ground field is the field of rational functions QQ(q, s, L) in three
commuting formal symbols: the deformation parameter q, the evaluation
point s, and L standing for log q.  Treating q and s as transcendentals
keeps every power q^k with k != 0 away from 1 exactly, so identities that
would require "q not a root of unity" hold syntactically.

Elements are kept in reduced canonical form (content and gcd divided out,
denominator sign normalized), so equality of scalars is a plain syntactic
check.  On top of the field sits the truncated jet ring
R_m = Scalar[t]/(t^{m+1}), whose elements are short coefficient tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from sympy import QQ
from sympy.polys.fields import field

FIELD, Q, S, LOG = field("q,s,L", QQ)

#: class of field elements (sympy FracElement specialized to FIELD)
Scalar = type(FIELD.one)

ZERO = FIELD.zero
ONE = FIELD.one

_SYMBOLS = ("q", "s", "L")


def scalar(value):
    """Coerce an int, Fraction, or Scalar into the field."""
    if isinstance(value, Scalar):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(value, int):
        return FIELD.ground_new(QQ(value))
    if isinstance(value, Fraction):
        return FIELD.ground_new(QQ(value.numerator, value.denominator))
    raise TypeError(f"cannot coerce {type(value).__name__} to Scalar")


def is_scalar(value) -> bool:
    return isinstance(value, Scalar)


def q_power_ratio(a, b):
    """Return the unique integer k with a = q^k * b, or None.

    Both arguments must be nonzero.  Existence of k is exactly the
    congruence "exponents agree mod Z + tau^{-1}Z" used for grouping
    quasipolynomial bases.
    """
    if a == ZERO or b == ZERO:
        raise ZeroDivisionError("q_power_ratio requires nonzero scalars")
    r = a / b
    num_terms = r.numer.terms()
    den_terms = r.denom.terms()
    if len(num_terms) != 1 or len(den_terms) != 1:
        return None
    (nmon, ncoef), (dmon, dcoef) = num_terms[0], den_terms[0]
    if ncoef != dcoef:
        return None
    if nmon[1] or nmon[2] or dmon[1] or dmon[2]:
        return None
    return nmon[0] - dmon[0]


def _coeff_str(c) -> str:
    num, den = int(c.numerator), int(c.denominator)
    return str(num) if den == 1 else f"{num}/{den}"


def _monom_str(monom) -> str:
    parts = []
    for sym, e in zip(_SYMBOLS, monom):
        if e == 1:
            parts.append(sym)
        elif e != 0:
            parts.append(f"{sym}^{e}")
    return "*".join(parts)


def _poly_str(p) -> str:
    terms = sorted(p.terms(), key=lambda t: t[0], reverse=True)
    if not terms:
        return "0"
    pieces = []
    for monom, coeff in terms:
        neg = coeff < 0
        c = -coeff if neg else coeff
        mono = _monom_str(monom)
        if mono and c == 1:
            body = mono
        elif mono:
            body = f"{_coeff_str(c)}*{mono}"
        else:
            body = _coeff_str(c)
        if not pieces:
            pieces.append(f"-{body}" if neg else body)
        else:
            pieces.append(f" - {body}" if neg else f" + {body}")
    return "".join(pieces)


def _is_bare(text: str) -> bool:
    # single token: integer or symbol with optional power
    if text.isdigit():
        return True
    if text and text[0] in "qsL":
        rest = text[1:]
        if not rest:
            return True
        if rest.startswith("^") and (rest[1:].isdigit() or
                                     (rest[1:2] == "-" and rest[2:].isdigit())):
            return True
    return False


def scalar_str(a) -> str:
    """Canonical text form, using ^ for powers (the CLI literal grammar)."""
    ns = _poly_str(a.numer)
    if a.denom == FIELD.ring.one:
        return ns
    ds = _poly_str(a.denom)
    if not _is_bare(ns):
        ns = f"({ns})"
    if not _is_bare(ds):
        ds = f"({ds})"
    return f"{ns}/{ds}"


@dataclass(frozen=True)
class RmElement:
    """Element of R_m = Scalar[t]/(t^{m+1}), as coefficients c_0..c_m."""

    coeffs: tuple

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("RmElement needs at least the t^0 coefficient")

    @property
    def m(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return all(c == ZERO for c in self.coeffs)

    def _check(self, other: "RmElement"):
        if self.m != other.m:
            raise ValueError(f"truncation orders differ: {self.m} vs {other.m}")

    def __add__(self, other):
        self._check(other)
        return RmElement(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return RmElement(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return RmElement(tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, RmElement):
            self._check(other)
            m = self.m
            out = [ZERO] * (m + 1)
            for i, a in enumerate(self.coeffs):
                if a == ZERO:
                    continue
                for j in range(0, m + 1 - i):
                    b = other.coeffs[j]
                    if b != ZERO:
                        out[i + j] += a * b
            return RmElement(tuple(out))
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "RmElement":
        c = scalar(c) if not isinstance(c, Scalar) else c
        return RmElement(tuple(c * a for a in self.coeffs))

    def truncate(self, m: int) -> "RmElement":
        if m >= self.m:
            return RmElement(self.coeffs + (ZERO,) * (m - self.m))
        return RmElement(self.coeffs[: m + 1])

    def __str__(self):
        pieces = []
        for j, c in enumerate(self.coeffs):
            if c == ZERO:
                continue
            cs = scalar_str(c)
            if j == 0:
                pieces.append(cs if _is_bare(cs) else f"({cs})")
            else:
                t = "t" if j == 1 else f"t^{j}"
                if c == ONE:
                    pieces.append(t)
                else:
                    pieces.append((cs if _is_bare(cs) else f"({cs})") + "*" + t)
        return " + ".join(pieces) if pieces else "0"


def rm_zero(m: int) -> RmElement:
    return RmElement((ZERO,) * (m + 1))


def rm_one(m: int) -> RmElement:
    return RmElement((ONE,) + (ZERO,) * m)


def rm_from_scalar(c, m: int) -> RmElement:
    return RmElement((scalar(c) if not isinstance(c, Scalar) else c,) + (ZERO,) * m)


def rm_t_power(v: int, m: int) -> RmElement:
    if v > m:
        return rm_zero(m)
    return RmElement(tuple(ONE if j == v else ZERO for j in range(m + 1)))


@lru_cache(maxsize=None)
def jet_exp(k: int, m: int) -> RmElement:
    """The jet of q^{kt} in R_m: sum_{j<=m} (kL)^j t^j / j!."""
    if m < 0:
        raise ValueError("truncation order must be >= 0")
    coeffs = []
    for j in range(m + 1):
        coeffs.append(FIELD.ground_new(QQ(k ** j, factorial(j))) * LOG ** j)
    return RmElement(tuple(coeffs))
