"""Shared literal grammar for scalars, Laurent polynomials, and elements.

One expression language covers all three levels: integers, q, s, L at
the scalar level; T at the Laurent level; z, E11, E12, E21, E22, C at
the element level, combined with + - * / ^ and parentheses.  Products
follow the operator algebra (z and T do not commute: T*z = q z T), so a
parsed string always means what the printed element means, and printing
then parsing is the identity.
"""

from __future__ import annotations

import re

from .laurent import LaurentPoly
from .scalars import ONE, Scalar, ZERO, scalar
from .superalgebra import Element, assoc_mul


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"syntax error at offset {position}: {message}")
        self.position = position


_INT = re.compile(r"\d+")
_NAME = re.compile(r"[A-Za-z]\w*")

_ATOMS = {"q", "s", "L", "T", "z", "C", "E11", "E12", "E21", "E22"}

_SECTOR = {"E11": (1, 1), "E12": (1, 2), "E21": (2, 1), "E22": (2, 2)}


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch.isdigit():
            m = _INT.match(text, pos)
            tokens.append(("int", int(m.group(0)), pos))
            pos = m.end()
            continue
        if ch.isalpha():
            m = _NAME.match(text, pos)
            name = m.group(0)
            if name not in _ATOMS:
                raise ParseError(f"unknown symbol {name!r}", pos)
            tokens.append(("name", name, pos))
            pos = m.end()
            continue
        if ch in "+-*/^()":
            tokens.append(("op", ch, pos))
            pos += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", pos)
    tokens.append(("end", None, len(text)))
    return tokens


def _is_identity_monomial(x: Element):
    """(k, coeff, exp) when x = coeff * z^k * T^exp * I, else None."""
    if x.central != ZERO or len(x.terms) != 2:
        return None
    keys = sorted(x.terms)
    (k1, s1), (k2, s2) = keys
    if k1 != k2 or {s1, s2} != {(1, 1), (2, 2)}:
        return None
    f1, f2 = x.terms[keys[0]], x.terms[keys[1]]
    if f1 != f2:
        return None
    terms = f1.terms()
    if len(terms) != 1:
        return None
    exp, coeff = terms[0]
    return k1, coeff, exp


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, val, pos = self.peek()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos)
        return self.next()

    # value levels: Scalar < LaurentPoly < Element --------------------------

    @staticmethod
    def _level(v):
        if isinstance(v, Scalar):
            return 0
        if isinstance(v, LaurentPoly):
            return 1
        return 2

    @staticmethod
    def _to_laurent(v):
        if isinstance(v, Scalar):
            return LaurentPoly({0: v})
        return v

    @staticmethod
    def _to_element(v):
        if isinstance(v, Scalar):
            v = LaurentPoly({0: v})
        if isinstance(v, LaurentPoly):
            return Element({(0, (1, 1)): v, (0, (2, 2)): v})
        return v

    def _add(self, a, b, pos):
        lv = max(self._level(a), self._level(b))
        if lv == 0:
            return a + b
        if lv == 1:
            return self._to_laurent(a) + self._to_laurent(b)
        return self._to_element(a) + self._to_element(b)

    def _mul(self, a, b, pos):
        # pure scalars scale (keeping central parts); ring products otherwise
        if self._level(a) == 0 and self._level(b) == 0:
            return a * b
        if self._level(a) == 0:
            return b.scale(a)
        if self._level(b) == 0:
            return a.scale(b)
        if self._level(a) == 1 and self._level(b) == 1:
            return a * b
        ea, eb = self._to_element(a), self._to_element(b)
        if ea.central != ZERO or eb.central != ZERO:
            raise ParseError("central terms multiply only with scalars", pos)
        return assoc_mul(ea, eb)

    def _div(self, a, b, pos):
        if self._level(b) != 0:
            raise ParseError("division only by scalars", pos)
        if b == ZERO:
            raise ParseError("division by zero", pos)
        if self._level(a) == 0:
            return a / b
        inv = ONE / b
        return a.scale(inv)

    def _pow(self, a, n, pos):
        if self._level(a) == 0:
            if a == ZERO and n < 0:
                raise ParseError("division by zero", pos)
            return a ** n
        if self._level(a) == 1:
            if n >= 0:
                out = LaurentPoly.one()
                for _ in range(n):
                    out = out * a
                return out
            terms = a.terms()
            if len(terms) != 1:
                raise ParseError("negative powers need monomials", pos)
            exp, coeff = terms[0]
            return LaurentPoly({exp * n: coeff ** n})
        if n == 1:
            return a
        if a.central != ZERO:
            raise ParseError("central terms admit no powers", pos)
        if n >= 0:
            out = Element.identity()
            for _ in range(n):
                out = assoc_mul(out, a)
            return out
        mono = _is_identity_monomial(a)
        if mono is None:
            raise ParseError("negative powers need invertible monomials", pos)
        k, coeff, exp = mono
        # (c z^k T^e I)^{-1} = c^{-1} q^{ke} z^{-k} T^{-e} I, iterated
        from .scalars import Q
        inv_f = LaurentPoly({-exp: (ONE / coeff) * Q ** (k * exp)})
        inv = Element({(-k, (1, 1)): inv_f, (-k, (2, 2)): inv_f})
        out = Element.identity()
        for _ in range(-n):
            out = assoc_mul(out, inv)
        return out

    # grammar ----------------------------------------------------------------

    def parse_expr(self):
        value = self.parse_term()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                rhs = self.parse_term()
                if val == "-":
                    rhs = rhs.scale(-ONE) if self._level(rhs) else -rhs
                value = self._add(value, rhs, pos)
            else:
                return value

    def parse_term(self):
        value = self.parse_factor()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "*/":
                self.next()
                rhs = self.parse_factor()
                value = self._mul(value, rhs, pos) if val == "*" else self._div(value, rhs, pos)
            else:
                return value

    def parse_factor(self):
        kind, val, pos = self.peek()
        if kind == "op" and val in "+-":
            self.next()
            inner = self.parse_factor()
            if val == "-":
                return inner.scale(-ONE) if self._level(inner) else -inner
            return inner
        return self.parse_power()

    def parse_power(self):
        base = self.parse_atom()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.next()
            n = self.parse_signed_int()
            return self._pow(base, n, pos)
        return base

    def parse_signed_int(self):
        kind, val, pos = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.next()
            sign = -1 if val == "-" else 1
            kind, val, pos = self.peek()
        if kind != "int":
            raise ParseError("expected integer exponent", pos)
        self.next()
        return sign * val

    def parse_atom(self):
        kind, val, pos = self.next()
        if kind == "int":
            return scalar(val)
        if kind == "name":
            if val == "q":
                from .scalars import Q
                return Q
            if val == "s":
                from .scalars import S
                return S
            if val == "L":
                from .scalars import LOG
                return LOG
            if val == "T":
                return LaurentPoly.monomial(1)
            if val == "z":
                one = LaurentPoly.one()
                return Element({(1, (1, 1)): one, (1, (2, 2)): one})
            if val == "C":
                return Element.central_term(ONE)
            return Element.term(0, _SECTOR[val], LaurentPoly.one())
        if kind == "op" and val == "(":
            inner = self.parse_expr()
            self.expect_op(")")
            return inner
        raise ParseError("expected a value", pos)

    def finish(self, value):
        kind, _, pos = self.peek()
        if kind != "end":
            raise ParseError("trailing input", pos)
        return value


def parse_scalar(text: str):
    p = _Parser(text)
    v = p.finish(p.parse_expr())
    if not isinstance(v, Scalar):
        raise ParseError("expected a scalar expression", 0)
    return v


def parse_laurent(text: str) -> LaurentPoly:
    p = _Parser(text)
    v = p.finish(p.parse_expr())
    if isinstance(v, Scalar):
        return LaurentPoly({0: v})
    if not isinstance(v, LaurentPoly):
        raise ParseError("expected a Laurent polynomial in T", 0)
    return v


def parse_element(text: str) -> Element:
    p = _Parser(text)
    v = p.finish(p.parse_expr())
    return _Parser._to_element(v)
