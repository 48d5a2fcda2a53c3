"""Quasipolynomial sequences n -> sum_b p_b(n) b^n and their annihilators.

A quasipolynomial is stored as a finite map from a nonzero scalar base b
to the ascending coefficient tuple of p_b.  The minimal monic annihilator
of the associated bi-infinite series is prod_b (x - b)^{deg p_b + 1};
`interpolate_finite` goes the other way, recovering a quasipolynomial
from raw window data by exact linear-recurrence detection.
"""

from __future__ import annotations

import sympy

from .laurent import LaurentPoly
from .scalars import FIELD, ONE, Scalar, ZERO, q_power_ratio, scalar, scalar_str


def _coerce_poly(coeffs):
    out = [c if isinstance(c, Scalar) else scalar(c) for c in coeffs]
    while out and out[-1] == ZERO:
        out.pop()
    return tuple(out)


class QuasiPolynomial:
    """Finite map base -> polynomial, with distinct canonical bases."""

    __slots__ = ("_t",)

    def __init__(self, terms=None):
        data = {}
        if terms:
            for b, coeffs in terms.items():
                b = b if isinstance(b, Scalar) else scalar(b)
                if b == ZERO:
                    raise ValueError("quasipolynomial bases must be nonzero")
                p = _coerce_poly(coeffs)
                if p:
                    if b in data:
                        raise ValueError("duplicate base")
                    data[b] = p
        self._t = data

    @classmethod
    def zero(cls) -> "QuasiPolynomial":
        return cls()

    @property
    def is_zero(self) -> bool:
        return not self._t

    def bases(self):
        return list(self._t)

    def poly(self, b):
        b = b if isinstance(b, Scalar) else scalar(b)
        return self._t.get(b, ())

    def items(self):
        return list(self._t.items())

    def __eq__(self, other):
        if not isinstance(other, QuasiPolynomial):
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        return hash(frozenset(self._t.items()))

    def __add__(self, other):
        out = dict(self._t)
        for b, p in other._t.items():
            if b in out:
                a = list(out[b])
                q = list(p)
                n = max(len(a), len(q))
                a += [ZERO] * (n - len(a))
                q += [ZERO] * (n - len(q))
                merged = _coerce_poly([x + y for x, y in zip(a, q)])
                if merged:
                    out[b] = merged
                else:
                    del out[b]
            else:
                out[b] = p
        res = QuasiPolynomial()
        res._t = out
        return res

    def __neg__(self):
        res = QuasiPolynomial()
        res._t = {b: tuple(-c for c in p) for b, p in self._t.items()}
        return res

    def __sub__(self, other):
        return self + (-other)

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for b, p in sorted(self._t.items(), key=lambda kv: scalar_str(kv[0])):
            ptxt = " + ".join(
                (f"({scalar_str(c)})" + ("" if k == 0 else ("*x" if k == 1 else f"*x^{k}")))
                for k, c in enumerate(p) if c != ZERO
            )
            parts.append(f"({scalar_str(b)})^n * [{ptxt}]")
        return "  +  ".join(parts)

    def __repr__(self):
        return f"QuasiPolynomial({self})"


def qp_eval(P: QuasiPolynomial, n: int):
    total = ZERO
    for b, p in P.items():
        v = ZERO
        for k in range(len(p) - 1, -1, -1):
            v = v * n + p[k]
        total += v * (b ** n)
    return total


def qp_values(P: QuasiPolynomial, lo: int, hi: int):
    """[P(lo), ..., P(hi)] with base powers accumulated incrementally."""
    out = [ZERO] * (hi - lo + 1)
    for b, p in P.items():
        power = b ** lo
        for i, n in enumerate(range(lo, hi + 1)):
            v = ZERO
            for k in range(len(p) - 1, -1, -1):
                v = v * n + p[k]
            out[i] += v * power
            power = power * b
    return out


def min_annihilator(P: QuasiPolynomial) -> LaurentPoly:
    """prod_b (x - b)^{deg p_b + 1}, the minimal monic annihilator."""
    out = LaurentPoly.one()
    for b, p in P.items():
        factor = LaurentPoly({1: ONE, 0: -b})
        for _ in range(len(p)):
            out = out * factor
    return out


def annihilates_window(b: LaurentPoly, P: QuasiPolynomial, N: int) -> bool:
    """Check sum_k b_k P(n+k) = 0 for all |n| <= N."""
    terms = b.terms()
    if not terms:
        return True
    lo = -N + terms[0][0]
    hi = N + terms[-1][0]
    vals = qp_values(P, lo, hi)
    for n in range(-N, N + 1):
        total = ZERO
        for k, c in terms:
            total += c * vals[n + k - lo]
        if total != ZERO:
            return False
    return True


def scale_bases(P: QuasiPolynomial, c) -> QuasiPolynomial:
    """The quasipolynomial with values c^n P(n)."""
    c = c if isinstance(c, Scalar) else scalar(c)
    if c == ZERO:
        raise ZeroDivisionError("base scaling must be by a nonzero scalar")
    res = QuasiPolynomial()
    res._t = {c * b: p for b, p in P.items()}
    return res


def congruence_classes_of(bases):
    """Partition bases into q-power congruence classes.

    Returns a list of (representative, [(k, base), ...]) where each base
    equals representative * q^{-k}, k >= 0, sorted with k ascending.  The
    representative is the member of maximal q-power.
    """
    classes = []
    for b in bases:
        for cls in classes:
            k = q_power_ratio(cls[0], b)
            if k is not None:
                cls[1].append(b)
                break
        else:
            classes.append((b, [b]))
    out = []
    for _, members in classes:
        rep = members[0]
        for b in members[1:]:
            if q_power_ratio(b, rep) > 0:
                rep = b
        tagged = sorted((q_power_ratio(rep, b), b) for b in members)
        out.append((rep, tagged))
    out.sort(key=lambda cls: scalar_str(cls[0]))
    return out


def congruence_classes(P: QuasiPolynomial):
    return congruence_classes_of(P.bases())


def jet_at_zero(P: QuasiPolynomial, b, l: int):
    """(d/dx)^l p_b(0) = l! * [x^l] p_b; 0 when b is not a base."""
    b = b if isinstance(b, Scalar) else scalar(b)
    p = P.poly(b)
    if l >= len(p):
        return ZERO
    out = p[l]
    for j in range(2, l + 1):
        out = out * j
    return out


# -- linear-recurrence recovery --------------------------------------------

def berlekamp_massey(seq):
    """Minimal connection coefficients over the exact scalar field.

    Returns c = [c_0=1, c_1, ..., c_L] with sum_j c_j seq[n-j] = 0 for
    all n >= L.
    """
    C = [ONE]
    B = [ONE]
    Lc = 0
    m = 1
    b = ONE
    for n, sn in enumerate(seq):
        d = sn
        for i in range(1, Lc + 1):
            d += C[i] * seq[n - i]
        if d == ZERO:
            m += 1
            continue
        coef = d / b
        if 2 * Lc <= n:
            T = list(C)
            C = C + [ZERO] * (len(B) + m - len(C))
            for j, bj in enumerate(B):
                C[j + m] -= coef * bj
            Lc = n + 1 - Lc
            B = T
            b = d
            m = 1
        else:
            C = C + [ZERO] * max(0, len(B) + m - len(C))
            for j, bj in enumerate(B):
                C[j + m] -= coef * bj
            m += 1
    while len(C) > Lc + 1 and C[-1] == ZERO:
        C.pop()
    C += [ZERO] * (Lc + 1 - len(C))
    return C


def _linear_roots(poly_coeffs):
    """Roots with multiplicity of a monic poly over the scalar field.

    Returns None unless the polynomial splits into factors linear in x.
    Clears denominators and factors over QQ[x, q, s, L].
    """
    x, qs, ss, Ls = sympy.symbols("x q s L")
    expr = sum(c.as_expr() * x ** k for k, c in enumerate(poly_coeffs))
    expr = sympy.together(expr)
    num, _ = sympy.fraction(expr)
    num = sympy.expand(num)
    _, factors = sympy.factor_list(num, x, qs, ss, Ls)
    roots = []
    for fac, mult in factors:
        p = sympy.Poly(fac, x)
        if p.degree() == 0:
            continue
        if p.degree() != 1:
            return None
        a1, a0 = p.all_coeffs()
        root_expr = sympy.together(-a0 / a1)
        root = FIELD.from_expr(root_expr)
        roots.append((root, mult))
    return roots


def _solve_exact(rows, rhs):
    """Gaussian elimination over the scalar field; None if inconsistent."""
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    A = [list(r) + [v] for r, v in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(n_cols):
        p = next((i for i in range(r, n_rows) if A[i][c] != ZERO), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = A[r][c]
        A[r] = [v / inv for v in A[r]]
        for i in range(n_rows):
            if i != r and A[i][c] != ZERO:
                f = A[i][c]
                A[i] = [v - f * w for v, w in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    for i in range(r, n_rows):
        if A[i][n_cols] != ZERO:
            return None
    sol = [ZERO] * n_cols
    for i, c in enumerate(pivots):
        sol[c] = A[i][n_cols]
    return sol


def interpolate_finite(data, bound: int = 16):
    """Recover a quasipolynomial from exact window data, or None.

    `data` maps integers to scalars; its key hull is the window and
    missing interior points count as zero.  The result has annihilator
    degree <= bound and matches every window point; verdicts are relative
    to the bound.
    """
    if bound < 1:
        raise ValueError("degree bound must be >= 1")
    if not data:
        return QuasiPolynomial.zero()
    lo, hi = min(data), max(data)
    seq = [data.get(n, ZERO) for n in range(lo, hi + 1)]
    seq = [v if isinstance(v, Scalar) else scalar(v) for v in seq]
    if all(v == ZERO for v in seq):
        return QuasiPolynomial.zero()
    conn = berlekamp_massey(seq)
    L = len(conn) - 1
    if L == 0 or L > bound:
        return None
    # annihilator b(x) = x^L C(1/x); a vanishing constant term would force
    # finitely supported pieces, which no quasipolynomial has
    ann = list(reversed(conn))
    if ann[0] == ZERO:
        return None
    roots = _linear_roots(ann)
    if roots is None:
        return None
    if any(root == ZERO for root, _ in roots):
        return None
    unknowns = []
    for root, mult in roots:
        for t in range(mult):
            unknowns.append((root, t))
    rows = []
    rhs = []
    for idx, n in enumerate(range(lo, hi + 1)):
        row = []
        for root, t in unknowns:
            row.append(scalar(n) ** t * root ** n if t else root ** n)
        rows.append(row)
        rhs.append(seq[idx])
    sol = _solve_exact(rows, rhs)
    if sol is None:
        return None
    terms = {}
    for (root, t), a in zip(unknowns, sol):
        if a == ZERO:
            continue
        coeffs = terms.setdefault(root, {})
        coeffs[t] = a
    built = QuasiPolynomial({
        b: [cs.get(k, ZERO) for k in range(max(cs) + 1)] for b, cs in terms.items()
    })
    for idx, n in enumerate(range(lo, hi + 1)):
        if qp_eval(built, n) != seq[idx]:
            return None
    return built


def qp_to_dict(P: QuasiPolynomial) -> dict:
    terms = []
    for b, p in sorted(P.items(), key=lambda kv: scalar_str(kv[0])):
        terms.append({"base": scalar_str(b), "coeffs": [scalar_str(c) for c in p]})
    return {"terms": terms}
