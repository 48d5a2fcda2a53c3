"""Minimal parabolic machinery at negative depth and the depth-1/2
singular-vector test.

A depth -1/2 element is d = z^{-1} b12(T_q) E12 + b21(T_q) E21.  Slices
of the minimal parabolic containing d are described by one principal
Laurent ideal per sector; they are computed by honest bracket closure of
generator elements followed by ideal gcds (one adjoint step already
decouples the sectors, so per-sector gcds are exact).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .classify import LabelFunctional, SSqWeight
from .laurent import LaurentPoly, const_term, ideal_gcd, lp_scale_arg, normalize_generator
from .scalars import Q, ZERO
from .superalgebra import Element, superbracket

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class HalfElement:
    """The pair (b12, b21) encoding z^{-1} b12(T_q) E12 + b21(T_q) E21."""

    b12: LaurentPoly
    b21: LaurentPoly

    @property
    def is_zero(self) -> bool:
        return self.b12.is_zero and self.b21.is_zero

    def to_element(self) -> Element:
        return Element({(-1, (1, 2)): self.b12, (0, (2, 1)): self.b21})


@dataclass(frozen=True)
class ParabolicSlice:
    """Sector ideals of the parabolic at one negative depth.

    Integer depths carry sectors (1,1), (2,2); half-odd depths carry
    (1,2), (2,1).  Generators are normalized as in ideal_gcd; an absent
    or zero generator is the zero ideal.
    """

    depth: Fraction
    generators: dict

    def generator(self, sector) -> LaurentPoly:
        return self.generators.get(sector, LaurentPoly.zero())

    @property
    def is_zero(self) -> bool:
        return all(g.is_zero for g in self.generators.values())


def g0a_element(d: HalfElement, f: LaurentPoly, g: LaurentPoly) -> Element:
    """The degree-0 pairing element produced by bracketing against d.

    Equals superbracket(f E12 + z g E21, d): the f-part contributes
    f b21 on the full diagonal, the g-part g(q^{-1}T) b12 E22 +
    b12(qT) g E11 minus the central constant term of g(q^{-1}T) b12.
    """
    diag = f * d.b21
    u = lp_scale_arg(g, Q ** -1) * d.b12
    m11 = lp_scale_arg(d.b12, Q) * g
    terms = {}
    if not (diag + m11).is_zero:
        terms[(0, (1, 1))] = diag + m11
    if not (diag + u).is_zero:
        terms[(0, (2, 2))] = diag + u
    return Element(terms, central=-const_term(u))


def is_nondegenerate(d: HalfElement) -> bool:
    """Nonzero depth -1/2 elements are non-degenerate.

    Each nonzero sector ideal is principal with finite codimension (the
    degree of its normalized generator), which is the criterion behind
    the statement.
    """
    return not d.is_zero


def _slice_generator_elements(sl: ParabolicSlice, spreads=(0, 1)):
    """Representative elements of a slice, spread by unit monomials."""
    out = []
    depth = sl.depth
    if depth.denominator == 1:
        n = -int(depth)
        for sector in ((1, 1), (2, 2)):
            gen = sl.generator(sector)
            if gen.is_zero:
                continue
            for t in spreads:
                out.append(Element({(n, sector): gen.shift(t)}))
    else:
        j = int(depth + HALF)  # depth = j - 1/2
        for sector, n in (((1, 2), -j), ((2, 1), -j + 1)):
            gen = sl.generator(sector)
            if gen.is_zero:
                continue
            for t in spreads:
                out.append(Element({(n, sector): gen.shift(t)}))
    return out


def min_parabolic_slice(d: HalfElement, k, window: int = 4) -> ParabolicSlice:
    """Ideal generators of the minimal parabolic at depth -k.

    Depth 1/2 comes from the adjoint closure of d under degree-0
    monomials; deeper slices follow the recursion
    p_{-k-1/2} = [p_{-1/2}, p_{-k}].  Supported for k up to a few units
    (the recursion is uniform; tests exercise k <= 3).
    """
    if d.is_zero:
        raise ValueError("the half element must be nonzero")
    k = Fraction(k)
    if k <= 0 or k.denominator not in (1, 2):
        raise ValueError("depth must be a positive half-integer")
    d_elt = d.to_element()
    col12 = []
    col21 = []
    for t in range(-window, window + 1):
        for sector in ((1, 1), (2, 2)):
            probe = Element({(0, sector): LaurentPoly.monomial(t)})
            br = superbracket(d_elt, probe)
            f12 = br.terms.get((-1, (1, 2)))
            f21 = br.terms.get((0, (2, 1)))
            if f12 is not None:
                col12.append(f12)
            if f21 is not None:
                col21.append(f21)
    half_slice = ParabolicSlice(HALF, {
        (1, 2): ideal_gcd(col12),
        (2, 1): ideal_gcd(col21),
    })
    if k == HALF:
        return half_slice
    current = half_slice
    depth = HALF
    while depth < k:
        target = depth + HALF
        collected = {}
        for a in _slice_generator_elements(half_slice):
            for b in _slice_generator_elements(current):
                br = superbracket(a, b)
                for (n, sector), f in br.terms.items():
                    collected.setdefault(sector, []).append(f)
        if target.denominator == 1:
            gens = {sector: ideal_gcd(collected.get(sector, []))
                    for sector in ((1, 1), (2, 2))}
        else:
            gens = {sector: ideal_gcd(collected.get(sector, []))
                    for sector in ((1, 2), (2, 1))}
        current = ParabolicSlice(target, gens)
        depth = target
    return current


def singular_vector_check(w, d: HalfElement, window: int = 8) -> bool:
    """Depth-1/2 singularity test: the weight kills [g_{1/2}, d].

    Probes the pairing with monomial generators f = T^a, g = T^b for
    |a|, |b| <= window; linearity makes this a spanning family once the
    window passes the annihilator degrees.  `w` may be an SSqWeight or a
    LabelFunctional (for perturbed label experiments).
    """
    lam = w if isinstance(w, LabelFunctional) else LabelFunctional(w)
    if not isinstance(lam.weight, SSqWeight):
        raise TypeError("singular_vector_check needs an SSqWeight functional")
    monos = [LaurentPoly.monomial(t) for t in range(-window, window + 1)]
    zero_poly = LaurentPoly.zero()
    # g0a_element is jointly linear in (f, g), so the two monomial
    # families span the same conditions as the full (f, g) grid
    for fa in monos:
        if lam.evaluate(g0a_element(d, fa, zero_poly)) != ZERO:
            return False
    for gb in monos:
        if lam.evaluate(g0a_element(d, zero_poly, gb)) != ZERO:
            return False
    return True
