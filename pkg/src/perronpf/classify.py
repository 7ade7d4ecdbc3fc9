"""Classification of algebraic integers (Perron / totally-real / unit /
biPerron) and the 2*pi/(3*eta) lower bound on the Perron-Frobenius degree."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import IntPolynomial, ConjugateSet, ApproxRoot, poly_gcd, roots
from .errors import (
    Indeterminate,
    NoDominantRealRoot,
    NotPerron,
    NotUnit,
    RealConjugate,
)

# absolute slack added on top of certified radii in strictness decisions
_EPS = 1e-12


@dataclass(frozen=True)
class PerronAnalysis:
    poly: IntPolynomial
    conjugates: ConjugateSet
    is_perron: bool
    is_totally_real: bool
    is_unit: bool
    is_biperron: object          # bool, or None when inapplicable
    biperron_exceptions: tuple   # which exception values fired, if any
    eta_list: tuple              # (conjugate index, eta) per upper-half pair
    best_eta: object             # float or None
    lower_bound: object          # float or None
    lower_bound_int: object      # int or None


def _at_least_one(top, poly):
    """Certified decision of top >= 1 for a real root."""
    value, radius = top.value.real, top.radius
    if value - radius >= 1:
        return True
    if value + radius < 1:
        return False
    # disk straddles 1: equality holds iff 1 is an exact root
    if poly(1) == 0:
        return True
    raise Indeterminate("cannot separate the dominant root from 1")


def is_perron(conjugates):
    """True iff a real root >= 1 strictly exceeds all other moduli."""
    items = conjugates.roots
    poly = conjugates.poly
    top = items[0]
    if len(items) == 1:
        return top.is_real and top.value.real > 0 and _at_least_one(top, poly)
    if not top.is_real:
        # the conjugate shares the maximal modulus exactly
        return False
    lo = abs(top.value) - top.radius
    hi = max(abs(r.value) + r.radius for r in items[1:])
    if lo > hi:
        return top.value.real > 0 and _at_least_one(top, poly)
    # moduli intervals overlap: fall back to an exact algebraic tie test
    if _has_modulus_tie(poly, top):
        return False
    raise Indeterminate("dominance comparison needs tighter root disks")


def _has_modulus_tie(poly, top):
    """Exact decision: does another root share the modulus of the real top?

    A complex pair tie |p'| = p means p' * conj(p') = p^2, a product of two
    distinct roots of f. The polynomial T with roots {rho_i * rho_j : i != j}
    therefore vanishes at p^2, and conversely T(p^2) = 0 rules out strict
    dominance (two root moduli would have to multiply to p^2). The real tie
    -p is covered by a gcd with the mirrored polynomial. Only invoked when
    certified disks overlap.
    """
    import sympy

    d = poly.degree
    y, z = sympy.symbols("y z")
    f_y = sympy.Poly(list(reversed(poly.coeffs)), y, domain="ZZ")
    # g_z(y) = y^d f(z/y); roots in y are z / rho_j
    g = sum(poly.coeffs[k] * z ** k * y ** (d - k) for k in range(d + 1))
    pair_products = sympy.Poly(sympy.resultant(f_y.as_expr(), g, y), z, domain="QQ")
    # S has roots rho_i^2 (the i = j products): S(z) = +/- f(sqrt z) f(-sqrt z)
    even = [poly.coeffs[k] for k in range(0, d + 1, 2)]
    odd = [poly.coeffs[k] for k in range(1, d + 1, 2)]
    from .algebra import _poly_sub, poly_mul
    squares = _poly_sub(poly_mul(even, even),
                        [0] + list(poly_mul(odd, odd)) if odd else [0])
    distinct = sympy.div(pair_products,
                         sympy.Poly(list(reversed(squares)), z, domain="QQ"), z)
    if distinct[1].as_expr() != 0:
        raise Indeterminate("pair-product factorization failed")
    t_coeffs = [Fraction(sympy.Rational(c)) for c in
                reversed(distinct[0].all_coeffs())]
    # does f share a root with T(x^2) near top?
    t_of_x2 = [Fraction(0)] * (2 * len(t_coeffs) - 1)
    for i, c in enumerate(t_coeffs):
        t_of_x2[2 * i] = c
    if _common_root_at(poly, t_of_x2, top):
        return True
    mirror = [(-1) ** (poly.degree + i) * c for i, c in enumerate(poly.coeffs)]
    return _common_root_at(poly, mirror, top)


def _common_root_at(poly, other_coeffs, top):
    """True iff gcd(poly, other) has a certified root at top's position."""
    g = poly_gcd(list(poly.coeffs), other_coeffs)
    if len(g) <= 1:
        return False
    g_int = []
    for c in g:
        frac = Fraction(c)
        if frac.denominator != 1:
            return False
        g_int.append(int(frac))
    g_poly = IntPolynomial(tuple(g_int))
    for gr in roots(g_poly).roots:
        if abs(gr.value - top.value) <= gr.radius + top.radius + _EPS:
            return True
    return False


def is_totally_real(conjugates):
    return all(r.is_real for r in conjugates.roots)


def is_unit(poly):
    return abs(poly.constant_term()) == 1


def eta(p, p_prime):
    """The angle arctan((p - Re p') / |Im p'|), in (0, pi/2)."""
    if p_prime.is_real:
        raise RealConjugate("eta needs a non-real conjugate")
    num = p.value.real - p_prime.value.real
    den = abs(p_prime.value.imag)
    return math.atan2(num, den)


def theorem1_bound(conjugates):
    """(best_eta, lower_bound, lower_bound_int), or None when no conjugate
    pair yields an admissible angle (all real, or every eta > 1)."""
    if not is_perron(conjugates):
        raise NotPerron(str(conjugates.poly))
    p = conjugates.dominant()
    etas = [(i, eta(p, r)) for i, r in conjugates.nonreal_upper()]
    admissible = [(i, e) for i, e in etas if e <= 1.0]
    if not admissible:
        return None
    best = min(e for _, e in admissible)
    bound = 2.0 * math.pi / (3.0 * best)
    return best, bound, math.ceil(bound)


def is_biperron(conjugates):
    """BiPerron verdict plus the exception values that fired.

    The defining polynomial must be a unit with a real root > 1 dominating
    the conjugate set. Conjugates matching alpha^{-1} or -alpha^{-1} are
    permitted (recorded, not silently accepted); every other conjugate must
    lie strictly inside the annulus 1/alpha < |z| < alpha.
    """
    if not is_unit(conjugates.poly):
        raise NotUnit(str(conjugates.poly))
    top = conjugates.dominant()
    if top is None or not top.is_real or top.value.real <= 1 + top.radius:
        raise NoDominantRealRoot(str(conjugates.poly))
    alpha = top.value.real
    inv = 1.0 / alpha
    exceptions = []
    verdict = True
    for i, r in enumerate(conjugates.roots):
        if i == conjugates.dominant_index:
            continue
        tol = r.radius + top.radius / alpha ** 2 + _EPS
        if abs(r.value - inv) <= tol:
            exceptions.append("alpha_inverse")
            continue
        if abs(r.value + inv) <= tol:
            exceptions.append("neg_alpha_inverse")
            continue
        mod = abs(r.value)
        if not (inv + tol < mod < alpha - tol):
            verdict = False
    return verdict, tuple(exceptions)


def analyze(poly, tol=1e-10):
    """Full classification of the dominant root of a monic integer poly."""
    conjugates = roots(poly, tol)
    perron = is_perron(conjugates)
    totally_real = is_totally_real(conjugates)
    unit = is_unit(poly)

    biperron = None
    exceptions = ()
    top = conjugates.dominant()
    if unit and top is not None and top.is_real and top.value.real > 1 + top.radius:
        biperron, exceptions = is_biperron(conjugates)

    eta_list = ()
    best_eta = lower = lower_int = None
    if perron and top is not None:
        eta_list = tuple((i, eta(top, r)) for i, r in conjugates.nonreal_upper())
        if not totally_real:
            found = theorem1_bound(conjugates)
            if found is not None:
                best_eta, lower, lower_int = found

    return PerronAnalysis(
        poly=poly,
        conjugates=conjugates,
        is_perron=perron,
        is_totally_real=totally_real,
        is_unit=unit,
        is_biperron=biperron,
        biperron_exceptions=exceptions,
        eta_list=eta_list,
        best_eta=best_eta,
        lower_bound=lower,
        lower_bound_int=lower_int,
    )
