"""Deterministic generator for a cubic Perron family with arbitrarily large
lower bounds on the Perron-Frobenius degree, the numeric verification of the
inequalities the construction rests on, and the lift to degree-6 biPerron
units via x = y + 1/y."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .algebra import (
    ApproxRoot,
    IntPolynomial,
    integer_factors,
    is_irreducible,
    poly_mul,
    roots,
)
from .classify import PerronAnalysis, analyze, eta, is_perron
from .errors import (
    ClaimViolated,
    EpsilonOutOfRange,
    HypothesisFailed,
    Indeterminate,
    NotPerron,
)

_SLACK = 1e-9  # relative slack absorbing certified root radii in inequalities


@dataclass(frozen=True)
class CubicFamily:
    epsilon: Fraction
    a0: int
    b0: int
    c0: int
    k: int
    a: int
    b: int
    c: int
    f: IntPolynomial
    omega1: ApproxRoot
    omega2: ApproxRoot          # the non-real conjugate with Im > 0
    eta: float
    biperron_poly: Optional[IntPolynomial] = None


def _min_k(a0, b0, c0, eps):
    """Smallest k >= 1 with k(a0 + eps*b0) - k*sqrt(a0^2 + b0^2) >= c0 + 4.

    sqrt comparisons are done by squaring, so the predicate is exact:
      k*(a0 + eps*b0) - (c0 + 4) >= k*sqrt(n)  with n = a0^2 + b0^2
    needs the left side non-negative and its square >= k^2 * n.
    """
    n = a0 * a0 + b0 * b0
    s = a0 + eps * b0  # > sqrt(n) by choice of a0

    def ok(k):
        lhs = k * s - (c0 + 4)
        return lhs >= 0 and lhs * lhs >= k * k * n

    hi = 1
    while not ok(hi):
        hi *= 2
    lo = hi // 2
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return hi


def generate_cubic(epsilon) -> CubicFamily:
    """Produce the cubic family member for a rational 0 < epsilon < 1.

    All parameter arithmetic is exact: b0 = 1; a0 is the least integer with
    sqrt(a0^2 + b0^2) < a0 + eps*b0; c0 = ceil((a0/b0)^2); k is the least
    integer opening a gap of c0 + 4 between k*sqrt(a0^2+b0^2) and
    k*(a0 + eps*b0), then bumped until b = k*b0 > 1/eps and b, c > 2;
    c = floor(k*(a0 + eps*b0)), checked to exceed k*sqrt(a0^2+b0^2).
    """
    eps = Fraction(epsilon)
    if not 0 < eps < 1:
        raise EpsilonOutOfRange(f"epsilon = {eps}")

    b0 = 1
    # a0^2 + b0^2 < (a0 + eps*b0)^2  <=>  a0 > b0*(1 - eps^2) / (2*eps)
    threshold = b0 * (1 - eps * eps) / (2 * eps)
    a0 = int(threshold) + 1
    c0 = math.ceil(Fraction(a0 * a0, b0 * b0))
    k = _min_k(a0, b0, c0, eps)

    n0 = a0 * a0 + b0 * b0
    while True:
        b = k * b0
        c = int(k * (a0 + eps * b0))  # floor: the value is positive
        # c must sit strictly above k*sqrt(a0^2 + b0^2)
        if b * eps > 1 and b > 2 and c > 2 and c * c > k * k * n0:
            break
        k += 1
    a = k * a0

    nn = a * a + b * b
    f = IntPolynomial((-(c * nn + 1), 2 * a * c + nn, -(c + 2 * a), 1))
    conj = roots(f)
    omega1 = conj.dominant()
    uppers = conj.nonreal_upper()
    if omega1 is None or not omega1.is_real or len(uppers) != 1:
        raise ClaimViolated("claim3", "expected one real and one complex pair")
    omega2 = uppers[0][1]
    return CubicFamily(
        epsilon=eps, a0=a0, b0=b0, c0=c0, k=k, a=a, b=b, c=c, f=f,
        omega1=omega1, omega2=omega2, eta=eta(omega1, omega2))


@dataclass(frozen=True)
class ClaimReport:
    checks: tuple       # (name, passed: True, detail) triples
    tan_eta: float
    tan_eta_cap: float  # 6 * epsilon


def verify_claims(fam: CubicFamily) -> ClaimReport:
    """Re-check every inequality underlying the family construction.

    Integer and rational facts (claim 1, the claim 2 sign bracketing, the
    claim 5 resultant bound) are checked exactly; the rest use the certified
    root enclosures with worst-case rounding. Any failure raises
    ClaimViolated, since these are proved properties of the construction.
    """
    a, b, c, eps = fam.a, fam.b, fam.c, Fraction(fam.epsilon)
    n = a * a + b * b
    checks = []

    # claim 1: sqrt(a^2+b^2) < c <= a + eps*b and (a/b)^2 <= c, exact
    if not (n < c * c and c <= a + eps * b and a * a <= c * b * b):
        raise ClaimViolated("claim1", f"(a,b,c)=({a},{b},{c}), eps={eps}")
    checks.append(("claim1", True, "parameter inequalities (exact)"))

    # claim 2: sign bracketing of the real root, exact rational evaluation
    # (f is monic, i.e. the negation of the product form, so signs flip)
    p = c + Fraction(c + 1, n - 1)
    if not (fam.f(c) == -1 and fam.f(c + 1) > 0 and fam.f(p) > 0):
        raise ClaimViolated("claim2", "sign bracketing failed")
    w1, r1 = fam.omega1.value.real, fam.omega1.radius
    if not (w1 + r1 > c and w1 - r1 < float(p)):
        raise ClaimViolated("claim2", "certified root outside the bracket")
    checks.append(("claim2", True, f"c < omega1 < c + {float(p) - c:.3e}"))

    # claim 3: exactly one real root
    reals = sum(1 for r in roots(fam.f).roots if r.is_real)
    if reals != 1:
        raise ClaimViolated("claim3", f"{reals} real roots")
    checks.append(("claim3", True, "one real root"))

    # claim 4: |omega2| < omega1, certified
    w2, r2 = fam.omega2.value, fam.omega2.radius
    if not abs(w2) + r2 < w1 - r1:
        raise ClaimViolated("claim4", "dominance not certified")
    checks.append(("claim4", True, f"|omega2| = {abs(w2):.6g} < {w1:.6g}"))

    # claim 5: |omega2|^2 >= a^2 + b^2 - 1. Exact route:
    # |omega2|^2 = (c*n + 1)/omega1 and omega1 <= p, so it suffices that
    # (c*n + 1)/p >= n - 1, a rational comparison.
    if not Fraction(c * n + 1) / p >= n - 1:
        raise ClaimViolated("claim5", "modulus lower bound failed")
    checks.append(("claim5", True, "|omega2|^2 >= a^2 + b^2 - 1 (exact)"))

    # claim 6: |Re omega2| <= a; 0 < omega1 - Re omega2 < c - a + 2;
    # Im^2 >= b^2 - 1 (certified, small relative slack)
    re2, im2 = w2.real, abs(w2.imag)
    slack = _SLACK * max(1.0, abs(w1))
    gap = w1 - re2
    if not (abs(re2) - r2 <= a + slack
            and gap > r1 + r2
            and gap < c - a + 2 + r1 + r2 + slack):
        raise ClaimViolated("claim6", "real part bounds failed")
    if not (im2 + r2) ** 2 >= b * b - 1 - slack * b:
        raise ClaimViolated("claim6", "imaginary part lower bound failed")
    checks.append(("claim6", True, "real/imaginary part bounds"))

    # claim 7: ((omega1 - Re omega2)/Im omega2)^2 <= (eps + 2/b)^2/(1 - 1/b^2)
    worst = (gap + r1 + r2) / (im2 - r2)
    cap7 = float((eps + Fraction(2, b)) ** 2 / (1 - Fraction(1, b * b)))
    if not worst * worst <= cap7 * (1 + _SLACK):
        raise ClaimViolated("claim7", f"{worst * worst} > {cap7}")
    checks.append(("claim7", True, f"slope^2 = {worst * worst:.6g} <= {cap7:.6g}"))

    tan_eta = math.tan(fam.eta)
    cap = float(6 * eps)
    if not tan_eta < cap:
        raise ClaimViolated("tan_eta", f"tan(eta) = {tan_eta} >= {cap}")
    checks.append(("tan_eta", True, f"tan(eta) = {tan_eta:.6g} < {cap:.6g}"))
    return ClaimReport(checks=tuple(checks), tan_eta=tan_eta, tan_eta_cap=cap)


def biperron_lift(poly: IntPolynomial) -> IntPolynomial:
    """Monic integer polynomial of degree 2d with roots y where y + 1/y runs
    over the roots of poly: y^d * poly(y + 1/y), expanded exactly."""
    d = poly.degree
    acc = [0] * (2 * d + 1)
    power = [1]  # (y^2 + 1)^i
    for i, coeff in enumerate(poly.coeffs):
        # term: coeff * (y^2 + 1)^i * y^(d - i)
        for j, pc in enumerate(power):
            acc[j + d - i] += coeff * pc
        power = poly_mul(power, [1, 0, 1])
    return IntPolynomial(tuple(acc))


def check_observation(gamma_poly: IntPolynomial, tol=1e-10) -> bool:
    """True iff the dominant root gamma satisfies gamma > 2 and every other
    conjugate has |gamma'| <= gamma - 2, all certified."""
    conj = roots(gamma_poly, tol)
    if not is_perron(conj):
        raise NotPerron(str(gamma_poly))
    top = conj.dominant()
    g, rg = top.value.real, top.radius
    if g - rg <= 2:
        if g + rg > 2:
            raise Indeterminate("gamma too close to 2")
        return False
    for i, r in enumerate(conj.roots):
        if i == conj.dominant_index:
            continue
        if abs(r.value) - r.radius > g + rg - 2:
            return False
        if abs(r.value) + r.radius > g - rg - 2:
            raise Indeterminate("conjugate modulus too close to gamma - 2")
    return True


def _minimal_factor_at(poly: IntPolynomial, target) -> IntPolynomial:
    """Irreducible integer factor of poly vanishing at the certified root
    closest to target."""
    if is_irreducible(poly, degree_limit=poly.degree):
        return poly
    best = None
    for factor in integer_factors(poly):
        for r in roots(factor).roots:
            d = abs(r.value - target)
            if best is None or d < best[0]:
                best = (d, factor)
    return best[1]


def biperron_from_gamma(gamma_poly: IntPolynomial, require_hypothesis=True):
    """Lift a Perron gamma to the unit alpha with alpha + 1/alpha = gamma.

    Returns (alpha_poly, analysis). With require_hypothesis the conjugate
    condition |gamma'| <= gamma - 2 is enforced first (HypothesisFailed);
    without it the lift is computed anyway so the failure mode can be
    inspected (alpha need not be biPerron then).
    """
    if require_hypothesis and not check_observation(gamma_poly):
        raise HypothesisFailed(f"conjugate condition fails for {gamma_poly}")
    lifted = biperron_lift(gamma_poly)
    gamma = roots(gamma_poly).dominant().value.real
    alpha = (gamma + math.sqrt(gamma * gamma - 4)) / 2
    alpha_poly = _minimal_factor_at(lifted, alpha)
    return alpha_poly, analyze(alpha_poly)


def to_biperron(fam: CubicFamily):
    """Degree-6 biPerron unit built from a cubic family member.

    Checks the construction's preconditions (c >= sqrt(a^2+b^2) + 3 exactly,
    b, c > 2, b > 1/eps), the conjugate condition on omega1, and on the
    result: unit constant term, a certified biPerron verdict, and
    tan(eta_hat) <= 16*eps. Returns (alpha_poly, analysis).
    """
    a, b, c, eps = fam.a, fam.b, fam.c, Fraction(fam.epsilon)
    if not (c >= 3 and (c - 3) ** 2 >= a * a + b * b and b > 2 and c > 2
            and b * eps > 1):
        raise HypothesisFailed(f"(a,b,c)=({a},{b},{c}) too small for the lift")
    alpha_poly, analysis = biperron_from_gamma(fam.f)
    if abs(alpha_poly.constant_term()) != 1:
        raise ClaimViolated("unit", f"constant term {alpha_poly.constant_term()}")
    if analysis.is_biperron is not True:
        raise ClaimViolated("biperron", str(analysis.is_biperron))
    cap = float(16 * eps)
    if analysis.best_eta is None or not math.tan(analysis.best_eta) <= cap:
        raise ClaimViolated("eta_hat", f"{analysis.best_eta} vs atan({cap})")
    return alpha_poly, analysis
