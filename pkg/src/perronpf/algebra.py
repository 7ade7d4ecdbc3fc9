"""Exact integer/rational polynomial arithmetic, certified complex root
finding, companion matrices, and arithmetic in the field generated by a root.

Coefficients are stored ascending everywhere: (c0, c1, ..., c_{d-1}, 1).
All exact computations use int/Fraction; floating point only appears in the
root finder and in embeddings, always with an explicit error radius.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import sympy

from .errors import (
    DegreeTooLarge,
    FieldMismatch,
    MalformedInput,
    NoConvergence,
    NotInvertible,
    NotMonic,
    NotSquarefree,
    ReduciblePoly,
)

DEGREE_LIMIT = 8


# ---------------------------------------------------------------------------
# polynomial value types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntPolynomial:
    """Monic integer polynomial, ascending coefficients.

    Degree 0 is allowed only as the constant 1 (quotient witnesses); parsed
    user input must have degree >= 1 (see parse_poly).
    """

    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) < 1:
            raise MalformedInput("empty coefficient list")
        if coeffs[-1] != 1:
            raise NotMonic(f"leading coefficient is {coeffs[-1]}, expected 1")

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __call__(self, x):
        """Horner evaluation; works for int, Fraction, float and complex x."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative_coeffs(self):
        """Ascending integer coefficients of the derivative."""
        return tuple(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def eval_derivative(self, x):
        acc = 0
        for c in reversed(self.derivative_coeffs()):
            acc = acc * x + c
        return acc

    def constant_term(self):
        return self.coeffs[0]

    def __str__(self):
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(f"{c:+d}")
            elif i == 1:
                terms.append(f"{c:+d}*x")
            else:
                terms.append(f"{c:+d}*x^{i}")
        return " ".join(terms) or "0"


def parse_poly(text):
    """Parse a comma-separated ascending integer coefficient list (monic)."""
    tokens = [t.strip() for t in str(text).split(",")]
    if not tokens or tokens == [""]:
        raise MalformedInput("empty coefficient list")
    coeffs = []
    for tok in tokens:
        try:
            coeffs.append(int(tok))
        except ValueError:
            raise MalformedInput(f"non-integer token {tok!r}") from None
    if len(coeffs) < 2:
        raise MalformedInput("need at least two coefficients (degree >= 1)")
    if coeffs[-1] != 1:
        raise NotMonic(f"leading coefficient is {coeffs[-1]}, expected 1")
    return IntPolynomial(tuple(coeffs))


# ---------------------------------------------------------------------------
# low-level coefficient-list helpers (ascending, Fraction or int)
# ---------------------------------------------------------------------------

def poly_trim(c):
    c = list(c)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return poly_trim([x - y for x, y in zip(a, b)])


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return poly_trim(out)


def poly_divmod(num, den):
    """Division over the rationals; returns (quotient, remainder)."""
    num = [Fraction(x) for x in poly_trim(num)]
    den = [Fraction(x) for x in poly_trim(den)]
    if den == [Fraction(0)]:
        raise ZeroDivisionError("polynomial division by zero")
    quo = [Fraction(0)] * max(1, len(num) - len(den) + 1)
    rem = num[:]
    dlead = den[-1]
    while len(rem) >= len(den) and poly_trim(rem) != [Fraction(0)]:
        shift = len(rem) - len(den)
        factor = rem[-1] / dlead
        if factor == 0:
            rem.pop()
            continue
        quo[shift] = factor
        for i, d in enumerate(den):
            rem[shift + i] -= factor * d
        rem.pop()
    return poly_trim(quo), poly_trim(rem or [Fraction(0)])


def poly_gcd(a, b):
    """Monic gcd over the rationals."""
    a = [Fraction(x) for x in poly_trim(a)]
    b = [Fraction(x) for x in poly_trim(b)]
    while poly_trim(b) != [Fraction(0)]:
        _, r = poly_divmod(a, b)
        a, b = b, r
    a = poly_trim(a)
    lead = a[-1]
    if lead != 0:
        a = [x / lead for x in a]
    return a


def int_poly_divide_exact(num, den):
    """Exact division of integer polynomials (den monic); None if not exact."""
    quo, rem = poly_divmod(num, den)
    if poly_trim(rem) != [Fraction(0)]:
        return None
    out = []
    for q in quo:
        if q.denominator != 1:
            return None
        out.append(int(q))
    return out


def is_squarefree(poly):
    g = poly_gcd(poly.coeffs, poly.derivative_coeffs())
    return len(g) == 1


# ---------------------------------------------------------------------------
# certified root finding (Aberth simultaneous iteration)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ApproxRoot:
    """One certified root: the true root lies within `radius` of `value`."""

    value: complex
    radius: float
    is_real: bool


@dataclass(frozen=True)
class ConjugateSet:
    """All roots of a squarefree IntPolynomial, dominant real root flagged.

    Roots are ordered by descending modulus, ties by descending real part.
    dominant_index is set only when the largest-modulus root is real and its
    certified modulus interval is strictly above every other root's.
    """

    poly: IntPolynomial
    roots: tuple
    dominant_index: object  # int or None

    def dominant(self):
        if self.dominant_index is None:
            return None
        return self.roots[self.dominant_index]

    def nonreal_upper(self):
        """(index, root) pairs with Im > 0: one entry per conjugate pair."""
        return [(i, r) for i, r in enumerate(self.roots)
                if not r.is_real and r.value.imag > 0]


def _aberth(coeffs, tol, max_iter=1200):
    """Aberth-Ehrlich iteration on double-precision complex numbers.

    coeffs: ascending float coefficients, monic. Returns approximations or
    raises NoConvergence.
    """
    d = len(coeffs) - 1
    if d == 1:
        return [complex(-coeffs[0], 0.0)]
    radius = 1.0 + max(abs(c) for c in coeffs[:-1])
    z = [radius * cmath.exp(2j * math.pi * (k / d) + 0.4j) for k in range(d)]
    dcoeffs = [i * c for i, c in enumerate(coeffs) if i > 0]

    def horner(cs, x):
        acc = 0j
        for c in reversed(cs):
            acc = acc * x + c
        return acc

    for _ in range(max_iter):
        moved = 0.0
        for i in range(d):
            p = horner(coeffs, z[i])
            dp = horner(dcoeffs, z[i])
            if dp == 0:
                z[i] += tol * (1.0 + abs(z[i])) * cmath.exp(1j)
                moved = 1.0
                continue
            w = p / dp
            s = 0j
            for j in range(d):
                if j != i:
                    diff = z[i] - z[j]
                    if diff == 0:
                        diff = tol * (1.0 + abs(z[i])) or tol
                    s += 1.0 / diff
            denom = 1.0 - w * s
            delta = w if denom == 0 else w / denom
            z[i] -= delta
            moved = max(moved, abs(delta) / max(1.0, abs(z[i])))
        if moved < tol:
            return z
    raise NoConvergence(f"Aberth iteration did not converge within {max_iter} steps")


def _certify(poly, approx):
    """Residual disk radius d*|f(z)|/|f'(z)| for each approximation."""
    d = poly.degree
    radii = []
    for z in approx:
        fz = poly(z)
        dfz = poly.eval_derivative(z)
        if dfz == 0:
            return None
        radii.append(d * abs(fz) / abs(dfz))
    # disks must be pairwise disjoint so each contains exactly one root
    for i in range(d):
        for j in range(i + 1, d):
            if abs(approx[i] - approx[j]) <= radii[i] + radii[j]:
                return None
    return radii


def _classify_real(approx, radii):
    """Split into certified-real roots and conjugate pairs; None if unclear."""
    d = len(approx)
    real_flags = [abs(z.imag) <= r for z, r in zip(approx, radii)]
    nonreal = [i for i in range(d) if not real_flags[i]]
    used = set()
    for i in nonreal:
        if i in used:
            continue
        mate = None
        for j in nonreal:
            if j == i or j in used:
                continue
            # ulp-level slack: exact residuals give radius 0, yet the two
            # approximations need not be bit-identical conjugates
            slack = 2 * (radii[i] + radii[j]) + 1e-12 * (1.0 + abs(approx[i]))
            if abs(approx[i].conjugate() - approx[j]) <= slack:
                mate = j
                break
        if mate is None:
            return None
        used.add(i)
        used.add(mate)
    return real_flags


def roots(poly, tol=1e-10):
    """Certified complex roots of a squarefree monic integer polynomial."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not is_squarefree(poly):
        raise NotSquarefree(str(poly))

    last_error = None
    for attempt_tol in (tol, tol / 100.0):
        try:
            approx = _aberth([float(c) for c in poly.coeffs], attempt_tol)
        except NoConvergence as exc:
            last_error = exc
            continue
        radii = _certify(poly, approx)
        if radii is None:
            last_error = NoConvergence("root disks overlap; certification failed")
            continue
        real_flags = _classify_real(approx, radii)
        if real_flags is None:
            last_error = NoConvergence("conjugate pairing inconsistent")
            continue
        items = []
        for z, r, is_real in zip(approx, radii, real_flags):
            value = complex(z.real, 0.0) if is_real else z
            items.append(ApproxRoot(value=value, radius=r, is_real=is_real))
        items.sort(key=lambda a: (-abs(a.value), -a.value.real))
        _check_symmetric_functions(poly, items, tol)
        dominant = _dominant_index(items)
        return ConjugateSet(poly=poly, roots=tuple(items), dominant_index=dominant)
    raise last_error or NoConvergence("root finding failed")


def _check_symmetric_functions(poly, items, tol):
    """Sum/product of the returned roots must match the coefficients.

    The comparison is relative to the coefficient magnitude: family
    polynomials carry coefficients far beyond 1/tol, where an absolute
    d*tol test is unsatisfiable in double precision.
    """
    d = poly.degree
    total = sum(r.value for r in items)
    prod = complex(1, 0)
    for r in items:
        prod *= r.value
    want_sum = -poly.coeffs[d - 1]
    want_prod = (-1) ** d * poly.coeffs[0]
    slack_sum = d * tol * max(1.0, abs(want_sum))
    slack_prod = d * tol * max(1.0, abs(want_prod))
    if abs(total - want_sum) > slack_sum or abs(prod - want_prod) > slack_prod:
        raise NoConvergence("roots fail the symmetric-function consistency check")


def _dominant_index(items):
    if not items:
        return None
    top = items[0]
    if not top.is_real:
        return None
    if len(items) == 1:
        return 0
    lo = abs(top.value) - top.radius
    hi = max(abs(r.value) + r.radius for r in items[1:])
    if lo > hi:
        return 0
    return None


# ---------------------------------------------------------------------------
# irreducibility over the integers
# ---------------------------------------------------------------------------

def is_irreducible(poly, degree_limit=DEGREE_LIMIT):
    """True iff poly has no monic integer factor of degree 1 <= k < d.

    Degree 1 factors are rejected by the rational-root test; the general
    decision is delegated to an exact integer factorization.
    """
    d = poly.degree
    if d > degree_limit:
        raise DegreeTooLarge(f"degree {d} above limit {degree_limit}")
    if d == 1:
        return True
    c0 = poly.coeffs[0]
    if c0 == 0:
        return False
    # fast path: any rational root of a monic integer poly is an integer
    # divisor of the constant term, and for d <= 3 every factorization
    # contains a linear factor
    if d <= 3:
        for cand in _divisors(abs(c0)):
            for root in (cand, -cand):
                if poly(root) == 0:
                    return False
        return True
    return _sympy_poly(poly).is_irreducible


def integer_factors(poly):
    """Monic irreducible integer factors (each as IntPolynomial)."""
    _, factors = sympy.factor_list(_sympy_poly(poly).as_expr())
    out = []
    for fac, mult in factors:
        p = sympy.Poly(fac, _X)
        coeffs = [int(c) for c in reversed(p.all_coeffs())]
        if coeffs[-1] == -1:
            coeffs = [-c for c in coeffs]
        for _ in range(mult):
            out.append(IntPolynomial(tuple(coeffs)))
    return out


_X = sympy.Symbol("x")


def _sympy_poly(poly):
    return sympy.Poly(list(reversed(poly.coeffs)), _X, domain="ZZ")


def _divisors(n):
    out = set()
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.add(i)
            out.add(n // i)
        i += 1
    return sorted(out)


# ---------------------------------------------------------------------------
# companion matrix
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CompanionMatrix:
    """Companion matrix with sub-diagonal ones and the negated ascending
    coefficients in the last column; char poly equals source up to sign."""

    entries: tuple
    source: IntPolynomial


def companion(poly):
    d = poly.degree
    rows = []
    for i in range(d):
        row = [0] * d
        if i >= 1:
            row[i - 1] = 1
        row[d - 1] = -poly.coeffs[i]
        rows.append(tuple(row))
    return CompanionMatrix(entries=tuple(rows), source=poly)


def char_poly(entries):
    """Ascending integer coefficients of det(xI - A), exact.

    Faddeev-LeVerrier over the rationals; intermediate values are verified
    to be integers.
    """
    n = len(entries)
    a = [[Fraction(entries[i][j]) for j in range(n)] for i in range(n)]
    m = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    coeffs = [Fraction(1)]  # c_n = 1 for x^n
    for k in range(1, n + 1):
        am = [[sum(a[i][l] * m[l][j] for l in range(n)) for j in range(n)]
              for i in range(n)]
        trace = sum(am[i][i] for i in range(n))
        ck = -trace / k
        coeffs.append(ck)
        m = [[am[i][j] + (ck if i == j else 0) for j in range(n)] for i in range(n)]
    out = list(reversed(coeffs))  # ascending: constant first
    result = []
    for c in out:
        if c.denominator != 1:
            raise ArithmeticError("characteristic polynomial is not integral")
        result.append(int(c))
    return result


# ---------------------------------------------------------------------------
# number field arithmetic
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NumberFieldElement:
    """a0 + a1*x + ... + a_{d-1}*x^{d-1} modulo field_poly, exact coords."""

    coords: tuple
    field_poly: IntPolynomial

    def __post_init__(self):
        coords = tuple(Fraction(c) for c in self.coords)
        if len(coords) != self.field_poly.degree:
            raise FieldMismatch(
                f"expected {self.field_poly.degree} coords, got {len(coords)}")
        object.__setattr__(self, "coords", coords)

    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def __add__(self, other):
        _same_field(self, other)
        return NumberFieldElement(
            tuple(a + b for a, b in zip(self.coords, other.coords)),
            self.field_poly)

    def __sub__(self, other):
        _same_field(self, other)
        return NumberFieldElement(
            tuple(a - b for a, b in zip(self.coords, other.coords)),
            self.field_poly)

    def __neg__(self):
        return NumberFieldElement(tuple(-a for a in self.coords), self.field_poly)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return NumberFieldElement(
                tuple(a * other for a in self.coords), self.field_poly)
        _same_field(self, other)
        prod = poly_mul(list(self.coords), list(other.coords))
        return NumberFieldElement(_reduce_mod(prod, self.field_poly), self.field_poly)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, NumberFieldElement)
                and self.field_poly == other.field_poly
                and self.coords == other.coords)

    def __hash__(self):
        return hash((self.coords, self.field_poly.coeffs))


def nf_constant(value, field_poly):
    coords = [Fraction(value)] + [Fraction(0)] * (field_poly.degree - 1)
    return NumberFieldElement(tuple(coords), field_poly)


def nf_generator(field_poly):
    """The class of x (the defining root) itself."""
    d = field_poly.degree
    coords = [Fraction(0)] * d
    if d == 1:
        # x = -c0 in a degree-1 field
        coords[0] = Fraction(-field_poly.coeffs[0])
    else:
        coords[1] = Fraction(1)
    return NumberFieldElement(tuple(coords), field_poly)


def _same_field(x, y):
    if x.field_poly != y.field_poly:
        raise FieldMismatch("operands live in different fields")


def _reduce_mod(coeffs, field_poly):
    d = field_poly.degree
    c = [Fraction(v) for v in coeffs]
    while len(c) > d:
        top = c.pop()
        if top == 0:
            continue
        shift = len(c) - d
        # x^d = -(c0 + c1 x + ... + c_{d-1} x^{d-1})
        for i in range(d):
            c[shift + i] -= top * field_poly.coeffs[i]
    c += [Fraction(0)] * (d - len(c))
    return tuple(c)


def nf_add(x, y):
    return x + y


def nf_mul(x, y):
    return x * y


def nf_inverse(x):
    """Exact inverse via the extended Euclidean algorithm in Q[t]."""
    if x.is_zero():
        raise NotInvertible("zero element")
    # extended gcd of the coordinate polynomial with the field polynomial
    a = poly_trim(list(x.coords))
    b = [Fraction(c) for c in x.field_poly.coeffs]
    r0, r1 = a, b
    s0, s1 = [Fraction(1)], [Fraction(0)]
    while poly_trim(r1) != [Fraction(0)]:
        q, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, poly_mul(q, s1))
    g = poly_trim(r0)
    if len(g) > 1:
        raise ReduciblePoly(
            "field polynomial shares a factor with a nonzero element")
    inv = [c / g[0] for c in s0]
    return NumberFieldElement(_reduce_mod(inv, x.field_poly), x.field_poly)


def embed(x, root):
    """Evaluate the element at a chosen conjugate (complex result)."""
    acc = 0j
    for c in reversed(x.coords):
        acc = acc * root.value + complex(c)
    return acc


def embed_radius(x, root):
    """Upper bound for the embedding error inherited from root.radius."""
    z = abs(root.value)
    r = root.radius
    bound = 0.0
    for j, c in enumerate(x.coords):
        if j == 0:
            continue
        bound += abs(c) * ((z + r) ** j - z ** j)
    return bound
