import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from perronpf.algebra import (
    CompanionMatrix,
    IntPolynomial,
    NumberFieldElement,
    char_poly,
    companion,
    embed,
    embed_radius,
    int_poly_divide_exact,
    integer_factors,
    is_irreducible,
    is_squarefree,
    nf_constant,
    nf_generator,
    nf_inverse,
    parse_poly,
    poly_gcd,
    poly_mul,
    roots,
)
from perronpf.errors import (
    DegreeTooLarge,
    MalformedInput,
    NotInvertible,
    NotMonic,
    NotSquarefree,
)

PHI_POLY = IntPolynomial((-1, -1, 1))
CUBIC = IntPolynomial((-46, -15, 3, 1))


# -- parsing ------------------------------------------------------------------

def test_parse_basic():
    assert parse_poly("-1,-1,1").coeffs == (-1, -1, 1)
    assert parse_poly("-46,-15,3,1").coeffs == (-46, -15, 3, 1)


def test_parse_rejects_non_monic():
    with pytest.raises(NotMonic):
        parse_poly("-1,-1,2")


def test_parse_rejects_garbage():
    with pytest.raises(MalformedInput):
        parse_poly("a,b,1")
    with pytest.raises(MalformedInput):
        parse_poly("")
    with pytest.raises(MalformedInput):
        parse_poly("1")


# -- certified roots ----------------------------------------------------------

def test_roots_golden_ratio():
    cs = roots(PHI_POLY)
    vals = sorted(r.value.real for r in cs.roots)
    assert vals[1] == pytest.approx((1 + math.sqrt(5)) / 2, abs=1e-9)
    assert vals[0] == pytest.approx((1 - math.sqrt(5)) / 2, abs=1e-9)
    assert all(r.is_real for r in cs.roots)
    assert cs.dominant().value.real == pytest.approx(1.618033988749895)


def test_roots_negative_trace_cubic_all_real():
    cs = roots(CUBIC)
    assert all(r.is_real for r in cs.roots)
    assert cs.dominant().value.real == pytest.approx(3.89167, abs=1e-4)
    others = sorted(r.value.real for r in cs.roots[1:])
    assert others[0] == pytest.approx(-3.67750, abs=1e-4)
    assert others[1] == pytest.approx(-3.21418, abs=1e-4)


def test_roots_degree_one():
    cs = roots(IntPolynomial((-5, 1)))
    assert len(cs.roots) == 1
    assert cs.roots[0].value == 5
    assert cs.roots[0].is_real


def test_roots_rejects_repeated_factor():
    # (x-1)^2 = x^2 - 2x + 1
    with pytest.raises(NotSquarefree):
        roots(IntPolynomial((1, -2, 1)))


def test_roots_ordering_and_pairing():
    cs = roots(IntPolynomial((-2, 0, 0, 1)))  # x^3 - 2
    mods = [abs(r.value) for r in cs.roots]
    assert mods == sorted(mods, reverse=True)
    nonreal = [r for r in cs.roots if not r.is_real]
    assert len(nonreal) == 2
    assert nonreal[0].value.conjugate() == pytest.approx(nonreal[1].value)


def test_symmetric_functions_sampled():
    rng = random.Random(7)
    done = 0
    while done < 40:
        d = rng.randint(2, 6)
        coeffs = [rng.randint(-50, 50) for _ in range(d)] + [1]
        poly = IntPolynomial(tuple(coeffs))
        if not is_squarefree(poly):
            continue
        cs = roots(poly)
        s = sum(r.value for r in cs.roots)
        p = 1
        for r in cs.roots:
            p *= r.value
        scale = max(1.0, abs(coeffs[d - 1]), abs(coeffs[0]))
        assert abs(s - (-coeffs[d - 1])) < d * 1e-8 * scale
        assert abs(p - (-1) ** d * coeffs[0]) < d * 1e-8 * scale
        done += 1


# -- irreducibility -----------------------------------------------------------

def test_irreducible_examples():
    assert is_irreducible(PHI_POLY)
    assert not is_irreducible(IntPolynomial((-4, 0, 1)))   # (x-2)(x+2)
    from perronpf.families import generate_cubic
    assert is_irreducible(generate_cubic(Fraction(1, 2)).f)


def test_irreducible_degree_limit():
    with pytest.raises(DegreeTooLarge):
        is_irreducible(IntPolynomial(tuple([1] + [0] * 8 + [1])), degree_limit=8)


def _brute_force_irreducible(poly, bound=30):
    """Monic integer factor search, degree 1..d-1, coefficients in [-bound,bound]."""
    d = poly.degree
    for k in range(1, d // 2 + 1):
        for tail in itertools.product(range(-bound, bound + 1), repeat=k):
            cand = list(tail) + [1]
            if int_poly_divide_exact(list(poly.coeffs), cand) is not None:
                return False
    return True


def test_irreducible_against_brute_force():
    rng = random.Random(3)
    for _ in range(25):
        d = rng.randint(2, 4)
        coeffs = [rng.randint(-8, 8) for _ in range(d)] + [1]
        poly = IntPolynomial(tuple(coeffs))
        assert is_irreducible(poly) == _brute_force_irreducible(poly)


def test_integer_factors_multiply_back():
    poly = IntPolynomial((-4, 0, 1))
    factors = integer_factors(poly)
    acc = [1]
    for f in factors:
        acc = poly_mul(acc, list(f.coeffs))
    assert tuple(acc) == poly.coeffs


# -- companion matrices -------------------------------------------------------

def test_companion_examples():
    assert companion(PHI_POLY).entries == ((0, 1), (1, 1))
    assert companion(CUBIC).entries == ((0, 0, 46), (1, 0, 15), (0, 1, -3))
    assert companion(IntPolynomial((-5, 1))).entries == ((5,),)


def _char_cofactor(entries):
    """Independent characteristic polynomial: cofactor expansion of xI - A
    over polynomial coefficient lists."""
    n = len(entries)

    def det(rows):
        if len(rows) == 1:
            return rows[0][0]
        acc = [0]
        for j in range(len(rows)):
            minor = [[r[c] for c in range(len(rows)) if c != j] for r in rows[1:]]
            term = poly_mul(rows[0][j], det(minor))
            if j % 2:
                term = [-c for c in term]
            acc = [a + b for a, b in
                   zip(acc + [0] * (len(term) - len(acc)),
                       term + [0] * (len(acc) - len(term)))]
        return acc

    rows = [[[ -entries[i][j], 1] if i == j else [-entries[i][j]]
             for j in range(n)] for i in range(n)]
    out = det(rows)
    return [int(c) for c in out]


def test_char_poly_against_cofactor_expansion():
    rng = random.Random(11)
    for _ in range(30):
        n = rng.randint(1, 5)
        entries = tuple(tuple(rng.randint(-4, 6) for _ in range(n))
                        for _ in range(n))
        assert list(char_poly(entries)) == _char_cofactor(entries)


def test_companion_char_poly_sign():
    for poly in (PHI_POLY, CUBIC, IntPolynomial((2, 0, -3, 0, 1))):
        b = companion(poly)
        assert isinstance(b, CompanionMatrix)
        cp = char_poly(b.entries)
        assert tuple(cp) == poly.coeffs


# -- number field arithmetic --------------------------------------------------

def test_golden_ratio_field():
    phi = nf_generator(PHI_POLY)
    sq = phi * phi
    assert sq.coords == (Fraction(1), Fraction(1))
    inv = nf_inverse(phi)
    assert inv.coords == (Fraction(-1), Fraction(1))
    assert (phi * inv).coords == (Fraction(1), Fraction(0))


def test_cubic_field_reduction():
    lam = nf_generator(CUBIC)
    cube = lam * lam * lam
    assert cube.coords == (Fraction(46), Fraction(15), Fraction(-3))


def test_inverse_of_zero():
    with pytest.raises(NotInvertible):
        nf_inverse(nf_constant(0, PHI_POLY))


def test_embed_examples():
    cs = roots(PHI_POLY)
    top = cs.dominant()
    phi = nf_generator(PHI_POLY)
    assert embed(phi, top).real == pytest.approx(1.6180339887, abs=1e-9)
    assert embed(phi * phi, top).real == pytest.approx(2.6180339887, abs=1e-9)
    other = cs.roots[1]
    inv = nf_inverse(phi)
    assert embed(inv, other).real == pytest.approx(-1.6180339887, abs=1e-9)


small_fracs = st.fractions(min_value=-9, max_value=9, max_denominator=6)


@settings(max_examples=60, deadline=None)
@given(st.tuples(small_fracs, small_fracs, small_fracs),
       st.tuples(small_fracs, small_fracs, small_fracs),
       st.tuples(small_fracs, small_fracs, small_fracs))
def test_field_ring_axioms(a, b, c):
    poly = CUBIC
    x = NumberFieldElement(a, poly)
    y = NumberFieldElement(b, poly)
    z = NumberFieldElement(c, poly)
    assert (x + y).coords == (y + x).coords
    assert (x * y).coords == (y * x).coords
    assert ((x * y) * z).coords == (x * (y * z)).coords
    assert (x * (y + z)).coords == (x * y + x * z).coords


@settings(max_examples=40, deadline=None)
@given(st.tuples(small_fracs, small_fracs, small_fracs))
def test_field_inverse_roundtrip(a):
    x = NumberFieldElement(a, CUBIC)
    if x.is_zero():
        return
    one = x * nf_inverse(x)
    assert one.coords == (Fraction(1), Fraction(0), Fraction(0))


@settings(max_examples=40, deadline=None)
@given(st.tuples(small_fracs, small_fracs, small_fracs),
       st.tuples(small_fracs, small_fracs, small_fracs))
def test_embed_is_homomorphism(a, b):
    cs = roots(CUBIC)
    top = cs.dominant()
    x = NumberFieldElement(a, CUBIC)
    y = NumberFieldElement(b, CUBIC)
    lhs = embed(x * y, top)
    rhs = embed(x, top) * embed(y, top)
    slack = 1e-7 * (1 + abs(rhs)) + embed_radius(x * y, top)
    assert abs(lhs - rhs) <= slack


# -- helpers ------------------------------------------------------------------

def test_poly_gcd_common_factor():
    # (x-1)(x-2) and (x-1)(x-3) share x-1
    a = poly_mul([-1, 1], [-2, 1])
    b = poly_mul([-1, 1], [-3, 1])
    g = poly_gcd(a, b)
    assert [Fraction(c) for c in g] == [Fraction(-1), Fraction(1)]


def test_exact_division():
    prod = poly_mul([-1, 1], [-2, 1])
    assert int_poly_divide_exact(prod, [-1, 1]) == [-2, 1]
    assert int_poly_divide_exact([1, 1, 1], [-1, 1]) is None
