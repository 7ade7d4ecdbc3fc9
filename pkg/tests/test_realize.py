import itertools
import math

import pytest

from perronpf.algebra import IntPolynomial, char_poly, roots
from perronpf.errors import (
    BudgetExceeded,
    DegenerateProjection,
    NoComplexConjugate,
    NotPerron,
    NotQuadratic,
    Reducible,
)
from perronpf.realize import (
    IntMatrix,
    LatticePointSet,
    Realization,
    certify,
    is_aperiodic,
    lind_points,
    power_sums,
    project_polygon,
    quadratic_realize,
    search_realization,
    trace_obstruction,
    _fast_char,
)

FIB = IntPolynomial((-1, -1, 1))
TRIB = IntPolynomial((-1, -1, -1, 1))
CUBIC = IntPolynomial((-46, -15, 3, 1))


# -- aperiodicity ---------------------------------------------------------------

def test_aperiodic_anchors():
    assert is_aperiodic(IntMatrix(((0, 1), (1, 1)))) == (True, 2)
    assert is_aperiodic(IntMatrix(((1,),))) == (True, 1)
    assert is_aperiodic(IntMatrix(((0,),))) == (False, "no directed cycles")
    assert is_aperiodic(IntMatrix(((0, 1), (1, 0)))) == (False, "period 2")
    assert is_aperiodic(IntMatrix(((0, 1), (0, 1)))) == \
        (False, "not strongly connected")


def test_aperiodic_three_cycle():
    cycle = IntMatrix(((0, 1, 0), (0, 0, 1), (1, 0, 0)))
    assert is_aperiodic(cycle) == (False, "period 3")
    with_chord = IntMatrix(((0, 1, 0), (0, 0, 1), (1, 1, 0)))
    ok, exponent = is_aperiodic(with_chord)
    assert ok and 1 <= exponent <= 5  # Wielandt bound (n-1)^2 + 1


def _brute_aperiodic(entries):
    """Independent oracle: some power up to the Wielandt bound is positive."""
    n = len(entries)
    cur = [[bool(v) for v in row] for row in entries]
    base = [row[:] for row in cur]
    for _ in range((n - 1) ** 2 + 1):
        if all(all(row) for row in cur):
            return True
        cur = [[any(cur[i][k] and base[k][j] for k in range(n))
                for j in range(n)] for i in range(n)]
    return False


def test_aperiodic_exhaustive_small():
    # every 3x3 zero-one matrix, against the direct powering oracle
    for bits in itertools.product((0, 1), repeat=9):
        entries = (bits[0:3], bits[3:6], bits[6:9])
        verdict, _ = is_aperiodic(IntMatrix(entries))
        assert verdict == _brute_aperiodic(entries), entries


def test_matrix_validation():
    with pytest.raises(ValueError):
        IntMatrix(((0, 1), (1,)))
    with pytest.raises(ValueError):
        IntMatrix(((0, -1), (1, 0)))


# -- certification ---------------------------------------------------------------

def test_certify_fibonacci():
    real = certify(IntMatrix(((0, 1), (1, 1))), FIB)
    assert real is not None
    assert real.divisibility_witness.coeffs == (1,)
    assert real.aperiodicity_exponent == 2


def test_certify_wrong_poly():
    assert certify(IntMatrix(((0, 1), (1, 1))), IntPolynomial((1, -3, 1))) is None


def test_certify_periodic_matrix():
    # x^2 - 1 is hit by the swap matrix, but the matrix is periodic
    assert certify(IntMatrix(((0, 1), (1, 0))), IntPolynomial((-1, 0, 1))) is None


def test_certify_proper_divisor():
    # char of the 3x3 matrix is divisible by FIB with a strictly smaller root
    m = IntMatrix(((0, 1, 0), (1, 1, 1), (0, 1, 0)))
    char = char_poly(m.entries)
    quo = [c for c in char]
    real = certify(m, FIB)
    if real is not None:
        assert real.divisibility_witness.degree == 1


def test_fast_char_matches_exact():
    import random

    rng = random.Random(5)
    for _ in range(100):
        n = rng.randint(1, 4)
        entries = tuple(tuple(rng.randint(0, 5) for _ in range(n))
                        for _ in range(n))
        assert _fast_char(entries) == char_poly(entries)


# -- quadratic closed form ---------------------------------------------------------

def test_quadratic_anchors():
    real = quadratic_realize(IntPolynomial((1, -3, 1)))
    assert real.matrix.entries == ((2, 1), (1, 1))
    assert real.aperiodicity_exponent == 1
    real = quadratic_realize(FIB)
    assert real.matrix.entries == ((1, 1), (1, 0))
    assert real.divisibility_witness.coeffs == (1,)


def test_quadratic_rejections():
    with pytest.raises(NotQuadratic):
        quadratic_realize(TRIB)
    with pytest.raises(Reducible):
        quadratic_realize(IntPolynomial((-4, 0, 1)))
    with pytest.raises(NotPerron):
        quadratic_realize(IntPolynomial((1, 0, 1)))


def test_quadratic_sweep_parity():
    # both trace parities of the closed form, across a small sweep
    for u in range(1, 8):
        for v in range(-6, 7):
            poly = IntPolynomial((v, -u, 1))
            if u * u - 4 * v <= 0:
                continue
            try:
                real = quadratic_realize(poly)
            except Exception:
                continue
            assert char_poly(real.matrix.entries) == list(poly.coeffs)
            assert real.matrix.entries[1][0] == 1


# -- power sums and the obstruction -------------------------------------------------

def test_power_sums_exact():
    assert power_sums(CUBIC, 2) == (-3, 39)
    assert power_sums(IntPolynomial((-2, 1, -1, 1)), 2) == (1, -1)
    assert power_sums(FIB, 6) == (1, 3, 4, 7, 11, 18)  # Lucas numbers


def test_power_sums_match_roots():
    cs = roots(TRIB)
    for k in range(1, 6):
        exact = power_sums(TRIB, k)[k - 1]
        numeric = sum(r.value ** k for r in cs.roots)
        assert numeric.real == pytest.approx(exact, abs=1e-6)
        assert numeric.imag == pytest.approx(0.0, abs=1e-6)


def test_obstruction_anchors():
    ob = trace_obstruction(CUBIC, 1)
    assert ob.power_sums == (-3,)
    assert ob.violations == (1,)
    assert ob.obstructed and ob.implied_min_size == 4

    ob = trace_obstruction(IntPolynomial((-2, 1, -1, 1)), 2)
    assert ob.power_sums == (1, -1)
    assert ob.violations == (2,)
    assert ob.obstructed and ob.implied_min_size == 4

    ob = trace_obstruction(FIB, 10)
    assert not ob.obstructed and ob.implied_min_size is None


def test_obstruction_needs_perron():
    with pytest.raises(NotPerron):
        trace_obstruction(IntPolynomial((-2, 0, 1)), 3)


# -- bounded search ------------------------------------------------------------------

def test_search_fibonacci():
    found = search_realization(FIB, 2, 1)
    assert found is not None
    assert found.matrix.entries == ((0, 1), (1, 1))


def test_search_tribonacci():
    found = search_realization(TRIB, 3, 1)
    assert found is not None
    assert found.divisibility_witness.coeffs == (1,)
    assert char_poly(found.matrix.entries) == list(TRIB.coeffs)


def test_search_obstructed_cubic_prunes_instantly():
    # negative first power sum rules out every size-3 candidate up front
    assert search_realization(CUBIC, 3, 6) is None


def test_search_below_degree():
    assert search_realization(TRIB, 2, 5) is None


def test_search_budget():
    with pytest.raises(BudgetExceeded):
        search_realization(IntPolynomial((1, -3, 1)), 3, 2, budget=5)


def test_search_requires_perron():
    with pytest.raises(NotPerron):
        search_realization(IntPolynomial((-2, 0, 1)), 2, 3)


# -- lattice points ---------------------------------------------------------------------

def test_lind_points_fibonacci():
    real = certify(IntMatrix(((0, 1), (1, 1))), FIB)
    pts = lind_points(real)
    assert pts.points == ((-1, 1), (1, 0))
    assert pts.field_poly == FIB
    assert pts.coefficients == ((0, 1), (1, 1))


def test_lind_points_satisfy_relations():
    from perronpf.algebra import companion

    real = search_realization(TRIB, 3, 1)
    pts = lind_points(real)
    b = companion(TRIB).entries
    a = real.matrix.entries
    d = TRIB.degree
    for i in range(3):
        lhs = tuple(sum(b[r][c] * pts.points[i][c] for c in range(d))
                    for r in range(d))
        rhs = tuple(sum(a[i][j] * pts.points[j][r] for j in range(3))
                    for r in range(d))
        assert lhs == rhs


def test_lind_points_reducible_rejected():
    fake = Realization(
        matrix=IntMatrix(((0, 4), (1, 0))),
        lambda_poly=IntPolynomial((-4, 0, 1)),
        aperiodicity_exponent=2,
        divisibility_witness=IntPolynomial((1,)))
    with pytest.raises(Reducible):
        lind_points(fake)


# -- projected polygons --------------------------------------------------------------------

def test_projection_tribonacci():
    real = search_realization(TRIB, 3, 3)
    report = project_polygon(lind_points(real))
    assert report.sides == 3
    assert report.eta == pytest.approx(1.308579, abs=1e-5)
    assert report.consistent  # eta > 1: only M <= n is required


def test_projection_respects_angle_bound():
    poly = IntPolynomial((-2, 0, -1, 1))
    real = search_realization(poly, 3, 3)
    assert real is not None
    report = project_polygon(lind_points(real))
    if report.eta <= 1.0:
        assert report.sides >= 2 * math.pi / (3 * report.eta) - 1e-9
    assert report.sides <= 3


def test_projection_needs_complex_pair():
    real = quadratic_realize(FIB)
    with pytest.raises(NoComplexConjugate):
        project_polygon(lind_points(real))


def test_projection_rejects_zero_point():
    fake = LatticePointSet(points=((0, 0, 0), (1, 0, 0), (0, 1, 0)),
                           field_poly=TRIB,
                           coefficients=((0,) * 3,) * 3)
    with pytest.raises(DegenerateProjection):
        project_polygon(fake)
