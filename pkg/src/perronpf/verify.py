"""End-to-end verification suite: each criterion is a pure function returning
(name, passed, detail, elapsed_seconds) so both the CLI and the test suite can
drive it and print one line per criterion."""

from __future__ import annotations

import cmath
import math
import random
import time
from fractions import Fraction

from .algebra import IntPolynomial, is_irreducible, roots
from .classify import analyze, is_perron, theorem1_bound
from .errors import HypothesisFailed, ToolkitError
from .families import (
    biperron_from_gamma,
    check_observation,
    generate_cubic,
    to_biperron,
    verify_claims,
)
from .geometry import claim_check, eta_of, hull_orbit_polygon, is_invariant
from .realize import (
    IntMatrix,
    certify,
    lind_points,
    project_polygon,
    quadratic_realize,
    search_realization,
    trace_obstruction,
)

GEOMETRY_SEED = 12345


def _result(name, passed, detail, start):
    return name, bool(passed), detail, time.time() - start


def criterion_negative_trace():
    """analyze on x^3 + 3x^2 - 15x - 46: Perron, totally real, no angle
    bound, and the power-sum obstruction gives d_PF >= 4."""
    start = time.time()
    poly = IntPolynomial((-46, -15, 3, 1))
    an = analyze(poly)
    ob = trace_obstruction(poly, 1)
    ok = (an.is_perron and an.is_totally_real and an.lower_bound is None
          and ob.power_sums == (-3,) and ob.obstructed
          and ob.implied_min_size == 4)
    detail = (f"perron={an.is_perron} totally_real={an.is_totally_real} "
              f"p1={ob.power_sums[0]} min_size={ob.implied_min_size}")
    return _result("negative_trace_obstruction", ok, detail, start)


def _quadratic_sweep():
    for u in range(1, 21):
        for v in range(-20, 21):
            if u * u - 4 * v <= 0:
                continue
            poly = IntPolynomial((v, -u, 1))
            if not is_irreducible(poly):
                continue
            try:
                if not is_perron(roots(poly)):
                    continue
            except ToolkitError:
                continue
            yield poly


def criterion_quadratic_complete():
    """Every irreducible Perron quadratic in the sweep gets a certified
    aperiodic realization with exact characteristic polynomial match."""
    start = time.time()
    total = bad = 0
    for poly in _quadratic_sweep():
        total += 1
        try:
            real = quadratic_realize(poly)
        except ToolkitError:
            bad += 1
            continue
        if (real.divisibility_witness.coeffs != (1,)
                or real.aperiodicity_exponent < 1):
            bad += 1
    ok = total > 0 and bad == 0
    return _result("quadratic_completeness", ok,
                   f"{total - bad}/{total} quadratics realized", start)


def criterion_cubic_family():
    """The cubic family passes its claim suite and hits the angle bound for
    eps in {1/2, 1/4, 1/8}; integer bounds grow as eps shrinks."""
    start = time.time()
    targets = {
        Fraction(1, 2): 2 * math.pi / (3 * math.atan(3.0)),
        Fraction(1, 4): 2 * math.pi / (3 * math.atan(1.5)),
        Fraction(1, 8): 2 * math.pi / (3 * math.atan(0.75)),
    }
    details = []
    ok = True
    for eps, floor_bound in targets.items():
        fam = generate_cubic(eps)
        verify_claims(fam)  # raises ClaimViolated on failure
        found = theorem1_bound(roots(fam.f))
        if found is None or found[1] < floor_bound:
            ok = False
            details.append(f"eps={eps}: bound missing or below {floor_bound:.3f}")
        else:
            details.append(f"eps={eps}: bound={found[1]:.3f}>={floor_bound:.3f}")
    ints = []
    for eps in (Fraction(1, 2), Fraction(1, 16), Fraction(1, 64)):
        fam = generate_cubic(eps)
        found = theorem1_bound(roots(fam.f))
        ints.append(found[2] if found else -1)
    if not (ints[0] < ints[1] < ints[2]):
        ok = False
    details.append(f"integer bounds {ints[0]}<{ints[1]}<{ints[2]}")
    return _result("cubic_family", ok, "; ".join(details), start)


def criterion_biperron_family():
    """The degree-6 lift is a biPerron unit with the 16*eps angle bound, and
    the counterexample polynomial fails the conjugate condition."""
    start = time.time()
    details = []
    ok = True
    for eps in (Fraction(1, 2), Fraction(1, 4)):
        fam = generate_cubic(eps)
        sextic, an = to_biperron(fam)
        floor_bound = 2 * math.pi / (3 * math.atan(float(16 * eps)))
        if not (sextic.degree <= 6 and abs(sextic.constant_term()) == 1
                and an.is_biperron is True and an.lower_bound is not None
                and an.lower_bound >= floor_bound):
            ok = False
            details.append(f"eps={eps}: lift failed")
        else:
            details.append(f"eps={eps}: deg={sextic.degree} "
                           f"bound={an.lower_bound:.3f}>={floor_bound:.3f}")
    cex = IntPolynomial((-126, 65, -13, 1))
    if check_observation(cex):
        ok = False
        details.append("counterexample passed the conjugate condition")
    else:
        try:
            biperron_from_gamma(cex)
            ok = False
            details.append("counterexample lift did not raise")
        except HypothesisFailed:
            _, an = biperron_from_gamma(cex, require_hypothesis=False)
            if an.is_biperron is True:
                ok = False
                details.append("counterexample alpha came out biPerron")
            else:
                details.append("counterexample rejected; alpha not biPerron")
    return _result("biperron_family", ok, "; ".join(details), start)


def criterion_lind_round_trip():
    """lind_points reproduces the defining relations with exact integers for
    every realization from the quadratic sweep, a bounded search pass over
    the same sweep, and the Fibonacci matrix."""
    start = time.time()
    total = bad = 0

    def round_trip(real):
        nonlocal total, bad
        total += 1
        try:
            pts = lind_points(real)  # raises on any exactness failure
        except ToolkitError:
            bad += 1
            return
        if pts.coefficients != real.matrix.entries:
            bad += 1

    fib = IntPolynomial((-1, -1, 1))
    round_trip(certify(IntMatrix(((0, 1), (1, 1))), fib))
    for poly in _quadratic_sweep():
        round_trip(quadratic_realize(poly))
        found = search_realization(poly, 2, 6)
        if found is not None:
            round_trip(found)
    ok = total > 0 and bad == 0
    return _result("lind_round_trip", ok,
                   f"{total - bad}/{total} round trips exact", start)


def geometry_multiplier_sample(count=1000, seed=GEOMETRY_SEED):
    """Seeded multipliers with Re t > 0, |t| < 1 and eta <= 1."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        r = rng.uniform(0.2, 0.999)
        theta = rng.uniform(0.05, 1.5)
        t = r * cmath.exp(1j * theta)
        if t.real <= 0 or eta_of(t) > 1.0:
            continue
        out.append(t)
    return out


def criterion_geometry_oracle(count=1000):
    """Orbit-hull polygons are invariant, meet the side-count bound, and pass
    the triangle-inequality claims on every sampled multiplier."""
    start = time.time()
    bad = 0
    worst = None
    for t in geometry_multiplier_sample(count):
        try:
            polygon = hull_orbit_polygon(1 + 0j, t)
            if not is_invariant(polygon, t):
                raise AssertionError("not invariant")
            need = 2 * math.pi / (3 * eta_of(t))
            if polygon.sides < need - 1e-9:
                raise AssertionError(f"M={polygon.sides} < {need}")
            claim_check(polygon, t)
        except Exception as exc:  # noqa: BLE001 - falsification suite
            bad += 1
            worst = worst or f"t={t}: {exc}"
    ok = bad == 0
    detail = f"{count - bad}/{count} trials clean"
    if worst:
        detail += f"; first failure {worst}"
    return _result("geometry_oracle", ok, detail, start)


def criterion_cross_module():
    """Realizations of non-totally-real Perron cubics project to polygons
    with 2*pi/(3*eta) <= M <= n."""
    start = time.time()
    cubics = [
        IntPolynomial((-1, -1, -1, 1)),   # one real, one complex pair
        IntPolynomial((-1, 0, -1, 1)),
        IntPolynomial((-1, 0, 0, 1)),
        IntPolynomial((-2, 0, -1, 1)),
        IntPolynomial((-2, -2, -2, 1)),
    ]
    checked = bad = 0
    details = []
    for poly in cubics:
        conj = roots(poly)
        try:
            if not is_perron(conj):
                continue
        except ToolkitError:
            continue
        if all(r.is_real for r in conj.roots):
            continue
        found = search_realization(poly, 3, 3)
        if found is None:
            continue
        checked += 1
        report = project_polygon(lind_points(found))
        need = 2 * math.pi / (3 * report.eta)
        if not (need <= report.sides <= found.matrix.n + 1e-9):
            bad += 1
            details.append(f"{poly}: M={report.sides} eta={report.eta:.3f}")
        else:
            details.append(f"{poly}: {need:.2f}<=M={report.sides}<=3")
    ok = checked > 0 and bad == 0
    return _result("cross_module_consistency", ok,
                   f"{checked - bad}/{checked} projections consistent; "
                   + "; ".join(details), start)


ALL_CRITERIA = (
    criterion_negative_trace,
    criterion_quadratic_complete,
    criterion_cubic_family,
    criterion_biperron_family,
    criterion_lind_round_trip,
    criterion_geometry_oracle,
    criterion_cross_module,
)


def run_all():
    results = []
    for fn in ALL_CRITERIA:
        try:
            results.append(fn())
        except Exception as exc:  # noqa: BLE001 - suite must report, not die
            results.append((fn.__name__, False, f"raised {exc!r}", 0.0))
    return results
