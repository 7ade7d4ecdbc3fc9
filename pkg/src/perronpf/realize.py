"""Upper-bound machinery for the Perron-Frobenius degree: aperiodicity,
the quadratic closed form, bounded exhaustive search for realizing matrices,
power-sum obstructions, exact lattice eigen-points, and the projected-polygon
consistency check."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .algebra import (
    IntPolynomial,
    NumberFieldElement,
    char_poly,
    companion,
    embed,
    embed_radius,
    int_poly_divide_exact,
    is_irreducible,
    is_squarefree,
    nf_constant,
    nf_generator,
    nf_inverse,
    roots,
)
from .classify import eta, is_perron
from .errors import (
    BudgetExceeded,
    DegenerateProjection,
    NoComplexConjugate,
    NotPerron,
    NotQuadratic,
    Reducible,
    SingularSystem,
)
from .geometry import convex_hull, Polygon, point_in_hull


@dataclass(frozen=True)
class IntMatrix:
    entries: tuple  # tuple of row tuples, non-negative integers

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in row) for row in self.entries)
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise ValueError("matrix must be square")
            if any(v < 0 for v in row):
                raise ValueError("entries must be non-negative")
        object.__setattr__(self, "entries", rows)

    @property
    def n(self):
        return len(self.entries)


@dataclass(frozen=True)
class Realization:
    matrix: IntMatrix
    lambda_poly: IntPolynomial
    aperiodicity_exponent: int
    divisibility_witness: IntPolynomial  # char(matrix) / lambda_poly


@dataclass(frozen=True)
class LatticePointSet:
    points: tuple          # n integer vectors of length d
    field_poly: IntPolynomial
    coefficients: tuple    # the realizing matrix a_ij


# ---------------------------------------------------------------------------
# aperiodicity
# ---------------------------------------------------------------------------

def _strongly_connected(adj, n):
    def reach(start, graph):
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for v in graph[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return seen

    rev = [[] for _ in range(n)]
    for u in range(n):
        for v in adj[u]:
            rev[v].append(u)
    return len(reach(0, adj)) == n and len(reach(0, rev)) == n


def _cycle_gcd(adj, n):
    """gcd of directed cycle lengths of a strongly connected graph."""
    level = [None] * n
    level[0] = 0
    queue = [0]
    g = 0
    while queue:
        u = queue.pop()
        for v in adj[u]:
            if level[v] is None:
                level[v] = level[u] + 1
                queue.append(v)
            else:
                g = math.gcd(g, level[u] + 1 - level[v])
    return abs(g)


def _bool_square_reachable(m, exponent_cap):
    """Least k <= exponent_cap with (boolean) m^k all ones, or None."""
    n = len(m)
    cur = m
    k = 1
    while k <= exponent_cap:
        if all(all(row) for row in cur):
            return k
        # one more multiplication by m
        nxt = [[False] * n for _ in range(n)]
        for i in range(n):
            for l in range(n):
                if cur[i][l]:
                    row = m[l]
                    out = nxt[i]
                    for j in range(n):
                        if row[j]:
                            out[j] = True
        cur = nxt
        k += 1
    return None


def is_aperiodic(m: IntMatrix):
    """(True, least all-positive exponent) or (False, reason).

    Decided on the digraph (strong connectivity plus cycle-length gcd 1) and
    cross-checked by boolean powering up to the Wielandt bound (n-1)^2 + 1.
    """
    n = m.n
    adj = [[j for j in range(n) if m.entries[i][j] > 0] for i in range(n)]
    if not _strongly_connected(adj, n):
        return False, "not strongly connected"
    if n == 1 and not adj[0]:
        return False, "no directed cycles"
    g = _cycle_gcd(adj, n)
    cap = (n - 1) ** 2 + 1
    boolean = [[v > 0 for v in row] for row in m.entries]
    exponent = _bool_square_reachable(boolean, cap)
    if g != 1:
        if exponent is not None:
            raise AssertionError("graph and powering verdicts disagree")
        return False, f"period {g}"
    if exponent is None:
        raise AssertionError("graph and powering verdicts disagree")
    return True, exponent


# ---------------------------------------------------------------------------
# certification and the quadratic closed form
# ---------------------------------------------------------------------------

def _det_int(rows):
    """Integer determinant by cofactor expansion (small matrices only)."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    acc = 0
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [[rows[i][c] for c in range(n) if c != j] for i in range(1, n)]
        acc += (-1) ** j * rows[0][j] * _det_int(minor)
    return acc


def _fast_char(entries):
    """Ascending char poly coefficients via sums of principal minors.

    Coefficient of x^(n-k) is (-1)^k * (sum of principal k x k minors);
    cofactor determinants keep everything in integers. Used for n <= 4 where
    it beats the general fraction-based routine inside the search loop.
    """
    from itertools import combinations

    n = len(entries)
    out = [0] * (n + 1)
    out[n] = 1
    for k in range(1, n + 1):
        s = 0
        for idx in combinations(range(n), k):
            sub = [[entries[i][j] for j in idx] for i in idx]
            s += _det_int(sub)
        out[n - k] = (-1) ** k * s
    return out


def certify(matrix: IntMatrix, poly: IntPolynomial) -> Optional[Realization]:
    """Build a Realization if matrix realizes poly; None otherwise.

    Requires: char(matrix) divisible by poly over the integers, every root of
    the quotient strictly smaller in modulus than the dominant root of poly,
    and the matrix aperiodic.
    """
    if matrix.n <= 4:
        char = _fast_char(matrix.entries)
    else:
        char = char_poly(matrix.entries)
    quo = int_poly_divide_exact(char, list(poly.coeffs))
    if quo is None:
        return None
    witness = IntPolynomial(tuple(quo))
    top = roots(poly).dominant()
    if top is None:
        return None
    lam = abs(top.value)
    if witness.degree > 0 and not _moduli_below(witness, lam - top.radius):
        return None
    ok, exponent = is_aperiodic(matrix)
    if not ok:
        return None
    return Realization(matrix=matrix, lambda_poly=poly,
                       aperiodicity_exponent=exponent,
                       divisibility_witness=witness)


def _moduli_below(witness, cap):
    """Every root of witness has modulus < cap (certified when possible)."""
    if is_squarefree(witness):
        return all(abs(r.value) + r.radius < cap for r in roots(witness).roots)
    import numpy

    vals = numpy.roots(list(reversed(witness.coeffs)))
    return all(abs(v) < cap - 1e-8 for v in vals)


def quadratic_realize(poly: IntPolynomial) -> Realization:
    """Size-2 realization of a quadratic Perron number, closed form."""
    if poly.degree != 2:
        raise NotQuadratic(str(poly))
    if not is_irreducible(poly):
        raise Reducible(str(poly))
    v, mu = poly.coeffs[0], poly.coeffs[1]
    u = -mu
    delta = u * u - 4 * v
    if delta <= 0 or not is_perron(roots(poly)):
        raise NotPerron(str(poly))
    if u % 2 == 0:
        entries = ((u // 2, delta // 4), (1, u // 2))
    else:
        entries = ((u + 1) // 2, (delta - 1) // 4), (1, (u - 1) // 2)
    real = certify(IntMatrix(entries), poly)
    if real is None:
        raise AssertionError("closed-form certificate failed")
    return real


# ---------------------------------------------------------------------------
# power-sum obstruction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ObstructionReport:
    power_sums: tuple    # p_1 .. p_max_power, exact integers
    violations: tuple    # exponents k with p_k < 0
    obstructed: bool
    implied_min_size: Optional[int]  # degree + 1 when obstructed


def power_sums(poly: IntPolynomial, max_power: int):
    """Exact power sums of all roots, by Newton's identities."""
    d = poly.degree
    # elementary symmetric functions from the ascending coefficients
    e = [Fraction(0)] * (d + 1)
    e[0] = Fraction(1)
    for i in range(1, d + 1):
        e[i] = Fraction((-1) ** i * poly.coeffs[d - i])
    p = []
    for k in range(1, max_power + 1):
        if k <= d:
            acc = Fraction((-1) ** (k - 1) * k) * e[k]
        else:
            acc = Fraction(0)
        for i in range(1, min(k, d) + 1):
            if k - i >= 1:
                acc += (-1) ** (i - 1) * e[i] * p[k - i - 1]
        p.append(acc)
    out = []
    for v in p:
        if v.denominator != 1:
            raise AssertionError("power sums must be integers")
        out.append(int(v))
    return tuple(out)


def trace_obstruction(poly: IntPolynomial, max_power: int) -> ObstructionReport:
    """Negative power sums rule out a realization of size = degree.

    A non-negative matrix has non-negative traces of all powers; if the char
    poly were exactly poly, trace(A^k) would equal p_k.
    """
    if not is_perron(roots(poly)):
        raise NotPerron(str(poly))
    sums = power_sums(poly, max_power)
    bad = tuple(k for k, v in enumerate(sums, start=1) if v < 0)
    return ObstructionReport(
        power_sums=sums, violations=bad, obstructed=bool(bad),
        implied_min_size=poly.degree + 1 if bad else None)


# ---------------------------------------------------------------------------
# bounded exhaustive search
# ---------------------------------------------------------------------------

def search_realization(poly: IntPolynomial, n: int, entry_bound: int,
                       budget: int = 10_000_000) -> Optional[Realization]:
    """First (lexicographically smallest) realization of size n with entries
    in [0, entry_bound], or None when the bounded space holds none.

    Pruning: diagonal entries never exceed the spectral radius; when n equals
    the degree the trace must match the exact first power sum. A None result
    is relative to entry_bound, not a nonexistence proof.
    """
    conj = roots(poly)
    if not is_perron(conj):
        raise NotPerron(str(poly))
    d = poly.degree
    if n < d:
        return None
    top = conj.dominant()
    lam_floor = int(top.value.real + top.radius)
    diag_cap = min(entry_bound, lam_floor)
    p1 = p2 = None
    if n == d:
        # char(A) = poly forces trace(A^k) = p_k; negative power sums kill
        # the whole size-d space at once
        sums = power_sums(poly, 2)
        if any(v < 0 for v in sums):
            return None
        p1, p2 = sums
        if p1 > n * diag_cap:
            return None

    cells = [(i, j) for i in range(n) for j in range(n)]
    entries = [[0] * n for _ in range(n)]
    nodes = 0
    found = None

    def place(idx, trace):
        nonlocal nodes, found
        if found is not None:
            return
        if idx == len(cells):
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"{budget} nodes")
            if p1 is not None:
                if trace != p1:
                    return
                sq = sum(entries[i][j] * entries[j][i]
                         for i in range(n) for j in range(n))
                if sq != p2:
                    return
            real = certify(IntMatrix(tuple(tuple(r) for r in entries)), poly)
            if real is not None:
                found = real
            return
        i, j = cells[idx]
        if i == j:
            cap = diag_cap
            if p1 is not None:
                cap = min(cap, p1 - trace)
            remaining_diag = n - i - 1
            for v in range(max(0, cap) + 1 if cap >= 0 else 0):
                if p1 is not None and trace + v + remaining_diag * diag_cap < p1:
                    continue
                entries[i][j] = v
                place(idx + 1, trace + v)
                if found is not None:
                    return
            entries[i][j] = 0
        else:
            for v in range(entry_bound + 1):
                entries[i][j] = v
                place(idx + 1, trace)
                if found is not None:
                    return
            entries[i][j] = 0

    place(0, 0)
    return found


# ---------------------------------------------------------------------------
# exact lattice points from a realization
# ---------------------------------------------------------------------------

def _nf_kernel_vector(a_entries, poly):
    """Exact kernel vector of (A - lambda*I) over the field Q(lambda)."""
    n = len(a_entries)
    lam = nf_generator(poly)
    rows = []
    for i in range(n):
        row = [nf_constant(a_entries[i][j], poly) for j in range(n)]
        row[i] = row[i] - lam
        rows.append(row)

    # forward elimination with exact pivots
    pivots = []
    r = 0
    for c in range(n):
        pr = next((k for k in range(r, n) if not rows[k][c].is_zero()), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = nf_inverse(rows[r][c])
        rows[r] = [inv * x for x in rows[r]]
        for k in range(n):
            if k != r and not rows[k][c].is_zero():
                factor = rows[k][c]
                rows[k] = [x - factor * y for x, y in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    if len(free) != 1:
        raise SingularSystem(f"kernel dimension {len(free)}")
    fc = free[0]
    v = [nf_constant(0, poly)] * n
    v[fc] = nf_constant(1, poly)
    for row_idx, c in enumerate(pivots):
        v[c] = -rows[row_idx][fc]
    return v


def lind_points(real: Realization) -> LatticePointSet:
    """Integer vectors z_i with B z_i = sum_j a_ij z_j and positive dominant
    coordinate, built from an exact eigenvector of the matrix over Q(lambda).
    """
    poly = real.lambda_poly
    if not is_irreducible(poly):
        raise Reducible(str(poly))
    a = real.matrix.entries
    n = real.matrix.n
    d = poly.degree
    v = _nf_kernel_vector(a, poly)

    denom = 1
    for x in v:
        for c in x.coords:
            denom = denom * c.denominator // math.gcd(denom, c.denominator)
    points = []
    for x in v:
        coords = [c * denom for c in x.coords]
        points.append(tuple(int(c) for c in coords))

    # sign normalization: the dominant-eigenline coordinate must be positive
    top = roots(poly).dominant()
    signs = []
    for pt in points:
        elem = NumberFieldElement(tuple(Fraction(c) for c in pt), poly)
        val = embed(elem, top).real
        rad = embed_radius(elem, top)
        if abs(val) <= rad:
            raise SingularSystem("cannot certify the sign of v* . z_i")
        signs.append(val > 0)
    if not any(signs):
        points = [tuple(-c for c in pt) for pt in points]
        signs = [True] * n
    if not all(signs):
        raise SingularSystem("mixed signs in the dominant eigenvector")

    # exact verification of the linear relations under the companion action
    b = companion(poly).entries
    for i in range(n):
        lhs = tuple(sum(b[r][c] * points[i][c] for c in range(d))
                    for r in range(d))
        rhs = tuple(sum(a[i][j] * points[j][r] for j in range(n))
                    for r in range(d))
        if lhs != rhs:
            raise SingularSystem(f"relation B z_{i} = sum a_ij z_j failed")
        if all(c == 0 for c in points[i]):
            raise SingularSystem(f"z_{i} is the zero vector")

    # nonzero projection onto every conjugate eigenspace
    conj = roots(poly)
    for i, pt in enumerate(points):
        elem = NumberFieldElement(tuple(Fraction(c) for c in pt), poly)
        for rt in conj.roots:
            val = embed(elem, rt)
            rad = embed_radius(elem, rt)
            if abs(val) <= rad:
                raise SingularSystem(f"projection of z_{i} not certified nonzero")

    return LatticePointSet(points=tuple(points), field_poly=poly,
                           coefficients=a)


# ---------------------------------------------------------------------------
# projected polygon consistency
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProjectionReport:
    polygon: Polygon
    sides: int
    eta: float
    consistent: bool


def project_polygon(pts: LatticePointSet, conjugate_pair_index: int = 0,
                    tol: float = 1e-9) -> ProjectionReport:
    """Slice of the invariant cone in the plane of one complex conjugate.

    Each z_i maps to zeta_i = (sum z_ij p'^j) / (sum z_ij p^j), the plane
    coordinate at dominant-eigenline height 1. Returns the hull, its side
    count M, eta, and the verdict (M >= 2*pi/(3*eta) when eta <= 1) and M <= n.
    """
    poly = pts.field_poly
    conj = roots(poly)
    uppers = conj.nonreal_upper()
    if conjugate_pair_index < 0 or conjugate_pair_index >= len(uppers):
        raise NoComplexConjugate(
            f"index {conjugate_pair_index} of {len(uppers)} pairs")
    p = conj.dominant()
    p_prime = uppers[conjugate_pair_index][1]

    zetas = []
    for i, pt in enumerate(pts.points):
        if all(c == 0 for c in pt):
            raise DegenerateProjection(f"z_{i} is the zero vector")
        elem = NumberFieldElement(tuple(Fraction(c) for c in pt), poly)
        num = embed(elem, p_prime)
        den = embed(elem, p).real
        if abs(num) <= embed_radius(elem, p_prime) or den <= 0:
            raise DegenerateProjection(f"z_{i} projects to the origin")
        zetas.append(num / den)

    hull = convex_hull([(z.real, z.imag) for z in zetas], tol)
    sides = len(hull)
    if sides >= 3:
        polygon = Polygon(vertices=tuple(hull),
                          contains_origin=point_in_hull((0.0, 0.0), hull, tol))
    else:
        polygon = Polygon(vertices=tuple(hull), contains_origin=False)
    e = eta(p, p_prime)
    n = len(pts.points)
    needed = 2.0 * math.pi / (3.0 * e) if 0 < e <= 1.0 else None
    consistent = sides <= n and (needed is None or sides >= needed - tol)
    return ProjectionReport(polygon=polygon, sides=sides, eta=e,
                            consistent=consistent)
