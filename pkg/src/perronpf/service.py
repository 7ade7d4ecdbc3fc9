"""HTTP front end: pydantic request models wrapping the library operations.
The CLI calls the same handle_* functions in-process, so the service and the
command line cannot drift apart."""

from __future__ import annotations

import time
from fractions import Fraction

from pydantic import BaseModel, Field

from . import reporting
from .algebra import parse_poly
from .classify import analyze
from .errors import (
    BudgetExceeded,
    Indeterminate,
    MalformedInput,
    NotMonic,
    ToolkitError,
)
from .families import generate_cubic, to_biperron, verify_claims
from .geometry import claim_check, hull_orbit_polygon, min_sides_bound
from .realize import (
    lind_points,
    project_polygon,
    quadratic_realize,
    search_realization,
    trace_obstruction,
)
from .verify import run_all


class AnalyzeRequest(BaseModel):
    poly: str = Field(description="ascending integer coefficients, comma-separated")
    tol: float = 1e-10
    max_power: int = Field(default=10, ge=1, le=64)


class FamilyRequest(BaseModel):
    epsilon: str = Field(description="rational in p/q form, 0 < eps < 1")
    emit_biperron: bool = False


class RealizeRequest(BaseModel):
    poly: str
    n: int = Field(ge=1, le=6)
    entry_bound: int = Field(ge=0, le=200)
    budget: int = Field(default=10_000_000, ge=1)


class PolygonRequest(BaseModel):
    t: str = Field(description="multiplier as 're,im'")
    z0: str = Field(default="1,0", description="seed point as 're,im'")
    max_terms: int = Field(default=20000, ge=8, le=200000)


def _parse_fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedInput(f"bad rational {text!r}: {exc}") from None


def _parse_complex(text):
    parts = [p.strip() for p in str(text).split(",")]
    if len(parts) != 2:
        raise MalformedInput(f"expected 're,im', got {text!r}")
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise MalformedInput(str(exc)) from None


def handle_analyze(req: AnalyzeRequest) -> dict:
    start = time.time()
    poly = parse_poly(req.poly)
    an = analyze(poly, req.tol)
    result = {"analysis": an}
    if an.is_perron:
        result["obstruction"] = trace_obstruction(poly, req.max_power)
    return reporting.build_report(
        "analyze", req.model_dump(), result, time.time() - start)


def handle_family(req: FamilyRequest) -> dict:
    start = time.time()
    eps = _parse_fraction(req.epsilon)
    fam = generate_cubic(eps)
    claims = verify_claims(fam)
    result = {"claims": claims, "cubic_analysis": analyze(fam.f), "family": fam}
    if req.emit_biperron:
        sextic, an = to_biperron(fam)
        result["biperron_analysis"] = an
        result["biperron_poly"] = list(sextic.coeffs)
    return reporting.build_report(
        "family", req.model_dump(), result, time.time() - start)


def handle_realize(req: RealizeRequest) -> dict:
    start = time.time()
    poly = parse_poly(req.poly)
    result: dict = {"obstruction": None, "realization": None, "projection": None}
    if poly.degree == 2 and req.n == 2:
        try:
            result["realization"] = quadratic_realize(poly)
        except ToolkitError:
            result["realization"] = None
    if result["realization"] is None:
        result["realization"] = search_realization(
            poly, req.n, req.entry_bound, req.budget)
    result["obstruction"] = trace_obstruction(poly, max(2, poly.degree))
    real = result["realization"]
    if real is not None:
        pts = lind_points(real)
        result["lattice_points"] = pts
        try:
            result["projection"] = project_polygon(pts)
        except ToolkitError as exc:
            result["projection"] = {"unavailable": str(exc)}
    return reporting.build_report(
        "realize", req.model_dump(), result, time.time() - start)


def handle_polygon(req: PolygonRequest) -> dict:
    start = time.time()
    t = _parse_complex(req.t)
    z0 = _parse_complex(req.z0)
    polygon = hull_orbit_polygon(z0, t, req.max_terms)
    bound = min_sides_bound(t)
    result = {
        "bound": {"degenerate": bound.degenerate, "min_sides": bound.bound},
        "polygon": polygon,
        "sides": polygon.sides,
    }
    try:
        result["claims"] = claim_check(polygon, t)
    except ToolkitError as exc:
        result["claims"] = {"unavailable": str(exc)}
    return reporting.build_report(
        "polygon", req.model_dump(), result, time.time() - start)


def handle_verify() -> dict:
    start = time.time()
    rows = [{"criterion": name, "detail": detail, "elapsed_s": elapsed,
             "passed": passed} for name, passed, detail, elapsed in run_all()]
    return reporting.build_report(
        "verify", {}, {"all_passed": all(r["passed"] for r in rows),
                       "criteria": rows}, time.time() - start)


def create_app():
    from fastapi import FastAPI, HTTPException

    app = FastAPI(title="perronpf", version=reporting.VERSION)

    def guarded(fn, *args):
        try:
            return fn(*args)
        except (MalformedInput, NotMonic) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        except Indeterminate as exc:
            raise HTTPException(status_code=422, detail=f"indeterminate: {exc}")
        except BudgetExceeded as exc:
            raise HTTPException(status_code=422, detail=f"budget exceeded: {exc}")
        except ToolkitError as exc:
            raise HTTPException(status_code=422, detail=str(exc))

    @app.get("/health")
    def health():
        return {"status": "ok", "version": reporting.VERSION}

    @app.post("/analyze")
    def analyze_route(req: AnalyzeRequest):
        return guarded(handle_analyze, req)

    @app.post("/family")
    def family_route(req: FamilyRequest):
        return guarded(handle_family, req)

    @app.post("/realize")
    def realize_route(req: RealizeRequest):
        return guarded(handle_realize, req)

    @app.post("/polygon")
    def polygon_route(req: PolygonRequest):
        return guarded(handle_polygon, req)

    @app.post("/verify")
    def verify_route():
        return handle_verify()

    return app
