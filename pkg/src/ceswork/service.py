"""Stateless HTTP facade over the engine for the browser explorer.

Every request carries its whole scenario; nothing is stored between
calls.  Bad payloads return 400 with a machine-readable violation list,
preference-consistency failures return 422 naming the violated
inequalities, and reduce requests beyond the in-flight limit return 429.
Internal errors are the only source of 500s.
"""

from __future__ import annotations

import threading
import time

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import __version__
from .ces import ResourceBundle, criteria, validate_params
from .config import ConfigError, Violation, parse_evaluate_request, parse_scenario
from .fuzzy import FuzzyScenario, build_membership, verify_nesting
from .pareto import CriteriaKind, compare_formulas, oracle_pareto, ray_family_sweep
from .quanta import check_natural_compromise, derived_table

__all__ = ["create_app"]

DEFAULT_MAX_INFLIGHT = 2


def _validation_error(violations) -> JSONResponse:
    return JSONResponse(
        status_code=400,
        content={"error": "validation", "violations": [v.to_dict() for v in violations]},
    )


def _consistency_error(violations) -> JSONResponse:
    return JSONResponse(
        status_code=422,
        content={"error": "consistency", "violations": list(violations)},
    )


def _ray_rows(families) -> list[dict]:
    rows = []
    for family in families:
        for entry in family.entries:
            lams = list(entry.weights) + [None] * (4 - len(entry.weights))
            rows.append(
                {
                    "source": family.source,
                    "kind": family.kind.value,
                    "rho": entry.rho,
                    "lambda1": lams[0],
                    "lambda2": lams[1],
                    "lambda3": lams[2],
                    "lambda4": lams[3],
                }
            )
    return rows


def create_app(max_inflight: int = DEFAULT_MAX_INFLIGHT) -> FastAPI:
    app = FastAPI(title="ceswork", version=__version__)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    reduce_slots = threading.BoundedSemaphore(max_inflight)

    @app.exception_handler(RequestValidationError)
    async def _on_bad_body(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={
                "error": "validation",
                "violations": [{"field": "body", "message": "request body must be a JSON object"}],
            },
        )

    @app.get("/healthz")
    def healthz() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/api/v1/evaluate")
    def evaluate(payload: dict):
        try:
            problem, pair, k, l = parse_evaluate_request(payload)
        except ConfigError as exc:
            return _validation_error(exc.violations)
        report = validate_params(problem.params, problem.prices)
        if not report.ok:
            return _validation_error(
                [Violation(field="ces", message=v) for v in report.violations]
            )
        f = criteria(problem, ResourceBundle(K=k, L=l))
        body = {
            "k": k,
            "l": l,
            "q": f.f3 / problem.prices.pQ,
            "f": [f.f1, f.f2, f.f3],
        }
        for kind in (CriteriaKind.G4, CriteriaKind.FBAR4, CriteriaKind.FHAT3):
            table = derived_table(kind, pair)
            body[kind.value] = [float(x) for x in table.apply(f.as_array())]
        return body

    @app.post("/api/v1/reduce")
    def reduce(payload: dict):
        started = time.perf_counter()
        try:
            config = parse_scenario(payload, with_output=False)
        except ConfigError as exc:
            return _validation_error(exc.violations)
        pair = config.pair
        if pair.p1.confidence is None or pair.p2.confidence is None:
            missing = []
            if pair.p1.confidence is None:
                missing.append(("quantum1.mu", "missing required field"))
            if pair.p2.confidence is None:
                missing.append(("quantum2.mu", "missing required field"))
            return JSONResponse(
                status_code=400,
                content={
                    "error": "validation",
                    "violations": [{"field": f, "message": m} for f, m in missing],
                },
            )
        nc = check_natural_compromise(pair)
        if nc:
            return _consistency_error(nc)
        if not reduce_slots.acquire(blocking=False):
            return JSONResponse(
                status_code=429,
                content={"error": "busy", "maxInflight": max_inflight},
            )
        try:
            scenario = FuzzyScenario(problem=config.problem, pair=pair, grid=config.grid)
            oracle_started = time.perf_counter()
            core = oracle_pareto(CriteriaKind.G4, pair, config.problem, config.grid)
            stage2 = oracle_pareto(scenario.stage2_kind, pair, config.problem, config.grid)
            full = oracle_pareto(CriteriaKind.F3, pair, config.problem, config.grid)
            oracle_ms = 1000.0 * (time.perf_counter() - oracle_started)
            membership = build_membership(scenario, core=core, stage2=stage2)
            nesting = verify_nesting(scenario, full=full, stage2=stage2, core=core)
            families = []
            for kind in (CriteriaKind.G4, scenario.stage2_kind):
                result = ray_family_sweep(kind, pair, config.problem, config.sweep)
                families += [result.derived, result.reference]
            nodes = config.grid.nodes()
            return {
                "version": __version__,
                "branch": membership.branch,
                "seed": config.sweep.seed,
                "membership": {
                    "k": [float(x) for x in nodes[:, 0]],
                    "l": [float(x) for x in nodes[:, 1]],
                    "tier": [t.value for t in membership.tiers],
                    "lambda": [float(x) for x in membership.values],
                },
                "tierValues": {t.value: v for t, v in membership.tier_values.items()},
                "tierCounts": {t.value: c for t, c in membership.tier_counts().items()},
                "inclusions": {
                    "coreWithinStage2": nesting.core_within_stage2,
                    "stage2WithinFull": nesting.stage2_within_full,
                    "fullIsWholeGrid": nesting.full_is_whole_grid,
                },
                "rays": _ray_rows(families),
                "timing": {
                    "totalMs": 1000.0 * (time.perf_counter() - started),
                    "oracleMs": oracle_ms,
                },
            }
        finally:
            reduce_slots.release()

    @app.post("/api/v1/compare")
    def compare(payload: dict):
        try:
            config = parse_scenario(payload, with_output=False)
        except ConfigError as exc:
            return _validation_error(exc.violations)
        nc = check_natural_compromise(config.pair)
        if nc:
            return _consistency_error(nc)
        report = compare_formulas(config.problem, config.pair, config.grid, config.sweep)
        return report.to_dict()

    return app
