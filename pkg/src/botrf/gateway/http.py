"""HTTP API over the engine: command endpoint, structured endpoints for
the web UI, chart endpoints, sites listing and health check.

JSON in, JSON out; charts are returned as image/svg+xml. Malformed
bodies give 400 with per-field errors; engine-level problems (unknown
site, missing DEM tile, bad parameters) give 400 with a message;
unexpected failures give 500 with an opaque id and a logged traceback.
"""

from __future__ import annotations

import logging
import math
import uuid

from fastapi import FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, PlainTextResponse, Response as HttpResponse
from pydantic import BaseModel, Field

from .. import charts
from ..errors import BotrfError
from ..linkbudget import RadioParams
from ..profile import DEFAULT_K_FACTOR
from ..report import generate_report
from .engine import Engine, Response, ResponseKind, convert_value

logger = logging.getLogger(__name__)


class CommandBody(BaseModel):
    owner: str = "local"
    line: str


class ConvertBody(BaseModel):
    value: float
    from_unit: str = Field(alias="from")
    to_unit: str | None = Field(default=None, alias="to")
    frequency_mhz: float | None = None

    model_config = {"populate_by_name": True}


class LinkBody(BaseModel):
    owner: str = "local"
    tx: str
    rx: str
    tx_height_m: float
    rx_height_m: float
    frequency_mhz: float
    k_factor: float = DEFAULT_K_FACTOR
    model: str | None = None


class BudgetBody(BaseModel):
    owner: str = "local"
    tx: str
    rx: str
    tx_power_dbm: float
    tx_cable_loss_db: float = 0.0
    tx_antenna_gain_dbi: float = 0.0
    rx_antenna_gain_dbi: float = 0.0
    rx_cable_loss_db: float = 0.0
    rx_sensitivity_dbm: float
    path_loss_db: float | None = None
    frequency_mhz: float | None = None


def _response_json(r: Response) -> dict:
    return {
        "kind": r.kind.value,
        "body": r.body,
        "chart_ref": r.chart_ref,
        "diagnostics": list(r.diagnostics),
    }


def _clean(x: float) -> float | None:
    return None if math.isinf(x) or math.isnan(x) else x


def create_app(engine: Engine, frontend_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="botrf", docs_url=None, redoc_url=None)

    @app.exception_handler(RequestValidationError)
    async def _validation_handler(request: Request, exc: RequestValidationError):
        errors = [
            {"field": ".".join(str(p) for p in e["loc"]), "message": e["msg"]}
            for e in exc.errors()
        ]
        return JSONResponse(status_code=400, content={"errors": errors})

    @app.exception_handler(BotrfError)
    async def _engine_error_handler(request: Request, exc: BotrfError):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    @app.exception_handler(ValueError)
    async def _value_error_handler(request: Request, exc: ValueError):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    @app.exception_handler(Exception)
    async def _internal_handler(request: Request, exc: Exception):
        error_id = uuid.uuid4().hex[:12]
        logger.exception("internal error %s on %s", error_id, request.url.path)
        return JSONResponse(
            status_code=500,
            content={"error": "internal error", "error_id": error_id},
        )

    @app.get("/healthz", response_class=PlainTextResponse)
    async def healthz() -> str:
        return "ok"

    @app.post("/api/command")
    async def command(body: CommandBody):
        return _response_json(engine.execute(body.owner, body.line))

    @app.post("/api/convert")
    async def convert(body: ConvertBody):
        value, unit, text = convert_value(
            body.value,
            body.from_unit.lower(),
            body.to_unit.lower() if body.to_unit else None,
            body.frequency_mhz,
        )
        return {"value": value, "unit": unit, "text": text}

    @app.post("/api/profile")
    async def profile_endpoint(body: LinkBody):
        comp = engine.compute_link(
            body.owner, body.tx, body.rx, body.tx_height_m, body.rx_height_m,
            body.frequency_mhz, body.k_factor, body.model,
        )
        pts = comp.profile.points
        return {
            "tx": body.tx,
            "rx": body.rx,
            "distance_km": comp.profile.total_distance_km,
            "sample_spacing_m": comp.profile.sample_spacing_m,
            "frequency_mhz": body.frequency_mhz,
            "k_factor": body.k_factor,
            "distances_km": [p.distance_km for p in pts],
            "terrain_m": [p.terrain_m for p in pts],
            "bulge_m": [p.bulge_m for p in pts],
            "los_m": [p.los_m for p in pts],
            "fresnel1_m": [p.fresnel1_m for p in pts],
            "clearance_fraction": [_clean(p.clearance_fraction) for p in pts],
            "verdict": {
                "worst_fraction": comp.verdict.worst_fraction,
                "worst_distance_km": comp.verdict.worst_distance_km,
                "class": comp.verdict.clearance_class.value,
            },
            "loss": {
                "fspl_db": comp.loss.fspl_db,
                "model_loss_db": comp.loss.model_loss_db,
                "shielding_db": comp.loss.shielding_db,
                "mode": comp.loss.mode.value,
                "model": comp.loss.model.value,
            },
        }

    @app.post("/api/report")
    async def report_endpoint(body: LinkBody):
        comp = engine.compute_link(
            body.owner, body.tx, body.rx, body.tx_height_m, body.rx_height_m,
            body.frequency_mhz, body.k_factor, body.model,
        )
        rep = generate_report(comp.geometry, comp.profile, comp.loss, comp.verdict)
        return {"text": rep.text}

    @app.post("/api/budget")
    async def budget_endpoint(body: BudgetBody):
        radios = RadioParams(
            tx_power_dbm=body.tx_power_dbm,
            tx_cable_loss_db=body.tx_cable_loss_db,
            tx_antenna_gain_dbi=body.tx_antenna_gain_dbi,
            rx_antenna_gain_dbi=body.rx_antenna_gain_dbi,
            rx_cable_loss_db=body.rx_cable_loss_db,
            rx_sensitivity_dbm=body.rx_sensitivity_dbm,
        )
        b, series, f = engine.compute_budget(
            body.owner, body.tx, body.rx, radios,
            path_loss_db=body.path_loss_db,
            frequency_mhz=body.frequency_mhz,
        )
        return {
            "eirp_dbm": b.eirp_dbm,
            "path_loss_db": b.path_loss_db,
            "rx_power_dbm": b.rx_power_dbm,
            "margin_db": b.margin_db,
            "frequency_mhz": f,
            "series": [[d, level] for d, level in series],
        }

    @app.get("/api/sites")
    async def sites(owner: str = Query("local")):
        return {
            "sites": [
                {
                    "name": s.name,
                    "lat": s.point.lat_deg,
                    "lon": s.point.lon_deg,
                    "elevation_m": s.ground_elevation_m,
                }
                for s in engine.store.list_sites(owner)
            ]
        }

    @app.get("/api/chart/profile")
    async def chart_profile(
        owner: str = Query("local"),
        tx: str = Query(...),
        rx: str = Query(...),
        tx_height_m: float = Query(...),
        rx_height_m: float = Query(...),
        frequency_mhz: float = Query(...),
        k: float = Query(DEFAULT_K_FACTOR),
        model: str | None = Query(None),
    ):
        comp = engine.compute_link(
            owner, tx, rx, tx_height_m, rx_height_m, frequency_mhz, k, model,
            remember=False,
        )
        svg = charts.render_profile_chart(comp.profile, comp.verdict)
        return HttpResponse(content=svg, media_type="image/svg+xml")

    @app.get("/api/chart/power")
    async def chart_power(
        owner: str = Query("local"),
        tx: str = Query(...),
        rx: str = Query(...),
        tx_power_dbm: float = Query(...),
        tx_cable_loss_db: float = Query(0.0),
        tx_antenna_gain_dbi: float = Query(0.0),
        rx_antenna_gain_dbi: float = Query(0.0),
        rx_cable_loss_db: float = Query(0.0),
        rx_sensitivity_dbm: float = Query(...),
        f: float | None = Query(None),
    ):
        radios = RadioParams(
            tx_power_dbm=tx_power_dbm,
            tx_cable_loss_db=tx_cable_loss_db,
            tx_antenna_gain_dbi=tx_antenna_gain_dbi,
            rx_antenna_gain_dbi=rx_antenna_gain_dbi,
            rx_cable_loss_db=rx_cable_loss_db,
            rx_sensitivity_dbm=rx_sensitivity_dbm,
        )
        b, series, _ = engine.compute_budget(owner, tx, rx, radios, frequency_mhz=f)
        svg = charts.render_power_chart(
            series, b, radios, f"Power versus distance: {tx} to {rx}"
        )
        return HttpResponse(content=svg, media_type="image/svg+xml")

    if frontend_dir:
        import os

        if os.path.isdir(frontend_dir):
            from fastapi.staticfiles import StaticFiles

            app.mount("/", StaticFiles(directory=frontend_dir, html=True), name="ui")
        else:
            logger.warning("frontend directory %s not found; UI not mounted", frontend_dir)

    return app
