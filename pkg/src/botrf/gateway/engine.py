"""Command dispatch: wires the parser to DEM, profiles, models, budgets,
reports, charts and the site store."""

from __future__ import annotations

import logging
import threading
import urllib.parse
from collections import defaultdict
from dataclasses import dataclass, field, replace
from enum import Enum

from .. import charts, report, units
from ..dem import TileCache
from ..errors import BotrfError, UnknownSiteError
from ..geodesy import GeoPoint, distance_km
from ..linkbudget import LinkBudget, RadioParams, budget, eirp_dbm
from ..profile import (
    ClearanceVerdict,
    DEFAULT_K_FACTOR,
    DEFAULT_SPACING_M,
    LinkGeometry,
    TerrainProfile,
    analyze_clearance,
    build_profile,
)
from ..propagation import ItmParams, LossModel, PathLossResult, compute_loss, fspl_db
from ..sitestore import LinkResult, Site, SiteStore, _now
from .parser import Command, CommandError, Verb, parse_command, usage_summary

logger = logging.getLogger(__name__)


class ResponseKind(Enum):
    TEXT = "text"
    REPORT = "report"
    CHART = "chart"
    ERROR = "error"


@dataclass(frozen=True)
class Response:
    kind: ResponseKind
    body: str
    chart_svg: str | None = None
    chart_ref: str | None = None
    diagnostics: list = field(default_factory=list)


@dataclass(frozen=True)
class LinkComputation:
    """Everything the structured endpoints and charts need for one link."""

    geometry: LinkGeometry
    profile: TerrainProfile
    loss: PathLossResult
    verdict: ClearanceVerdict


_MODEL_BY_NAME = {m.value: m for m in LossModel}


class Engine:
    """Stateful gateway core. Per-owner command processing is serialized
    so one user's commands apply in order; computation below is pure."""

    def __init__(
        self,
        dem: TileCache,
        store: SiteStore,
        default_model: LossModel = LossModel.ITM,
        itm_params: ItmParams = ItmParams(),
        spacing_m: float = DEFAULT_SPACING_M,
    ):
        self.dem = dem
        self.store = store
        self.default_model = default_model
        self.itm_params = itm_params
        self.spacing_m = spacing_m
        self._owner_locks: dict[str, threading.Lock] = defaultdict(threading.Lock)
        self._locks_guard = threading.Lock()

    # -- public entry points --------------------------------------------

    def execute(self, owner: str, line: str) -> Response:
        """Parse and dispatch one command line for the given owner."""
        with self._locks_guard:
            lock = self._owner_locks[owner]
        with lock:
            try:
                cmd = parse_command(line, owner=owner)
            except CommandError as exc:
                return Response(kind=ResponseKind.ERROR, body=str(exc))
            return self.dispatch(cmd)

    def dispatch(self, cmd: Command) -> Response:
        try:
            handler = {
                Verb.SITE: self._do_site,
                Verb.CALC: self._do_calc,
                Verb.REP: self._do_rep,
                Verb.POW: self._do_pow,
                Verb.CNV: self._do_cnv,
                Verb.LIST: self._do_list,
                Verb.HELP: self._do_help,
            }[cmd.verb]
            return handler(cmd)
        except (BotrfError, ValueError) as exc:
            return Response(kind=ResponseKind.ERROR, body=str(exc))

    # -- structured operations (HTTP API / web UI) -----------------------

    def compute_link(
        self,
        owner: str,
        tx: str,
        rx: str,
        tx_height_m: float,
        rx_height_m: float,
        frequency_mhz: float,
        k_factor: float = DEFAULT_K_FACTOR,
        model: str | LossModel | None = None,
        remember: bool = True,
    ) -> LinkComputation:
        """Build profile, loss and verdict for two stored sites."""
        loss_model = self._resolve_model(model)
        tx_site = self._required_site(owner, tx)
        rx_site = self._required_site(owner, rx)
        geom = LinkGeometry(
            tx_site=self._with_fresh_elevation(tx_site),
            rx_site=self._with_fresh_elevation(rx_site),
            tx_antenna_agl_m=tx_height_m,
            rx_antenna_agl_m=rx_height_m,
            frequency_mhz=frequency_mhz,
            k_factor=k_factor,
        )
        prof = build_profile(geom, self.dem, self.spacing_m)
        loss = compute_loss(prof, loss_model, self.itm_params)
        verdict = analyze_clearance(prof)
        if remember:
            self.store.put_result(
                LinkResult(
                    owner=owner,
                    tx=tx,
                    rx=rx,
                    tx_antenna_agl_m=tx_height_m,
                    rx_antenna_agl_m=rx_height_m,
                    frequency_mhz=frequency_mhz,
                    k_factor=k_factor,
                    model=loss_model.value,
                    fspl_db=loss.fspl_db,
                    model_loss_db=loss.model_loss_db,
                    shielding_db=loss.shielding_db,
                    mode=loss.mode.value,
                    created_at=_now(),
                )
            )
        return LinkComputation(geometry=geom, profile=prof, loss=loss, verdict=verdict)

    def compute_budget(
        self,
        owner: str,
        tx: str,
        rx: str,
        radios: RadioParams,
        path_loss_db: float | None = None,
        frequency_mhz: float | None = None,
    ) -> tuple[LinkBudget, list, float]:
        """Budget plus power series; falls back from the remembered pair
        result to on-the-fly free-space loss. Returns (budget, series,
        frequency used)."""
        tx_site = self._required_site(owner, tx)
        rx_site = self._required_site(owner, rx)
        last = self.store.get_result(owner, tx, rx)

        if frequency_mhz is None:
            if last is None:
                raise CommandError(
                    f"no previous calc for {tx}->{rx}; run `calc` first or pass f=<MHz>"
                )
            frequency_mhz = last.frequency_mhz

        d_km = distance_km(tx_site.point, rx_site.point)
        if path_loss_db is None:
            path_loss_db = (
                last.model_loss_db if last is not None else fspl_db(d_km, frequency_mhz)
            )

        b = budget(radios, path_loss_db)
        series = self._power_series(radios, d_km, frequency_mhz, b)
        return b, series, frequency_mhz

    # -- command handlers -------------------------------------------------

    def _do_site(self, cmd: Command) -> Response:
        point = GeoPoint(cmd.args["lat"], cmd.args["lon"])
        diagnostics = []
        try:
            elevation = self.dem.elevation_at(point)
        except BotrfError as exc:
            elevation = None
            diagnostics.append(f"elevation unknown: {exc}")
        site = self.store.put_site(cmd.owner, cmd.args["name"], point, elevation)
        elev_text = (
            "elevation unknown"
            if site.ground_elevation_m is None
            else f"elevation {site.ground_elevation_m:.0f} m"
        )
        return Response(
            kind=ResponseKind.TEXT,
            body=f"stored site {site.name} at {report.format_location(point)} ({elev_text})",
            diagnostics=diagnostics,
        )

    def _do_calc(self, cmd: Command) -> Response:
        comp = self.compute_link(
            cmd.owner,
            cmd.args["tx"],
            cmd.args["rx"],
            cmd.args["tx_height_m"],
            cmd.args["rx_height_m"],
            cmd.args["frequency_mhz"],
            k_factor=cmd.args.get("k", DEFAULT_K_FACTOR),
            model=cmd.args.get("model"),
        )
        svg = charts.render_profile_chart(comp.profile, comp.verdict)
        v = comp.verdict
        body = (
            f"{cmd.args['tx']} to {cmd.args['rx']}: {comp.profile.total_distance_km:.2f} km; "
            f"worst clearance {v.worst_fraction:.2f} F1 at {v.worst_distance_km:.2f} km "
            f"({v.clearance_class.value}); path loss {comp.loss.model_loss_db:.2f} dB "
            f"({comp.loss.mode.value})"
        )
        return Response(
            kind=ResponseKind.CHART,
            body=body,
            chart_svg=svg,
            chart_ref=self._chart_ref("profile", cmd),
        )

    def _rep_params(self, cmd: Command) -> tuple[float, float, float, float, str]:
        args = cmd.args
        if "tx_height_m" in args:
            return (
                args["tx_height_m"],
                args["rx_height_m"],
                args["frequency_mhz"],
                args.get("k", DEFAULT_K_FACTOR),
                args.get("model", self.default_model.value),
            )
        last = self.store.get_result(cmd.owner, args["tx"], args["rx"])
        if last is None:
            raise CommandError(
                f"no previous calc for {args['tx']}->{args['rx']}; "
                "run `calc` first or pass heights and frequency"
            )
        return (
            last.tx_antenna_agl_m,
            last.rx_antenna_agl_m,
            last.frequency_mhz,
            args.get("k", last.k_factor),
            args.get("model", last.model),
        )

    def _do_rep(self, cmd: Command) -> Response:
        tx_h, rx_h, f, k, model = self._rep_params(cmd)
        comp = self.compute_link(
            cmd.owner, cmd.args["tx"], cmd.args["rx"], tx_h, rx_h, f,
            k_factor=k, model=model,
        )
        rep = report.generate_report(comp.geometry, comp.profile, comp.loss, comp.verdict)
        return Response(kind=ResponseKind.REPORT, body=rep.text)

    def _do_pow(self, cmd: Command) -> Response:
        radios = RadioParams(
            tx_power_dbm=cmd.args["tx_power_dbm"],
            tx_cable_loss_db=cmd.args["tx_cable_loss_db"],
            tx_antenna_gain_dbi=cmd.args["tx_antenna_gain_dbi"],
            rx_antenna_gain_dbi=cmd.args["rx_antenna_gain_dbi"],
            rx_cable_loss_db=cmd.args["rx_cable_loss_db"],
            rx_sensitivity_dbm=cmd.args["rx_sensitivity_dbm"],
        )
        b, series, f = self.compute_budget(
            cmd.owner,
            cmd.args["tx"],
            cmd.args["rx"],
            radios,
            frequency_mhz=cmd.args.get("f"),
        )
        title = f"Power versus distance: {cmd.args['tx']} to {cmd.args['rx']}"
        svg = charts.render_power_chart(series, b, radios, title)
        body = (
            f"EIRP {b.eirp_dbm:g} dBm; path loss {b.path_loss_db:.2f} dB; "
            f"rx power {b.rx_power_dbm:.2f} dBm; margin {b.margin_db:.2f} dB "
            f"({b.margin_db:.0f} dB vs sensitivity {radios.rx_sensitivity_dbm:g} dBm)"
        )
        return Response(
            kind=ResponseKind.CHART,
            body=body,
            chart_svg=svg,
            chart_ref=self._chart_ref("power", cmd),
        )

    def _do_cnv(self, cmd: Command) -> Response:
        _, _, text = convert_value(
            cmd.args["value"],
            cmd.args["from_unit"],
            cmd.args["to_unit"],
            cmd.args.get("f"),
        )
        return Response(kind=ResponseKind.TEXT, body=text)

    def _do_list(self, cmd: Command) -> Response:
        sites = self.store.list_sites(cmd.owner)
        if not sites:
            return Response(
                kind=ResponseKind.TEXT,
                body="no sites stored; add one with `site <name> <lat> <lon>`",
            )
        lines = []
        for s in sites:
            elev = (
                "elevation unknown"
                if s.ground_elevation_m is None
                else f"elevation {s.ground_elevation_m:.0f} m"
            )
            lines.append(f"{s.name}: {report.format_location(s.point)} ({elev})")
        return Response(kind=ResponseKind.TEXT, body="\n".join(lines))

    def _do_help(self, cmd: Command) -> Response:
        return Response(kind=ResponseKind.TEXT, body=usage_summary())

    # -- helpers -----------------------------------------------------------

    def _resolve_model(self, model: str | LossModel | None) -> LossModel:
        if model is None:
            return self.default_model
        if isinstance(model, LossModel):
            return model
        try:
            return _MODEL_BY_NAME[model]
        except KeyError:
            raise CommandError(f"unknown model {model!r}; use itm or ke") from None

    def _required_site(self, owner: str, name: str) -> Site:
        site = self.store.get_site(owner, name)
        if site is None:
            raise UnknownSiteError(name)
        return site

    def _with_fresh_elevation(self, site: Site) -> Site:
        """Re-resolve ground elevation so profiles and reports agree with
        the current DEM even if the stored value is stale or unknown."""
        elevation = self.dem.elevation_at(site.point)
        if site.ground_elevation_m != elevation:
            self.store.update_elevation(site.owner, site.name, elevation)
        return replace(site, ground_elevation_m=elevation)

    def _power_series(
        self, radios: RadioParams, d_km: float, f_mhz: float, b: LinkBudget
    ) -> list:
        eirp = eirp_dbm(radios)
        rx_chain = radios.rx_antenna_gain_dbi - radios.rx_cable_loss_db
        n = 100
        series = [(0.0, eirp)]
        for i in range(1, n):
            d = d_km * i / n
            series.append((d, eirp - fspl_db(d, f_mhz) + rx_chain))
        series.append((d_km, b.rx_power_dbm))
        return series

    @staticmethod
    def _chart_ref(kind: str, cmd: Command) -> str:
        params = {"owner": cmd.owner}
        for key, value in cmd.args.items():
            if value is not None:
                params[key] = value
        return f"/api/chart/{kind}?" + urllib.parse.urlencode(params)


_UNIT_ALIASES = {
    "mw": "mw",
    "dbm": "dbm",
    "mhz": "mhz",
    "m": "m",
    "meter": "m",
    "meters": "m",
    "dbuv": "dbuv",
    "dbuv/m": "dbuv",
    "dbuvm": "dbuv",
}

_DEFAULT_TARGET = {"mw": "dbm", "dbm": "mw", "mhz": "m", "m": "mhz", "dbuv": "dbm"}


def convert_value(
    value: float, src: str, dst: str | None, f_mhz: float | None = None
) -> tuple[float, str, str]:
    """Perform one `cnv` conversion; returns (result, unit label, text)."""
    src_u = _UNIT_ALIASES.get(src)
    if src_u is None:
        raise CommandError(
            f"unknown unit {src!r}; supported: mw, dbm, mhz, m, dbuv"
        )
    dst_u = _DEFAULT_TARGET[src_u] if dst is None else _UNIT_ALIASES.get(dst)
    if dst_u is None:
        raise CommandError(
            f"unknown unit {dst!r}; supported: mw, dbm, mhz, m, dbuv"
        )

    pair = (src_u, dst_u)
    if pair == ("mw", "dbm"):
        result, label = units.mw_to_dbm(value), "dBm"
        text = f"{value:g} mW = {result:.2f} dBm"
    elif pair == ("dbm", "mw"):
        result, label = units.dbm_to_mw(value), "mW"
        text = f"{value:g} dBm = {result:.6g} mW"
    elif pair == ("mhz", "m"):
        result, label = units.freq_to_wavelength(value), "m"
        text = f"{value:g} MHz = {result:.6g} m"
    elif pair == ("m", "mhz"):
        result, label = units.wavelength_to_freq(value), "MHz"
        text = f"{value:g} m = {result:.6g} MHz"
    elif pair == ("dbuv", "dbm"):
        if f_mhz is None:
            raise CommandError(
                "dBuV/m to dBm needs the frequency; add f=<MHz> to the command"
            )
        result, label = units.dbuv_per_m_to_dbm(value, f_mhz), "dBm"
        text = f"{value:g} dBuV/m at {f_mhz:g} MHz = {result:.2f} dBm"
    else:
        raise CommandError(f"cannot convert {src_u} to {dst_u}")
    return result, label, text
