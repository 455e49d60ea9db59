"""Per-user persistence of named sites and last link results.

Durable format is deliberately plain: UTF-8 text, one record per line,
tab-separated, with a versioned header line. Diff-able, greppable and
trivially portable. Writes go to a temp file and are renamed into place
so readers never see a torn file.
"""

from __future__ import annotations

import logging
import os
import re
import threading
from dataclasses import dataclass, replace
from datetime import datetime, timezone

from .geodesy import GeoPoint

logger = logging.getLogger(__name__)

SITE_NAME_RE = re.compile(r"^[A-Za-z0-9_]{1,32}$")
SITES_HEADER = "#botrf-sites v1"
RESULTS_HEADER = "#botrf-results v1"
SITES_FILE = "sites.tsv"
RESULTS_FILE = "results.tsv"


@dataclass(frozen=True)
class Site:
    """A named, user-owned point with its cached DEM ground elevation."""

    owner: str
    name: str
    point: GeoPoint
    ground_elevation_m: float | None
    created_at: datetime


@dataclass(frozen=True)
class LinkResult:
    """Last computed loss for a site pair, reused by `pow` and `rep`."""

    owner: str
    tx: str
    rx: str
    tx_antenna_agl_m: float
    rx_antenna_agl_m: float
    frequency_mhz: float
    k_factor: float
    model: str
    fspl_db: float
    model_loss_db: float
    shielding_db: float
    mode: str
    created_at: datetime


def _now() -> datetime:
    return datetime.now(timezone.utc)


class SiteStore:
    """Thread-safe site and result store, optionally file-backed.

    A single writer mutates at a time; reads return snapshots. When
    `data_dir` is set, every mutation is persisted atomically.
    """

    def __init__(self, data_dir: str | None = None, auto_persist: bool = True):
        self.data_dir = data_dir
        self.auto_persist = auto_persist and data_dir is not None
        self._lock = threading.RLock()
        self._sites: dict[tuple[str, str], Site] = {}
        self._results: dict[tuple[str, str, str], LinkResult] = {}
        if data_dir is not None:
            os.makedirs(data_dir, exist_ok=True)
            self.restore()

    # -- sites ---------------------------------------------------------

    def put_site(
        self,
        owner: str,
        name: str,
        point: GeoPoint,
        ground_elevation_m: float | None,
    ) -> Site:
        """Insert or replace the (owner, name) record."""
        if not SITE_NAME_RE.match(name):
            raise ValueError(
                f"invalid site name {name!r}: use 1-32 letters, digits or underscores"
            )
        if not owner:
            raise ValueError("owner id must be non-empty")
        site = Site(
            owner=owner,
            name=name,
            point=point,
            ground_elevation_m=ground_elevation_m,
            created_at=_now(),
        )
        with self._lock:
            self._sites[(owner, name)] = site
            if self.auto_persist:
                self.persist()
        return site

    def get_site(self, owner: str, name: str) -> Site | None:
        with self._lock:
            return self._sites.get((owner, name))

    def list_sites(self, owner: str) -> list[Site]:
        with self._lock:
            sites = [s for (o, _), s in self._sites.items() if o == owner]
        return sorted(sites, key=lambda s: s.name)

    def update_elevation(self, owner: str, name: str, elevation_m: float) -> None:
        with self._lock:
            site = self._sites.get((owner, name))
            if site is not None:
                self._sites[(owner, name)] = replace(
                    site, ground_elevation_m=elevation_m
                )
                if self.auto_persist:
                    self.persist()

    # -- results -------------------------------------------------------

    def put_result(self, result: LinkResult) -> None:
        with self._lock:
            self._results[(result.owner, result.tx, result.rx)] = result
            if self.auto_persist:
                self.persist()

    def get_result(self, owner: str, tx: str, rx: str) -> LinkResult | None:
        with self._lock:
            return self._results.get((owner, tx, rx))

    # -- durability ----------------------------------------------------

    def persist(self) -> None:
        """Write both files atomically (no-op without a data dir)."""
        if self.data_dir is None:
            return
        with self._lock:
            self._write_atomic(
                os.path.join(self.data_dir, SITES_FILE),
                [SITES_HEADER]
                + [self._site_line(s) for s in sorted(self._sites.values(), key=lambda s: (s.owner, s.name))],
            )
            self._write_atomic(
                os.path.join(self.data_dir, RESULTS_FILE),
                [RESULTS_HEADER]
                + [self._result_line(r) for r in sorted(self._results.values(), key=lambda r: (r.owner, r.tx, r.rx))],
            )

    def restore(self) -> None:
        """Load both files, skipping corrupt lines with a logged warning."""
        if self.data_dir is None:
            return
        with self._lock:
            self._sites.clear()
            self._results.clear()
            self._read_file(
                os.path.join(self.data_dir, SITES_FILE), self._parse_site_line
            )
            self._read_file(
                os.path.join(self.data_dir, RESULTS_FILE), self._parse_result_line
            )

    @staticmethod
    def _write_atomic(path: str, lines: list[str]) -> None:
        tmp = path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
        os.replace(tmp, path)

    def _read_file(self, path: str, parse_line) -> None:
        if not os.path.exists(path):
            return
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.rstrip("\n")
                if not line or line.startswith("#"):
                    continue
                try:
                    parse_line(line)
                except Exception as exc:
                    logger.warning("%s:%d: skipping corrupt line (%s)", path, lineno, exc)

    @staticmethod
    def _site_line(s: Site) -> str:
        elev = "?" if s.ground_elevation_m is None else repr(s.ground_elevation_m)
        return "\t".join(
            [
                s.owner,
                s.name,
                repr(s.point.lat_deg),
                repr(s.point.lon_deg),
                elev,
                s.created_at.isoformat(),
            ]
        )

    def _parse_site_line(self, line: str) -> None:
        owner, name, lat, lon, elev, created = line.split("\t")
        if not SITE_NAME_RE.match(name):
            raise ValueError(f"bad site name {name!r}")
        site = Site(
            owner=owner,
            name=name,
            point=GeoPoint(float(lat), float(lon)),
            ground_elevation_m=None if elev == "?" else float(elev),
            created_at=datetime.fromisoformat(created),
        )
        self._sites[(owner, name)] = site

    @staticmethod
    def _result_line(r: LinkResult) -> str:
        return "\t".join(
            [
                r.owner,
                r.tx,
                r.rx,
                repr(r.tx_antenna_agl_m),
                repr(r.rx_antenna_agl_m),
                repr(r.frequency_mhz),
                repr(r.k_factor),
                r.model,
                repr(r.fspl_db),
                repr(r.model_loss_db),
                repr(r.shielding_db),
                r.mode,
                r.created_at.isoformat(),
            ]
        )

    def _parse_result_line(self, line: str) -> None:
        (
            owner, tx, rx, tx_h, rx_h, f, k, model,
            fspl, model_loss, shielding, mode, created,
        ) = line.split("\t")
        result = LinkResult(
            owner=owner,
            tx=tx,
            rx=rx,
            tx_antenna_agl_m=float(tx_h),
            rx_antenna_agl_m=float(rx_h),
            frequency_mhz=float(f),
            k_factor=float(k),
            model=model,
            fspl_db=float(fspl),
            model_loss_db=float(model_loss),
            shielding_db=float(shielding),
            mode=mode,
            created_at=datetime.fromisoformat(created),
        )
        self._results[(owner, tx, rx)] = result
