"""SRTM ".hgt" elevation tiles: loading, caching and interpolated queries.

Tiles are raw big-endian int16 grids, row-major from the NORTH-west
corner, one-degree square, named after their south-west corner
(e.g. N08W072.hgt). Grid side 3601 for SRTM1 (~30 m) or 1201 for SRTM3
(~90 m). Void samples carry the sentinel -32768 and are filled from
their non-void neighbors at query time.
"""

from __future__ import annotations

import logging
import math
import os
import threading
from collections import OrderedDict
from dataclasses import dataclass, field

import numpy as np

from .errors import MalformedTileError, MissingTileError, VoidDataError
from .geodesy import GeoPoint

logger = logging.getLogger(__name__)

VOID = -32768
SRTM1_SIDE = 3601
SRTM3_SIDE = 1201
_BYTES_FOR_SIDE = {side * side * 2: side for side in (SRTM1_SIDE, SRTM3_SIDE)}


def tile_name_for(p: GeoPoint) -> str:
    """SRTM tile name covering the point: south-west corner, N/S + E/W."""
    lat = math.floor(p.lat_deg)
    lon = math.floor(p.lon_deg)
    ns = "N" if lat >= 0 else "S"
    ew = "E" if lon >= 0 else "W"
    return f"{ns}{abs(lat):02d}{ew}{abs(lon):03d}"


@dataclass
class HgtTile:
    """One parsed elevation tile. `samples[0, 0]` is the north-west corner."""

    sw_lat: int
    sw_lon: int
    n: int
    samples: np.ndarray  # (n, n) int16

    def sample(self, row: int, col: int) -> int:
        return int(self.samples[row, col])


def load_tile(path: str, sw_lat: int = 0, sw_lon: int = 0) -> HgtTile:
    """Parse a .hgt file; grid side inferred from the byte length."""
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise MalformedTileError(f"cannot read tile file {path}: {exc}") from exc
    side = _BYTES_FOR_SIDE.get(len(raw))
    if side is None:
        raise MalformedTileError(
            f"{path}: {len(raw)} bytes matches neither SRTM1 (3601^2) nor SRTM3 (1201^2)"
        )
    samples = np.frombuffer(raw, dtype=">i2").reshape(side, side).astype(np.int16)
    return HgtTile(sw_lat=sw_lat, sw_lon=sw_lon, n=side, samples=samples)


def _parse_tile_name(name: str) -> tuple[int, int]:
    lat = int(name[1:3])
    if name[0] == "S":
        lat = -lat
    lon = int(name[4:7])
    if name[3] == "W":
        lon = -lon
    return lat, lon


@dataclass
class TileCache:
    """LRU cache of parsed tiles over a flat directory of <NAME>.hgt files.

    Any number of threads may query concurrently; the load of a given
    tile happens at most once at a time, and eviction never removes a
    tile out from under a reader (readers hold their own reference).
    """

    root_dir: str
    capacity: int = 16
    _tiles: OrderedDict = field(default_factory=OrderedDict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)
    _name_locks: dict = field(default_factory=dict, repr=False)
    load_count: int = 0

    def __post_init__(self):
        if self.capacity < 1:
            raise ValueError("cache capacity must be >= 1")

    def tile_path(self, name: str) -> str:
        return os.path.join(self.root_dir, name + ".hgt")

    def get_tile(self, name: str) -> HgtTile:
        with self._lock:
            tile = self._tiles.get(name)
            if tile is not None:
                self._tiles.move_to_end(name)
                return tile
            name_lock = self._name_locks.setdefault(name, threading.Lock())
        with name_lock:
            with self._lock:
                tile = self._tiles.get(name)
                if tile is not None:
                    self._tiles.move_to_end(name)
                    return tile
            path = self.tile_path(name)
            if not os.path.exists(path):
                raise MissingTileError(name, path)
            sw_lat, sw_lon = _parse_tile_name(name)
            tile = load_tile(path, sw_lat=sw_lat, sw_lon=sw_lon)
            with self._lock:
                self._tiles[name] = tile
                self._tiles.move_to_end(name)
                self.load_count += 1
                while len(self._tiles) > self.capacity:
                    evicted, _ = self._tiles.popitem(last=False)
                    logger.debug("evicted tile %s", evicted)
            return tile

    def elevation_at(self, p: GeoPoint) -> float:
        """Bilinear-interpolated ground elevation in meters above sea level.

        Void samples among the four surrounding grid nodes are replaced
        by the mean of the non-void ones before interpolating; a fully
        void cell raises VoidDataError.
        """
        tile = self.get_tile(tile_name_for(p))
        n = tile.n
        span = n - 1
        x = (p.lon_deg - tile.sw_lon) * span
        y = (tile.sw_lat + 1.0 - p.lat_deg) * span
        x = min(max(x, 0.0), float(span))
        y = min(max(y, 0.0), float(span))
        c0 = min(int(x), span - 1)
        r0 = min(int(y), span - 1)
        fx = x - c0
        fy = y - r0

        corners = [
            tile.sample(r0, c0),
            tile.sample(r0, c0 + 1),
            tile.sample(r0 + 1, c0),
            tile.sample(r0 + 1, c0 + 1),
        ]
        valid = [v for v in corners if v != VOID]
        if not valid:
            raise VoidDataError(
                f"all DEM samples void around ({p.lat_deg:.4f}, {p.lon_deg:.4f})"
            )
        if len(valid) < 4:
            fill = sum(valid) / len(valid)
            corners = [fill if v == VOID else float(v) for v in corners]

        z00, z01, z10, z11 = (float(v) for v in corners)
        top = z00 * (1.0 - fx) + z01 * fx
        bot = z10 * (1.0 - fx) + z11 * fx
        return top * (1.0 - fy) + bot * fy


def elevation_at(cache: TileCache, p: GeoPoint) -> float:
    """Module-level convenience wrapper around TileCache.elevation_at."""
    return cache.elevation_at(p)
