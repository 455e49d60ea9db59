"""Shared fixtures: synthetic DEM tiles and link builders."""

from __future__ import annotations

import math
import struct
from datetime import datetime, timezone

import numpy as np
import pytest

from botrf.dem import SRTM3_SIDE, TileCache
from botrf.geodesy import GeoPoint
from botrf.profile import LinkGeometry, assemble_profile
from botrf.sitestore import Site


def write_tile(path, n=SRTM3_SIDE, fill=0, sample_fn=None):
    """Write a synthetic .hgt file. sample_fn(row, col) overrides fill."""
    if sample_fn is None:
        data = np.full((n, n), fill, dtype=">i2")
    else:
        data = np.fromfunction(
            np.vectorize(sample_fn, otypes=[np.int16]), (n, n)
        ).astype(">i2")
    path.write_bytes(data.tobytes())


@pytest.fixture
def flat_dem(tmp_path):
    """Constant-0 SRTM3 tiles around the equator/prime-meridian corner."""
    dem_dir = tmp_path / "dem"
    dem_dir.mkdir()
    for name in ("N00E000", "N00E001", "N01E000", "N00W001", "S01E000", "S01W001"):
        write_tile(dem_dir / f"{name}.hgt")
    return TileCache(root_dir=str(dem_dir))


def make_site(name, lat, lon, elevation=0.0, owner="u1"):
    return Site(
        owner=owner,
        name=name,
        point=GeoPoint(lat, lon),
        ground_elevation_m=elevation,
        created_at=datetime.now(timezone.utc),
    )


def make_geometry(
    d_km=10.0,
    tx_h=30.0,
    rx_h=30.0,
    f_mhz=5800.0,
    k=4.0 / 3.0,
    tx_elev=0.0,
    rx_elev=0.0,
):
    """Geometry between two points d_km apart east-west on the equator."""
    from botrf.geodesy import EARTH_RADIUS_KM

    lon_span = d_km / (math.pi * EARTH_RADIUS_KM / 180.0)
    return LinkGeometry(
        tx_site=make_site("tx", 0.0, 0.0, tx_elev),
        rx_site=make_site("rx", 0.0, lon_span, rx_elev),
        tx_antenna_agl_m=tx_h,
        rx_antenna_agl_m=rx_h,
        frequency_mhz=f_mhz,
        k_factor=k,
    )


def synthetic_profile(terrain, d_km=10.0, tx_h=30.0, rx_h=30.0, f_mhz=5800.0, k=4.0 / 3.0):
    """Profile over an explicit terrain array, evenly spaced over d_km."""
    n = len(terrain) - 1
    geom = make_geometry(
        d_km, tx_h, rx_h, f_mhz, k, tx_elev=terrain[0], rx_elev=terrain[-1]
    )
    distances = [d_km * i / n for i in range(n + 1)]
    return assemble_profile(geom, distances, list(terrain))


def grazing_hill_profile(
    n=101, d_km=10.0, tx_h=30.0, f_mhz=5800.0, k=4.0 / 3.0, hill_at=None, extra_m=0.0
):
    """Flat terrain with one sharp hill whose top sits exactly on the ray
    (minus earth bulge), plus extra_m above it."""
    from botrf.profile import earth_bulge_m

    hill_at = n // 2 if hill_at is None else hill_at
    terrain = [0.0] * (n + 1)
    d = d_km * hill_at / n
    bulge = earth_bulge_m(d, d_km - d, k)
    terrain[hill_at] = tx_h - bulge + extra_m  # equal antennas: ray height == tx_h
    return synthetic_profile(terrain, d_km, tx_h, tx_h, f_mhz, k)
