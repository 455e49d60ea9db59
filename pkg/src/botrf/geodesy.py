"""Great-circle geometry on a spherical earth.

Distances, forward azimuths and intermediate-point sampling between
latitude/longitude pairs. Spherical model (R = 6371.0088 km): over the
sub-100 km paths this engine plans, the ellipsoidal correction is far
below DEM error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

EARTH_RADIUS_KM = 6371.0088
EARTH_RADIUS_M = EARTH_RADIUS_KM * 1000.0


@dataclass(frozen=True)
class GeoPoint:
    """A latitude/longitude pair in degrees (west longitude negative)."""

    lat_deg: float
    lon_deg: float

    def __post_init__(self):
        if not (math.isfinite(self.lat_deg) and math.isfinite(self.lon_deg)):
            raise ValueError("coordinates must be finite")
        if not -90.0 <= self.lat_deg <= 90.0:
            raise ValueError(f"latitude {self.lat_deg} outside [-90, 90]")
        if not -180.0 <= self.lon_deg < 180.0:
            raise ValueError(f"longitude {self.lon_deg} outside [-180, 180)")


def distance_km(a: GeoPoint, b: GeoPoint) -> float:
    """Great-circle distance in km (haversine; symmetric in a, b)."""
    la1, lo1 = math.radians(a.lat_deg), math.radians(a.lon_deg)
    la2, lo2 = math.radians(b.lat_deg), math.radians(b.lon_deg)
    sdlat = math.sin((la2 - la1) / 2.0)
    sdlon = math.sin((lo2 - lo1) / 2.0)
    h = sdlat * sdlat + math.cos(la1) * math.cos(la2) * sdlon * sdlon
    return 2.0 * EARTH_RADIUS_KM * math.asin(min(1.0, math.sqrt(h)))


def initial_azimuth_deg(a: GeoPoint, b: GeoPoint) -> float:
    """Forward azimuth at `a` toward `b`, degrees clockwise from true north.

    Raises ValueError for coincident points (azimuth undefined).
    """
    if a.lat_deg == b.lat_deg and a.lon_deg == b.lon_deg:
        raise ValueError("azimuth undefined for coincident points")
    la1, la2 = math.radians(a.lat_deg), math.radians(b.lat_deg)
    dlon = math.radians(b.lon_deg - a.lon_deg)
    y = math.sin(dlon) * math.cos(la2)
    x = math.cos(la1) * math.sin(la2) - math.sin(la1) * math.cos(la2) * math.cos(dlon)
    return math.degrees(math.atan2(y, x)) % 360.0


def point_at_fraction(a: GeoPoint, b: GeoPoint, t: float) -> GeoPoint:
    """Point at fraction t in [0, 1] along the great circle from a to b.

    Spherical linear interpolation; t=0 gives a, t=1 gives b.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"fraction {t} outside [0, 1]")
    if t == 0.0:
        return a
    if t == 1.0:
        return b

    la1, lo1 = math.radians(a.lat_deg), math.radians(a.lon_deg)
    la2, lo2 = math.radians(b.lat_deg), math.radians(b.lon_deg)
    delta = distance_km(a, b) / EARTH_RADIUS_KM
    if delta == 0.0:
        return a

    sd = math.sin(delta)
    fa = math.sin((1.0 - t) * delta) / sd
    fb = math.sin(t * delta) / sd
    x = fa * math.cos(la1) * math.cos(lo1) + fb * math.cos(la2) * math.cos(lo2)
    y = fa * math.cos(la1) * math.sin(lo1) + fb * math.cos(la2) * math.sin(lo2)
    z = fa * math.sin(la1) + fb * math.sin(la2)
    lat = math.atan2(z, math.hypot(x, y))
    lon = math.atan2(y, x)
    lon_deg = math.degrees(lon)
    if lon_deg >= 180.0:
        lon_deg -= 360.0
    return GeoPoint(math.degrees(lat), lon_deg)
