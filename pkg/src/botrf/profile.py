"""Terrain profile construction and clearance analysis for a radio link.

A profile samples the great-circle path between two sites, attaches
earth bulge for the chosen K-factor, the straight TX-RX ray, the first
Fresnel zone radius, and the per-point clearance fraction
(ray height - terrain - bulge) / F1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .dem import TileCache
from .errors import PathTooShortError, UnsupportedFrequencyError
from .geodesy import EARTH_RADIUS_KM, EARTH_RADIUS_M, distance_km, point_at_fraction
from .sitestore import Site
from .units import freq_to_wavelength

FREQ_MIN_MHZ = 20.0
FREQ_MAX_MHZ = 20000.0
DEFAULT_K_FACTOR = 4.0 / 3.0
DEFAULT_SPACING_M = 30.0

# Clearance classification thresholds (fractions of the first Fresnel
# radius). CLEAR implements the 60% clearance rule; GRAZING brackets the
# ray just touching terrain.
CLEAR_FRACTION = 0.6
PARTIAL_FLOOR = 0.1
GRAZING_FLOOR = -0.1


class ClearanceClass(Enum):
    CLEAR = "CLEAR"
    PARTIAL = "PARTIAL"
    GRAZING = "GRAZING"
    OBSTRUCTED = "OBSTRUCTED"


@dataclass(frozen=True)
class LinkGeometry:
    """Everything that defines a point-to-point link's geometry."""

    tx_site: Site
    rx_site: Site
    tx_antenna_agl_m: float
    rx_antenna_agl_m: float
    frequency_mhz: float
    k_factor: float = DEFAULT_K_FACTOR

    def __post_init__(self):
        if self.tx_antenna_agl_m <= 0 or self.rx_antenna_agl_m <= 0:
            raise ValueError("antenna heights must be positive")
        if not FREQ_MIN_MHZ <= self.frequency_mhz <= FREQ_MAX_MHZ:
            raise UnsupportedFrequencyError(
                f"frequency {self.frequency_mhz} MHz outside supported band "
                f"[{FREQ_MIN_MHZ:g}, {FREQ_MAX_MHZ:g}] MHz"
            )
        if self.k_factor <= 0:
            raise ValueError("k factor must be positive")

    @property
    def total_distance_km(self) -> float:
        return distance_km(self.tx_site.point, self.rx_site.point)


@dataclass(frozen=True)
class ProfilePoint:
    distance_km: float
    terrain_m: float
    bulge_m: float
    los_m: float
    fresnel1_m: float
    clearance_fraction: float


@dataclass
class TerrainProfile:
    geometry: LinkGeometry
    points: list[ProfilePoint]
    sample_spacing_m: float
    tx_ground_m: float = field(init=False)
    rx_ground_m: float = field(init=False)

    def __post_init__(self):
        self.tx_ground_m = self.points[0].terrain_m
        self.rx_ground_m = self.points[-1].terrain_m

    @property
    def total_distance_km(self) -> float:
        return self.points[-1].distance_km

    def interior(self) -> list[ProfilePoint]:
        return self.points[1:-1]


@dataclass(frozen=True)
class ClearanceVerdict:
    worst_fraction: float
    worst_distance_km: float
    clearance_class: ClearanceClass


@dataclass(frozen=True)
class PointingAngles:
    tx_elevation_deg: float
    rx_elevation_deg: float


def earth_bulge_m(d1_km: float, d2_km: float, k: float) -> float:
    """Earth-curvature rise in meters at a point d1/d2 km from the ends,
    with the effective radius scaled by the K-factor."""
    if k <= 0:
        raise ValueError("k factor must be positive")
    if d1_km < 0 or d2_km < 0:
        raise ValueError("distances must be non-negative")
    return 1000.0 * d1_km * d2_km / (2.0 * k * EARTH_RADIUS_KM)


def fresnel_radius_m(d1_km: float, d2_km: float, f_mhz: float) -> float:
    """First Fresnel zone radius in meters at d1 km from one end, d2 km
    from the other."""
    if d1_km + d2_km <= 0:
        raise ValueError("path length must be positive")
    if d1_km <= 0 or d2_km <= 0:
        return 0.0
    wl = freq_to_wavelength(f_mhz)
    d1 = d1_km * 1000.0
    d2 = d2_km * 1000.0
    return math.sqrt(wl * d1 * d2 / (d1 + d2))


def assemble_profile(
    geom: LinkGeometry,
    distances_km: list[float],
    terrain_m: list[float],
) -> TerrainProfile:
    """Attach bulge, ray, Fresnel radius and clearance to sampled terrain.

    `distances_km` must be strictly increasing from 0 to the path length;
    endpoint clearance is the +inf sentinel so endpoints never dominate
    clearance statistics.
    """
    if len(distances_km) != len(terrain_m):
        raise ValueError("distances and terrain arrays must be the same length")
    if len(distances_km) < 3:
        raise PathTooShortError("profile needs at least 3 sample points")

    total_km = distances_km[-1]
    tx_total = terrain_m[0] + geom.tx_antenna_agl_m
    rx_total = terrain_m[-1] + geom.rx_antenna_agl_m
    last = len(distances_km) - 1

    points = []
    for i, (d, z) in enumerate(zip(distances_km, terrain_m)):
        t = d / total_km
        los = tx_total + (rx_total - tx_total) * t
        bulge = earth_bulge_m(d, total_km - d, geom.k_factor)
        f1 = fresnel_radius_m(d, total_km - d, geom.frequency_mhz)
        if i == 0 or i == last:
            clearance = math.inf
        else:
            clearance = (los - z - bulge) / f1
        points.append(
            ProfilePoint(
                distance_km=d,
                terrain_m=z,
                bulge_m=bulge,
                los_m=los,
                fresnel1_m=f1,
                clearance_fraction=clearance,
            )
        )

    spacing_m = total_km * 1000.0 / last
    return TerrainProfile(geometry=geom, points=points, sample_spacing_m=spacing_m)


def build_profile(
    geom: LinkGeometry,
    dem: TileCache,
    spacing_m: float = DEFAULT_SPACING_M,
) -> TerrainProfile:
    """Sample the DEM along the great circle between the two sites."""
    if not 10.0 <= spacing_m <= 1000.0:
        raise ValueError("sample spacing must be within [10, 1000] m")
    a = geom.tx_site.point
    b = geom.rx_site.point
    total_km = distance_km(a, b)
    total_m = total_km * 1000.0
    if total_m < 2.0 * spacing_m:
        raise PathTooShortError(
            f"path of {total_m:.0f} m is too short to sample at {spacing_m:.0f} m"
        )

    segments = math.ceil(total_m / spacing_m)
    distances = []
    terrain = []
    for i in range(segments + 1):
        t = i / segments
        p = point_at_fraction(a, b, t)
        distances.append(total_km * t)
        terrain.append(dem.elevation_at(p))
    return assemble_profile(geom, distances, terrain)


def analyze_clearance(
    p: TerrainProfile,
    clear_fraction: float = CLEAR_FRACTION,
    partial_floor: float = PARTIAL_FLOOR,
    grazing_floor: float = GRAZING_FLOOR,
) -> ClearanceVerdict:
    """Worst interior Fresnel clearance and its classification."""
    if len(p.points) < 3:
        raise ValueError("profile must have at least 3 points")

    worst = min(p.interior(), key=lambda pt: pt.clearance_fraction)
    frac = worst.clearance_fraction
    if frac >= clear_fraction:
        cls = ClearanceClass.CLEAR
    elif frac >= partial_floor:
        cls = ClearanceClass.PARTIAL
    elif frac > grazing_floor:
        cls = ClearanceClass.GRAZING
    else:
        cls = ClearanceClass.OBSTRUCTED
    return ClearanceVerdict(
        worst_fraction=frac,
        worst_distance_km=worst.distance_km,
        clearance_class=cls,
    )


def _pointing_angles(
    tx_total_m: float, rx_total_m: float, d_m: float, k: float
) -> PointingAngles:
    if d_m <= 0:
        raise ValueError("pointing angles undefined for zero-length path")
    dh = rx_total_m - tx_total_m
    curvature = d_m / (2.0 * k * EARTH_RADIUS_M)
    tx = math.degrees(math.atan(dh / d_m) - curvature)
    rx = math.degrees(math.atan(-dh / d_m) - curvature)
    return PointingAngles(tx_elevation_deg=tx, rx_elevation_deg=rx)


def pointing_angles_deg(geom: LinkGeometry) -> PointingAngles:
    """Antenna elevation (positive up) at each end: geometric tilt to the
    far antenna minus the earth-curvature term D / (2 K R)."""
    tx_ground = geom.tx_site.ground_elevation_m
    rx_ground = geom.rx_site.ground_elevation_m
    if tx_ground is None or rx_ground is None:
        raise ValueError("site ground elevation unknown; DEM data required")
    return _pointing_angles(
        tx_ground + geom.tx_antenna_agl_m,
        rx_ground + geom.rx_antenna_agl_m,
        geom.total_distance_km * 1000.0,
        geom.k_factor,
    )


def pointing_angles_for_profile(p: TerrainProfile) -> PointingAngles:
    """Pointing angles using the profile's own endpoint ground heights."""
    geom = p.geometry
    return _pointing_angles(
        p.tx_ground_m + geom.tx_antenna_agl_m,
        p.rx_ground_m + geom.rx_antenna_agl_m,
        p.total_distance_km * 1000.0,
        geom.k_factor,
    )
