"""Path-loss models: exact free-space loss, a multi-knife-edge baseline,
and the Longley-Rice irregular-terrain point-to-point model.

All models share one result contract; terrain shielding is always the
model loss minus free-space loss and may be negative (a smooth-earth
line-of-sight path can beat the free-space reference slightly).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from . import itm
from .errors import UnsupportedFrequencyError
from .profile import (
    CLEAR_FRACTION,
    FREQ_MAX_MHZ,
    FREQ_MIN_MHZ,
    TerrainProfile,
)
from .units import freq_to_wavelength

# Below this diffraction parameter a knife edge contributes no loss.
NU_FLOOR = -0.78
# At most one principal edge plus one secondary edge on each side.
MAX_EDGES = 3


class PropagationMode(Enum):
    LINE_OF_SIGHT = "Line-Of-Sight"
    SINGLE_HORIZON = "Single Horizon"
    DOUBLE_HORIZON = "Double Horizon"
    DIFFRACTION = "Diffraction"
    TROPOSCATTER = "Troposcatter"


class LossModel(Enum):
    FSPL = "fspl"
    KNIFE_EDGE = "ke"
    ITM = "itm"


@dataclass(frozen=True)
class PathLossResult:
    fspl_db: float
    model_loss_db: float
    shielding_db: float
    mode: PropagationMode
    model: LossModel


@dataclass(frozen=True)
class ItmParams:
    """Longley-Rice environment parameters. Defaults are the customary
    point-to-point set: average ground, continental temperate climate,
    median reliability and confidence."""

    surface_refractivity: float = 301.0
    rel_permittivity: float = 15.0
    conductivity: float = 0.005
    climate: int = 5
    polarization: str = "vertical"
    reliability: float = 0.5
    confidence: float = 0.5

    def __post_init__(self):
        if not 1 <= self.climate <= 7:
            raise ValueError("climate code must be 1..7")
        if self.polarization not in ("horizontal", "vertical"):
            raise ValueError("polarization must be 'horizontal' or 'vertical'")
        for frac in (self.reliability, self.confidence):
            if not 0.0 < frac < 1.0:
                raise ValueError("reliability/confidence must lie strictly in (0, 1)")


def fspl_db(d_km: float, f_mhz: float) -> float:
    """Free-space path loss in dB for distance in km, frequency in MHz."""
    if d_km <= 0 or f_mhz <= 0:
        raise ValueError("distance and frequency must be positive")
    return 32.45 + 20.0 * math.log10(d_km) + 20.0 * math.log10(f_mhz)


def knife_edge_v(h_m: float, d1_km: float, d2_km: float, f_mhz: float) -> float:
    """Dimensionless diffraction parameter for an obstacle h meters above
    (positive) or below (negative) the ray, d1/d2 km from the ends."""
    if d1_km <= 0 or d2_km <= 0:
        raise ValueError("edge must lie strictly between the endpoints")
    wl = freq_to_wavelength(f_mhz)
    d1 = d1_km * 1000.0
    d2 = d2_km * 1000.0
    return h_m * math.sqrt(2.0 * (d1 + d2) / (wl * d1 * d2))


def knife_edge_loss_db(v: float) -> float:
    """Single knife-edge diffraction loss (ITU-R P.526 approximation);
    6.03 dB at grazing (v = 0), zero below v = -0.78."""
    if v <= NU_FLOOR:
        return 0.0
    return 6.9 + 20.0 * math.log10(math.sqrt((v - 0.1) ** 2 + 1.0) + v - 0.1)


def _edge_v(
    p: TerrainProfile,
    i: int,
    a: int,
    b: int,
    za: float,
    zb: float,
) -> float:
    """Diffraction parameter of point i against the ray joining the
    segment terminals (a, za) and (b, zb); heights include earth bulge."""
    pts = p.points
    da = pts[a].distance_km
    db = pts[b].distance_km
    d = pts[i].distance_km
    ray = za + (zb - za) * (d - da) / (db - da)
    h = (pts[i].terrain_m + pts[i].bulge_m) - ray
    return knife_edge_v(h, d - da, db - d, p.geometry.frequency_mhz)


def _dominant_edge(
    p: TerrainProfile, a: int, b: int, za: float, zb: float
) -> tuple[int, float] | None:
    """Index and v of the strongest edge strictly inside (a, b), if any
    rises above the no-loss floor."""
    best_i = -1
    best_v = -math.inf
    for i in range(a + 1, b):
        v = _edge_v(p, i, a, b, za, zb)
        if v > best_v:
            best_v = v
            best_i = i
    if best_i < 0 or best_v <= NU_FLOOR:
        return None
    return best_i, best_v


def baseline_loss(p: TerrainProfile) -> PathLossResult:
    """Free-space loss plus up to MAX_EDGES knife-edge contributions.

    The principal edge is the dominant-v point against the TX-RX ray;
    one secondary edge may then be found on each side, evaluated against
    the ray joining its segment terminals (antenna or principal edge top).
    """
    pts = p.points
    last = len(pts) - 1
    fspl = fspl_db(p.total_distance_km, p.geometry.frequency_mhz)

    edge_losses: list[float] = []
    main = _dominant_edge(p, 0, last, pts[0].los_m, pts[last].los_m)
    if main is not None:
        i_main, v_main = main
        edge_losses.append(knife_edge_loss_db(v_main))
        apex = pts[i_main].terrain_m + pts[i_main].bulge_m
        for a, b, za, zb in (
            (0, i_main, pts[0].los_m, apex),
            (i_main, last, apex, pts[last].los_m),
        ):
            if b - a < 2 or len(edge_losses) >= MAX_EDGES:
                continue
            side = _dominant_edge(p, a, b, za, zb)
            if side is not None:
                edge_losses.append(knife_edge_loss_db(side[1]))

    model_loss = fspl + sum(edge_losses)
    worst = min(pt.clearance_fraction for pt in p.interior())
    mode = (
        PropagationMode.LINE_OF_SIGHT
        if worst >= CLEAR_FRACTION
        else PropagationMode.DIFFRACTION
    )
    return PathLossResult(
        fspl_db=fspl,
        model_loss_db=model_loss,
        shielding_db=model_loss - fspl,
        mode=mode,
        model=LossModel.KNIFE_EDGE,
    )


def free_space_loss(p: TerrainProfile) -> PathLossResult:
    """Free-space reference with no terrain interaction at all."""
    fspl = fspl_db(p.total_distance_km, p.geometry.frequency_mhz)
    return PathLossResult(
        fspl_db=fspl,
        model_loss_db=fspl,
        shielding_db=0.0,
        mode=PropagationMode.LINE_OF_SIGHT,
        model=LossModel.FSPL,
    )


_ITM_MODE = {
    "los": PropagationMode.LINE_OF_SIGHT,
    "single-horizon": PropagationMode.SINGLE_HORIZON,
    "double-horizon": PropagationMode.DOUBLE_HORIZON,
}


def itm_loss(p: TerrainProfile, params: ItmParams = ItmParams()) -> PathLossResult:
    """Longley-Rice point-to-point attenuation over the profile."""
    f = p.geometry.frequency_mhz
    if not FREQ_MIN_MHZ <= f <= FREQ_MAX_MHZ:
        raise UnsupportedFrequencyError(
            f"frequency {f} MHz outside [{FREQ_MIN_MHZ:g}, {FREQ_MAX_MHZ:g}] MHz"
        )
    if len(p.points) < 4:
        raise ValueError("profile needs at least 2 interior points for the ITM")

    result = itm.point_to_point(
        heights_m=[pt.terrain_m for pt in p.points],
        spacing_m=p.sample_spacing_m,
        tx_height_m=p.geometry.tx_antenna_agl_m,
        rx_height_m=p.geometry.rx_antenna_agl_m,
        frequency_mhz=f,
        surface_refractivity=params.surface_refractivity,
        rel_permittivity=params.rel_permittivity,
        conductivity=params.conductivity,
        climate=params.climate,
        polarization=params.polarization,
        reliability=params.reliability,
        confidence=params.confidence,
    )
    fspl = fspl_db(p.total_distance_km, f)
    if result.horizon_case != "los" and result.scatter_dominant:
        mode = PropagationMode.TROPOSCATTER
    else:
        mode = _ITM_MODE[result.horizon_case]
    return PathLossResult(
        fspl_db=fspl,
        model_loss_db=result.loss_db,
        shielding_db=result.loss_db - fspl,
        mode=mode,
        model=LossModel.ITM,
    )


def compute_loss(
    p: TerrainProfile,
    model: LossModel = LossModel.ITM,
    params: ItmParams = ItmParams(),
) -> PathLossResult:
    """Dispatch to the requested loss model."""
    if model is LossModel.ITM:
        return itm_loss(p, params)
    if model is LossModel.KNIFE_EDGE:
        return baseline_loss(p)
    return free_space_loss(p)
