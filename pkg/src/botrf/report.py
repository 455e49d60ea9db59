"""Plain-text link report rendering for the `rep` command."""

from __future__ import annotations

from dataclasses import dataclass

from .geodesy import GeoPoint, initial_azimuth_deg
from .profile import (
    ClearanceClass,
    ClearanceVerdict,
    LinkGeometry,
    TerrainProfile,
    pointing_angles_for_profile,
)
from .propagation import LossModel, PathLossResult

_MODEL_LOSS_LABEL = {
    LossModel.ITM: "Longley-Rice path loss",
    LossModel.KNIFE_EDGE: "Knife-edge path loss",
    LossModel.FSPL: "Free space path loss",
}


def format_location(p: GeoPoint) -> str:
    """Hemisphere-worded coordinates, 4 decimals: '8.5931 North / 71.1469 West'."""
    ns = "North" if p.lat_deg >= 0 else "South"
    ew = "East" if p.lon_deg >= 0 else "West"
    return f"{abs(p.lat_deg):.4f} {ns} / {abs(p.lon_deg):.4f} {ew}"


def _angle_line(angle_1dp: float) -> str:
    angle_1dp += 0.0  # normalize -0.0 so the sign matches the label
    label = "Elevation angle" if angle_1dp >= 0 else "Depression angle"
    return f"{label}: {angle_1dp:+.1f} degrees"


@dataclass(frozen=True)
class LinkReport:
    """Numeric report fields, already rounded to their display precision,
    plus the rendered text."""

    tx_name: str
    rx_name: str
    tx_location: str
    rx_location: str
    tx_elevation_m: int
    rx_elevation_m: int
    tx_antenna_agl_m: float
    rx_antenna_agl_m: float
    distance_km: float
    azimuth_forward_deg: float
    azimuth_reverse_deg: float
    tx_angle_deg: float
    rx_angle_deg: float
    fspl_db: float
    model_loss_db: float
    shielding_db: float
    mode: str
    clearance_line: str
    text: str


def generate_report(
    geom: LinkGeometry,
    profile: TerrainProfile,
    loss: PathLossResult,
    verdict: ClearanceVerdict,
) -> LinkReport:
    """Render the full link report with the canonical field set."""
    tx, rx = geom.tx_site, geom.rx_site
    angles = pointing_angles_for_profile(profile)

    distance = round(profile.total_distance_km, 2)
    az_fwd = round(initial_azimuth_deg(tx.point, rx.point), 1)
    az_rev = round(initial_azimuth_deg(rx.point, tx.point), 1)
    tx_angle = round(angles.tx_elevation_deg, 1)
    rx_angle = round(angles.rx_elevation_deg, 1)
    fspl = round(loss.fspl_db, 2)
    model_loss = round(loss.model_loss_db, 2)
    shielding = round(loss.model_loss_db - loss.fspl_db, 2)
    tx_elev = round(profile.tx_ground_m)
    rx_elev = round(profile.rx_ground_m)

    if verdict.clearance_class is ClearanceClass.CLEAR:
        clearance_line = "The first Fresnel zone is clear."
        clearance_block = (
            "No obstructions to LOS due to terrain were detected:\n" + clearance_line
        )
    else:
        blocked_pct = round((1.0 - verdict.worst_fraction) * 100.0)
        clearance_line = (
            f"Obstruction at {verdict.worst_distance_km:.2f} km: "
            f"{blocked_pct}% of first Fresnel zone blocked."
        )
        clearance_block = clearance_line

    lines = [
        f"Transmitter site: {tx.name}",
        f"Site location: {format_location(tx.point)}",
        f"Elevation: {tx_elev} m above sea level",
        f"Antenna height: {geom.tx_antenna_agl_m:g} m above ground",
        f"Distance to {rx.name}: {distance:.2f} km",
        f"Azimuth to {rx.name}: {az_fwd:.1f} degrees",
        _angle_line(tx_angle),
        "",
        f"Receiver site: {rx.name}",
        f"Site location: {format_location(rx.point)}",
        f"Elevation: {rx_elev} m above sea level",
        f"Antenna height: {geom.rx_antenna_agl_m:g} m above ground",
        f"Distance to {tx.name}: {distance:.2f} km",
        f"Azimuth to {tx.name}: {az_rev:.1f} degrees",
        _angle_line(rx_angle),
        "",
        f"Free space path loss: {fspl:.2f} dB",
        f"{_MODEL_LOSS_LABEL[loss.model]}: {model_loss:.2f} dB",
        f"Attenuation due to terrain shielding: {shielding:.2f} dB",
        f"Mode of propagation: {loss.mode.value}",
        "",
        clearance_block,
    ]

    return LinkReport(
        tx_name=tx.name,
        rx_name=rx.name,
        tx_location=format_location(tx.point),
        rx_location=format_location(rx.point),
        tx_elevation_m=tx_elev,
        rx_elevation_m=rx_elev,
        tx_antenna_agl_m=geom.tx_antenna_agl_m,
        rx_antenna_agl_m=geom.rx_antenna_agl_m,
        distance_km=distance,
        azimuth_forward_deg=az_fwd,
        azimuth_reverse_deg=az_rev,
        tx_angle_deg=tx_angle,
        rx_angle_deg=rx_angle,
        fspl_db=fspl,
        model_loss_db=model_loss,
        shielding_db=shielding,
        mode=loss.mode.value,
        clearance_line=clearance_line,
        text="\n".join(lines) + "\n",
    )
