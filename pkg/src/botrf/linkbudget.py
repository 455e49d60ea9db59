"""EIRP, received power and margin arithmetic behind the `pow` command."""

from __future__ import annotations

from dataclasses import dataclass

from .profile import TerrainProfile
from .propagation import PathLossResult, fspl_db


@dataclass(frozen=True)
class RadioParams:
    """Radio chain as entered by the user, in the `pow` argument order."""

    tx_power_dbm: float
    tx_cable_loss_db: float
    tx_antenna_gain_dbi: float
    rx_antenna_gain_dbi: float
    rx_cable_loss_db: float
    rx_sensitivity_dbm: float

    def __post_init__(self):
        if self.tx_cable_loss_db < 0 or self.rx_cable_loss_db < 0:
            raise ValueError("cable losses are entered as non-negative numbers")


@dataclass(frozen=True)
class LinkBudget:
    eirp_dbm: float
    path_loss_db: float
    rx_power_dbm: float
    margin_db: float


def eirp_dbm(r: RadioParams) -> float:
    """Equivalent isotropic radiated power."""
    return r.tx_power_dbm - r.tx_cable_loss_db + r.tx_antenna_gain_dbi


def budget(r: RadioParams, path_loss_db: float) -> LinkBudget:
    """Link budget for the given path loss."""
    if path_loss_db <= 0:
        raise ValueError("path loss must be positive")
    eirp = eirp_dbm(r)
    rx_power = eirp - path_loss_db + r.rx_antenna_gain_dbi - r.rx_cable_loss_db
    return LinkBudget(
        eirp_dbm=eirp,
        path_loss_db=path_loss_db,
        rx_power_dbm=rx_power,
        margin_db=rx_power - r.rx_sensitivity_dbm,
    )


def power_along_path(
    r: RadioParams,
    p: TerrainProfile,
    loss: PathLossResult,
) -> list[tuple[float, float]]:
    """Received level versus distance: free-space taper between the EIRP
    at the transmitter and the delivered power at the receiver.

    Interior points assume free-space spreading to that distance (through
    the receive chain); the final point is the budget's received power
    under the supplied model loss.
    """
    f = p.geometry.frequency_mhz
    eirp = eirp_dbm(r)
    rx_chain = r.rx_antenna_gain_dbi - r.rx_cable_loss_db
    final = budget(r, loss.model_loss_db)

    series: list[tuple[float, float]] = [(0.0, eirp)]
    for pt in p.points[1:-1]:
        series.append((pt.distance_km, eirp - fspl_db(pt.distance_km, f) + rx_chain))
    series.append((p.total_distance_km, final.rx_power_dbm))
    return series
