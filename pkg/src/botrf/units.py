"""Power, field-strength and frequency/wavelength conversions.

These back the `cnv` command and the /api/convert endpoint. All
functions are pure and safe for concurrent callers.
"""

from __future__ import annotations

import math

# Speed of light expressed as MHz * m, so wavelength_m = C_MHZ_M / f_mhz.
C_MHZ_M = 299.792458

# Field strength at an isotropic antenna: p_dbm = e_dbuv_m - 20 log10(f_mhz)
# minus this constant (conventional EMC value; the aperture derivation
# P = E**2 * lambda**2 / (480 pi**2) gives 77.2195).
DBUV_M_TO_DBM_CONST = 77.216


def mw_to_dbm(p_mw: float) -> float:
    """Convert power in milliwatts to dBm.

    Raises ValueError for non-positive power.
    """
    if p_mw <= 0:
        raise ValueError(f"power must be positive, got {p_mw} mW")
    return 10.0 * math.log10(p_mw)


def dbm_to_mw(p_dbm: float) -> float:
    """Convert power in dBm to milliwatts."""
    return 10.0 ** (p_dbm / 10.0)


def freq_to_wavelength(f_mhz: float) -> float:
    """Wavelength in meters for a frequency in MHz.

    Raises ValueError for non-positive frequency.
    """
    if f_mhz <= 0:
        raise ValueError(f"frequency must be positive, got {f_mhz} MHz")
    return C_MHZ_M / f_mhz


def wavelength_to_freq(wl_m: float) -> float:
    """Frequency in MHz for a wavelength in meters.

    Raises ValueError for non-positive wavelength.
    """
    if wl_m <= 0:
        raise ValueError(f"wavelength must be positive, got {wl_m} m")
    return C_MHZ_M / wl_m


def dbuv_per_m_to_dbm(e_dbuv_m: float, f_mhz: float) -> float:
    """Field strength (dBuV/m) to the power a lossless isotropic antenna
    captures (dBm) at the given frequency.

    Raises ValueError for non-positive frequency.
    """
    if f_mhz <= 0:
        raise ValueError(f"frequency must be positive, got {f_mhz} MHz")
    return e_dbuv_m - 20.0 * math.log10(f_mhz) - DBUV_M_TO_DBM_CONST
