"""Longley-Rice irregular-terrain model, point-to-point mode.

Port of the public-domain reference algorithm (NTIA, version 1.2.2
lineage). Given an equally spaced terrain profile between two antennas,
it derives horizon geometry, terrain irregularity and effective heights,
then combines smooth-earth/two-ray line-of-sight, double-knife-edge plus
smooth-earth diffraction, and forward-scatter attenuation, and applies
the climate/variability statistics for the requested reliability and
confidence.

Distances are meters, heights meters, frequency MHz. The returned loss
includes free-space loss.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

_THIRD = 1.0 / 3.0
# Wavenumber unit: carrier frequency in MHz divided by this is 2*pi/lambda in 1/m.
_F0_MHZ_M = 47.7
# Standard earth curvature (1/m) before refractivity scaling.
_GMA = 157e-9


def _dim(x: float, y: float) -> float:
    """Positive difference (FORTRAN DIM intrinsic)."""
    return x - y if x > y else 0.0


def _qerfi(q: float) -> float:
    """Inverse of the complementary normal distribution (approximation)."""
    c0, c1, c2 = 2.515516698, 0.802853, 0.010328
    d1, d2, d3 = 1.432788, 0.189269, 0.001308
    x = 0.5 - q
    t = max(0.5 - abs(x), 0.000001)
    t = math.sqrt(-2.0 * math.log(t))
    v = t - ((c2 * t + c1) * t + c0) / (((d3 * t + d2) * t + d1) * t + 1.0)
    return -v if x < 0.0 else v


def _knife_edge_db(v2: float) -> float:
    """Knife-edge attenuation as a function of v squared."""
    if v2 < 5.76:
        return 6.02 + 9.11 * math.sqrt(v2) - 1.27 * v2
    return 12.953 + 4.343 * math.log(v2)


def _height_gain_db(x: float, pk: float) -> float:
    """Smooth-earth height-gain function F(x, K)."""
    if x < 200.0:
        w = -math.log(pk)
        if pk < 1.0e-5 or x * w * w * w > 5495.0:
            fhtv = -117.0
            if x > 1.0:
                fhtv = 17.372 * math.log(x) + fhtv
        else:
            fhtv = 2.5e-5 * x * x / pk - 8.686 * w - 15.0
    else:
        fhtv = 0.05751 * x - 4.343 * math.log(x)
        if x < 2000.0:
            w = 0.0134 * x * math.exp(-0.005 * x)
            fhtv = (1.0 - w) * fhtv + w * (17.372 * math.log(x) - 117.0)
    return fhtv


_H0F_A = (25.0, 80.0, 177.0, 395.0, 705.0)
_H0F_B = (24.0, 45.0, 68.0, 80.0, 105.0)


def _scatter_h0_db(r: float, et: float) -> float:
    """Scatter frequency-gain function H0 for one terminal."""
    it = int(et)
    if it <= 0:
        it, q = 1, 0.0
    elif it >= 5:
        it, q = 5, 0.0
    else:
        q = et - it
    x = (1.0 / r) ** 2
    h0fv = 4.343 * math.log((_H0F_A[it - 1] * x + _H0F_B[it - 1]) * x + 1.0)
    if q != 0.0:
        h0fv = (1.0 - q) * h0fv + q * 4.343 * math.log(
            (_H0F_A[it] * x + _H0F_B[it]) * x + 1.0
        )
    return h0fv


def _scatter_f_theta_d_db(td: float) -> float:
    """Scatter attenuation function F(theta*d)."""
    if td <= 10e3:
        i = 0
    elif td <= 70e3:
        i = 1
    else:
        i = 2
    a = (133.4, 104.6, 71.8)
    b = (0.332e-3, 0.212e-3, 0.157e-3)
    c = (-4.343, -1.086, 2.171)
    return a[i] + b[i] * td + c[i] * math.log(td)


def _curve(c1, c2, x1, x2, x3, de):
    t1 = ((de - x2) / x3) ** 2
    t2 = (de / x1) ** 2
    return (c1 + c2 / (1.0 + t1)) * t2 / (1.0 + t2)


def _linear_fit(pfl: list[float], x1: float, x2: float) -> tuple[float, float]:
    """Weighted least-squares line through the profile piece between
    distances x1..x2; returns the fitted heights at distance 0 and at
    the far end of the whole profile."""
    xn = pfl[0]
    xa = float(int(_dim(x1 / pfl[1], 0.0)))
    xb = xn - float(int(_dim(xn, x2 / pfl[1])))
    if xb <= xa:
        xa = _dim(xa, 1.0)
        xb = xn - _dim(xn, xb + 1.0)
    ja = int(xa)
    jb = int(xb)
    n = jb - ja
    xa = xb - xa
    x = -0.5 * xa
    xb += x
    a = 0.5 * (pfl[ja + 2] + pfl[jb + 2])
    b = 0.5 * (pfl[ja + 2] - pfl[jb + 2]) * x
    for _ in range(2, n + 1):
        ja += 1
        x += 1.0
        a += pfl[ja + 2]
        b += pfl[ja + 2] * x
    a /= xa
    b = b * 12.0 / ((xa * xa + 2.0) * xa)
    return a - b * xb, a + b * (xn - xb)


def _delta_h(pfl: list[float], x1: float, x2: float) -> float:
    """Interdecile terrain irregularity over the interval, extrapolated
    to the model's asymptotic path length."""
    np_ = int(pfl[0])
    xa = x1 / pfl[1]
    xb = x2 / pfl[1]
    if xb - xa < 2.0:
        return 0.0

    ka = int(0.1 * (xb - xa + 8.0))
    ka = min(max(4, ka), 25)
    n = 10 * ka - 5
    kb = n - ka + 1
    sn = float(n - 1)
    xb = (xb - xa) / sn
    k = int(xa + 1.0)
    xa -= float(k)

    s = [0.0] * (n + 2)
    s[0] = sn
    s[1] = 1.0
    for j in range(n):
        while xa > 0.0 and k < np_:
            xa -= 1.0
            k += 1
        s[j + 2] = pfl[k + 2] + (pfl[k + 2] - pfl[k + 1]) * xa
        xa += xb

    z0, zn = _linear_fit(s, 0.0, sn)
    xb = (zn - z0) / sn
    xa = z0
    for j in range(n):
        s[j + 2] -= xa
        xa += xb

    ordered = sorted(s[2 : n + 2], reverse=True)
    dh = ordered[ka - 1] - ordered[kb - 1]
    return dh / (1.0 - 0.8 * math.exp(-(x2 - x1) / 50.0e3))


@dataclass
class _Prop:
    """Path state shared by the submodels (reference `prop`/`propa`)."""

    dist: float = 0.0
    hg: list = field(default_factory=lambda: [0.0, 0.0])
    wn: float = 0.0
    dh: float = 0.0
    ens: float = 0.0
    gme: float = 0.0
    zgnd: complex = 0j
    he: list = field(default_factory=lambda: [0.0, 0.0])
    dl: list = field(default_factory=lambda: [0.0, 0.0])
    the: list = field(default_factory=lambda: [0.0, 0.0])
    kwx: int = 0
    mdp: int = -1
    aref: float = 0.0
    # Aggregates filled in by the loss selection stage.
    dls: list = field(default_factory=lambda: [0.0, 0.0])
    dlsa: float = 0.0
    dla: float = 0.0
    tha: float = 0.0
    dx: float = 0.0
    aed: float = 0.0
    emd: float = 0.0
    aes: float = 0.0
    ems: float = 0.0


def _horizons(pfl: list[float], prop: _Prop) -> None:
    """Radio horizon distance and take-off angle at each terminal."""
    np_ = int(pfl[0])
    xi = pfl[1]
    za = pfl[2] + prop.hg[0]
    zb = pfl[np_ + 2] + prop.hg[1]
    qc = 0.5 * prop.gme
    q = qc * prop.dist
    prop.the[1] = (zb - za) / prop.dist
    prop.the[0] = prop.the[1] - q
    prop.the[1] = -prop.the[1] - q
    prop.dl[0] = prop.dist
    prop.dl[1] = prop.dist
    if np_ < 2:
        return
    sa = 0.0
    sb = prop.dist
    wq = True
    for i in range(1, np_):
        sa += xi
        sb -= xi
        q = pfl[i + 2] - (qc * sa + prop.the[0]) * sa - za
        if q > 0.0:
            prop.the[0] += q / sa
            prop.dl[0] = sa
            wq = False
        if not wq:
            q = pfl[i + 2] - (qc * sb + prop.the[1]) * sb - zb
            if q > 0.0:
                prop.the[1] += q / sb
                prop.dl[1] = sb


def _prepare_path(pfl: list[float], prop: _Prop) -> None:
    """Derive effective heights, horizons and terrain irregularity for
    point-to-point mode."""
    prop.dist = pfl[0] * pfl[1]
    np_ = int(pfl[0])
    _horizons(pfl, prop)
    xl = [min(15.0 * prop.hg[j], 0.1 * prop.dl[j]) for j in range(2)]
    xl[1] = prop.dist - xl[1]
    prop.dh = _delta_h(pfl, xl[0], xl[1])

    if prop.dl[0] + prop.dl[1] > 1.5 * prop.dist:
        # Line-of-sight-ish path: effective heights from a straight fit.
        za, zb = _linear_fit(pfl, xl[0], xl[1])
        prop.he[0] = prop.hg[0] + _dim(pfl[2], za)
        prop.he[1] = prop.hg[1] + _dim(pfl[np_ + 2], zb)
        for j in range(2):
            prop.dl[j] = math.sqrt(2.0 * prop.he[j] / prop.gme) * math.exp(
                -0.07 * math.sqrt(prop.dh / max(prop.he[j], 5.0))
            )
        q = prop.dl[0] + prop.dl[1]
        if q <= prop.dist:
            q = (prop.dist / q) ** 2
            for j in range(2):
                prop.he[j] *= q
                prop.dl[j] = math.sqrt(2.0 * prop.he[j] / prop.gme) * math.exp(
                    -0.07 * math.sqrt(prop.dh / max(prop.he[j], 5.0))
                )
        for j in range(2):
            q = math.sqrt(2.0 * prop.he[j] / prop.gme)
            prop.the[j] = (0.65 * prop.dh * (q / prop.dl[j] - 1.0) - 2.0 * prop.he[j]) / q
    else:
        # Trans-horizon: heights above the ground fitted toward each horizon.
        za, _ = _linear_fit(pfl, xl[0], 0.9 * prop.dl[0])
        _, zb = _linear_fit(pfl, prop.dist - 0.9 * prop.dl[1], xl[1])
        prop.he[0] = prop.hg[0] + _dim(pfl[2], za)
        prop.he[1] = prop.hg[1] + _dim(pfl[np_ + 2], zb)


class _Diffraction:
    """Double-knife-edge plus smooth-earth diffraction attenuation."""

    def __init__(self, prop: _Prop):
        self.prop = prop
        q = prop.hg[0] * prop.hg[1]
        self.qk = prop.he[0] * prop.he[1] - q
        if prop.mdp < 0:
            q += 10.0
        self.wd1 = math.sqrt(1.0 + self.qk / q)
        self.xd1 = prop.dla + prop.tha / prop.gme
        q = (1.0 - 0.8 * math.exp(-prop.dlsa / 50e3)) * prop.dh
        q *= 0.78 * math.exp(-((q / 16.0) ** 0.25))
        self.afo = min(
            15.0,
            2.171 * math.log(1.0 + 4.77e-4 * prop.hg[0] * prop.hg[1] * prop.wn * q),
        )
        self.qk = 1.0 / abs(prop.zgnd)
        self.aht = 20.0
        self.xht = 0.0
        for j in range(2):
            a = 0.5 * (prop.dl[j] * prop.dl[j]) / prop.he[j]
            wa = (a * prop.wn) ** _THIRD
            pk = self.qk / wa
            q = (1.607 - pk) * 151.0 * wa * prop.dl[j] / a
            self.xht += q
            self.aht += _height_gain_db(q, pk)

    def attenuation(self, d: float) -> float:
        prop = self.prop
        th = prop.tha + d * prop.gme
        ds = d - prop.dla
        q = 0.0795775 * prop.wn * ds * th * th
        adiffv = _knife_edge_db(q * prop.dl[0] / (ds + prop.dl[0])) + _knife_edge_db(
            q * prop.dl[1] / (ds + prop.dl[1])
        )
        a = ds / th
        wa = (a * prop.wn) ** _THIRD
        pk = self.qk / wa
        q = (1.607 - pk) * 151.0 * wa * th + self.xht
        ar = 0.05751 * q - 4.343 * math.log(q) - self.aht
        q = (self.wd1 + self.xd1 / d) * min(
            (1.0 - 0.8 * math.exp(-d / 50e3)) * prop.dh * prop.wn, 6283.2
        )
        wd = 25.1 / (25.1 + math.sqrt(q))
        return ar * wd + (1.0 - wd) * adiffv + self.afo


class _Scatter:
    """Forward-scatter attenuation beyond the horizon."""

    def __init__(self, prop: _Prop):
        self.prop = prop
        self.ad = prop.dl[0] - prop.dl[1]
        self.rr = prop.he[1] / prop.he[0]
        if self.ad < 0.0:
            self.ad = -self.ad
            self.rr = 1.0 / self.rr
        self.etq = (5.67e-6 * prop.ens - 2.32e-3) * prop.ens + 0.031
        self.h0s = -15.0

    def attenuation(self, d: float) -> float:
        prop = self.prop
        if self.h0s > 15.0:
            h0 = self.h0s
        else:
            th = prop.the[0] + prop.the[1] + d * prop.gme
            r2 = 2.0 * prop.wn * th
            r1 = r2 * prop.he[0]
            r2 *= prop.he[1]
            if r1 < 0.2 and r2 < 0.2:
                return 1001.0
            ss = (d - self.ad) / (d + self.ad)
            q = self.rr / ss
            ss = max(0.1, ss)
            q = min(max(0.1, q), 10.0)
            z0 = (d - self.ad) * (d + self.ad) * th * 0.25 / d
            temp = min(1.7, z0 / 8.0e3) ** 6
            et = (self.etq * math.exp(-temp) + 1.0) * z0 / 1.7556e3
            ett = max(et, 1.0)
            h0 = (_scatter_h0_db(r1, ett) + _scatter_h0_db(r2, ett)) * 0.5
            h0 += min(h0, (1.38 - math.log(ett)) * math.log(ss) * math.log(q) * 0.49)
            h0 = _dim(h0, 0.0)
            if et < 1.0:
                temp = (1.0 + 1.4142 / r1) * (1.0 + 1.4142 / r2)
                h0 = et * h0 + (1.0 - et) * 4.343 * math.log(
                    (temp * temp) * (r1 + r2) / (r1 + r2 + 2.8284)
                )
            if h0 > 15.0 and self.h0s >= 0.0:
                h0 = self.h0s
        self.h0s = h0
        th = prop.tha + d * prop.gme
        return (
            _scatter_f_theta_d_db(th * d)
            + 4.343 * math.log(47.7 * prop.wn * th**4)
            - 0.1 * (prop.ens - 301.0) * math.exp(-th * d / 40e3)
            + h0
        )


class _LineOfSight:
    """Two-ray plus extended-diffraction line-of-sight attenuation."""

    def __init__(self, prop: _Prop):
        self.prop = prop
        self.wls = 0.021 / (0.021 + prop.wn * prop.dh / max(10e3, prop.dlsa))

    def attenuation(self, d: float) -> float:
        prop = self.prop
        q = (1.0 - 0.8 * math.exp(-d / 50e3)) * prop.dh
        s = 0.78 * q * math.exp(-((q / 16.0) ** 0.25))
        q = prop.he[0] + prop.he[1]
        sps = q / math.sqrt(d * d + q * q)
        r = (sps - prop.zgnd) / (sps + prop.zgnd) * math.exp(
            -min(10.0, prop.wn * s * sps)
        )
        q = r.real * r.real + r.imag * r.imag
        if q < 0.25 or q < sps:
            r = r * math.sqrt(sps / q)
        alosv = prop.emd * d + prop.aed
        q = prop.wn * prop.he[0] * prop.he[1] * 2.0 / d
        if q > 1.57:
            q = 3.14 - 2.4649 / q
        z = complex(math.cos(q), -math.sin(q)) + r
        return (
            -4.343 * math.log(z.real * z.real + z.imag * z.imag) - alosv
        ) * self.wls + alosv


def _reference_attenuation(prop: _Prop) -> None:
    """Select and blend the submodels into the reference attenuation."""
    for j in range(2):
        prop.dls[j] = math.sqrt(2.0 * prop.he[j] / prop.gme)
    prop.dlsa = prop.dls[0] + prop.dls[1]
    prop.dla = prop.dl[0] + prop.dl[1]
    prop.tha = max(prop.the[0] + prop.the[1], -prop.dla * prop.gme)

    # Parameter-range bookkeeping mirrors the reference warning levels.
    if prop.wn < 0.838 or prop.wn > 210.0:
        prop.kwx = max(prop.kwx, 1)
    for j in range(2):
        if prop.hg[j] < 1.0 or prop.hg[j] > 1000.0:
            prop.kwx = max(prop.kwx, 1)
    for j in range(2):
        if (
            abs(prop.the[j]) > 200e-3
            or prop.dl[j] < 0.1 * prop.dls[j]
            or prop.dl[j] > 3.0 * prop.dls[j]
        ):
            prop.kwx = max(prop.kwx, 3)
    if (
        prop.ens < 250.0
        or prop.ens > 400.0
        or prop.gme < 75e-9
        or prop.gme > 250e-9
        or prop.zgnd.real <= abs(prop.zgnd.imag)
        or prop.wn < 0.419
        or prop.wn > 420.0
    ):
        prop.kwx = max(prop.kwx, 4)
    for j in range(2):
        if prop.hg[j] < 0.5 or prop.hg[j] > 3000.0:
            prop.kwx = max(prop.kwx, 4)

    dmin = abs(prop.he[0] - prop.he[1]) / 200e-3
    diffraction = _Diffraction(prop)
    xae = (prop.wn * prop.gme * prop.gme) ** (-_THIRD)
    d3 = max(prop.dlsa, 1.3787 * xae + prop.dla)
    d4 = d3 + 2.7574 * xae
    a3 = diffraction.attenuation(d3)
    a4 = diffraction.attenuation(d4)
    prop.emd = (a4 - a3) / (d4 - d3)
    prop.aed = a3 - prop.emd * d3

    if prop.dist > 0.0:
        if prop.dist > 1000e3:
            prop.kwx = max(prop.kwx, 1)
        if prop.dist < dmin:
            prop.kwx = max(prop.kwx, 3)
        if prop.dist < 1e3 or prop.dist > 2000e3:
            prop.kwx = max(prop.kwx, 4)

    if prop.dist < prop.dlsa:
        los = _LineOfSight(prop)
        d2 = prop.dlsa
        a2 = prop.aed + d2 * prop.emd
        d0 = 1.908 * prop.wn * prop.he[0] * prop.he[1]
        if prop.aed >= 0.0:
            d0 = min(d0, 0.5 * prop.dla)
            d1 = d0 + 0.25 * (prop.dla - d0)
        else:
            d1 = max(-prop.aed / prop.emd, 0.25 * prop.dla)
        a1 = los.attenuation(d1)
        wq = False
        if d0 < d1:
            a0 = los.attenuation(d0)
            q = math.log(d2 / d0)
            ak2 = max(
                0.0,
                ((d2 - d0) * (a1 - a0) - (d1 - d0) * (a2 - a0))
                / ((d2 - d0) * math.log(d1 / d0) - (d1 - d0) * q),
            )
            wq = prop.aed >= 0.0 or ak2 > 0.0
            if wq:
                ak1 = (a2 - a0 - ak2 * q) / (d2 - d0)
                if ak1 < 0.0:
                    ak1 = 0.0
                    ak2 = _dim(a2, a0) / q
                    if ak2 == 0.0:
                        ak1 = prop.emd
        if not wq:
            ak1 = _dim(a2, a1) / (d2 - d1)
            ak2 = 0.0
            if ak1 == 0.0:
                ak1 = prop.emd
        ael = a2 - ak1 * d2 - ak2 * math.log(d2)
        prop.aref = ael + ak1 * prop.dist + ak2 * math.log(prop.dist)
    else:
        scatter = _Scatter(prop)
        d5 = prop.dla + 200e3
        d6 = d5 + 200e3
        a6 = scatter.attenuation(d6)
        a5 = scatter.attenuation(d5)
        if a5 < 1000.0:
            prop.ems = (a6 - a5) / 200e3
            prop.dx = max(
                prop.dlsa,
                max(
                    prop.dla + 0.3 * xae * math.log(47.7 * prop.wn),
                    (a5 - prop.aed - prop.ems * d5) / (prop.emd - prop.ems),
                ),
            )
            prop.aes = (prop.emd - prop.ems) * prop.dx + prop.aed
        else:
            prop.ems = prop.emd
            prop.aes = prop.aed
            prop.dx = 10.0e6
        if prop.dist > prop.dx:
            prop.aref = prop.aes + prop.ems * prop.dist
        else:
            prop.aref = prop.aed + prop.emd * prop.dist

    prop.aref = max(prop.aref, 0.0)


# Climate coefficient tables for the variability statistics, indexed by
# climate code 1..7 (equatorial, continental subtropical, maritime
# subtropical, desert, continental temperate, maritime temperate over
# land, maritime temperate over sea).
_BV1 = (-9.67, -0.62, 1.26, -9.21, -0.62, -0.39, 3.15)
_BV2 = (12.7, 9.19, 15.5, 9.05, 9.19, 2.86, 857.9)
_XV1 = (144.9e3, 228.9e3, 262.6e3, 84.1e3, 228.9e3, 141.7e3, 2222.0e3)
_XV2 = (190.3e3, 205.2e3, 185.2e3, 101.1e3, 205.2e3, 315.9e3, 164.8e3)
_XV3 = (133.8e3, 143.6e3, 99.8e3, 98.6e3, 143.6e3, 167.4e3, 116.3e3)
_BSM1 = (2.13, 2.66, 6.11, 1.98, 2.68, 6.86, 8.51)
_BSM2 = (159.5, 7.67, 6.65, 13.11, 7.16, 10.38, 169.8)
_XSM1 = (762.2e3, 100.4e3, 138.2e3, 139.1e3, 93.7e3, 187.8e3, 609.8e3)
_XSM2 = (123.6e3, 172.5e3, 242.2e3, 132.7e3, 186.8e3, 169.6e3, 119.9e3)
_XSM3 = (94.5e3, 136.4e3, 178.6e3, 193.5e3, 133.5e3, 108.9e3, 106.6e3)
_BSP1 = (2.11, 6.87, 10.08, 3.68, 4.75, 8.58, 8.43)
_BSP2 = (102.3, 15.53, 9.60, 159.3, 8.12, 13.97, 8.19)
_XSP1 = (636.9e3, 138.7e3, 165.3e3, 464.4e3, 93.2e3, 216.0e3, 136.2e3)
_XSP2 = (134.8e3, 143.7e3, 225.7e3, 93.1e3, 135.9e3, 152.0e3, 188.5e3)
_XSP3 = (95.6e3, 98.6e3, 129.7e3, 94.2e3, 113.4e3, 122.7e3, 122.9e3)
_BSD1 = (1.224, 0.801, 1.380, 1.000, 1.224, 1.518, 1.518)
_BZD1 = (1.282, 2.161, 1.282, 20.0, 1.282, 1.282, 1.282)
_BFM1 = (1.0, 1.0, 1.0, 1.0, 0.92, 1.0, 1.0)
_BFM2 = (0.0, 0.0, 0.0, 0.0, 0.25, 0.0, 0.0)
_BFM3 = (0.0, 0.0, 0.0, 0.0, 1.77, 0.0, 0.0)
_BFP1 = (1.0, 0.93, 1.0, 0.93, 0.93, 1.0, 1.0)
_BFP2 = (0.0, 0.31, 0.0, 0.19, 0.31, 0.0, 0.0)
_BFP3 = (0.0, 2.00, 0.0, 1.79, 2.00, 0.0, 0.0)


def _variability(prop: _Prop, klim: int, mdvar: int, zt: float, zl: float, zc: float) -> float:
    """Quantile deviation of attenuation for time/location/situation
    variability; returns the adjusted attenuation in dB."""
    if klim <= 0 or klim > 7:
        klim = 5
        prop.kwx = max(prop.kwx, 2)
    j = klim - 1
    cv1, cv2 = _BV1[j], _BV2[j]
    yv1, yv2, yv3 = _XV1[j], _XV2[j], _XV3[j]
    csm1, csm2 = _BSM1[j], _BSM2[j]
    ysm1, ysm2, ysm3 = _XSM1[j], _XSM2[j], _XSM3[j]
    csp1, csp2 = _BSP1[j], _BSP2[j]
    ysp1, ysp2, ysp3 = _XSP1[j], _XSP2[j], _XSP3[j]
    csd1, zd = _BSD1[j], _BZD1[j]
    cfm1, cfm2, cfm3 = _BFM1[j], _BFM2[j], _BFM3[j]
    cfp1, cfp2, cfp3 = _BFP1[j], _BFP2[j], _BFP3[j]

    kdv = mdvar
    ws = kdv >= 20
    if ws:
        kdv -= 20
    w1 = kdv >= 10
    if w1:
        kdv -= 10
    if kdv < 0 or kdv > 3:
        kdv = 0
        prop.kwx = max(prop.kwx, 2)

    q = math.log(0.133 * prop.wn)
    gm = cfm1 + cfm2 / ((cfm3 * q) ** 2 + 1.0)
    gp = cfp1 + cfp2 / ((cfp3 * q) ** 2 + 1.0)

    dexa = (
        math.sqrt(18e6 * prop.he[0])
        + math.sqrt(18e6 * prop.he[1])
        + (575.7e12 / prop.wn) ** _THIRD
    )
    if prop.dist < dexa:
        de = 130e3 * prop.dist / dexa
    else:
        de = 130e3 + prop.dist - dexa

    vmd = _curve(cv1, cv2, yv1, yv2, yv3, de)
    sgtm = _curve(csm1, csm2, ysm1, ysm2, ysm3, de) * gm
    sgtp = _curve(csp1, csp2, ysp1, ysp2, ysp3, de) * gp
    sgtd = sgtp * csd1
    tgtd = (sgtp - sgtd) * zd

    if w1:
        sgl = 0.0
    else:
        q = (1.0 - 0.8 * math.exp(-prop.dist / 50e3)) * prop.dh * prop.wn
        sgl = 10.0 * q / (q + 13.0)
    if ws:
        vs0 = 0.0
    else:
        vs0 = (5.0 + 3.0 * math.exp(-de / 100e3)) ** 2

    if kdv == 0:
        zt = zc
        zl = zc
    elif kdv == 1:
        zl = zc
    elif kdv == 2:
        zl = zt

    if abs(zt) > 3.1 or abs(zl) > 3.1 or abs(zc) > 3.1:
        prop.kwx = max(prop.kwx, 1)

    if zt < 0.0:
        sgt = sgtm
    elif zt <= zd:
        sgt = sgtp
    else:
        sgt = sgtd + tgtd / zt

    vs = vs0 + (sgt * zt) ** 2 / (7.8 + zc * zc) + (sgl * zl) ** 2 / (24.0 + zc * zc)

    if kdv == 0:
        yr = 0.0
        sgc = math.sqrt(sgt * sgt + sgl * sgl + vs)
    elif kdv == 1:
        yr = sgt * zt
        sgc = math.sqrt(sgl * sgl + vs)
    elif kdv == 2:
        yr = math.sqrt(sgt * sgt + sgl * sgl) * zt
        sgc = math.sqrt(vs)
    else:
        yr = sgt * zt + sgl * zl
        sgc = math.sqrt(vs)

    avarv = prop.aref - vmd - yr - sgc * zc
    if avarv < 0.0:
        avarv = avarv * (29.0 - avarv) / (29.0 - 10.0 * avarv)
    return avarv


@dataclass(frozen=True)
class ItmResult:
    loss_db: float
    reference_attenuation_db: float
    free_space_db: float
    horizon_case: str  # "los" | "single-horizon" | "double-horizon"
    scatter_dominant: bool
    distance_m: float
    warning_code: int  # 0 ok .. 4 parameters far outside the model's design range


def point_to_point(
    heights_m: list[float],
    spacing_m: float,
    tx_height_m: float,
    rx_height_m: float,
    frequency_mhz: float,
    surface_refractivity: float = 301.0,
    rel_permittivity: float = 15.0,
    conductivity: float = 0.005,
    climate: int = 5,
    polarization: str = "vertical",
    reliability: float = 0.5,
    confidence: float = 0.5,
) -> ItmResult:
    """Point-to-point median transmission loss over an equally spaced
    terrain profile (meters above sea level, first entry under the
    transmitter)."""
    if len(heights_m) < 2:
        raise ValueError("profile needs at least 2 points")
    if spacing_m <= 0:
        raise ValueError("sample spacing must be positive")

    np_ = len(heights_m) - 1
    pfl = [float(np_), float(spacing_m)] + [float(z) for z in heights_m]

    prop = _Prop()
    prop.hg = [float(tx_height_m), float(rx_height_m)]
    prop.mdp = -1

    # System elevation: average ground over the middle of the path.
    ja = int(3.0 + 0.1 * pfl[0])
    jb = np_ - ja + 6
    zsys = sum(pfl[i] for i in range(ja - 1, jb)) / (jb - ja + 1)

    zc = _qerfi(confidence)
    zr = _qerfi(reliability)

    prop.wn = frequency_mhz / _F0_MHZ_M
    prop.ens = surface_refractivity
    if zsys != 0.0:
        prop.ens *= math.exp(-zsys / 9460.0)
    prop.gme = _GMA * (1.0 - 0.04665 * math.exp(prop.ens / 179.3))
    zq = complex(rel_permittivity, 376.62 * conductivity / prop.wn)
    prop.zgnd = cmath.sqrt(zq - 1.0)
    if polarization != "horizontal":
        prop.zgnd = prop.zgnd / zq

    _prepare_path(pfl, prop)
    _reference_attenuation(prop)

    fs = 32.45 + 20.0 * math.log10(frequency_mhz) + 20.0 * math.log10(prop.dist / 1000.0)
    avarv = _variability(prop, klim=climate, mdvar=12, zt=zr, zl=0.0, zc=zc)
    loss = fs + avarv

    q = prop.dist - prop.dla
    if int(q) < 0:
        horizon_case = "los"
        scatter_dominant = False
    else:
        horizon_case = "single-horizon" if int(q) == 0 else "double-horizon"
        scatter_dominant = prop.dist > prop.dlsa and prop.dist > prop.dx

    return ItmResult(
        loss_db=loss,
        reference_attenuation_db=prop.aref,
        free_space_db=fs,
        horizon_case=horizon_case,
        scatter_dominant=scatter_dominant,
        distance_m=prop.dist,
        warning_code=prop.kwx,
    )
