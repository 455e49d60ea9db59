"""SVG chart rendering: terrain profile and power-versus-distance.

Charts consume already-computed series and never recompute physics.
Output is plain SVG 1.1 built by string assembly, so identical inputs
produce byte-identical documents (golden-file friendly).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .linkbudget import LinkBudget, RadioParams
from .profile import ClearanceVerdict, TerrainProfile

DEFAULT_WIDTH = 900
DEFAULT_HEIGHT = 500
_MARGIN_LEFT = 70
_MARGIN_RIGHT = 200
_MARGIN_TOP = 50
_MARGIN_BOTTOM = 60
_PAD_FRACTION = 0.05


class ChartKind(Enum):
    PROFILE = "profile"
    POWER = "power"


@dataclass(frozen=True)
class Series:
    name: str
    color: str
    points: list  # [(x, y)]


@dataclass(frozen=True)
class Annotation:
    x: float
    y: float
    label: str


@dataclass
class ChartSpec:
    kind: ChartKind
    title: str
    x_label: str
    y_label: str
    series: list = field(default_factory=list)
    annotations: list = field(default_factory=list)
    hlines: list = field(default_factory=list)  # [(y, label)]
    width_px: int = DEFAULT_WIDTH
    height_px: int = DEFAULT_HEIGHT


def _escape(text: str) -> str:
    return (
        text.replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
    )


def render_svg(spec: ChartSpec) -> str:
    """Render a ChartSpec into an SVG document string."""
    xs = [x for s in spec.series for x, _ in s.points]
    ys = [y for s in spec.series for _, y in s.points]
    ys += [y for y, _ in spec.hlines]
    if not xs:
        raise ValueError("chart needs at least one series with points")

    def padded(lo: float, hi: float) -> tuple[float, float]:
        span = hi - lo
        pad = span * _PAD_FRACTION if span > 0 else max(abs(hi), 1.0) * _PAD_FRACTION
        return lo - pad, hi + pad

    x_lo, x_hi = padded(min(xs), max(xs))
    y_lo, y_hi = padded(min(ys), max(ys))

    plot_l = _MARGIN_LEFT
    plot_r = spec.width_px - _MARGIN_RIGHT
    plot_t = _MARGIN_TOP
    plot_b = spec.height_px - _MARGIN_BOTTOM

    def sx(x: float) -> float:
        return plot_l + (x - x_lo) / (x_hi - x_lo) * (plot_r - plot_l)

    def sy(y: float) -> float:
        return plot_b - (y - y_lo) / (y_hi - y_lo) * (plot_b - plot_t)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{spec.width_px}" '
        f'height="{spec.height_px}" viewBox="0 0 {spec.width_px} {spec.height_px}">',
        '<rect x="0" y="0" width="100%" height="100%" fill="white"/>',
        f'<text x="{(plot_l + plot_r) / 2:.1f}" y="28" text-anchor="middle" '
        f'font-size="18" font-family="sans-serif">{_escape(spec.title)}</text>',
    ]

    ticks = 6
    for i in range(ticks + 1):
        yv = y_lo + (y_hi - y_lo) * i / ticks
        py = sy(yv)
        out.append(
            f'<line x1="{plot_l}" y1="{py:.2f}" x2="{plot_r}" y2="{py:.2f}" '
            'stroke="#dddddd" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{plot_l - 8}" y="{py + 4:.2f}" text-anchor="end" '
            f'font-size="12" font-family="sans-serif">{yv:.1f}</text>'
        )
        xv = x_lo + (x_hi - x_lo) * i / ticks
        px = sx(xv)
        out.append(
            f'<line x1="{px:.2f}" y1="{plot_b}" x2="{px:.2f}" y2="{plot_b + 5}" '
            'stroke="black" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{px:.2f}" y="{plot_b + 20}" text-anchor="middle" '
            f'font-size="12" font-family="sans-serif">{xv:.2f}</text>'
        )

    out.append(
        f'<line x1="{plot_l}" y1="{plot_b}" x2="{plot_r}" y2="{plot_b}" '
        'stroke="black" stroke-width="1.5"/>'
    )
    out.append(
        f'<line x1="{plot_l}" y1="{plot_t}" x2="{plot_l}" y2="{plot_b}" '
        'stroke="black" stroke-width="1.5"/>'
    )
    out.append(
        f'<text x="{(plot_l + plot_r) / 2:.1f}" y="{spec.height_px - 15}" '
        f'text-anchor="middle" font-size="14" font-family="sans-serif">'
        f"{_escape(spec.x_label)}</text>"
    )
    mid_y = (plot_t + plot_b) / 2
    out.append(
        f'<text x="20" y="{mid_y:.1f}" text-anchor="middle" font-size="14" '
        f'font-family="sans-serif" transform="rotate(-90 20 {mid_y:.1f})">'
        f"{_escape(spec.y_label)}</text>"
    )

    for y, label in spec.hlines:
        py = sy(y)
        out.append(
            f'<line x1="{plot_l}" y1="{py:.2f}" x2="{plot_r}" y2="{py:.2f}" '
            'stroke="red" stroke-width="1" stroke-dasharray="6,4"/>'
        )
        out.append(
            f'<text x="{plot_r - 4}" y="{py - 5:.2f}" text-anchor="end" '
            f'font-size="12" font-family="sans-serif" fill="red">{_escape(label)}</text>'
        )

    legend_x = plot_r + 16
    legend_y = plot_t + 10
    for idx, s in enumerate(spec.series):
        pts = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in s.points)
        out.append(
            f'<polyline fill="none" stroke="{s.color}" stroke-width="1.8" '
            f'points="{pts}"/>'
        )
        ly = legend_y + idx * 22
        out.append(
            f'<line x1="{legend_x}" y1="{ly}" x2="{legend_x + 24}" y2="{ly}" '
            f'stroke="{s.color}" stroke-width="3"/>'
        )
        out.append(
            f'<text x="{legend_x + 30}" y="{ly + 4}" font-size="12" '
            f'font-family="sans-serif">{_escape(s.name)}</text>'
        )

    anno_y = legend_y + len(spec.series) * 22 + 18
    for a in spec.annotations:
        px, py = sx(a.x), sy(a.y)
        out.append(
            f'<circle cx="{px:.2f}" cy="{py:.2f}" r="4" fill="none" '
            'stroke="red" stroke-width="1.5"/>'
        )
        out.append(
            f'<text x="{legend_x}" y="{anno_y}" font-size="12" '
            f'font-family="sans-serif" fill="#333333">{_escape(a.label)}</text>'
        )
        anno_y += 18

    out.append("</svg>")
    return "\n".join(out) + "\n"


def profile_chart_spec(p: TerrainProfile, verdict: ClearanceVerdict) -> ChartSpec:
    """Chart spec for the terrain profile view.

    Color roles: blue optical LOS, magenta lower first-Fresnel contour,
    green terrain (drawn above the earth curvature), brown earth
    curvature baseline.
    """
    pts = p.points
    los = [(pt.distance_km, pt.los_m) for pt in pts]
    fresnel_lower = [(pt.distance_km, pt.los_m - pt.fresnel1_m) for pt in pts]
    terrain = [(pt.distance_km, pt.terrain_m + pt.bulge_m) for pt in pts]
    bulge = [(pt.distance_km, min(x.terrain_m for x in pts) + pt.bulge_m) for pt in pts]

    worst = min(p.interior(), key=lambda pt: pt.clearance_fraction)
    annotation = Annotation(
        x=worst.distance_km,
        y=worst.terrain_m + worst.bulge_m,
        label=(
            f"worst clearance {verdict.worst_fraction:.2f} F1 "
            f"at {verdict.worst_distance_km:.2f} km ({verdict.clearance_class.value})"
        ),
    )

    geom = p.geometry
    return ChartSpec(
        kind=ChartKind.PROFILE,
        title=f"Terrain profile: {geom.tx_site.name} to {geom.rx_site.name}",
        x_label="distance (km)",
        y_label="height (m)",
        series=[
            Series("optical LOS", "blue", los),
            Series("first Fresnel zone lower contour", "magenta", fresnel_lower),
            Series("terrain", "green", terrain),
            Series("earth curvature", "brown", bulge),
        ],
        annotations=[annotation],
    )


def render_profile_chart(p: TerrainProfile, verdict: ClearanceVerdict) -> str:
    return render_svg(profile_chart_spec(p, verdict))


def power_chart_spec(
    series: list,
    budget: LinkBudget,
    radios: RadioParams,
    title: str = "Power versus distance",
) -> ChartSpec:
    """Chart spec for the received-level view with the sensitivity line
    and EIRP / rx power / margin annotations."""
    end_x, end_y = series[-1]
    return ChartSpec(
        kind=ChartKind.POWER,
        title=title,
        x_label="distance (km)",
        y_label="level (dBm)",
        series=[Series("received level", "blue", list(series))],
        hlines=[(radios.rx_sensitivity_dbm, f"sensitivity {radios.rx_sensitivity_dbm:g} dBm")],
        annotations=[
            Annotation(series[0][0], series[0][1], f"EIRP {budget.eirp_dbm:g} dBm"),
            Annotation(end_x, end_y, f"rx power {budget.rx_power_dbm:.2f} dBm"),
            Annotation(end_x, end_y, f"margin {budget.margin_db:.2f} dB"),
        ],
    )


def render_power_chart(
    series: list,
    budget: LinkBudget,
    radios: RadioParams,
    title: str = "Power versus distance",
) -> str:
    return render_svg(power_chart_spec(series, budget, radios, title))
