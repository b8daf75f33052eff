"""Minimal deterministic SVG line chart for sweep reports.

Hand-rolled on purpose: no rendering dependency, stable bytes for a given
report, and the data points stay structurally addressable (tests compare
elements, not raster output).
"""

from __future__ import annotations

from cift.composition import SweepReport

WIDTH, HEIGHT = 720, 420
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 64, 24, 36, 56


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def render_snr_chart(report: SweepReport, title: str = "Feature-space SNR vs mixing ratio") -> str:
    points = report.points
    lams = [p.ratio.lam for p in points]
    snrs = [p.snr for p in points]
    x_lo, x_hi = 0.0, max(lams) if max(lams) > 0 else 1.0
    y_hi = max(snrs) * 1.1 if max(snrs) > 0 else 1.0
    plot_w = WIDTH - MARGIN_L - MARGIN_R
    plot_h = HEIGHT - MARGIN_T - MARGIN_B

    def sx(lam: float) -> float:
        return MARGIN_L + (lam - x_lo) / (x_hi - x_lo) * plot_w

    def sy(snr: float) -> float:
        return MARGIN_T + (1.0 - snr / y_hi) * plot_h

    parts: list[str] = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" '
        f'font-family="sans-serif" font-size="11">',
        f'<title>{title}</title>',
        f'<text x="{WIDTH // 2}" y="18" text-anchor="middle" font-size="14">{title}</text>',
        # axes
        f'<line x1="{MARGIN_L}" y1="{MARGIN_T}" x2="{MARGIN_L}" '
        f'y2="{HEIGHT - MARGIN_B}" stroke="black"/>',
        f'<line x1="{MARGIN_L}" y1="{HEIGHT - MARGIN_B}" x2="{WIDTH - MARGIN_R}" '
        f'y2="{HEIGHT - MARGIN_B}" stroke="black"/>',
        f'<text x="{WIDTH // 2}" y="{HEIGHT - 8}" text-anchor="middle">'
        f'mixing ratio (real:synthetic, by synthetic fraction)</text>',
        f'<text x="14" y="{HEIGHT // 2}" text-anchor="middle" '
        f'transform="rotate(-90 14 {HEIGHT // 2})">SNR = |mu| / sigma</text>',
    ]
    for k in range(5):
        y_val = y_hi * k / 4
        y_px = sy(y_val)
        parts.append(
            f'<line x1="{MARGIN_L - 4}" y1="{_fmt(y_px)}" x2="{MARGIN_L}" '
            f'y2="{_fmt(y_px)}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{MARGIN_L - 8}" y="{_fmt(y_px + 4)}" text-anchor="end">{y_val:.3f}</text>'
        )
    for p in points:
        x_px = sx(p.ratio.lam)
        parts.append(
            f'<line x1="{_fmt(x_px)}" y1="{HEIGHT - MARGIN_B}" x2="{_fmt(x_px)}" '
            f'y2="{HEIGHT - MARGIN_B + 4}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{_fmt(x_px)}" y="{HEIGHT - MARGIN_B + 18}" '
            f'text-anchor="middle">{p.ratio}</text>'
        )
    polyline = " ".join(f"{_fmt(sx(l))},{_fmt(sy(s))}" for l, s in zip(lams, snrs))
    parts.append(
        f'<polyline class="snr-curve" points="{polyline}" fill="none" '
        f'stroke="steelblue" stroke-width="2"/>'
    )
    for p in points:
        parts.append(
            f'<circle class="snr-point" cx="{_fmt(sx(p.ratio.lam))}" '
            f'cy="{_fmt(sy(p.snr))}" r="3" fill="steelblue" '
            f'data-ratio="{p.ratio}" data-snr="{p.snr!r}"/>'
        )
    if report.decoherence_index is not None:
        p = points[report.decoherence_index]
        parts.append(
            f'<circle class="decoherence-point" cx="{_fmt(sx(p.ratio.lam))}" '
            f'cy="{_fmt(sy(p.snr))}" r="6" fill="none" stroke="crimson" '
            f'stroke-width="2" data-ratio="{p.ratio}"/>'
        )
        parts.append(
            f'<text x="{_fmt(sx(p.ratio.lam))}" y="{_fmt(sy(p.snr) - 10)}" '
            f'text-anchor="middle" fill="crimson">decoherence {p.ratio}</text>'
        )
    star = next(p for p in points if p.ratio == report.lambda_star)
    parts.append(
        f'<circle class="selected-ratio" cx="{_fmt(sx(star.ratio.lam))}" '
        f'cy="{_fmt(sy(star.snr))}" r="6" fill="none" stroke="seagreen" '
        f'stroke-width="2" data-ratio="{star.ratio}"/>'
    )
    parts.append(
        f'<text x="{_fmt(sx(star.ratio.lam))}" y="{_fmt(sy(star.snr) - 10)}" '
        f'text-anchor="middle" fill="seagreen">selected {star.ratio}</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
