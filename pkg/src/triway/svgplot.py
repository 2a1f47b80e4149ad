"""Minimal deterministic SVG scatter rendering of an embedding record.

Points are drawn as their object labels: bold for "to" profiles, italic
for "from" profiles, colored by occasion.  Output contains no
timestamps or generated ids, so identical inputs give identical bytes.
"""

from xml.sax.saxutils import escape

DEFAULT_PALETTE = (
    "#000000",  # black
    "#FF0000",  # red
    "#0000FF",  # blue
    "#008000",
    "#FF8C00",
    "#800080",
    "#A52A2A",
    "#FF00FF",
)

WIDTH, HEIGHT = 760, 560
MARGIN_LEFT, MARGIN_RIGHT = 70, 170
MARGIN_TOP, MARGIN_BOTTOM = 60, 60


def _bounds(values):
    lo, hi = min(values), max(values)
    if hi == lo:
        lo, hi = lo - 1.0, hi + 1.0
    pad = 0.06 * (hi - lo)
    return lo - pad, hi + pad


def render_embedding(record: dict, palette=None, title: str = "") -> str:
    """Render the ``{eigenvalues, gof, points}`` record as an SVG string."""
    palette = tuple(palette) if palette else DEFAULT_PALETTE
    points = record["points"]
    if not points:
        raise ValueError("nothing to plot: empty points list")
    occasions = []
    for p in points:
        if p["occasion"] not in occasions:
            occasions.append(p["occasion"])
    color = {occ: palette[i % len(palette)] for i, occ in enumerate(occasions)}

    x0, x1 = _bounds([p["x"] for p in points])
    y0, y1 = _bounds([p["y"] for p in points])
    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def px(x):
        return MARGIN_LEFT + plot_w * (x - x0) / (x1 - x0)

    def py(y):
        return MARGIN_TOP + plot_h * (y1 - y) / (y1 - y0)

    gof = record.get("gof", [])
    gof_parts = [f"{100.0 * g:.2f}% (dims 1-{i + 1})" if i else f"{100.0 * g:.2f}% (dim 1)"
                 for i, g in enumerate(gof)]
    subtitle = "GOF: " + ", ".join(gof_parts) if gof_parts else ""

    el = []
    el.append(f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>')
    el.append(
        f'<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{plot_w}" '
        f'height="{plot_h}" fill="none" stroke="#888888" stroke-width="1"/>')
    if x0 < 0 < x1:
        el.append(f'<line x1="{px(0):.2f}" y1="{MARGIN_TOP}" x2="{px(0):.2f}" '
                  f'y2="{MARGIN_TOP + plot_h}" stroke="#CCCCCC" stroke-width="1"/>')
    if y0 < 0 < y1:
        el.append(f'<line x1="{MARGIN_LEFT}" y1="{py(0):.2f}" '
                  f'x2="{MARGIN_LEFT + plot_w}" y2="{py(0):.2f}" '
                  f'stroke="#CCCCCC" stroke-width="1"/>')
    if title:
        el.append(f'<text x="{WIDTH / 2:.2f}" y="26" text-anchor="middle" '
                  f'font-size="16" font-family="sans-serif">{escape(title)}</text>')
    if subtitle:
        el.append(f'<text x="{WIDTH / 2:.2f}" y="46" text-anchor="middle" '
                  f'font-size="12" font-family="sans-serif" fill="#444444">'
                  f'{escape(subtitle)}</text>')
    el.append(f'<text x="{MARGIN_LEFT + plot_w / 2:.2f}" y="{HEIGHT - 18}" '
              f'text-anchor="middle" font-size="13" font-family="sans-serif">'
              f'Dimension 1</text>')
    el.append(f'<text x="22" y="{MARGIN_TOP + plot_h / 2:.2f}" '
              f'text-anchor="middle" font-size="13" font-family="sans-serif" '
              f'transform="rotate(-90 22 {MARGIN_TOP + plot_h / 2:.2f})">'
              f'Dimension 2</text>')

    for p in points:
        weight = "bold" if p["direction"] == "to" else "normal"
        style = "italic" if p["direction"] == "from" else "normal"
        el.append(
            f'<text x="{px(p["x"]):.2f}" y="{py(p["y"]):.2f}" '
            f'text-anchor="middle" font-size="12" font-family="sans-serif" '
            f'font-weight="{weight}" font-style="{style}" '
            f'fill="{color[p["occasion"]]}">{escape(p["label"])}</text>')

    lx = MARGIN_LEFT + plot_w + 16
    ly = MARGIN_TOP + 6
    el.append(f'<text x="{lx}" y="{ly}" font-size="12" '
              f'font-family="sans-serif" font-weight="bold">bold: to-profile</text>')
    ly += 18
    el.append(f'<text x="{lx}" y="{ly}" font-size="12" '
              f'font-family="sans-serif" font-style="italic">italic: from-profile</text>')
    for occ in occasions:
        ly += 18
        el.append(f'<text x="{lx}" y="{ly}" font-size="12" '
                  f'font-family="sans-serif" fill="{color[occ]}">'
                  f'occasion {escape(str(occ))}</text>')

    body = "\n".join(f"  {line}" for line in el)
    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
            f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">\n{body}\n</svg>\n')
