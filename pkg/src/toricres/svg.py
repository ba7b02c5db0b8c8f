"""Deterministic SVG drawings of planar slice polytopes and their triangulations."""

from . import exactlin as el

UNIT = 40
MARGIN = 20


def render(polytope, triangulation=None, title=None):
    """SVG text for a two-dimensional slice polytope.

    Lattice points of the bounding box are grey dots, boundary points of the
    polytope black, interior points red.  Output depends only on the inputs.
    """
    pts = list(polytope.points)
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    width = UNIT * (x1 - x0) + 2 * MARGIN
    height = UNIT * (y1 - y0) + 2 * MARGIN

    def px(p):
        return MARGIN + UNIT * (p[0] - x0), MARGIN + UNIT * (y1 - p[1])

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
    ]
    if title:
        out.append(f"<title>{_escape(title)}</title>")
    out.append('<rect width="100%" height="100%" fill="white"/>')
    out.append('<g fill="#bbbbbb">')
    for x in range(x0, x1 + 1):
        for y in range(y0, y1 + 1):
            cx, cy = px((x, y))
            out.append(f'<circle cx="{cx}" cy="{cy}" r="2"/>')
    out.append("</g>")
    hull = el.convex_hull_2d(polytope.vertices)
    ring = " ".join("{},{}".format(*px(p)) for p in hull)
    out.append(f'<polygon points="{ring}" fill="#eef3fb" stroke="black" stroke-width="2"/>')
    if triangulation is not None:
        P = triangulation.points
        edges = sorted({tuple(sorted((s[i], s[j])))
                        for s in triangulation.simplices
                        for i in range(3) for j in range(i + 1, 3)})
        out.append('<g stroke="#3060a0" stroke-width="1.5">')
        for a, b in edges:
            (ax, ay), (bx, by) = px(P[a]), px(P[b])
            out.append(f'<line x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}"/>')
        out.append("</g>")
    for p, inner in sorted(zip(polytope.points, polytope.interior)):
        cx, cy = px(p)
        if inner:
            out.append(f'<circle cx="{cx}" cy="{cy}" r="5" fill="#d03020"/>')
        else:
            out.append(f'<circle cx="{cx}" cy="{cy}" r="4" fill="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(s):
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
