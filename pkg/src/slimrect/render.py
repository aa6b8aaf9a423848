"""SVG and TikZ emitters for diagrams.

Output is deterministic: elements in id order, edges in stored (sorted)
order, coordinates printed with six decimal places, no timestamps.  Steep
edges carry the style class "steep" so they stay visibly distinct.
"""

from __future__ import annotations

from slimrect.diagram import classify_edges

SCALE = 48.0
MARGIN = 30.0
NODE_RADIUS = 4.5


def _fmt(value):
    return f"{float(value):.6f}"


def render(D, fmt):
    if fmt == "svg":
        return render_svg(D)
    if fmt == "tikz":
        return render_tikz(D)
    raise ValueError(f"unknown format {fmt!r} (expected svg or tikz)")


def render_svg(D):
    xs = [float(x) for x, _ in D.points]
    ys = [float(y) for _, y in D.points]
    width = (max(xs) - min(xs)) * SCALE + 2 * MARGIN
    height = (max(ys) - min(ys)) * SCALE + 2 * MARGIN

    def at(point):
        px = (float(point[0]) - min(xs)) * SCALE + MARGIN
        py = height - ((float(point[1]) - min(ys)) * SCALE + MARGIN)
        return px, py

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        "<style>",
        ".edge { stroke: #444; stroke-width: 1.4; }",
        ".steep { stroke: #c0392b; stroke-width: 2.6; }",
        ".node { fill: #fff; stroke: #222; stroke-width: 1.2; }",
        ".lbl { font: 11px sans-serif; fill: #111; }",
        "</style>",
    ]
    for cls in classify_edges(D):
        (a, b) = cls.edge
        x1, y1 = at(D.points[a])
        x2, y2 = at(D.points[b])
        lines.append(
            f'<line class="edge {cls.kind}" x1="{_fmt(x1)}" y1="{_fmt(y1)}" '
            f'x2="{_fmt(x2)}" y2="{_fmt(y2)}"/>'
        )
    for x in range(len(D.points)):
        px, py = at(D.points[x])
        lines.append(
            f'<circle class="node" cx="{_fmt(px)}" cy="{_fmt(py)}" r="{NODE_RADIUS}"/>'
        )
        lines.append(
            f'<text class="lbl" x="{_fmt(px + 6.0)}" y="{_fmt(py - 6.0)}">{D.names[x]}</text>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_tikz(D):
    lines = [
        "\\begin{tikzpicture}[scale=0.9,",
        "  every node/.style={circle, draw, fill=white, inner sep=1.4pt},",
        "  edge/.style={draw=black!70},",
        "  steep/.style={draw=red!70!black, very thick}]",
    ]
    for x in range(len(D.points)):
        px, py = D.points[x]
        lines.append(
            f"\\node[label=above right:{{\\scriptsize {D.names[x]}}}] "
            f"(n{x}) at ({_fmt(px)},{_fmt(py)}) {{}};"
        )
    for cls in classify_edges(D):
        a, b = cls.edge
        style = "steep" if cls.kind == "steep" else "edge"
        lines.append(f"\\draw[{style}] (n{a}) -- (n{b});")
    lines.append("\\end{tikzpicture}")
    return "\n".join(lines) + "\n"
