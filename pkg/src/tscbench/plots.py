"""Deterministic static SVG output: rank diagrams and scatter plots.

Files are generated by plain string assembly so identical inputs produce
byte-identical output.
"""

__all__ = ["rank_diagram_svg", "scatter_svg"]


def _fmt(x):
    return f"{x:.2f}"


def rank_diagram_svg(names, avg_ranks, cliques):
    """Critical-difference style diagram: rank axis, classifier stems and
    horizontal clique bars."""
    k = len(names)
    width, axis_y = 640.0, 60.0
    left, right = 80.0, width - 80.0
    lo, hi = 1.0, float(k)
    span = max(hi - lo, 1e-9)

    def x_of(rank):
        return left + (rank - lo) / span * (right - left)

    order = sorted(range(k), key=lambda i: (avg_ranks[i], names[i]))
    label_rows = (k + 1) // 2
    height = axis_y + 30.0 * label_rows + 20.0 * max(len(cliques), 1) + 60.0

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" '
        f'height="{_fmt(height)}" font-family="sans-serif" font-size="12">',
        f'<line x1="{_fmt(left)}" y1="{_fmt(axis_y)}" x2="{_fmt(right)}" '
        f'y2="{_fmt(axis_y)}" stroke="black"/>',
    ]
    for tick in range(1, k + 1):
        x = x_of(float(tick))
        parts.append(
            f'<line x1="{_fmt(x)}" y1="{_fmt(axis_y - 5)}" x2="{_fmt(x)}" '
            f'y2="{_fmt(axis_y + 5)}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{_fmt(x)}" y="{_fmt(axis_y - 10)}" '
            f'text-anchor="middle">{tick}</text>'
        )
    for pos, i in enumerate(order):
        x = x_of(avg_ranks[i])
        side = pos % 2
        row = pos // 2
        y_label = axis_y + 30.0 + 30.0 * row
        x_label = left - 10.0 if side == 0 else right + 10.0
        anchor = "end" if side == 0 else "start"
        parts.append(
            f'<polyline points="{_fmt(x)},{_fmt(axis_y)} {_fmt(x)},{_fmt(y_label)} '
            f'{_fmt(x_label)},{_fmt(y_label)}" fill="none" stroke="black"/>'
        )
        parts.append(
            f'<text x="{_fmt(x_label)}" y="{_fmt(y_label - 3)}" text-anchor="{anchor}">'
            f"{names[i]} ({avg_ranks[i]:.3f})</text>"
        )
    bar_y = axis_y + 30.0 * label_rows + 40.0
    for c, clique in enumerate(sorted(cliques)):
        xs = [x_of(avg_ranks[i]) for i in clique]
        y = bar_y + 20.0 * c
        parts.append(
            f'<line x1="{_fmt(min(xs) - 4)}" y1="{_fmt(y)}" x2="{_fmt(max(xs) + 4)}" '
            f'y2="{_fmt(y)}" stroke="black" stroke-width="4"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def scatter_svg(xs, ys, x_name, y_name, lo=0.0, hi=1.0):
    """Square scatter of paired metric values with the identity diagonal."""
    size, margin = 420.0, 50.0
    inner = size - 2 * margin

    def sx(v):
        return margin + (v - lo) / (hi - lo) * inner

    def sy(v):
        return size - margin - (v - lo) / (hi - lo) * inner

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(size)}" '
        f'height="{_fmt(size)}" font-family="sans-serif" font-size="12">',
        f'<rect x="{_fmt(margin)}" y="{_fmt(margin)}" width="{_fmt(inner)}" '
        f'height="{_fmt(inner)}" fill="none" stroke="black"/>',
        f'<line x1="{_fmt(sx(lo))}" y1="{_fmt(sy(lo))}" x2="{_fmt(sx(hi))}" '
        f'y2="{_fmt(sy(hi))}" stroke="grey" stroke-dasharray="4 4"/>',
        f'<text x="{_fmt(size / 2)}" y="{_fmt(size - 12)}" '
        f'text-anchor="middle">{x_name}</text>',
        f'<text x="14" y="{_fmt(size / 2)}" text-anchor="middle" '
        f'transform="rotate(-90 14 {_fmt(size / 2)})">{y_name}</text>',
    ]
    for x, y in zip(xs, ys):
        parts.append(
            f'<circle cx="{_fmt(sx(x))}" cy="{_fmt(sy(y))}" r="3" '
            f'fill="steelblue" fill-opacity="0.7"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
