"""Coefficient-sign grid for a polynomial in two variables.

Each lattice point of the bounding box becomes a square cell: filled when the
point carries a positive or negative coefficient, hatched when it is a gap
inside the Newton polygon, blank outside it. The polygon outline is drawn on
top, with exponent labels along the axes.

Expected input format:
    {
        "title": "p^3",
        "coefficients": {(0, 0): 1, (1, 0): -2, ...},   # exponent -> number
        "vertices": [(0, 0), (4, 0), (4, 4), (0, 4)],    # polygon, in order
        "caption": "first failure at x1^2",
    }
"""

from reportlab.lib.colors import HexColor, black
from reportlab.platypus import Flowable, Paragraph, Spacer

from . import Module

POSITIVE = HexColor("#4C9F70")
NEGATIVE = HexColor("#D1495B")
GAP = HexColor("#E8E8E8")


def _inside(point, vertices):
    """Point in (or on) a convex polygon given counter-clockwise or clockwise."""
    if len(vertices) < 3:
        return tuple(point) in {tuple(v) for v in vertices}
    sign = 0
    for (x1, y1), (x2, y2) in zip(vertices, vertices[1:] + vertices[:1]):
        cross = (x2 - x1) * (point[1] - y1) - (y2 - y1) * (point[0] - x1)
        if cross:
            if sign and (cross > 0) != (sign > 0):
                return False
            sign = cross
    return True


class LatticeGridFlowable(Flowable):
    """Draws one cell per lattice point, shaded by coefficient sign."""

    def __init__(self, coefficients, vertices, cell_size=14, max_width=None):
        Flowable.__init__(self)
        self.coefficients = {tuple(m): float(c) for m, c in coefficients.items()}
        self.vertices = [tuple(v) for v in vertices]
        points = list(self.coefficients) + self.vertices
        if not points:
            raise ValueError("A lattice grid needs at least one point.")
        if any(len(p) != 2 for p in points):
            raise ValueError("A lattice grid draws polynomials in exactly two variables.")
        self.x_min = min(p[0] for p in points)
        self.x_max = max(p[0] for p in points)
        self.y_min = min(p[1] for p in points)
        self.y_max = max(p[1] for p in points)
        self.cols = self.x_max - self.x_min + 1
        self.rows = self.y_max - self.y_min + 1

        self.axis_w = 22
        self.axis_h = 14
        cs = cell_size
        if max_width:
            cs = min(cs, (max_width - self.axis_w) / self.cols)
        self.cs = max(cs, 2)
        self.total_w = self.axis_w + self.cols * self.cs
        self.total_h = self.axis_h + self.rows * self.cs

    def wrap(self, availWidth, availHeight):
        return (self.total_w, self.total_h)

    def _origin(self, x, y):
        return (self.axis_w + (x - self.x_min) * self.cs,
                self.axis_h + (y - self.y_min) * self.cs)

    def draw(self):
        c = self.canv
        cs = self.cs
        c.setLineWidth(0.3)
        for x in range(self.x_min, self.x_max + 1):
            for y in range(self.y_min, self.y_max + 1):
                px, py = self._origin(x, y)
                value = self.coefficients.get((x, y), 0.0)
                if value > 0:
                    c.setFillColor(POSITIVE)
                elif value < 0:
                    c.setFillColor(NEGATIVE)
                elif _inside((x, y), self.vertices):
                    c.setFillColor(GAP)
                else:
                    c.setStrokeColor(GAP)
                    c.rect(px, py, cs, cs, stroke=1, fill=0)
                    continue
                c.setStrokeColor(black)
                c.rect(px, py, cs, cs, stroke=1, fill=1)

        # Polygon through the cell centres of its vertices.
        if len(self.vertices) > 1:
            c.setStrokeColor(black)
            c.setLineWidth(1.2)
            path = c.beginPath()
            for i, (x, y) in enumerate(self.vertices):
                px, py = self._origin(x, y)
                if i == 0:
                    path.moveTo(px + cs / 2, py + cs / 2)
                else:
                    path.lineTo(px + cs / 2, py + cs / 2)
            path.close()
            c.drawPath(path, stroke=1, fill=0)

        c.setFillColor(black)
        c.setFont("Helvetica", 6)
        step = max(1, int(12 // cs) + 1)
        for x in range(self.x_min, self.x_max + 1, step):
            px, _ = self._origin(x, self.y_min)
            c.drawCentredString(px + cs / 2, 4, str(x))
        for y in range(self.y_min, self.y_max + 1, step):
            _, py = self._origin(self.x_min, y)
            c.drawRightString(self.axis_w - 4, py + cs / 2 - 2, str(y))
        c.setLineWidth(1)


class LatticeGridModule(Module):
    """Renders a coefficient-sign grid from a dictionary."""

    def render(self, data, styles, pagesize, **kwargs):
        flowables = []
        if data.get('title'):
            flowables.append(Paragraph(data['title'], styles['GridTitle']))
        width = pagesize[0] - kwargs.get('margin', 108)
        grid = LatticeGridFlowable(
            data['coefficients'],
            data.get('vertices', []),
            cell_size=kwargs.get('cell_size', 14),
            max_width=width,
        )
        flowables.append(grid)
        flowables.append(Spacer(1, 8))
        if data.get('caption'):
            flowables.append(Paragraph(data['caption'], styles['GridCaption']))
        return flowables
