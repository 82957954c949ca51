"""Exact-arithmetic oracles used by the tests.

Everything here works over ``fractions.Fraction`` so predicate truth and
construction coordinates can be decided with no rounding at all.  The
oracles are deliberately independent of the float evaluation path they
check: collinearity is a determinant, equal length compares squared
lengths, the construction interpreter below re-executes the straight-line
program over rationals.
"""

from __future__ import annotations

import math
from fractions import Fraction

from i2gatp.model import Construction, ConstraintKind

Frac2 = tuple[Fraction, Fraction]


def collinear_exact(p: Frac2, q: Frac2, r: Frac2) -> bool:
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]) == 0


def parallel_exact(a: Frac2, b: Frac2, c: Frac2, d: Frac2) -> bool:
    return (b[0] - a[0]) * (d[1] - c[1]) - (b[1] - a[1]) * (d[0] - c[0]) == 0


def perpendicular_exact(a: Frac2, b: Frac2, c: Frac2, d: Frac2) -> bool:
    return (b[0] - a[0]) * (d[0] - c[0]) + (b[1] - a[1]) * (d[1] - c[1]) == 0


def midpoint_exact(m: Frac2, a: Frac2, b: Frac2) -> bool:
    return 2 * m[0] == a[0] + b[0] and 2 * m[1] == a[1] + b[1]


def same_length_exact(a: Frac2, b: Frac2, c: Frac2, d: Frac2) -> bool:
    ab2 = (b[0] - a[0]) ** 2 + (b[1] - a[1]) ** 2
    cd2 = (d[0] - c[0]) ** 2 + (d[1] - c[1]) ** 2
    return ab2 == cd2


def cross_ratio_exact(a: Frac2, b: Frac2, c: Frac2, d: Frac2) -> Fraction:
    """Signed cross ratio (ac/cb)/(ad/db) of four collinear points, using
    exact signed coordinates along the ab direction (scaled projection, no
    square roots needed since only ratios matter)."""

    ux = b[0] - a[0]
    uy = b[1] - a[1]
    tb = ux * ux + uy * uy
    tc = (c[0] - a[0]) * ux + (c[1] - a[1]) * uy
    td = (d[0] - a[0]) * ux + (d[1] - a[1]) * uy
    return (tc * (tb - td)) / ((tb - tc) * td)


def instantiate_exact(
    construction: Construction, free_assign: dict[str, Frac2]
) -> dict[str, tuple[Fraction, ...]]:
    """Execute the straight-line program over rationals.

    Lines are kept as unnormalized homogeneous triples; supported steps are
    the square-root-free ones (free points, lines, intersections, midpoints,
    perpendicular/parallel lines).
    """

    scene: dict[str, tuple[Fraction, ...]] = {}
    for c in construction.constraints:
        if c.kind is ConstraintKind.FREE_POINT:
            x, y = free_assign[c.output]
            scene[c.output] = (Fraction(x), Fraction(y))
        elif c.kind is ConstraintKind.LINE_THROUGH_TWO_POINTS:
            (x1, y1), (x2, y2) = scene[c.inputs[0]], scene[c.inputs[1]]
            scene[c.output] = (y1 - y2, x2 - x1, x1 * y2 - x2 * y1)
        elif c.kind is ConstraintKind.INTERSECTION_OF_TWO_LINES:
            (a1, b1, c1), (a2, b2, c2) = scene[c.inputs[0]], scene[c.inputs[1]]
            h3 = a1 * b2 - b1 * a2
            if h3 == 0:
                raise ZeroDivisionError("parallel lines")
            scene[c.output] = ((b1 * c2 - c1 * b2) / h3, (c1 * a2 - a1 * c2) / h3)
        elif c.kind is ConstraintKind.MIDPOINT_OF_TWO_POINTS:
            (x1, y1), (x2, y2) = scene[c.inputs[0]], scene[c.inputs[1]]
            scene[c.output] = ((x1 + x2) / 2, (y1 + y2) / 2)
        elif c.kind is ConstraintKind.PERPENDICULAR_LINE_THROUGH_POINT:
            (a, b, _), (px, py) = scene[c.inputs[0]], scene[c.inputs[1]]
            scene[c.output] = (b, -a, a * py - b * px)
        elif c.kind is ConstraintKind.PARALLEL_LINE_THROUGH_POINT:
            (a, b, _), (px, py) = scene[c.inputs[0]], scene[c.inputs[1]]
            scene[c.output] = (a, b, -(a * px + b * py))
        else:
            raise NotImplementedError(f"no exact rule for {c.kind}")
    return scene


def normalize_line_float(a: Fraction, b: Fraction, c: Fraction) -> tuple[float, float, float]:
    """Float normalization of an exact line, matching the scene convention
    (unit normal, lexicographically positive)."""

    af, bf, cf = float(a), float(b), float(c)
    n = math.sqrt(af * af + bf * bf)
    af, bf, cf = af / n, bf / n, cf / n
    if af < 0.0 or (af == 0.0 and bf < 0.0):
        af, bf, cf = -af, -bf, -cf
    return af, bf, cf
