"""Build a problem in code, validate it, pack it, and look inside.

The Varignon configuration: the midpoints of the four sides of any
quadrilateral form a parallelogram.
"""

import io
import zipfile

from i2gatp import (
    Conjecture,
    Constraint,
    ConstraintKind,
    Construction,
    ElementInstance,
    GeoKind,
    Midpoint,
    Parallel,
    Problem,
    ProblemInfo,
    ScenePoint,
    SceneLine,
    instantiate,
    pack,
    suggested_filename,
    unpack,
    validate_problem,
)

# The construction is a straight-line program: four free corners, four
# midpoints, four side lines of the midpoint quadrilateral.
free = lambda out: Constraint(output=out, kind=ConstraintKind.FREE_POINT)
mid = lambda out, a, b: Constraint(output=out, kind=ConstraintKind.MIDPOINT_OF_TWO_POINTS, inputs=(a, b))
line = lambda out, a, b: Constraint(output=out, kind=ConstraintKind.LINE_THROUGH_TWO_POINTS, inputs=(a, b))

constraints = (
    free("A"), free("B"), free("C"), free("D"),
    mid("P", "A", "B"), mid("Q", "B", "C"), mid("R", "C", "D"), mid("S", "D", "A"),
    line("a", "P", "Q"), line("b", "Q", "R"), line("c", "R", "S"), line("d", "S", "P"),
)

# The format stores a static initial instance next to the program; compute
# it by executing the program on concrete free coordinates.
corners = {"A": (0.0, 0.0), "B": (4.0, 0.0), "C": (6.0, 4.0), "D": (0.0, 6.0)}
scene = instantiate(Construction(elements=(), constraints=constraints), corners)

elements = []
for c in constraints:
    obj = scene[c.output]
    if isinstance(obj, ScenePoint):
        elements.append(ElementInstance(c.output, GeoKind.POINT, (obj.x, obj.y)))
    elif isinstance(obj, SceneLine):
        elements.append(ElementInstance(c.output, GeoKind.LINE, (obj.a, obj.b, obj.c)))

problem = Problem(
    construction=Construction(elements=tuple(elements), constraints=constraints),
    info=ProblemInfo(
        name="varignon",
        description="Midpoints of a quadrilateral form a parallelogram",
        keywords=("quadrilateral", "midpoint"),
    ),
    conjecture=Conjecture(
        hypothesis=(
            Midpoint("P", "A", "B"),
            Midpoint("Q", "B", "C"),
            Midpoint("R", "C", "D"),
            Midpoint("S", "D", "A"),
        ),
        ndg=(),
        conclusion=(Parallel("P", "Q", "S", "R"), Parallel("P", "S", "Q", "R")),
    ),
)

print("violations:", validate_problem(problem) or "none")

archive = pack(problem)
print(f"packed {len(archive)} bytes, suggested name: {suggested_filename(problem)}")
print("entries:")
for name in zipfile.ZipFile(io.BytesIO(archive)).namelist():
    print("  ", name)

# Packing is deterministic and unpack is its inverse up to canonical order.
assert pack(problem) == archive
assert unpack(archive) == problem
print("round-trip: ok")
