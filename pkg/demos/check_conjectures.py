"""Randomized numeric checking: a true theorem and a false conjecture.

The checker samples free points with a fixed, documented PRNG and tests
the conclusion over each sample.  It mirrors dragging points in a
dynamic-geometry tool; "consistent over samples" is evidence, not a proof.
"""

from pathlib import Path

from i2gatp import check_conjecture, parse_dsl

here = Path(__file__).parent

# A true theorem: Varignon's parallelogram.
varignon = parse_dsl((here / "varignon.gcl").read_text())
report = check_conjecture(varignon, trials=1000, seed=42)
print("varignon:", report.verdict.value)
print(f"  {report.samples_checked}/{report.samples_total} samples checked, "
      f"{report.samples_degenerate} degenerate")

# Determinism: same seed, same report, on any platform.
assert report == check_conjecture(varignon, trials=1000, seed=42)

# A false conjecture: three random points are almost never collinear.
bogus = parse_dsl(
    "point A 0 0\n"
    "point B 1 0\n"
    "point C 0 1\n"
    "prove { conclude collinear A B C }\n"
)
report = check_conjecture(bogus, trials=100, seed=1)
print("three-free-points-collinear:", report.verdict.value)
print("  witness (free-point assignment that breaks the conclusion):")
for point_id, (x, y) in report.witness.assignment:
    print(f"    {point_id} = ({x:.6f}, {y:.6f})")

# A vacuous case: a self-contradictory non-degeneracy condition rejects
# every sample before the conclusion is ever reached.
vacuous = parse_dsl(
    "point A 0 0\n"
    "point B 1 1\n"
    "prove { ndg not_equal A A ; conclude not_equal A B }\n"
)
print("contradictory-ndg:", check_conjecture(vacuous, trials=50, seed=5).verdict.value)
