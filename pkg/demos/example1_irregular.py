"""Three irregular points with small exponents.

Computes the formal exponents at 0, 1 and -1, checks the smallness
hypotheses and prints the verdicts with the triangularizing matrix.
"""

from quadsolv import classify, ingest, split
from quadsolv.fixtures import fixture_document
from quadsolv.report import report_text
from quadsolv.system import format_location, local_points

bindings = {"a": 0.1, "b": 0.05, "c": -0.05}
system = ingest(fixture_document("sec4-example1"), bindings)

print("Formal exponents (splitting recursion, K = r):")
for location, point in local_points(system):
    data = split(point)
    shown = ", ".join(f"{x.real:+.4f}" for x in data.exponents)
    print(f"  z = {format_location(location):>3}  rank {point.poincare_rank}  [{shown}]")

print()
print(report_text(classify(system)))
