"""Why the verdict must stay INAPPLICABLE outside the smallness region.

The sheared form of u'' = (z^2 + c) u has a common eigenvector of its
coefficient matrices only for c = +-1, yet exponents of size 1 violate the
hypotheses, so nothing can be read off the matrices.
"""

from quadsolv import classify, common_eigenvector, ingest
from quadsolv.classifier import SolvabilityType
from quadsolv.fixtures import fixture_document
from quadsolv.system import local_points

doc = fixture_document("sec2-example1")
for c in (-2, -1, 0, 1, 2, 3):
    (_, t0), _ = local_points(ingest(doc, {"c": c}))
    v = common_eigenvector([t0.coeffs[0], t0.coeffs[2]])
    print(f"c = {c:+d}: common eigenvector {'yes' if v is not None else 'no'}")

report = classify(ingest(doc, {"c": 3}))
entry = report.verdicts[SolvabilityType.GENERALIZED_QUADRATURES]
print()
print(f"c = 3: {entry.verdict.value}")
print(" ", entry.reason.split("; ")[0])
