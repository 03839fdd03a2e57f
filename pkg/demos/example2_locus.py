"""Locate the solvability locus of a one-parameter family numerically.

The Cartan pairing indicator vanishes exactly where the generated Lie
algebra is solvable; the sweep refines its zeros.
"""

from quadsolv import classify, ingest
from quadsolv.classifier import SolvabilityType
from quadsolv.fixtures import fixture_document
from quadsolv.sweep import SweepSpec, run_sweep

doc = fixture_document("sec4-example2")
spec = SweepSpec("b", -8.0, 2.0, 101, {"a": 1.0})
result = run_sweep(doc, spec)

print("indicator along the grid (every 10th sample):")
for x, v in result.samples[::10]:
    print(f"  b = {x:6.2f}  {v:.3e}")
print("refined roots:", ", ".join(f"{r:.9f}" for r in result.roots))

for b in [*result.roots, 1.0]:
    verdict = classify(ingest(doc, {"a": 1.0, "b": round(b, 6)}))[SolvabilityType.GENERALIZED_QUADRATURES]
    print(f"  b = {b:+.6f}: generalized quadratures {verdict.value}")
