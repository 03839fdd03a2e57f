"""
One-parameter sweeps locating where the generated Lie algebra is solvable.

Each grid value is bound, the system ingested, and an indicator evaluated on
the Lie algebra generated by all local coefficient matrices. The Cartan
indicator ``max |Tr(u v)|`` (u in g, v in [g, g]) vanishes exactly on the
solvability locus and behaves like ``|b - b0|`` near a simple root, so roots
are located at sampled local minima, re-sampled finely between the
neighbouring grid points and polished by golden-section search.
"""

from dataclasses import dataclass, field
import enum
import logging
import math

import numpy as np

from .classifier import system_matrices
from .errors import QuadsolvError
from .lie import cartan_indicator, lie_closure, simultaneous_triangularize
from .numeric import DEFAULT_TOL
from .system import ingest

log = logging.getLogger(__name__)

GOLDEN = (math.sqrt(5) - 1) / 2


class Indicator(enum.Enum):
    CARTAN_PAIRING = "cartan"
    TRIANGULARIZABLE = "triangularizable"


@dataclass(frozen=True)
class SweepSpec:
    parameter: str
    start: float
    stop: float
    steps: int
    fixed_bindings: dict = field(default_factory=dict)
    indicator: Indicator = Indicator.CARTAN_PAIRING

    def __post_init__(self):
        if self.steps < 2:
            raise ValueError("a sweep needs at least 2 steps")
        if self.parameter in self.fixed_bindings:
            raise ValueError(f"swept parameter {self.parameter!r} is also fixed")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ValueError("grid bounds must be finite")

    def grid(self):
        return [float(x) for x in np.linspace(self.start, self.stop, self.steps)]


@dataclass
class SweepResult:
    samples: list
    roots: list
    zero_runs: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    refined: list = field(default_factory=list)


def _bindings(spec, value):
    b = dict(spec.fixed_bindings)
    b[spec.parameter] = value
    return b


def _cartan(document, spec, value, tol):
    sys = ingest(document, _bindings(spec, value), tol)
    return cartan_indicator(lie_closure(system_matrices(sys, tol), tol), tol)


def evaluate_indicator(document, spec, value, tol=DEFAULT_TOL):
    """Indicator value at one grid point (float or bool)."""
    if spec.indicator is Indicator.CARTAN_PAIRING:
        return _cartan(document, spec, value, tol)
    sys = ingest(document, _bindings(spec, value), tol)
    return simultaneous_triangularize(system_matrices(sys, tol), tol) is not None


def golden_minimize(f, lo, hi, width=1e-9, max_iter=200):
    """Minimize a unimodal ``f`` on ``[lo, hi]``; returns ``(x, f(x))`` best seen."""
    best = min(((lo, f(lo)), (hi, f(hi))), key=lambda t: t[1])
    x1 = hi - GOLDEN * (hi - lo)
    x2 = lo + GOLDEN * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(max_iter):
        if hi - lo <= width:
            break
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - GOLDEN * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + GOLDEN * (hi - lo)
            f2 = f(x2)
        for cand in ((x1, f1), (x2, f2)):
            if cand[1] < best[1]:
                best = cand
    return best


def _runs(flags):
    """Maximal runs of True as ``(first, last)`` index pairs."""
    runs, start = [], None
    for i, flag in enumerate(flags + [False]):
        if flag and start is None:
            start = i
        elif not flag and start is not None:
            runs.append((start, i - 1))
            start = None
    return runs


def _refine(document, spec, xs, i, tol):
    lo = xs[max(i - 1, 0)]
    hi = xs[min(i + 1, len(xs) - 1)]

    def f(x):
        try:
            return _cartan(document, spec, x, tol)
        except QuadsolvError:
            return math.inf

    # the indicator need not be unimodal across two grid cells: pre-scan
    # finely, then polish around the best sub-sample
    sub = np.linspace(lo, hi, 17)
    vals = [f(x) for x in sub]
    j = int(np.argmin(vals))
    x, fx = golden_minimize(f, sub[max(j - 1, 0)], sub[min(j + 1, 16)])
    return (float(x), fx) if fx <= vals[j] else (float(sub[j]), vals[j])


def run_sweep(document, spec, tol=DEFAULT_TOL):
    """Evaluate the indicator on the grid and locate isolated roots.

    Failing samples are recorded in ``failures`` and skipped. Runs of two
    or more consecutive zero samples are reported as ``zero_runs`` (the
    indicator does not depend on the parameter there) rather than as roots.
    A root is accepted when the refined Cartan indicator is at most
    ``10 * eq_tol``.
    """
    xs = spec.grid()
    samples, failures, values = [], [], []
    for x in xs:
        try:
            v = evaluate_indicator(document, spec, x, tol)
        except QuadsolvError as exc:
            failures.append((x, f"{type(exc).__name__}: {exc}"))
            log.info("sweep sample %s failed: %s", x, exc)
            values.append(None)
            continue
        samples.append((x, v))
        values.append(v)

    accept = 10 * tol.eq_tol
    if spec.indicator is Indicator.CARTAN_PAIRING:
        num = [math.inf if v is None else v for v in values]
        zero = [v <= accept for v in num]
        candidates = []
        for i, v in enumerate(num):
            if not math.isfinite(v):
                continue
            left = num[i - 1] if i > 0 else math.inf
            right = num[i + 1] if i + 1 < len(num) else math.inf
            if v <= left and v <= right and (v < left or v < right):
                candidates.append(i)
    else:
        zero = [v is True for v in values]
        candidates = [a for a, b in _runs(zero) if a == b]

    runs = [(xs[a], xs[b]) for a, b in _runs(zero) if b > a]
    in_run = {i for a, b in _runs(zero) if b > a for i in range(a, b + 1)}
    roots, refined = [], []
    for i in candidates:
        if i in in_run:
            continue
        x, fx = _refine(document, spec, xs, i, tol)
        refined.append((x, fx))
        if fx <= accept and all(abs(x - r) > 1e-7 for r in roots):
            roots.append(x)
    return SweepResult(
        samples=samples, roots=sorted(roots), zero_runs=runs, failures=failures, refined=refined
    )


def sweep_dict(spec, result):
    def val(v):
        return v if isinstance(v, bool) else float(f"{v:.9g}") + 0.0

    return {
        "parameter": spec.parameter,
        "grid": {"start": spec.start, "stop": spec.stop, "steps": spec.steps},
        "fixed_bindings": {k: [complex(v).real, complex(v).imag] for k, v in spec.fixed_bindings.items()},
        "indicator": spec.indicator.name,
        "samples": [[float(f"{x:.12g}") + 0.0, val(v)] for x, v in result.samples],
        "roots": [float(f"{r:.12g}") + 0.0 for r in result.roots],
        "zero_runs": [[a, b] for a, b in result.zero_runs],
        "failures": [[x, msg] for x, msg in result.failures],
    }
