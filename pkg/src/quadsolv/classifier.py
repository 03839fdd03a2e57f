"""
Solvability verdicts for generic systems with small (formal) exponents.

Exponents are collected at every singular point (eigenvalues of the
residue at Fuchsian points, splitting-recursion exponents at non-resonant
irregular points). When they are small enough, in the sense of either

    cond1:       Re l > -1/(n(p-1))                 for all exponents l
    cond1prime:  |Re l_j - Re l_k| < 1/(n(p-1))      at every point

and no Fuchsian exponent difference lies in Q \\ Z, solvability is read off
the coefficient matrices: generalized quadratures iff they are
simultaneously triangularizable, exponentials of integrals and algebraic
functions iff simultaneously diagonalizable, with the extra rationality
conditions for purely Fuchsian systems.
"""

from dataclasses import dataclass, field
import enum
import math

from .errors import DimensionOne, RankNotOne, ResonantPointPresent
from .lie import simultaneous_diagonalize, simultaneous_triangularize
from .numeric import DEFAULT_TOL, is_rational, mat_norm1, near_integer
from .splitting import fuchsian_exponents, split
from .system import PointClass, classify_point, format_location, local_points


class SolvabilityType(enum.Enum):
    GENERALIZED_QUADRATURES = "GENERALIZED_QUADRATURES"
    EXP_OF_INTEGRALS_AND_ALGEBRAIC = "EXP_OF_INTEGRALS_AND_ALGEBRAIC"
    INTEGRALS_AND_ALGEBRAIC = "INTEGRALS_AND_ALGEBRAIC"
    INTEGRALS = "INTEGRALS"
    ALGEBRAIC = "ALGEBRAIC"


class Verdict(enum.Enum):
    YES = "YES"
    NO = "NO"
    INAPPLICABLE = "INAPPLICABLE"


DESCRIPTIONS = {
    SolvabilityType.GENERALIZED_QUADRATURES: "solvable by generalized quadratures",
    SolvabilityType.EXP_OF_INTEGRALS_AND_ALGEBRAIC: "solvable by exponentials of integrals and algebraic functions",
    SolvabilityType.INTEGRALS_AND_ALGEBRAIC: "solvable by integrals and algebraic functions",
    SolvabilityType.INTEGRALS: "solvable by integrals",
    SolvabilityType.ALGEBRAIC: "solvable by algebraic functions",
}

# informational equivalences valid under the same hypotheses
NOTES = {
    SolvabilityType.EXP_OF_INTEGRALS_AND_ALGEBRAIC: "equivalent here to solvability by exponentials of integrals",
    SolvabilityType.INTEGRALS_AND_ALGEBRAIC: "equivalent here to solvability by integrals and radicals",
    SolvabilityType.ALGEBRAIC: "equivalent here to solvability by radicals",
}


@dataclass(frozen=True, eq=False)
class PointExponents:
    location: object
    point: object
    point_class: PointClass
    exponents: list
    leading_eigenvalues: list = None

    @property
    def label(self):
        return format_location(self.location)


@dataclass(eq=False)
class HypothesisReport:
    generic: bool
    cond1_ok: bool
    cond1prime_ok: bool
    fuchsian_diff_ok: bool
    threshold: float
    exponent_table: list
    n_points: int
    cond1_margin: float = None
    cond1prime_margin: float = None
    violations: list = field(default_factory=list)

    @property
    def smallness_ok(self):
        return bool(self.cond1_ok or self.cond1prime_ok)

    @property
    def satisfied(self):
        return bool(self.generic and self.smallness_ok and self.fuchsian_diff_ok)


@dataclass(frozen=True)
class VerdictEntry:
    verdict: Verdict
    reason: str


@dataclass(eq=False)
class SolvabilityReport:
    dimension: int
    verdicts: dict
    hypothesis: HypothesisReport
    triangular_witness: object = None
    diagonalizer: object = None
    matrices: list = field(default_factory=list, repr=False)
    parameters: dict = field(default_factory=dict)
    tolerance: object = None

    def __getitem__(self, kind):
        if isinstance(kind, str):
            kind = SolvabilityType(kind)
        return self.verdicts[kind].verdict


def _exponent_table(sys, tol):
    table = []
    for location, pt in local_points(sys, tol):
        cls = classify_point(pt, tol)
        if cls is PointClass.IRREGULAR_RESONANT:
            raise ResonantPointPresent(format_location(location))
        if cls is PointClass.FUCHSIAN:
            table.append(PointExponents(location, pt, cls, fuchsian_exponents(pt, tol)))
        else:
            data = split(pt, tol=tol)
            table.append(
                PointExponents(location, pt, cls, data.exponents, data.leading_eigenvalues)
            )
    return table


def _in_q_minus_z(d, tol):
    if near_integer(d, tol) is not None:
        return False
    q = is_rational(d, tol, strict=True)
    return q is not None and q.denominator >= 2


def gather_exponents(sys, tol=DEFAULT_TOL):
    """Exponent table and hypothesis flags.

    ``n`` counts every singular point, including infinity when it is
    singular.

    Raises
    ------
    ResonantPointPresent
        If some irregular point has a repeated leading eigenvalue.
    DimensionOne
        For scalar systems, where ``1/(n(p-1))`` is undefined.
    """
    p = sys.dimension
    table = _exponent_table(sys, tol)
    if p == 1:
        raise DimensionOne("threshold 1/(n(p-1)) is undefined for p = 1")
    n = len(table)
    thr = 1.0 / (n * (p - 1))
    thr_text = f"1/{n * (p - 1)}"
    violations = []

    cond1_margin = min(l.real + thr for row in table for l in row.exponents)
    cond1_ok = cond1_margin > 0
    for row in table:
        for l in row.exponents:
            if not l.real > -thr:
                violations.append(
                    f"condition cond1 violated at point {row.label}: Re lambda = {l.real:.6g} "
                    f"is not > -{thr_text} (threshold {thr_text})"
                )

    spreads = []
    for row in table:
        re = [l.real for l in row.exponents]
        spread = max(re) - min(re)
        spreads.append(spread)
        if not spread < thr:
            violations.append(
                f"condition cond1prime violated at point {row.label}: exponent real parts "
                f"spread {spread:.6g}, not < {thr_text} (threshold {thr_text})"
            )
    cond1prime_margin = thr - max(spreads)
    cond1prime_ok = cond1prime_margin > 0

    fuchsian_ok = True
    for row in table:
        if row.point_class is not PointClass.FUCHSIAN:
            continue
        ex = row.exponents
        for j in range(len(ex)):
            for k in range(j + 1, len(ex)):
                if _in_q_minus_z(ex[j] - ex[k], tol):
                    fuchsian_ok = False
                    violations.append(
                        f"exponent difference {complex(ex[j] - ex[k]).real:.6g} in Q\\Z "
                        f"at Fuchsian point {row.label}"
                    )
    return HypothesisReport(
        generic=True,
        cond1_ok=bool(cond1_ok),
        cond1prime_ok=bool(cond1prime_ok),
        fuchsian_diff_ok=fuchsian_ok,
        threshold=thr,
        exponent_table=table,
        n_points=n,
        cond1_margin=float(cond1_margin),
        cond1prime_margin=float(cond1prime_margin),
        violations=violations,
    )


def system_matrices(sys, tol=DEFAULT_TOL):
    """All principal-part coefficients of all singular points, local coordinates."""
    return [c for _, pt in local_points(sys, tol) for c in pt.coeffs]


def _is_integer_difference(d, tol):
    # same rational test as the Q\Z check, so a difference is exactly one of
    # integer, in Q\Z, or irrational
    q = is_rational(d, tol, strict=True)
    return q is not None and q.denominator == 1


def _rational_integer_spread(values, tol):
    """True iff every value is rational and all pairwise differences are integers."""
    if any(is_rational(v, tol, strict=True) is None for v in values):
        return False
    return all(
        _is_integer_difference(values[j] - values[k], tol)
        for j in range(len(values))
        for k in range(j + 1, len(values))
    )


def _cluster_means(row):
    """Residue eigenvalues with each near-coincident group replaced by its mean.

    An eigenvalue of multiplicity m moves by about (eps ||R||)^(1/m) under
    rounding, while the mean of the group (a trace) stays accurate, so the
    rationality clauses are tested on group means.
    """
    vals = [complex(l) for l in row.exponents]
    p = len(vals)
    norm = mat_norm1(row.point.residue)
    radius = 10.0 * (2.2e-16 * (1.0 + norm)) ** (1.0 / p) * (1.0 + norm)
    group = list(range(p))
    for j in range(p):
        for k in range(j + 1, p):
            if abs(vals[j] - vals[k]) <= radius and group[k] != group[j]:
                old = group[k]
                group = [group[j] if g == old else g for g in group]
    out = []
    for g in group:
        members = [vals[i] for i in range(p) if group[i] == g]
        out.append(sum(members) / len(members))
    return out


def _all_zero(values, tol):
    return all(abs(l) <= tol.eq_tol for l in values)


def _hypothesis_text(h):
    parts = []
    if h.cond1_ok:
        parts.append("cond1 holds")
    if h.cond1prime_ok:
        parts.append("cond1prime holds")
    return " and ".join(parts)


def _failed_hypotheses(h):
    failed = []
    if not h.smallness_ok:
        failed.extend(v for v in h.violations if v.startswith("condition cond1"))
    if not h.fuchsian_diff_ok:
        failed.extend(v for v in h.violations if "Q\\Z" in v)
    return "INAPPLICABLE: " + "; ".join(failed)


def _scalar_report(sys, tol, table, mats):
    irregular = any(row.point_class is not PointClass.FUCHSIAN for row in table)
    verdicts = {
        SolvabilityType.GENERALIZED_QUADRATURES: VerdictEntry(
            Verdict.YES, "scalar system: solved by one quadrature (outside the small-exponent criteria)"
        ),
        SolvabilityType.EXP_OF_INTEGRALS_AND_ALGEBRAIC: VerdictEntry(
            Verdict.YES, "scalar system: the solution is an exponential of an integral"
        ),
    }
    for kind in (
        SolvabilityType.INTEGRALS_AND_ALGEBRAIC,
        SolvabilityType.INTEGRALS,
        SolvabilityType.ALGEBRAIC,
    ):
        if irregular:
            verdicts[kind] = VerdictEntry(Verdict.NO, "irregular point present")
        else:
            verdicts[kind] = VerdictEntry(
                Verdict.INAPPLICABLE, "scalar system: outside the small-exponent criteria"
            )
    hyp = HypothesisReport(
        generic=True,
        cond1_ok=None,
        cond1prime_ok=None,
        fuchsian_diff_ok=None,
        threshold=None,
        exponent_table=table,
        n_points=len(table),
    )
    return SolvabilityReport(
        dimension=1,
        verdicts=verdicts,
        hypothesis=hyp,
        triangular_witness=simultaneous_triangularize(mats, tol),
        diagonalizer=simultaneous_diagonalize(mats, tol),
        matrices=mats,
        parameters=dict(sys.parameters),
        tolerance=tol,
    )


def classify(sys, tol=DEFAULT_TOL):
    """Per-type solvability verdicts with hypothesis diagnostics and witnesses.

    Triangularization and diagonalization are attempted even when the
    hypotheses fail, but the verdict then stays ``INAPPLICABLE``.
    """
    mats = system_matrices(sys, tol)
    if sys.dimension == 1:
        return _scalar_report(sys, tol, _exponent_table(sys, tol), mats)
    h = gather_exponents(sys, tol)
    witness = simultaneous_triangularize(mats, tol)
    diag = simultaneous_diagonalize(mats, tol)
    tri_ok = witness is not None
    diag_ok = diag is not None
    irregular = any(row.point_class is not PointClass.FUCHSIAN for row in h.exponent_table)
    verdicts = {}

    def put(kind, ok, because):
        desc = DESCRIPTIONS[kind]
        note = f" ({NOTES[kind]})" if kind in NOTES and ok else ""
        if ok:
            verdicts[kind] = VerdictEntry(Verdict.YES, f"{desc}{note}: {because}")
        else:
            verdicts[kind] = VerdictEntry(Verdict.NO, f"not {desc}: {because}")

    gq = SolvabilityType.GENERALIZED_QUADRATURES
    ex = SolvabilityType.EXP_OF_INTEGRALS_AND_ALGEBRAIC
    if h.satisfied:
        hyp = _hypothesis_text(h)
        put(
            gq,
            tri_ok,
            ("coefficient matrices are simultaneously triangularizable" if tri_ok
             else "coefficient matrices are not simultaneously triangularizable") + f"; {hyp}",
        )
        put(
            ex,
            diag_ok,
            ("coefficient matrices are simultaneously diagonalizable" if diag_ok
             else "coefficient matrices are not simultaneously diagonalizable") + f"; {hyp}",
        )
    else:
        reason = _failed_hypotheses(h)
        verdicts[gq] = VerdictEntry(Verdict.INAPPLICABLE, reason)
        verdicts[ex] = VerdictEntry(Verdict.INAPPLICABLE, reason)

    kinds = (
        SolvabilityType.INTEGRALS_AND_ALGEBRAIC,
        SolvabilityType.INTEGRALS,
        SolvabilityType.ALGEBRAIC,
    )
    if irregular:
        for kind in kinds:
            verdicts[kind] = VerdictEntry(
                Verdict.NO, f"not {DESCRIPTIONS[kind]}: irregular point present"
            )
    elif not h.satisfied:
        for kind in kinds:
            verdicts[kind] = VerdictEntry(Verdict.INAPPLICABLE, _failed_hypotheses(h))
    else:
        means = [_cluster_means(row) for row in h.exponent_table]
        rational = all(_rational_integer_spread(ev, tol) for ev in means)
        zero = all(_all_zero(ev, tol) for ev in means)
        put(
            SolvabilityType.INTEGRALS_AND_ALGEBRAIC,
            tri_ok and rational,
            f"triangularizable: {'yes' if tri_ok else 'no'}; residue eigenvalues rational "
            f"with integer differences: {'yes' if rational else 'no'}",
        )
        put(
            SolvabilityType.INTEGRALS,
            tri_ok and zero,
            f"triangularizable: {'yes' if tri_ok else 'no'}; residue eigenvalues all zero: "
            f"{'yes' if zero else 'no'}",
        )
        put(
            SolvabilityType.ALGEBRAIC,
            diag_ok and rational,
            f"diagonalizable: {'yes' if diag_ok else 'no'}; residue eigenvalues rational "
            f"with integer differences: {'yes' if rational else 'no'}",
        )
    return SolvabilityReport(
        dimension=sys.dimension,
        verdicts=verdicts,
        hypothesis=h,
        triangular_witness=witness,
        diagonalizer=diag,
        matrices=mats,
        parameters=dict(sys.parameters),
        tolerance=tol,
    )


def check_corollary1(sys, tol=DEFAULT_TOL):
    """Shortcut hypothesis for rank-one systems: every ``||B_i^(1)||_1 < 1/(n(p-1))``.

    Bypasses the exponent computation, since at rank one each formal
    exponent is bounded by the norm of the residue.
    """
    pts = local_points(sys, tol)
    for location, pt in pts:
        if pt.poincare_rank != 1:
            raise RankNotOne(
                f"point {format_location(location)} has Poincare rank {pt.poincare_rank}"
            )
    if sys.dimension == 1:
        raise DimensionOne("threshold 1/(n(p-1)) is undefined for p = 1")
    thr = 1.0 / (len(pts) * (sys.dimension - 1))
    return all(mat_norm1(pt.coeffs[1]) < thr for _, pt in pts)
