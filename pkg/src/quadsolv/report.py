"""Text and JSON rendering of a :class:`~quadsolv.classifier.SolvabilityReport`."""

import json
import math
import re

import numpy as np

from .system import format_location, is_infinite

DIGITS = 9
PLACES = 10


def _real(x):
    """Round to ``DIGITS`` significant digits and ``PLACES`` decimals; never ``-0.0``.

    The decimal cut removes round-off noise (``1e-16`` instead of zero) that
    would otherwise differ between machines.
    """
    x = float(x)
    if not math.isfinite(x):
        return None
    x = round(x, PLACES)
    if x == 0:
        return 0.0
    x = float(f"{x:.{DIGITS}g}")
    return 0.0 if x == 0 else x


def _scalar(z):
    z = complex(z)
    return [_real(z.real), _real(z.imag)]


def _matrix(m):
    return [[_scalar(z) for z in row] for row in np.asarray(m)]


def _location(loc):
    return "inf" if is_infinite(loc) else _scalar(loc)


def report_dict(report):
    """Machine report as plain JSON-compatible data."""
    h = report.hypothesis
    points = []
    for row in h.exponent_table:
        entry = {
            "location": _location(row.location),
            "rank": row.point.poincare_rank,
            "class": row.point_class.name,
            "exponents": [_scalar(l) for l in row.exponents],
        }
        if row.leading_eigenvalues is not None:
            entry["leading_eigenvalues"] = [_scalar(l) for l in row.leading_eigenvalues]
        points.append(entry)
    witnesses = {}
    if report.triangular_witness is not None:
        witnesses["P"] = _matrix(report.triangular_witness.p_matrix)
    if report.diagonalizer is not None:
        witnesses["C"] = _matrix(report.diagonalizer)
    tol = report.tolerance
    return {
        "dimension": report.dimension,
        "parameters": {k: _scalar(v) for k, v in sorted(report.parameters.items())},
        "tolerances": None if tol is None else tol.as_dict(),
        "points": points,
        "hypotheses": {
            "threshold": None if h.threshold is None else _real(h.threshold),
            "n_points": h.n_points,
            "generic": h.generic,
            "cond1_ok": h.cond1_ok,
            "cond1prime_ok": h.cond1prime_ok,
            "fuchsian_diff_ok": h.fuchsian_diff_ok,
            "cond1_margin": None if h.cond1_margin is None else _real(h.cond1_margin),
            "cond1prime_margin": None if h.cond1prime_margin is None else _real(h.cond1prime_margin),
            "violations": list(h.violations),
        },
        "verdicts": {
            kind.value: {"verdict": entry.verdict.value, "reason": entry.reason}
            for kind, entry in report.verdicts.items()
        },
        "witnesses": witnesses,
    }


_FLAT = re.compile(r"\[\s*([^\[\]{}\"]*?)\s*\]")


def _flatten(text):
    # keep innermost arrays of scalars on one line
    return _FLAT.sub(lambda m: "[" + ", ".join(x.strip() for x in m.group(1).split(",")) + "]"
                     if m.group(1).strip() else "[]", text)


def report_json(report):
    return _flatten(json.dumps(report_dict(report), indent=2, ensure_ascii=False)) + "\n"


def _fmt(z):
    z = complex(z)
    re, im = _real(z.real), _real(z.imag)
    if im == 0:
        return f"{re:.6g}"
    if re == 0:
        return f"{im:.6g}i"
    sign = "+" if im > 0 else "-"
    return f"{re:.6g}{sign}{abs(im):.6g}i"


def _yn(flag):
    return "n/a" if flag is None else ("yes" if flag else "no")


def _matrix_lines(m, indent="    "):
    cells = [[_fmt(z) for z in row] for row in np.asarray(m)]
    width = max(len(c) for row in cells for c in row)
    return [indent + "[ " + "  ".join(c.rjust(width) for c in row) + " ]" for row in cells]


def report_text(report):
    """Human-readable report."""
    h = report.hypothesis
    out = [f"System of dimension {report.dimension} with {h.n_points} singular points"]
    if report.parameters:
        out.append(
            "Parameters: " + ", ".join(f"{k} = {_fmt(v)}" for k, v in sorted(report.parameters.items()))
        )
    out.append("")
    out.append("Singular points")
    labels = [format_location(row.location) for row in h.exponent_table]
    width = max(len(s) for s in labels)
    for label, row in zip(labels, h.exponent_table):
        ex = ", ".join(_fmt(l) for l in row.exponents)
        out.append(
            f"  z = {label.ljust(width)}  rank {row.point.poincare_rank}  "
            f"{row.point_class.name:<21}  exponents: {ex}"
        )
    out.append("")
    if h.threshold is None:
        out.append("Hypotheses: threshold 1/(n(p-1)) undefined for a scalar system")
    else:
        out.append(f"Hypotheses (threshold 1/(n(p-1)) = {h.threshold:.6g})")
        out.append(f"  generic:                            {_yn(h.generic)}")
        out.append(
            f"  cond1  (Re lambda > -threshold):     {_yn(h.cond1_ok)}  (margin {h.cond1_margin:.6g})"
        )
        out.append(
            f"  cond1prime (exponent spread < thr):  {_yn(h.cond1prime_ok)}  "
            f"(margin {h.cond1prime_margin:.6g})"
        )
        out.append(f"  Fuchsian differences outside Q\\Z:   {_yn(h.fuchsian_diff_ok)}")
        for v in h.violations:
            out.append(f"    - {v}")
    out.append("")
    out.append("Verdicts")
    for kind, entry in report.verdicts.items():
        out.append(f"  {kind.value}: {entry.verdict.value}")
        out.append(f"      {entry.reason}")
    if report.triangular_witness is not None or report.diagonalizer is not None:
        out.append("")
        out.append("Witnesses")
        if report.triangular_witness is not None:
            out.append("  P (every P^-1 M P upper triangular):")
            out.extend(_matrix_lines(report.triangular_witness.p_matrix))
        if report.diagonalizer is not None:
            out.append("  C (every C M C^-1 diagonal):")
            out.extend(_matrix_lines(report.diagonalizer))
    return "\n".join(out) + "\n"
