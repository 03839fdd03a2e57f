"""
Linear systems in partial-fraction form.

A system ``dy/dz = B(z) y`` is stored as its principal parts

    B(z) = sum_i sum_k B_i^(k) / (z - a_i)^(r_i + 1 - k)

plus, optionally, a point at infinity. For a point at infinity the
coefficients describe the expansion of ``B`` in ``z`` near ``z = oo``,
leading term first::

    B(z) = C_(r-1) z^(r-1) + ... + C_0 + R / z + O(z^-2)

stored as ``[C_(r-1), ..., C_0, R]`` with Poincare rank ``r``. Under
``t = 1/z`` this becomes an ordinary principal part at ``t = 0`` with all
coefficients negated (see :func:`invert_variable`).
"""

from dataclasses import dataclass, field
import enum
import json
import math

import numpy as np

from . import expr
from .errors import (
    DimensionMismatch,
    DuplicatePoint,
    InfinityAlreadySingular,
    NotInfinity,
    ParseError,
    UnboundParameter,
)
from .numeric import DEFAULT_TOL, distinct_eigenpairs, eigen_decompose, mat_norm1

INFINITY = "inf"


def is_infinite(location):
    return isinstance(location, str) and location == INFINITY


def format_location(location):
    if is_infinite(location):
        return "inf"
    z = complex(location)
    if z.imag == 0:
        return f"{z.real:g}"
    return f"{z.real:g}{z.imag:+g}i"


def _frozen(m):
    a = np.array(m, dtype=complex)
    a.setflags(write=False)
    return a


class PointClass(enum.Enum):
    FUCHSIAN = "FUCHSIAN"
    IRREGULAR_NONRESONANT = "IRREGULAR_NONRESONANT"
    IRREGULAR_RESONANT = "IRREGULAR_RESONANT"


@dataclass(frozen=True, eq=False)
class SingularPoint:
    location: object
    poincare_rank: int
    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(_frozen(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if self.poincare_rank < 0:
            raise ValueError("Poincare rank must be >= 0")
        if len(coeffs) != self.poincare_rank + 1:
            raise DimensionMismatch(
                f"point {format_location(self.location)}: rank {self.poincare_rank} "
                f"needs {self.poincare_rank + 1} coefficient matrices, got {len(coeffs)}"
            )
        p = coeffs[0].shape[0]
        for c in coeffs:
            if c.shape != (p, p):
                raise DimensionMismatch(
                    f"point {format_location(self.location)}: coefficient shapes differ"
                )
        if not is_infinite(self.location):
            object.__setattr__(self, "location", complex(self.location))

    @property
    def dimension(self):
        return self.coeffs[0].shape[0]

    @property
    def leading(self):
        return self.coeffs[0]

    @property
    def residue(self):
        return self.coeffs[-1]

    @property
    def is_infinity(self):
        return is_infinite(self.location)


@dataclass(frozen=True, eq=False)
class LinearSystem:
    dimension: int
    points: tuple
    parameters: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "parameters", dict(self.parameters))
        if self.dimension < 1:
            raise DimensionMismatch("dimension must be >= 1")
        if not self.points:
            raise DimensionMismatch("a system needs at least one singular point")
        for pt in self.points:
            if pt.dimension != self.dimension:
                raise DimensionMismatch(
                    f"point {format_location(pt.location)} has {pt.dimension}x{pt.dimension} "
                    f"coefficients, system dimension is {self.dimension}"
                )
        if sum(pt.is_infinity for pt in self.points) > 1:
            raise DuplicatePoint("more than one point at infinity")

    @property
    def finite_points(self):
        return [pt for pt in self.points if not pt.is_infinity]

    @property
    def infinity_point(self):
        for pt in self.points:
            if pt.is_infinity:
                return pt
        return None

    def residue_sum(self):
        total = np.zeros((self.dimension, self.dimension), dtype=complex)
        for pt in self.finite_points:
            total = total + pt.residue
        return total

    @property
    def infinity_regular(self):
        if self.infinity_point is not None:
            return False
        return check_infinity_regular(self)

    def coefficient_matrices(self):
        """Every stored coefficient matrix of every point, in document order."""
        return [c for pt in self.points for c in pt.coeffs]


def classify_point(s, tol=DEFAULT_TOL):
    """Fuchsian / non-resonant irregular / resonant irregular.

    The point is taken as given: for a point at infinity pass the result of
    :func:`invert_variable`.
    """
    if s.poincare_rank == 0:
        return PointClass.FUCHSIAN
    if distinct_eigenpairs(*eigen_decompose(s.leading, tol), tol):
        return PointClass.IRREGULAR_NONRESONANT
    return PointClass.IRREGULAR_RESONANT


def check_infinity_regular(sys, tol=DEFAULT_TOL):
    """True iff the residues of the finite points sum to zero."""
    if sys.infinity_point is not None:
        raise InfinityAlreadySingular("the system already has a point at infinity")
    total = sys.residue_sum()
    scale = 1.0 + max(mat_norm1(pt.residue) for pt in sys.points)
    return mat_norm1(total) <= tol.eq_tol * scale


def invert_variable(s):
    """Rewrite a point at infinity as a point at ``t = 0`` with ``t = 1/z``.

    ``dy/dz = B(z) y`` becomes ``dy/dt = -B(1/t)/t^2 y``, so the stored
    expansion maps term by term to the principal part at ``t = 0`` with
    negated coefficients. Leading zero matrices are dropped and the rank
    recomputed; ``None`` is returned when no pole remains (the point is
    regular).
    """
    if not s.is_infinity:
        raise NotInfinity(f"point {format_location(s.location)} is not at infinity")
    coeffs = [-c for c in s.coeffs]
    while coeffs and not np.any(coeffs[0]):
        coeffs.pop(0)
    if not coeffs:
        return None
    return SingularPoint(0j, len(coeffs) - 1, coeffs)


def revert_variable(s):
    """Inverse of :func:`invert_variable` for a point at ``t = 0``."""
    if s.is_infinity or s.location != 0:
        raise ValueError("revert_variable expects a point located at 0")
    return SingularPoint(INFINITY, s.poincare_rank, [-c for c in s.coeffs])


def infinity_from_polynomial(poly, residue):
    """Point at infinity from a polynomial part ``[P_0, P_1, ...]`` (z^0 first)."""
    coeffs = [np.asarray(c, dtype=complex) for c in reversed(list(poly))]
    coeffs.append(np.asarray(residue, dtype=complex))
    return SingularPoint(INFINITY, len(coeffs) - 1, coeffs)


def local_points(sys, tol=DEFAULT_TOL):
    """Singular points in local coordinates, as ``(label, point)`` pairs.

    A stored point at infinity is moved to ``t = 0`` (and dropped if it turns
    out regular). Without a stored point at infinity, a nonzero residue sum
    makes infinity a Fuchsian point with residue ``-sum_i B_i^(r_i)``.
    """
    out = []
    for pt in sys.points:
        if pt.is_infinity:
            local = invert_variable(pt)
            if local is not None:
                out.append((INFINITY, local))
        else:
            out.append((pt.location, pt))
    if sys.infinity_point is None and not check_infinity_regular(sys, tol):
        out.append((INFINITY, SingularPoint(0j, 0, [-sys.residue_sum()])))
    return out


def local_series(sys, index, order):
    """Laurent data at finite point ``index`` up to ``B^(order)``.

    Returns ``[B^(0), ..., B^(order)]`` where the coefficients beyond the
    principal part are the Taylor coefficients, at that point, of the other
    points' principal parts and of any polynomial part at infinity.
    """
    pt = sys.points[index]
    if pt.is_infinity:
        raise ValueError("local_series expects a finite point")
    p = sys.dimension
    r = pt.poincare_rank
    out = [np.array(c) for c in pt.coeffs[: order + 1]]
    while len(out) < order + 1:
        out.append(np.zeros((p, p), dtype=complex))
    a = pt.location
    for j, other in enumerate(sys.points):
        if j == index:
            continue
        if other.is_infinity:
            # polynomial terms C_m z^m with z = w + a
            m_top = other.poincare_rank - 1
            for idx, c in enumerate(other.coeffs[:-1]):
                m = m_top - idx
                for n in range(0, min(m, order - r - 1) + 1):
                    out[r + 1 + n] = out[r + 1 + n] + math.comb(m, n) * a ** (m - n) * c
            # the R/z tail at infinity is produced by the finite principal parts
            continue
        d = a - other.location
        rj = other.poincare_rank
        for k, c in enumerate(other.coeffs):
            s_pow = rj + 1 - k
            for n in range(0, order - r):
                coef = (-1) ** n * math.comb(s_pow + n - 1, n) * d ** (-s_pow - n)
                out[r + 1 + n] = out[r + 1 + n] + coef * c
    return out


# ---------------------------------------------------------------------------
# ingestion


def _entry(value, bindings, declared, where):
    if isinstance(value, bool):
        raise ParseError("boolean is not a matrix entry", where=where)
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, list):
        if len(value) != 2 or not all(
            isinstance(x, (int, float)) and not isinstance(x, bool) for x in value
        ):
            raise ParseError("complex entry must be [re, im]", where=where)
        return complex(value[0], value[1])
    if isinstance(value, str):
        try:
            return expr.evaluate(value, bindings, declared)
        except ParseError as exc:
            raise ParseError(exc.msg, where=where, offset=exc.offset) from None
    raise ParseError(f"unsupported entry {value!r}", where=where)


def _matrix(value, p, bindings, declared, where):
    if not isinstance(value, list) or len(value) != p:
        raise DimensionMismatch(f"{where}: expected {p} rows")
    rows = []
    for i, row in enumerate(value):
        if not isinstance(row, list) or len(row) != p:
            raise DimensionMismatch(f"{where}[{i}]: expected {p} entries")
        rows.append([_entry(x, bindings, declared, f"{where}[{i}][{j}]") for j, x in enumerate(row)])
    a = np.array(rows, dtype=complex)
    if not np.all(np.isfinite(a)):
        raise ParseError("non-finite entry", where=where)
    return a


def _location(value, where):
    if value == "inf":
        return INFINITY
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value)
    if (
        isinstance(value, list)
        and len(value) == 2
        and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in value)
    ):
        return complex(value[0], value[1])
    raise ParseError("location must be [re, im], a number, or \"inf\"", where=where)


def ingest(document, bindings=None, tol=DEFAULT_TOL):
    """Parse a JSON system document and bind its parameters.

    Parameters
    ----------
    document : str or dict
        JSON text (or an already decoded mapping) following the input schema.
    bindings : mapping of str to complex
        Values for every declared parameter.

    Returns
    -------
    LinearSystem
    """
    bindings = {k: complex(v) for k, v in (bindings or {}).items()}
    if isinstance(document, (str, bytes)):
        try:
            data = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from None
    else:
        data = document
    if not isinstance(data, dict):
        raise ParseError("top level must be an object")
    try:
        p = data["dimension"]
    except KeyError:
        raise ParseError("missing field 'dimension'") from None
    if not isinstance(p, int) or isinstance(p, bool) or p < 1:
        raise ParseError("'dimension' must be a positive integer", where="dimension")
    declared = data.get("parameters", [])
    if not isinstance(declared, list) or not all(isinstance(n, str) for n in declared):
        raise ParseError("'parameters' must be an array of names", where="parameters")
    for name in declared:
        if name not in bindings:
            raise UnboundParameter(name)
    used = {name: bindings[name] for name in declared}

    raw_points = data.get("points", [])
    if not isinstance(raw_points, list):
        raise ParseError("'points' must be an array", where="points")
    points = []
    for idx, rp in enumerate(raw_points):
        where = f"points[{idx}]"
        if not isinstance(rp, dict):
            raise ParseError("point must be an object", where=where)
        for key in ("location", "rank", "coeffs"):
            if key not in rp:
                raise ParseError(f"missing field {key!r}", where=where)
        loc = _location(rp["location"], f"{where}.location")
        r = rp["rank"]
        if not isinstance(r, int) or isinstance(r, bool) or r < 0:
            raise ParseError("'rank' must be a non-negative integer", where=f"{where}.rank")
        coeffs = rp["coeffs"]
        if not isinstance(coeffs, list) or len(coeffs) != r + 1:
            raise DimensionMismatch(f"{where}: rank {r} needs {r + 1} coefficient matrices")
        mats = [
            _matrix(c, p, used, declared, f"{where}.coeffs[{k}]") for k, c in enumerate(coeffs)
        ]
        points.append(SingularPoint(loc, r, mats))

    finite = [pt for pt in points if not pt.is_infinity]
    for i, x in enumerate(finite):
        for y in finite[i + 1:]:
            if abs(x.location - y.location) <= tol.eq_tol * (1 + abs(x.location)):
                raise DuplicatePoint(f"duplicate singular point at {format_location(x.location)}")

    if "polynomial_part" in data:
        if any(pt.is_infinity for pt in points):
            raise DuplicatePoint("both 'polynomial_part' and an explicit point at infinity")
        poly = data["polynomial_part"]
        if not isinstance(poly, list):
            raise ParseError("'polynomial_part' must be an array of matrices", where="polynomial_part")
        mats = [
            _matrix(c, p, used, declared, f"polynomial_part[{k}]") for k, c in enumerate(poly)
        ]
        residue = np.zeros((p, p), dtype=complex)
        for pt in finite:
            residue = residue + pt.residue
        if mats:
            points.append(infinity_from_polynomial(mats, residue))
    else:
        inf = [pt for pt in points if pt.is_infinity]
        if len(inf) > 1:
            raise DuplicatePoint("more than one point at infinity")
        if inf:
            residue = np.zeros((p, p), dtype=complex)
            for pt in finite:
                residue = residue + pt.residue
            scale = 1.0 + max([mat_norm1(residue), mat_norm1(inf[0].residue)])
            if mat_norm1(inf[0].residue - residue) > tol.eq_tol * scale:
                raise ParseError(
                    "residue at infinity must equal the sum of the finite residues",
                    where="points",
                )
    return LinearSystem(p, points, used)
