"""Exception hierarchy shared by all modules."""


class QuadsolvError(Exception):
    """Base class for every error raised by this package."""


class ParseError(QuadsolvError):
    """Malformed input document or entry expression.

    ``line`` and ``column`` are 1-based positions in the JSON text when
    known; ``where`` names the offending field (e.g. ``points[0].coeffs[1][2][0]``)
    and ``offset`` the character position inside an expression string.
    """

    def __init__(self, msg, line=None, column=None, where=None, offset=None):
        self.msg = msg
        self.line = line
        self.column = column
        self.where = where
        self.offset = offset
        parts = []
        if line is not None:
            parts.append(f"line {line}, column {column}")
        if where is not None:
            parts.append(where)
        if offset is not None:
            parts.append(f"position {offset}")
        prefix = ": ".join(parts)
        super().__init__(f"{prefix}: {msg}" if prefix else msg)


class UnboundParameter(QuadsolvError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"UnboundParameter({name!r})")


class DimensionMismatch(QuadsolvError):
    pass


class DuplicatePoint(QuadsolvError):
    pass


class NonSquare(QuadsolvError):
    pass


class SizeExceeded(QuadsolvError):
    pass


class SizeMismatch(QuadsolvError):
    pass


class ConvergenceFailure(QuadsolvError):
    pass


class InfinityAlreadySingular(QuadsolvError):
    pass


class NotInfinity(QuadsolvError):
    pass


class NotFuchsian(QuadsolvError):
    pass


class ResonantPoint(QuadsolvError):
    pass


class ResonantPointPresent(QuadsolvError):
    def __init__(self, location):
        self.location = location
        super().__init__(f"resonant irregular singular point at {location}")


class DivergenceGuard(QuadsolvError):
    pass


class NotClosed(QuadsolvError):
    pass


class DimensionOne(QuadsolvError):
    pass


class RankNotOne(QuadsolvError):
    pass


class UnknownFixture(QuadsolvError):
    pass
