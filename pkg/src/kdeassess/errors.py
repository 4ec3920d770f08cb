"""Exception hierarchy.

Every error raised by the package derives from :class:`KdeAssessError`.
``status`` is a short machine-readable tag used in suite index files.
"""


class KdeAssessError(ValueError):
    status = "error"


# -- usage-level problems (bad parameters, detectable before any data IO)

class DomainError(KdeAssessError):
    status = "domain-empty"


class ResolutionError(KdeAssessError):
    status = "resolution"


# -- data-level problems

class DegenerateDataError(KdeAssessError):
    status = "degenerate-data"


class InsufficientDataError(KdeAssessError):
    status = "insufficient-data"


class OutOfDomainError(KdeAssessError):
    status = "out-of-domain"

    def __init__(self, message, values=()):
        super().__init__(message)
        self.values = list(values)


class GridMismatchError(KdeAssessError):
    status = "grid-mismatch"


class ZeroMassError(KdeAssessError):
    status = "zero-mass"


class SingularSystemError(KdeAssessError, ArithmeticError):
    status = "singular-system"


class NegativeDensityError(KdeAssessError, ArithmeticError):
    status = "negative-density"


class ParseError(KdeAssessError):
    status = "parse-error"

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class EmptyResultError(KdeAssessError):
    status = "empty-result"


class EmptyIntersectionError(EmptyResultError):
    status = "empty-intersection"
