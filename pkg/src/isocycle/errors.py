"""Exception hierarchy shared by all modules."""


class IsocycleError(Exception):
    """Base class for every error raised by this package."""


# field / poly
class CompositeModulus(IsocycleError, ValueError):
    pass


class ReduciblePolynomial(IsocycleError, ValueError):
    pass


class ModulusTooLarge(IsocycleError, ValueError):
    pass


class MalformedLiteral(IsocycleError, ValueError):
    pass


class DivisionByZero(IsocycleError, ZeroDivisionError):
    pass


# data files
class DataError(IsocycleError):
    """Problems with modular-polynomial input files."""


class MissingFile(DataError, FileNotFoundError):
    def __init__(self, level, path):
        self.level = level
        self.path = path
        super().__init__(f"no data file for Phi_{level} (looked for {path})")


class ParseError(DataError, ValueError):
    def __init__(self, msg, line=None, column=None, path=None):
        self.line = line
        self.column = column
        self.path = path
        where = ""
        if line is not None:
            where = f"{path or '<input>'}:{line}:{column or 1}: "
        super().__init__(where + msg)


class DegreeMismatch(DataError, ValueError):
    pass


# quadratic orders and forms
class InvalidDiscriminant(IsocycleError, ValueError):
    pass


class NotPositiveDefinite(IsocycleError, ValueError):
    pass


class DiscriminantMismatch(IsocycleError, ValueError):
    pass


class NotSplit(IsocycleError, ValueError):
    pass


class InvalidUnitClass(IsocycleError, ValueError):
    pass


class CaseMismatch(IsocycleError, ValueError):
    pass


# graphs and theorem checks
class NoSeedFound(IsocycleError, LookupError):
    pass


class CountMismatch(IsocycleError):
    def __init__(self, p, found, expected):
        self.p = p
        self.found = found
        self.expected = expected
        super().__init__(f"p={p}: BFS found {found} supersingular j-invariants, formula gives {expected}")


class HypothesisFailure(IsocycleError, ValueError):
    """A theorem precondition does not hold; ``condition`` names it."""

    def __init__(self, condition, msg=""):
        self.condition = condition
        super().__init__(f"{condition}: {msg}" if msg else condition)
