"""Exception hierarchy shared by all modules."""


class MolpReduceError(Exception):
    """Base class for all errors raised by the package."""


class ZeroMatrix(MolpReduceError):
    """A rank-revealing operation received the zero matrix."""


class DimensionMismatch(MolpReduceError):
    pass


class DimensionCap(MolpReduceError):
    """Polyhedral conversion requested above the configured dimension cap."""


class NotPointed(MolpReduceError):
    """Operation requires a pointed cone but the lineality space is nontrivial."""


class ConeNotPointed(NotPointed):
    pass


class ConeNotSolid(MolpReduceError):
    """Ordering cone has empty interior."""


class UnboundedFeasibleSet(MolpReduceError):
    pass


class TooLarge(MolpReduceError):
    """Brute-force oracle refused an instance above its size limit."""


class NotAnMolp(MolpReduceError):
    pass


class EmptyObjectives(MolpReduceError):
    pass


class FactorizationMismatch(MolpReduceError):
    """L @ R does not reproduce the objective matrix."""


class ParseError(MolpReduceError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
