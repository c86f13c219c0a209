"""Exception hierarchy shared by every degenlift module."""


class DegenliftError(Exception):
    pass


class NotAUnit(DegenliftError, ZeroDivisionError):
    """Inverting a series (or dividing by a rational function) that has no inverse."""


class TruncationMismatch(DegenliftError, ValueError):
    pass


class UnknownVariable(DegenliftError, KeyError):
    pass


class NotDivisible(DegenliftError, ArithmeticError):
    pass


class DegenerateSingularity(DegenliftError):
    """An edge restriction has a repeated root (or vanishes identically)."""


class IncompleteLocus(DegenliftError):
    """Some singular points needed by an enumeration are not rational."""


class NotOrdinary(DegenliftError):
    pass


class LineMissesPoint(DegenliftError, ValueError):
    pass


class AnsatzError(DegenliftError, ValueError):
    pass


class ObstructedAtLowerOrder(DegenliftError):
    def __init__(self, order, condition=None):
        self.order = order
        self.condition = condition
        super().__init__(f"lift is obstructed at Kuranishi order {order}")


class FamilyFileError(DegenliftError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class NonHomogeneous(FamilyFileError):
    pass


class DegreeMismatch(FamilyFileError):
    pass
