"""Exception hierarchy shared by every module."""


class Cubic27Error(Exception):
    """Base class for all errors raised by the toolkit."""


class InputError(Cubic27Error, ValueError):
    """Malformed user input (field strings, cubic text, suite ids)."""


# --- fields -----------------------------------------------------------------
class FieldMismatch(Cubic27Error, ValueError):
    pass


class ZeroInverse(Cubic27Error, ZeroDivisionError):
    pass


class NonDividingDegree(Cubic27Error, ValueError):
    pass


class NoFifthRoot(Cubic27Error, ValueError):
    pass


class NotInSubfield(Cubic27Error, ValueError):
    pass


# --- projective geometry -----------------------------------------------------
class EqualPoints(Cubic27Error, ValueError):
    pass


class DegenerateFrame(Cubic27Error, ValueError):
    pass


class NoOrderFive(Cubic27Error, ValueError):
    pass


class NotOrderFive(Cubic27Error, ValueError):
    pass


class Capacity(Cubic27Error, RuntimeError):
    pass


# --- permutation groups ------------------------------------------------------
class Overflow(Capacity):
    def __init__(self, cap):
        super().__init__(f"group closure exceeded cap {cap}")
        self.cap = cap


class NotMember(Cubic27Error, ValueError):
    pass


class NotSubgroup(Cubic27Error, ValueError):
    pass


class NotInvolution(Cubic27Error, ValueError):
    pass


class NotPairingPreserving(Cubic27Error, ValueError):
    pass


# --- cubic surfaces ------------------------------------------------------------
class CubicSyntaxError(InputError):
    pass


class WrongDegree(InputError):
    pass


class ZeroForm(InputError):
    pass


class SplitCap(Cubic27Error, RuntimeError):
    pass


class SingularSurface(Cubic27Error, ValueError):
    pass


class LabelingFailed(Cubic27Error, RuntimeError):
    pass


class FrameNotFound(Cubic27Error, RuntimeError):
    pass


# --- quadrics and birational maps ---------------------------------------------
class DuplicatePoints(Cubic27Error, ValueError):
    pass


class ShortOrbit(Cubic27Error, ValueError):
    pass


class NotGeneralPosition(Cubic27Error, ValueError):
    pass


class RankFailure(Cubic27Error, RuntimeError):
    pass


class NoOrderFiveAction(Cubic27Error, ValueError):
    pass


class UnexpectedInvariantCount(Cubic27Error, RuntimeError):
    pass


class LineNotOnSurface(Cubic27Error, ValueError):
    pass


class UnknownSuite(InputError):
    pass
