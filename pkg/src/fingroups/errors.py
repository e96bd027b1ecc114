"""Exception hierarchy shared by every module."""


class GroupError(Exception):
    """Base class for all errors raised by fingroups."""


class InvalidTable(GroupError):
    pass


class NotLatinSquare(InvalidTable):
    pass


class NoIdentity(InvalidTable):
    pass


class NotAssociative(InvalidTable):
    pass


class InvalidParameter(GroupError):
    pass


class OrderCapExceeded(GroupError):
    pass


class NotAutomorphism(GroupError):
    pass


class NotHomomorphism(GroupError):
    pass


class NotNormal(GroupError):
    pass


class FormationAssertionFailed(GroupError):
    """A computed residual did not have its quotient in the formation.

    This indicates a classifier bug, never a property of the input.
    """


class HypothesisNotMet(GroupError):
    def __init__(self, missing):
        self.missing = tuple(missing)
        super().__init__("hypothesis not met: " + ", ".join(self.missing))


class NoCandidatePassesBundle(GroupError):
    pass


class InvariantViolation(GroupError):
    """A structural theorem that must hold was observed to fail."""
