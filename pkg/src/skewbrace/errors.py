"""Exception hierarchy shared by every module."""


class BraceError(Exception):
    """Base class for all library errors."""


class NotAGroup(BraceError):
    def __init__(self, which: str, witness: tuple, reason: str = ""):
        self.which = which
        self.witness = witness
        self.reason = reason
        super().__init__(f"{which} table is not a group ({reason}); witness {witness}")


class IdentityMismatch(BraceError):
    pass


class DistributivityFailure(BraceError):
    def __init__(self, witness: tuple):
        self.witness = witness
        a, b, c = witness
        super().__init__(f"a(b+c) != ab - a + ac for (a, b, c) = {witness}")


class IndexOutOfRange(BraceError, IndexError):
    pass


class CocycleIdentityFailure(BraceError):
    def __init__(self, witness: tuple):
        self.witness = witness
        super().__init__(f"delta(cd) != delta(c) + lambda_c(delta(d)) for (c, d) = {witness}")


class DeltaNotBijective(BraceError):
    pass


class ActionNotHomomorphism(BraceError):
    pass


class NotRegular(BraceError):
    pass


class NotASubgroup(BraceError):
    pass


class OrderTooLarge(BraceError):
    pass


class NotAnIdeal(BraceError):
    pass


class NotASubbrace(BraceError):
    pass


class NotNested(BraceError):
    pass


class FixtureError(BraceError):
    """A fixture file failed to load or its transcription audit failed."""
