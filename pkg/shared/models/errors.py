"""Exception hierarchy of the engine.

Every error carries the process exit code the CLI maps it to; library code
never exits on its own.
"""


class SchubertEngineError(Exception):
    exit_code: int = 1

    def __init__(self, message: str, **details) -> None:
        super().__init__(message)
        self.message = message
        self.details = details

    @property
    def type_name(self) -> str:
        return type(self).__name__


##########################################
############## USAGE (2) #################
##########################################

class UsageError(SchubertEngineError):
    """Bad type/rank, bad node subset, unknown generator, parse failure, inhomogeneous input."""

    exit_code = 2


class NotMinimalRepresentativeError(UsageError):
    pass


class NotInTableError(UsageError):
    pass


class FixtureUnavailableError(UsageError):
    pass


##########################################
########### RESOURCE CAPS (3) ############
##########################################

class ResourceCapError(SchubertEngineError):
    """Element cap, degree cap or wall-clock budget exhausted."""

    exit_code = 3


class TruncatedTableError(ResourceCapError):
    pass


##########################################
######## COMPUTATION FAILURES (1) ########
##########################################

class FixtureError(SchubertEngineError):
    """A fixture failed validation (typo trap)."""


class RootSystemError(SchubertEngineError):
    pass


class IntegralityError(SchubertEngineError):
    pass


class DivisibilityError(SchubertEngineError):
    pass


class LiftError(SchubertEngineError):
    pass


class GenerationError(SchubertEngineError):
    pass


class EliminationError(SchubertEngineError):
    pass


class VerificationError(SchubertEngineError):
    pass
