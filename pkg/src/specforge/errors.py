"""Typed errors raised by the computational core.

Every error carries a short machine-readable ``code`` so the CLI can report it
as JSON (exit status 3).
"""


class SpecforgeError(Exception):
    code = "error"

    def to_json(self):
        return {"error": self.code, "message": str(self)}


class DomainError(SpecforgeError, ValueError):
    code = "DomainError"


class DegenerateInput(SpecforgeError, ValueError):
    code = "DegenerateInput"


class LiftError(SpecforgeError):
    code = "LiftError"


class IrregularCase(SpecforgeError):
    """A residual polynomial is inseparable; higher-order analysis would be needed."""

    code = "IrregularCase"


class WildCase(SpecforgeError):
    code = "WildCase"


class RamifiedPrime(SpecforgeError):
    code = "RamifiedPrime"


class InconsistentSamples(SpecforgeError):
    code = "InconsistentSamples"


class NoUsablePrime(SpecforgeError):
    code = "NoUsablePrime"


class BadPrimeForBranch(SpecforgeError):
    code = "BadPrimeForBranch"


class WitnessNotFound(SpecforgeError):
    code = "WitnessNotFound"


class DerivativeVanishes(SpecforgeError):
    code = "DerivativeVanishes"


class NotFound(SpecforgeError):
    code = "NotFound"


class CRTConflict(SpecforgeError):
    code = "CRTConflict"


class ParseError(SpecforgeError, ValueError):
    code = "ParseError"

    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset

    def to_json(self):
        return {"error": self.code, "message": str(self), "offset": self.offset}
