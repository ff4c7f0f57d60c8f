"""Exception hierarchy.

Everything raised deliberately by this package derives from SuperkitError,
so callers can catch domain failures without swallowing genuine bugs.
"""


class SuperkitError(Exception):
    """Base class for all deliberate failures."""


class NotInvertible(SuperkitError):
    """Element has no inverse in its ring (body is not a unit monomial)."""


class NotUnit(SuperkitError):
    """A quantity that must be a unit (e.g. a cocycle body) is not."""


class ParseError(SuperkitError):
    """Expression text is malformed. Carries position info when known."""

    def __init__(self, msg: str, pos: int | None = None):
        if pos is not None:
            msg = f"{msg} (at offset {pos})"
        super().__init__(msg)
        self.pos = pos


class SignatureMismatch(SuperkitError):
    """Operands live over different ring signatures."""


class ParityError(SuperkitError):
    """Even/odd bookkeeping violated (odd square, odd exponent > 1, ...)."""


class ChartMiss(SuperkitError):
    """Point does not lie in the requested affine chart."""


class MembershipError(SuperkitError):
    """Matrix fails a group membership test that the operation requires."""


class ConventionMismatch(SuperkitError):
    """A sign/transpose convention check failed against its frozen target."""


class NotAutomorphism(SuperkitError):
    """Coefficient array does not satisfy the conjugation relations."""


class DegenerateIdempotent(SuperkitError):
    """First idempotent image has no column with unit-body entry."""


class RegularityFailure(SuperkitError):
    """Factor of a cocycle is not regular on its chart."""


class NotOdd(SuperkitError):
    """Operation requires an odd vector field."""


class TooLarge(SuperkitError):
    """Polynomial exceeded the configured term cap."""
