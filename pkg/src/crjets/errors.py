"""Exception hierarchy.

Three families matter to callers and to the CLI exit-code mapping:
parse problems (bad files), precondition violations (valid data that a
given operation rejects), and invariant violations (internal identities
that should hold by construction and did not).
"""


class CRJetsError(Exception):
    """Base class for all package errors."""


class ParseError(CRJetsError):
    """Input file or literal could not be decoded."""


class PreconditionError(CRJetsError):
    """Input is well formed but outside the operation's domain."""


class AlphabetMismatchError(PreconditionError):
    """Operands live over different variable alphabets."""


class OrderMismatchError(PreconditionError):
    """Operands carry different truncation orders; truncate explicitly."""


class NotDivisibleError(PreconditionError):
    """Exact coordinate division requested on a jet with terms lacking the factor."""

    # The message carries the offending monomial; see Jet.divide_by_coordinate.


class NonUnitConstantError(PreconditionError):
    """Operation needs a specific constant term (unit, or exactly 1)."""


class SingularJacobianError(PreconditionError):
    """Implicit solve rejected: linearization at the origin is not invertible."""


class DegenerateFormError(PreconditionError):
    """A form that must be nondegenerate (Levi form, t-Hessian) is singular."""


class InvariantError(CRJetsError):
    """An internal identity failed; indicates a bug, not bad input."""
