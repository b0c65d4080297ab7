"""Exception hierarchy shared by all toricheights modules."""


class DomainError(ValueError):
    """An input falls outside the mathematical domain of an operation."""


class PreconditionError(DomainError):
    """A named hypothesis of a bound or identity is not satisfied.

    The message always names the violated hypothesis so CLI users see
    e.g. "requires L_A = Z^n" instead of a stack trace.
    """


class InternalError(RuntimeError):
    """An invariant the implementation guarantees was violated (a bug)."""
