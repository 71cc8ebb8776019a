"""Exception types shared across the package."""


class MalformedInputError(ValueError):
    """Input data (facet lists, JSON documents, configs) violates a structural contract."""


class ParameterError(ValueError):
    """An operation was called with out-of-contract parameters."""


class IntegrityError(RuntimeError):
    """An internal cross-check failed (e.g. a chain pushforward that should be a
    multiple of a fundamental class is not)."""


class NonOrientableError(ValueError):
    """A complex admits no coherent orientation.

    The ``witness`` attribute holds a cycle of facets along which orientation
    propagation returns with the opposite sign.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
