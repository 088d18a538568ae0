"""Exception types shared across the package.

Every structure raises DegeneracyError instead of guessing on degenerate
input; nothing here is ever caught internally to "repair" geometry.
"""


class DyngeoError(Exception):
    pass


class DegeneracyError(DyngeoError):
    """Input violates a general-position precondition (duplicate plane,
    concurrent quadruple, exact tie at a query, coordinate collision)."""

    def __init__(self, message, ids=()):
        super().__init__(message)
        self.ids = tuple(ids)


class BoundsError(DyngeoError):
    """A vertex or query fell outside the structure's symbolic bounding box."""


class ConstructionFailureError(DyngeoError):
    """A randomized builder exhausted its retries without a verified result."""


class ScriptError(DyngeoError):
    """An update script violated the UpdateScript invariants."""
