"""Exception types shared across the package."""


class PentatropeError(Exception):
    """Base class for package-specific errors."""


class DegeneracyError(PentatropeError):
    """A projective construction collapsed: coincident points, identical
    lines, or a vanishing cross-ratio denominator."""


class GeometryError(PentatropeError):
    """A polygon operation hit a degenerate configuration.

    ``index`` is the vertex index at which the construction failed, when known.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class SingularityError(PentatropeError):
    """A pentagram-map denominator 1 - z_i*w_i vanished.

    ``index`` is the offending coordinate index; ``step`` is set when the
    failure happened inside an orbit iteration.
    """

    def __init__(self, message, index=None, step=None):
        super().__init__(message)
        self.index = index
        self.step = step


class GenericityError(PentatropeError):
    """A tropical invariant is tied at its maximum (or a hinge sits on its
    breakpoint), so no local gradient data exists at the point."""


class ConventionError(PentatropeError):
    """The sign-convention oracle found no, or more than one, conserving
    convention."""
