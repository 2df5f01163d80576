"""Exception types shared across the package.

Input and validation problems raise ValueError (or a subclass); failures of
the numerics themselves (lost root brackets, degenerate meshes, stalled
iterations) raise NumericalError so callers can tell the two apart.
"""


class NumericalError(ArithmeticError):
    """A numerical procedure failed to produce a trustworthy result."""
