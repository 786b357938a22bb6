"""Exception types shared across the package."""


class SalabError(ValueError):
    pass


class SpecMismatch(SalabError):
    """Two Lie-algebra-valued objects use different Lie algebra data."""


class NotInvertible(SalabError):
    """A gauge map whose stored inverse is not an inverse."""


class NotHolomorphic(SalabError):
    """A map flagged holomorphic has a nonzero dbar."""


class BundleMapError(SalabError, TypeError):
    """The induced a-form has a (0,1) part, so g is not a holomorphic bundle map."""


class NonIntegrableConnection(SalabError):
    """F^{0,2} of a connection is nonzero."""


class BadCurvatureType(SalabError):
    """The deformation complex needs a curvature of pure type (1,1)."""


class MCViolated(SalabError):
    """The Maurer-Cartan residual of an element is nonzero."""


class NotACocycle(SalabError):
    """A (0,1)-form expected to be dbar^theta-closed is not."""


class IncompatibleFamily(SalabError):
    """Local connections do not glue under the transition maps."""


class InconsistentCochain(SalabError):
    """Both orientations of an overlap were given and disagree."""
