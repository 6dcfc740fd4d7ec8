"""Exception types shared across the package."""


class FrustaError(ValueError):
    """Base class for every error raised by frusta."""


class NotAnIsometry(FrustaError):
    def __init__(self, detail: str = ""):
        msg = "not an isometry"
        if detail:
            msg = f"{msg}: {detail}"
        super().__init__(msg)


class PolytopeError(FrustaError):
    """Raised by build_polytope when the description is not a valid convex solid."""


class InvalidParameters(FrustaError):
    """A builder or formula was called with parameters outside its domain."""


class CertificateStructureError(FrustaError):
    """A certificate references entities that do not exist or is otherwise malformed."""


class CanonicalizationError(FrustaError):
    """A square root could not be reduced to square-free form within the bound."""
