
class RamanujanNagellError(Exception):
    """Base exception for ring arithmetic and proof-engine errors."""
    pass


class ParamsMismatchError(RamanujanNagellError, ValueError):
    """Arithmetic was attempted between elements of different presentations."""
    pass


class DegeneratePresentationError(RamanujanNagellError, ValueError):
    """The presentation has a square discriminant (split algebra)."""
    pass


class DivisionByZeroError(RamanujanNagellError, ZeroDivisionError):
    pass


class PreconditionError(RamanujanNagellError, ValueError):
    """An operation was called outside its documented domain."""
    pass


class InternalInconsistencyError(RamanujanNagellError):
    """
    An identity that must hold by construction failed.
    This points at a bug in the engine, never at bad user input.
    """
    pass


class CertificateError(RamanujanNagellError):
    pass


class UsageError(RamanujanNagellError):
    """Bad command-line invocation (exit code 2)."""
    pass
