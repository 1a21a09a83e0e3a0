"""Exception hierarchy shared by the library and the command line."""


class ItClusterError(Exception): ...


class InvalidParameter(ItClusterError, ValueError): ...


class DataError(ItClusterError, ValueError): ...


class DegenerateInput(DataError):
    """Point set cannot be triangulated (too few distinct points or collinear)."""


class PredicatePreconditionError(ItClusterError, ValueError): ...


class ForestInvariantError(ItClusterError, RuntimeError):
    """Raised when parent links do not form an in-tree forest."""
