"""Exception types shared across the package."""


class NeumannLabError(Exception):
    """Base class for all package-specific errors."""


class InvalidGeometryError(NeumannLabError, ValueError):
    """A polygon, mesh, or region is degenerate or violates a geometric invariant."""


class PreconditionError(NeumannLabError, ValueError):
    """An operation was called with inputs outside its contract."""


class DegenerateFamilyError(PreconditionError):
    """A subset family has zero separation or otherwise degenerates a bound."""


class SolverError(NeumannLabError, RuntimeError):
    """An eigenvalue solve failed to converge or violated its residual contract.

    Carries whatever diagnostics the solver produced in ``details``.
    """

    def __init__(self, message, details=None):
        super().__init__(message)
        self.details = dict(details or {})


class ConnectivityError(SolverError):
    """The discrete Laplacian has a repeated zero eigenvalue (disconnected mesh)."""


class ReplayError(NeumannLabError, RuntimeError):
    """A proof-replay step failed; ``link_index`` identifies the failing link."""

    def __init__(self, message, link_index):
        super().__init__(f"link {link_index}: {message}")
        self.link_index = link_index


class ConfigError(NeumannLabError, ValueError):
    """An experiment configuration is malformed or unsatisfiable."""
