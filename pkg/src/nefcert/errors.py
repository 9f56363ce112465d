"""Exception types raised by the library."""


class NefcertError(Exception):
    """Base class for all library errors."""


class InvalidPartition(NefcertError, ValueError):
    pass


class DomainTooSmall(NefcertError, ValueError):
    pass


class AmbientMismatch(NefcertError, ValueError):
    pass


class InvalidRelation(NefcertError, ValueError):
    pass


class NormalFormUnavailable(NefcertError):
    pass


class ModulusMismatch(NefcertError, ValueError):
    pass


class ModulusTooSmall(NefcertError, ValueError):
    pass


class DegreesNotReduced(NefcertError, ValueError):
    pass


class NotATree(NefcertError, ValueError):
    pass


class UnbalanceNotFound(NefcertError):
    pass


class UnsupportedOptionCombo(NefcertError, ValueError):
    pass


class CertificateSearchFailed(NefcertError):
    pass


class FlowMismatch(NefcertError, ValueError):
    """Vertex flow of a weighting differs from the required psi coefficient."""

    def __init__(self, vertex, expected, actual):
        self.vertex = vertex
        self.expected = expected
        self.actual = actual
        super().__init__(
            f"flow through vertex {vertex} is {actual}, expected {expected}"
        )
