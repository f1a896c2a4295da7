"""Exception types shared across the package."""


class KirkmanError(ValueError):
    """Base class for all domain errors raised by this package."""


class LabelError(KirkmanError):
    """Malformed operator label or out-of-domain label operation."""


class SeedError(KirkmanError):
    """Seed tuple rejected by validation."""


class DependentSeedsError(SeedError):
    """GF(2)-dependent seeds; carries the violating subset."""

    def __init__(self, message, positions, labels):
        super().__init__(message)
        self.positions = tuple(positions)
        self.labels = tuple(labels)


class DesignError(KirkmanError):
    """Invalid design construction or query."""


class ResolutionError(KirkmanError):
    """Invalid day matching or unresolvable request."""


class RenderError(KirkmanError):
    """Invalid rendering request."""


class SynthesisError(KirkmanError):
    """Invalid audio parameters or chord material."""


class OracleError(KirkmanError):
    """Dense-oracle domain violation."""


class DocumentError(KirkmanError):
    """Serialized document fails schema or consistency validation."""
