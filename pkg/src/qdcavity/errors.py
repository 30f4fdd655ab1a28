"""Exception hierarchy. All derive from ``ValueError`` so callers can catch broadly."""


class QDCavityError(ValueError):
    pass


class InvalidConfigurationError(QDCavityError):
    """Coupling or system parameters violate a model invariant."""


class DegenerateStateError(QDCavityError):
    """The cat superposition has zero norm (e.g. odd cat with alpha = 0)."""


class DomainError(QDCavityError):
    """Argument outside the domain of an operation (negative time, N < 2, ...)."""


class BracketError(QDCavityError):
    """Root-finding interval does not bracket a sign change."""


class DegenerateEncodingError(QDCavityError):
    """A mode's two coherent components are too close to define an orthogonal qubit."""


class UnsupportedSizeError(QDCavityError):
    """Qubit count outside what an oracle routine handles."""


class HorizonError(QDCavityError):
    """Requested time exceeds the recurrence-free window of a discretized bath."""
