"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class PreconditionError(DomainError):
    """A theorem or lemma was applied outside its hypotheses."""


class UnsupportedModeError(DomainError):
    """The requested simulation mode is not defined for this configuration."""


class GameStateError(RuntimeError):
    """An operation was attempted on a finished game or an empty ring."""


class ResourceCapError(RuntimeError):
    """A simulation would exceed the configured slot budget."""
