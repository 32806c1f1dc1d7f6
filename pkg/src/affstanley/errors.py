"""Exception types raised by the package."""


class RankError(ValueError):
    """Rank below the minimum for the requested family."""


class WordError(ValueError):
    """A word that cannot be parsed or uses letters outside the node set."""

    def __init__(self, message, position=None):
        super().__init__(message if position is None else f"{message} (at position {position})")
        self.position = position


class NotGrassmannianError(ValueError):
    """An operation requiring a 0-Grassmannian element received something else."""


class InconsistencyError(RuntimeError):
    """A computation contradicted a result that is known to hold.

    Raised instead of silently falling back, since it means an upstream bug.
    """
