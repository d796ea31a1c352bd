"""Exception types raised by the library.

Every domain failure derives from :class:`VisReconError` so the CLI can map
it to exit code 1.
"""


class VisReconError(Exception):
    """Base class for all domain errors."""


class GeometryError(VisReconError, ValueError):
    pass


class GraphError(VisReconError, ValueError):
    pass


class ReconstructionError(VisReconError):
    pass


class ExplorationError(VisReconError):
    pass


class GenerationError(VisReconError):
    pass
