"""Exception types shared across the package."""


class PlanarFTError(Exception):
    pass


class NonPlanarEmbedding(PlanarFTError):
    """Rotation system fails the Euler face-count check."""


class MalformedRotation(PlanarFTError):
    """An arc end is missing from or duplicated in a rotation list."""


class NotACycle(PlanarFTError):
    """Arc set handed to incise() is not a closed walk of the embedding."""


class DanglingReference(PlanarFTError):
    """A view edit refers to a vertex, arc or path that does not exist."""


class Disconnected(PlanarFTError):
    """Graph is disconnected and no artificial root is permitted."""


class VertexNotInPiece(PlanarFTError):
    pass


class NoSeparator(PlanarFTError):
    """Asked for a separator of a piece that is already atomic."""


class ApexCase(PlanarFTError):
    """Query pair violates the 'not an ancestor apex of one another' precondition."""


class BadId(PlanarFTError):
    pass


class CorruptFile(PlanarFTError):
    pass


class InvalidSpec(PlanarFTError):
    pass
