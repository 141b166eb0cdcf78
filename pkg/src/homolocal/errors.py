"""Exception hierarchy shared by every homolocal module."""


class HomolocalError(Exception):
    """Base class for all library errors."""


class InputError(HomolocalError):
    """Malformed complex file or invalid arguments."""


class EmptyInput(InputError):
    pass


class SealedCenter(HomolocalError):
    """A geodesic filter was requested from a sealed (cone) vertex."""


class SealedInput(HomolocalError):
    pass


class NotACycle(HomolocalError):
    pass


class NoNontrivialClass(HomolocalError):
    """The requested homology group is trivial."""


class InternalInconsistency(HomolocalError):
    """A postcondition that the theory guarantees did not hold."""


class TooLarge(HomolocalError):
    """An exhaustive oracle would exceed its hard cap."""
