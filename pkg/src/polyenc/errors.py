"""Exception hierarchy.

Arithmetic overflow is reported with the builtin :class:`OverflowError`;
bad arguments that violate a documented precondition raise :class:`ValueError`.
"""


class PolyencError(Exception):
    pass


class MembershipError(PolyencError, ValueError):
    """A value is not a representative of the expected congruence class."""


class AdmissibilityError(PolyencError, ValueError):
    """Wrong number of operands for a polyadic operation."""


class NoRingError(PolyencError):
    """The congruence class has no multiplicative arity."""


class NoSolutionError(PolyencError):
    pass


class InconsistentCipherError(PolyencError):
    pass


class AmbiguousCipherError(PolyencError):
    def __init__(self, candidates):
        self.candidates = list(candidates)
        listed = ", ".join(f"(a={p.a}, b={p.b}, m={p.m})" for p in self.candidates)
        super().__init__(f"{len(self.candidates)} parameter triples fit the amplitudes: {listed}")


class DecryptionError(PolyencError):
    """Decryption of one symbol failed; ``index`` is its position in the stream."""

    def __init__(self, index: int, cause: Exception):
        self.index = index
        self.cause = cause
        super().__init__(f"symbol {index}: {cause}")


class FrameError(PolyencError, ValueError):
    pass


class ProtocolError(PolyencError):
    pass


class IncompleteSessionError(ProtocolError):
    pass


class UnsupportedVersionError(ProtocolError):
    pass


class SerializationError(PolyencError, ValueError):
    pass


class TransportError(PolyencError):
    pass


class TransportTimeout(TransportError):
    pass


class OversizeError(TransportError):
    """Declared session length exceeds the receiver's allocation cap."""
