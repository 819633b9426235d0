"""Shared session secret and its deterministic draw stream.

The generator is a 64-bit linear congruential recurrence whose output is the
top 32 bits of the new state.  Every constant is fixed so that two peers
holding the same 16 key bytes reproduce identical draws.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field

__all__ = ["SessionKey", "prng_next", "KEY_BYTES"]

KEY_BYTES = 16
LCG_MULTIPLIER = 6364136223846793005
LCG_INCREMENT = 1442695040888963407
_MASK64 = (1 << 64) - 1


@dataclass
class SessionKey:
    """16-byte secret plus the PRNG state it seeds.

    A key object is a stream: every draw advances it, so one instance must not
    be shared between concurrent sessions.  Use :meth:`fresh` for a rewound copy.
    """

    key_bytes: bytes = field(repr=False)
    state: int = field(init=False, repr=False)

    def __post_init__(self):
        self.key_bytes = bytes(self.key_bytes)
        if len(self.key_bytes) != KEY_BYTES:
            raise ValueError(f"key must be {KEY_BYTES} bytes, got {len(self.key_bytes)}")
        hi = int.from_bytes(self.key_bytes[:8], "big")
        lo = int.from_bytes(self.key_bytes[8:], "big")
        self.state = hi ^ lo

    @classmethod
    def from_hex(cls, text: str) -> "SessionKey":
        text = text.strip()
        if len(text) != 2 * KEY_BYTES:
            raise ValueError(f"key must be {2 * KEY_BYTES} hex characters, got {len(text)}")
        return cls(bytes.fromhex(text))

    @classmethod
    def from_seed(cls, seed: int) -> "SessionKey":
        """Key whose PRNG starts at ``seed`` (first half = seed, second half zero)."""
        return cls((seed & _MASK64).to_bytes(8, "big") + bytes(8))

    @classmethod
    def random(cls) -> "SessionKey":
        return cls(os.urandom(KEY_BYTES))

    def fresh(self) -> "SessionKey":
        return SessionKey(self.key_bytes)

    def hex(self) -> str:
        return self.key_bytes.hex()

    def next_u32(self) -> int:
        self.state = (LCG_MULTIPLIER * self.state + LCG_INCREMENT) & _MASK64
        return self.state >> 32

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) by rejection of the biased tail."""
        if not 1 <= bound <= 1 << 32:
            raise ValueError(f"bound must be in [1, 2**32], got {bound}")
        limit = ((1 << 32) // bound) * bound
        while True:
            x = self.next_u32()
            if x < limit:
                return x % bound

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in the closed range [lo, hi]."""
        return lo + self.below(hi - lo + 1)


def prng_next(key: SessionKey) -> int:
    return key.next_u32()
