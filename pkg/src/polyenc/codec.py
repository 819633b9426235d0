"""Keyed symbol encoding into ring parameters and recovery from total amplitudes.

A byte ``y`` is carried by the additive arity ``m = y + 2`` of a congruence
class [[a]]_b chosen per symbol from the key stream.  The sender transmits the
total amplitudes

    B_l = a * N + b * K(m, l),    N = l(m-1) + 1,    K(m, l) = sum_{i=1..N} k_i

for three distinct polyadic powers ``l``.  The receiver solves the three
equations for (a, b, m) and reads off ``y``.

This is an obfuscation scheme.  It has no proof of security and must not be
used where a vetted cipher is required.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

from .errors import (
    AmbiguousCipherError,
    DecryptionError,
    InconsistentCipherError,
    NoSolutionError,
    PolyencError,
)
from .keys import SessionKey
from .ring import CongruenceClass, additive_arity
from .signal import SAMPLE_MAX, SAMPLE_MIN, WAVEFORM_IDS

__all__ = [
    "KSequence",
    "LinearK",
    "PowerTriple",
    "RingParams",
    "SymbolCipher",
    "DEFAULT_POWERS",
    "MAX_NONCE",
    "DEFAULT_M_MAX",
    "encode_symbol",
    "amplitude",
    "make_cipher",
    "discriminant",
    "arity_roots",
    "solve_closed_form",
    "solve_search",
    "decode_symbol",
    "encrypt_stream",
    "decrypt_stream",
]

MAX_NONCE = 16
DEFAULT_M_MAX = 1024


class KSequence:
    """Index sequence k_i^(l) used to pick the class representatives a + b*k_i.

    Subclasses override :meth:`k`; :meth:`K` sums it over the admissible count
    and may be overridden with a closed form.
    """

    def k(self, i: int, ell: int) -> int:
        raise NotImplementedError

    def K(self, m: int, ell: int) -> int:
        N = ell * (m - 1) + 1
        return sum(self.k(i, ell) for i in range(1, N + 1))


class LinearK(KSequence):
    """k_i = i - 1 for every power, so K(m, l) = N(N-1)/2."""

    def k(self, i, ell):
        return i - 1

    def K(self, m, ell):
        N = ell * (m - 1) + 1
        return N * (N - 1) // 2

    def __eq__(self, other):
        return type(other) is LinearK

    def __hash__(self):
        return hash(LinearK)

    def __repr__(self):
        return "LinearK()"


@dataclass(frozen=True)
class PowerTriple:
    l1: int
    l2: int
    l3: int

    def __post_init__(self):
        if min(self) < 1:
            raise ValueError(f"polyadic powers must be positive, got {tuple(self)}")
        if len(set(self)) != 3:
            raise ValueError(f"polyadic powers must be pairwise distinct, got {tuple(self)}")

    def __iter__(self) -> Iterator[int]:
        return iter((self.l1, self.l2, self.l3))

    @classmethod
    def parse(cls, text: str) -> "PowerTriple":
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 3:
            raise ValueError(f"expected three comma-separated powers, got {text!r}")
        return cls(*(int(p) for p in parts))

    def __str__(self):
        return f"{self.l1},{self.l2},{self.l3}"


DEFAULT_POWERS = PowerTriple(1, 2, 3)


@dataclass(frozen=True)
class RingParams:
    a: int
    b: int
    m: int

    def __post_init__(self):
        if self.b < 1 or not 0 <= self.a <= self.b - 1:
            raise ValueError(f"need 0 <= a <= b-1 and b >= 1, got a={self.a}, b={self.b}")
        if self.m < 2:
            raise ValueError(f"arity must be >= 2, got m={self.m}")

    @property
    def congruence(self) -> CongruenceClass:
        return CongruenceClass(self.a, self.b)

    def is_consistent(self) -> bool:
        return additive_arity(self.congruence) == self.m


@dataclass(frozen=True)
class SymbolCipher:
    powers: PowerTriple
    amplitudes: Tuple[int, int, int]
    # waveform template carrying each amplitude, in power order
    waveform_ids: Tuple[int, int, int]


def _draw_nonce(m: int, key: SessionKey) -> Tuple[int, int]:
    d = key.randint(1, MAX_NONCE)
    if m == 2:
        return d, 0
    while True:
        u = key.randint(1, m - 2)
        if math.gcd(u, m - 1) == 1:
            return d, u


def _draw_waveforms(key: SessionKey) -> Tuple[int, int, int]:
    ids = list(WAVEFORM_IDS)
    for i in range(len(ids) - 1, 0, -1):
        j = key.below(i + 1)
        ids[i], ids[j] = ids[j], ids[i]
    return tuple(ids)


def encode_symbol(y: int, key: SessionKey) -> RingParams:
    """Map a byte to a keyed class [[d*u]]_{d*(m-1)} whose additive arity is y + 2."""
    if not 0 <= y <= 255:
        raise ValueError(f"symbol must be a byte, got {y}")
    m = y + 2
    d, u = _draw_nonce(m, key)
    return RingParams(a=d * u, b=d * (m - 1), m=m)


def amplitude(p: RingParams, ell: int, ks: KSequence = LinearK()) -> int:
    if ell < 1:
        raise ValueError(f"polyadic power must be positive, got {ell}")
    N = ell * (p.m - 1) + 1
    B = p.a * N + p.b * ks.K(p.m, ell)
    if not SAMPLE_MIN <= B <= SAMPLE_MAX:
        raise OverflowError(f"amplitude {B} does not fit a signed 64-bit integer")
    return B


def make_cipher(p: RingParams, powers: PowerTriple, ks: KSequence, key: SessionKey) -> SymbolCipher:
    amps = tuple(amplitude(p, ell, ks) for ell in powers)
    return SymbolCipher(powers, amps, _draw_waveforms(key))


def discriminant(B: Sequence[int]) -> int:
    """Radicand of the closed-form arity for powers (1, 2, 3) and linear k_i."""
    B1, B2, B3 = B
    return B1 * B1 - 8 * B2 * B1 - 2 * B3 * B1 + 16 * B2 * B2 + B3 * B3 - 8 * B2 * B3


def arity_roots(B: Sequence[int]) -> List[Tuple[int, int]]:
    """(sign, m) pairs where the closed-form arity is an integer >= 2.

    Raises NoSolutionError when a <= 0 or the discriminant is not a perfect square.
    """
    B1, B2, B3 = B
    a = 3 * B1 - 3 * B2 + B3
    if a <= 0:
        raise NoSolutionError(f"residue a = 3B1 - 3B2 + B3 = {a} is not positive")
    D = discriminant(B)
    if D < 0:
        raise NoSolutionError(f"negative discriminant {D}")
    r = math.isqrt(D)
    if r * r != D:
        raise NoSolutionError(f"discriminant {D} is not a perfect square")
    base = 7 * B1 - 4 * B2 + B3
    roots = []
    for sign in (1, -1):
        num = base + sign * r
        if num % (4 * a) == 0 and num // (4 * a) >= 2:
            m = num // (4 * a)
            if all(m != other for _, other in roots):
                roots.append((sign, m))
    return roots


def solve_closed_form(B: Sequence[int]) -> RingParams:
    """Invert amplitudes made with powers (1, 2, 3) and the linear k-sequence."""
    B = tuple(B)
    roots = arity_roots(B)
    if not roots:
        raise NoSolutionError(f"no integer arity m >= 2 solves amplitudes {B}")
    a = 3 * B[0] - 3 * B[1] + B[2]
    found = []
    for _, m in roots:
        num, den = 2 * (B[0] - a * m), (m - 1) * m
        if num % den:
            continue
        b = num // den
        if not 0 <= a <= b - 1:
            continue
        p = RingParams(a, b, m)
        if tuple(amplitude(p, ell) for ell in (1, 2, 3)) == B:
            found.append(p)
    if not found:
        raise InconsistentCipherError(f"amplitudes {B} fail verification for every integer root")
    if len(found) > 1:
        raise AmbiguousCipherError(found)
    return found[0]


_PAIRS = ((0, 1), (0, 2), (1, 2))


def _solve_pair(B, N, K, i, j) -> Optional[Tuple[int, int]]:
    """Integer solution of a*N + b*K = B for equations i and j, if one exists."""
    det = N[i] * K[j] - N[j] * K[i]
    if det == 0:
        return None
    na = B[i] * K[j] - B[j] * K[i]
    nb = N[i] * B[j] - N[j] * B[i]
    if na % det or nb % det:
        return None
    return na // det, nb // det


def solve_search(
    B: Sequence[int],
    powers: PowerTriple = DEFAULT_POWERS,
    ks: KSequence = LinearK(),
    m_max: int = DEFAULT_M_MAX,
) -> RingParams:
    """Scan arities 2..m_max; for each, solve two equations exactly and check the third."""
    if m_max < 2:
        raise ValueError(f"m_max must be >= 2, got {m_max}")
    B = tuple(B)
    ells = tuple(powers)
    found = []
    for m in range(2, m_max + 1):
        N = [ell * (m - 1) + 1 for ell in ells]
        K = [ks.K(m, ell) for ell in ells]
        pair = next(((i, j) for i, j in _PAIRS if N[i] * K[j] != N[j] * K[i]), None)
        if pair is None:
            continue
        sol = _solve_pair(B, N, K, *pair)
        if sol is None:
            continue
        a, b = sol
        if not (b >= 1 and 0 <= a <= b - 1):
            continue
        if any(a * n + b * k != v for n, k, v in zip(N, K, B)):
            continue
        p = RingParams(a, b, m)
        if p.is_consistent():
            found.append(p)
    if not found:
        raise NoSolutionError(f"no (a, b, m) with m <= {m_max} produces amplitudes {B} at powers {powers}")
    if len(found) > 1:
        raise AmbiguousCipherError(found)
    return found[0]


def decode_symbol(p: RingParams, key: Optional[SessionKey] = None) -> int:
    """Read the byte ``m - 2`` back from recovered parameters.

    With a key, the nonce draws are replayed from it and must reproduce (a, b).
    """
    y = p.m - 2
    if not 0 <= y <= 255:
        raise ValueError(f"arity {p.m} encodes {y}, outside the byte range")
    if not p.is_consistent():
        raise InconsistentCipherError(
            f"class [[{p.a}]]_{p.b} has additive arity {additive_arity(p.congruence)}, not {p.m}"
        )
    if key is not None:
        d, u = _draw_nonce(p.m, key)
        if (p.a, p.b) != (d * u, d * (p.m - 1)):
            raise InconsistentCipherError(f"class [[{p.a}]]_{p.b} does not match the keyed nonce")
    return y


def encrypt_stream(
    plaintext: bytes,
    key: SessionKey,
    powers: PowerTriple = DEFAULT_POWERS,
    ks: KSequence = LinearK(),
) -> List[SymbolCipher]:
    out = []
    for y in plaintext:
        p = encode_symbol(y, key)
        out.append(make_cipher(p, powers, ks, key))
    return out


def _solve(cipher: SymbolCipher, ks: KSequence, m_max: int) -> RingParams:
    if tuple(cipher.powers) == tuple(DEFAULT_POWERS) and ks == LinearK():
        try:
            p = solve_closed_form(cipher.amplitudes)
        except NoSolutionError:
            # a = 0 (the symbol 0x00) has no closed form; the search covers it
            return solve_search(cipher.amplitudes, cipher.powers, ks, m_max)
        q = solve_search(cipher.amplitudes, cipher.powers, ks, m_max)
        if p != q:
            raise InconsistentCipherError(f"closed form gives {p}, search gives {q}")
        return p
    return solve_search(cipher.amplitudes, cipher.powers, ks, m_max)


def decrypt_stream(
    ciphers: Sequence[SymbolCipher],
    key: SessionKey,
    ks: KSequence = LinearK(),
    m_max: int = DEFAULT_M_MAX,
) -> bytes:
    """Invert :func:`encrypt_stream`, replaying the key's draws to check each symbol.

    Raises DecryptionError carrying the index of the first symbol that fails.
    """
    out = bytearray()
    for i, cipher in enumerate(ciphers):
        try:
            p = _solve(cipher, ks, m_max)
            y = decode_symbol(p, key)
            if _draw_waveforms(key) != tuple(cipher.waveform_ids):
                raise InconsistentCipherError(
                    f"waveform assignment {tuple(cipher.waveform_ids)} does not match the key"
                )
        except (PolyencError, ArithmeticError, ValueError) as exc:
            raise DecryptionError(i, exc) from exc
        out.append(y)
    return bytes(out)
