"""Sender and receiver pipelines joining codec, signal and wire."""
from __future__ import annotations

from typing import List, Sequence

from .codec import (
    DEFAULT_M_MAX,
    DEFAULT_POWERS,
    KSequence,
    LinearK,
    PowerTriple,
    SymbolCipher,
    decrypt_stream,
    encrypt_stream,
)
from .errors import DecryptionError, FrameError, ProtocolError
from .keys import SessionKey
from .signal import DEFAULT_PERIOD, WAVEFORM_IDS, max_deviation, recover_amplitude, synthesize, template
from .wire import Session, read_session, write_session

__all__ = [
    "ciphers_to_session",
    "session_to_ciphers",
    "encrypt_bytes",
    "decrypt_bytes",
]


def ciphers_to_session(
    ciphers: Sequence[SymbolCipher], period: int = DEFAULT_PERIOD, periods: int = 1
) -> Session:
    """One frame per amplitude, in power order, each on its keyed waveform."""
    symbols = []
    for c in ciphers:
        symbols.append(tuple(
            synthesize(B, template(wid, period), periods)
            for B, wid in zip(c.amplitudes, c.waveform_ids)
        ))
    return Session(period, periods, symbols)


def session_to_ciphers(session: Session, powers: PowerTriple = DEFAULT_POWERS, eta: int = 0) -> List[SymbolCipher]:
    """Recover amplitudes by matched filtering.

    A frame that strays from its ideal shape by more than ``eta`` in any sample
    is rejected, so tampering beyond the channel noise bound never decodes.
    """
    if session.period < 4 or session.period % 4:
        raise ProtocolError(f"period {session.period} is not a positive multiple of 4")
    ciphers = []
    for i, frames in enumerate(session.symbols):
        amps, wids = [], []
        for frame in frames:
            if frame.waveform_id not in WAVEFORM_IDS:
                raise ProtocolError(f"symbol {i}: unknown waveform id {frame.waveform_id}")
            tpl = template(frame.waveform_id, session.period)
            B = recover_amplitude(frame, tpl)
            dev = max_deviation(frame, tpl, B)
            if dev > eta:
                raise DecryptionError(
                    i, FrameError(f"waveform {frame.waveform_id} deviates by {dev} > {eta} from amplitude {B}")
                )
            amps.append(B)
            wids.append(frame.waveform_id)
        ciphers.append(SymbolCipher(powers, tuple(amps), tuple(wids)))
    return ciphers


def encrypt_bytes(
    plaintext: bytes,
    key: SessionKey,
    powers: PowerTriple = DEFAULT_POWERS,
    ks: KSequence = LinearK(),
    period: int = DEFAULT_PERIOD,
    periods: int = 1,
) -> bytes:
    ciphers = encrypt_stream(plaintext, key, powers, ks)
    return write_session(ciphers_to_session(ciphers, period, periods))


def decrypt_bytes(
    data: bytes,
    key: SessionKey,
    powers: PowerTriple = DEFAULT_POWERS,
    ks: KSequence = LinearK(),
    eta: int = 0,
    m_max: int = DEFAULT_M_MAX,
) -> bytes:
    ciphers = session_to_ciphers(read_session(data), powers, eta)
    return decrypt_stream(ciphers, key, ks, m_max)
