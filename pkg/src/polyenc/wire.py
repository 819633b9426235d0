"""Session byte layout and single-session TCP transport.

Layout, all integers big-endian::

    "PENC" | version u8 = 1 | P u16 | periods u16 | symbol_count u32
    then per symbol three records:
        waveform_id u8 | sample_count u32 | sample_count x i64

On the stream a session is prefixed by its total length as u64.
"""
from __future__ import annotations

import socket
import struct
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .errors import (
    IncompleteSessionError,
    OversizeError,
    ProtocolError,
    SerializationError,
    TransportError,
    TransportTimeout,
    UnsupportedVersionError,
)
from .signal import SignalFrame

__all__ = [
    "MAGIC",
    "VERSION",
    "HEADER",
    "DEFAULT_TIMEOUT",
    "DEFAULT_MAX_SIZE",
    "Session",
    "write_session",
    "read_session",
    "send_session",
    "open_listener",
    "accept_session",
    "recv_session",
]

MAGIC = b"PENC"
VERSION = 1
HEADER = struct.Struct(">4sBHHI")
RECORD = struct.Struct(">BI")
LENGTH_PREFIX = struct.Struct(">Q")
FRAMES_PER_SYMBOL = 3

DEFAULT_TIMEOUT = 30.0
DEFAULT_MAX_SIZE = 64 * 1024 * 1024

Symbol = Tuple[SignalFrame, SignalFrame, SignalFrame]


@dataclass(frozen=True)
class Session:
    period: int
    periods: int
    symbols: List[Symbol] = field(default_factory=list)


def write_session(session: Session) -> bytes:
    P, periods = session.period, session.periods
    if not (0 < P < 1 << 16 and 0 < periods < 1 << 16):
        raise SerializationError(f"period {P} and periods {periods} must fit u16 and be positive")
    count = P * periods
    out = [HEADER.pack(MAGIC, VERSION, P, periods, len(session.symbols))]
    sample_fmt = struct.Struct(f">{count}q")
    for i, frames in enumerate(session.symbols):
        if len(frames) != FRAMES_PER_SYMBOL:
            raise SerializationError(f"symbol {i} has {len(frames)} frames, expected {FRAMES_PER_SYMBOL}")
        for frame in frames:
            if len(frame.samples) != count:
                raise SerializationError(
                    f"symbol {i}: frame has {len(frame.samples)} samples, expected {count}"
                )
            if not 0 <= frame.waveform_id < 256:
                raise SerializationError(f"symbol {i}: waveform id {frame.waveform_id} does not fit a byte")
            try:
                payload = sample_fmt.pack(*frame.samples)
            except struct.error as exc:
                raise SerializationError(f"symbol {i}: {exc}") from exc
            out.append(RECORD.pack(frame.waveform_id, count))
            out.append(payload)
    return b"".join(out)


def read_session(data: bytes) -> Session:
    view = memoryview(data)
    if len(view) >= 4 and bytes(view[:4]) != MAGIC:
        raise ProtocolError(f"bad magic {bytes(view[:4])!r}")
    if len(view) >= 5 and view[4] != VERSION:
        raise UnsupportedVersionError(f"unsupported version {view[4]}")
    if len(view) < HEADER.size:
        raise IncompleteSessionError(f"session header needs {HEADER.size} bytes, got {len(view)}")
    _, _, P, periods, n_symbols = HEADER.unpack_from(view, 0)
    if P == 0 or periods == 0:
        raise ProtocolError(f"period {P} and periods {periods} must be positive")
    expected = P * periods
    pos = HEADER.size
    symbols = []
    for i in range(n_symbols):
        frames = []
        for _ in range(FRAMES_PER_SYMBOL):
            if len(view) - pos < RECORD.size:
                raise IncompleteSessionError(f"truncated record header in symbol {i}")
            wid, count = RECORD.unpack_from(view, pos)
            pos += RECORD.size
            if count != expected:
                raise ProtocolError(f"symbol {i}: sample count {count} != periods*P = {expected}")
            size = 8 * count
            if len(view) - pos < size:
                raise IncompleteSessionError(f"truncated samples in symbol {i}")
            samples = struct.unpack_from(f">{count}q", view, pos)
            pos += size
            frames.append(SignalFrame(wid, samples))
        symbols.append(tuple(frames))
    if pos != len(view):
        raise ProtocolError(f"{len(view) - pos} trailing bytes after session")
    return Session(P, periods, symbols)


def _recv_exact(sock: socket.socket, n: int) -> bytes:
    buf = bytearray()
    while len(buf) < n:
        chunk = sock.recv(min(n - len(buf), 1 << 16))
        if not chunk:
            raise TransportError(f"peer closed after {len(buf)} of {n} bytes")
        buf += chunk
    return bytes(buf)


def send_session(address: Tuple[str, int], data: bytes, timeout: float = DEFAULT_TIMEOUT):
    try:
        with socket.create_connection(address, timeout=timeout) as sock:
            sock.sendall(LENGTH_PREFIX.pack(len(data)) + data)
            sock.shutdown(socket.SHUT_WR)
    except socket.timeout as exc:
        raise TransportTimeout(f"timed out sending to {address[0]}:{address[1]}") from exc
    except OSError as exc:
        raise TransportError(f"cannot send to {address[0]}:{address[1]}: {exc}") from exc


def open_listener(address: Tuple[str, int]) -> socket.socket:
    """Bound, listening socket; pass port 0 to let the OS choose."""
    try:
        return socket.create_server(address)
    except OSError as exc:
        raise TransportError(f"cannot listen on {address[0]}:{address[1]}: {exc}") from exc


def accept_session(
    listener: socket.socket,
    timeout: Optional[float] = DEFAULT_TIMEOUT,
    max_size: int = DEFAULT_MAX_SIZE,
) -> bytes:
    """Accept one connection and return the length-prefixed session it carries."""
    listener.settimeout(timeout)
    try:
        conn, _ = listener.accept()
    except socket.timeout as exc:
        raise TransportTimeout(f"no sender within {timeout} s") from exc
    except OSError as exc:
        raise TransportError(f"accept failed: {exc}") from exc
    with conn:
        conn.settimeout(timeout)
        try:
            (size,) = LENGTH_PREFIX.unpack(_recv_exact(conn, LENGTH_PREFIX.size))
            if size > max_size:
                raise OversizeError(f"declared session length {size} exceeds cap {max_size}")
            return _recv_exact(conn, size)
        except socket.timeout as exc:
            raise TransportTimeout(f"sender stalled for {timeout} s") from exc
        except OSError as exc:
            raise TransportError(f"receive failed: {exc}") from exc


def recv_session(
    address: Tuple[str, int],
    timeout: Optional[float] = DEFAULT_TIMEOUT,
    max_size: int = DEFAULT_MAX_SIZE,
) -> bytes:
    with open_listener(address) as listener:
        return accept_session(listener, timeout, max_size)
