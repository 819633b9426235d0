"""Polyadic amplitude codec: residue-class ring arithmetic, keyed encoding of
bytes into ring parameters, integer signal frames and a framed transfer format.

The scheme obscures data but is not a vetted cipher.
"""
from .codec import (
    DEFAULT_POWERS,
    KSequence,
    LinearK,
    PowerTriple,
    RingParams,
    SymbolCipher,
    amplitude,
    decode_symbol,
    decrypt_stream,
    encode_symbol,
    encrypt_stream,
    make_cipher,
    solve_closed_form,
    solve_search,
)
from .keys import SessionKey, prng_next
from .pipeline import decrypt_bytes, encrypt_bytes
from .ring import (
    ArityShape,
    CongruenceClass,
    PolyadicInt,
    additive_arity,
    arity_shape,
    from_value,
    madd,
    mult_arity,
    nmul,
    value,
)
from .shape_table import ShapeTable, build_table, render_table
from .signal import SignalFrame, WaveformTemplate, add_noise, recover_amplitude, synthesize, template
from .wire import Session, read_session, write_session

__version__ = "0.1.0"
