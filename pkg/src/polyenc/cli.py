"""Command line front end.

Exit codes: 0 success, 1 decode or protocol failure, 2 usage, 3 I/O, 4 transport.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys

from .codec import DEFAULT_POWERS, PowerTriple
from .errors import PolyencError, TransportError
from .keys import SessionKey
from .pipeline import decrypt_bytes, encrypt_bytes
from .ring import CongruenceClass, arity_shape
from .shape_table import build_table, render_table
from .signal import DEFAULT_PERIOD
from .wire import DEFAULT_MAX_SIZE, DEFAULT_TIMEOUT, accept_session, open_listener, send_session

log = logging.getLogger("polyenc")

EXIT_OK, EXIT_DECODE, EXIT_USAGE, EXIT_IO, EXIT_TRANSPORT = 0, 1, 2, 3, 4
KEY_ENV = "PENC_KEY"


class UsageError(Exception):
    pass


def _read_input(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _write_output(path: str, data: bytes):
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
        return
    with open(path, "wb") as fh:
        fh.write(data)


def _key(args) -> SessionKey:
    text = args.key or os.environ.get(KEY_ENV)
    if not text:
        raise UsageError(f"a key is required: pass --key or set {KEY_ENV}")
    try:
        return SessionKey.from_hex(text)
    except ValueError as exc:
        raise UsageError(f"invalid key: {exc}") from exc


def _powers(args) -> PowerTriple:
    try:
        return PowerTriple.parse(args.powers)
    except ValueError as exc:
        raise UsageError(f"invalid --powers: {exc}") from exc


def cmd_table(args):
    if args.a_max < 1 or args.b_max < 2:
        raise UsageError("need --a-max >= 1 and --b-max >= 2")
    sys.stdout.write(render_table(build_table(args.a_max, args.b_max), args.format))
    return EXIT_OK


def cmd_shape(args):
    try:
        cc = CongruenceClass(args.a, args.b)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    print(arity_shape(cc))
    return EXIT_OK


def cmd_encrypt(args):
    key, powers = _key(args), _powers(args)
    if args.period < 4 or args.period % 4 or args.period >= 1 << 16:
        raise UsageError("--period must be a multiple of 4 below 65536")
    if not 1 <= args.periods < 1 << 16:
        raise UsageError("--periods must be in [1, 65535]")
    data = _read_input(args.input)
    _write_output(args.output, encrypt_bytes(data, key, powers, period=args.period, periods=args.periods))
    return EXIT_OK


def cmd_decrypt(args):
    key, powers = _key(args), _powers(args)
    data = _read_input(args.input)
    _write_output(args.output, decrypt_bytes(data, key, powers, eta=args.noise))
    return EXIT_OK


def cmd_send(args):
    data = _read_input(args.input)
    send_session((args.host, args.port), data, timeout=args.timeout)
    log.info("sent %d bytes to %s:%d", len(data), args.host, args.port)
    return EXIT_OK


def cmd_recv(args):
    key = _key(args) if (args.key or os.environ.get(KEY_ENV)) else None
    powers = _powers(args)
    with open_listener((args.host, args.port)) as listener:
        host, port = listener.getsockname()[:2]
        print(f"listening on {host}:{port}", file=sys.stderr, flush=True)
        data = accept_session(listener, timeout=args.timeout, max_size=args.max_size)
    if key is not None:
        data = decrypt_bytes(data, key, powers, eta=args.noise)
    _write_output(args.output, data)
    return EXIT_OK


def _add_key_args(p, noise=False):
    p.add_argument("--key", help=f"32 hex characters (default: ${KEY_ENV})")
    p.add_argument("--powers", default=str(DEFAULT_POWERS), help="three distinct polyadic powers (default: 1,2,3)")
    if noise:
        p.add_argument("--noise", type=int, default=0, metavar="ETA",
                       help="largest per-sample deviation tolerated on received frames (default: 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polyenc", description="Polyadic amplitude codec and transfer tool.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", help="print the arity shape table")
    p.add_argument("--a-max", type=int, default=9)
    p.add_argument("--b-max", type=int, default=10)
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("shape", help="arities and shape invariants of one class [[a]]_b")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.set_defaults(func=cmd_shape)

    p = sub.add_parser("encrypt", help="plaintext bytes to a session file")
    _add_key_args(p)
    p.add_argument("--period", type=int, default=DEFAULT_PERIOD, help="samples per waveform period")
    p.add_argument("--periods", type=int, default=1)
    p.add_argument("-i", "--input", default="-")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", help="session file back to plaintext")
    _add_key_args(p, noise=True)
    p.add_argument("-i", "--input", default="-")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("send", help="transmit a session file to a receiver")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, required=True)
    p.add_argument("--timeout", type=float, default=DEFAULT_TIMEOUT)
    p.add_argument("-i", "--input", default="-")
    p.set_defaults(func=cmd_send)

    p = sub.add_parser("recv", help="receive one session; decrypt it when a key is given")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=0)
    p.add_argument("--timeout", type=float, default=DEFAULT_TIMEOUT)
    p.add_argument("--max-size", type=int, default=DEFAULT_MAX_SIZE)
    _add_key_args(p, noise=True)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_recv)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TransportError as exc:
        print(f"transport error: {exc}", file=sys.stderr)
        return EXIT_TRANSPORT
    except PolyencError as exc:
        print(f"decode error: {exc}", file=sys.stderr)
        return EXIT_DECODE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
