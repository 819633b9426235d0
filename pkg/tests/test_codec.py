import math

import pytest
from hypothesis import given, settings, strategies as st

from polyenc.codec import (
    DEFAULT_POWERS,
    KSequence,
    LinearK,
    PowerTriple,
    RingParams,
    amplitude,
    arity_roots,
    decode_symbol,
    decrypt_stream,
    discriminant,
    encode_symbol,
    encrypt_stream,
    make_cipher,
    solve_closed_form,
    solve_search,
)
from polyenc.errors import (
    AmbiguousCipherError,
    DecryptionError,
    InconsistentCipherError,
    NoSolutionError,
)
from polyenc.keys import SessionKey
from polyenc.ring import CongruenceClass, additive_arity, mult_arity

from conftest import TABLE_1


def summed_amplitude(a, b, m, ell, k=lambda i: i - 1):
    """Oracle: add up the l(m-1)+1 class members a + b*k_i one by one."""
    return sum(a + b * k(i) for i in range(1, ell * (m - 1) + 2))


def box_solutions(B, powers, bound):
    """Oracle: every consistent (a, b, m) with b, m <= bound reproducing B."""
    hits = []
    for m in range(2, bound + 1):
        for b in range(1, bound + 1):
            for a in range(b):
                if additive_arity(CongruenceClass(a, b)) != m:
                    continue
                if all(summed_amplitude(a, b, m, ell) == v for ell, v in zip(powers, B)):
                    hits.append((a, b, m))
    return hits


def ring_grid():
    """(a, b, m) for every ring-bearing class with 1 <= a < b <= 10."""
    for b in range(2, 11):
        for a in range(1, b):
            cc = CongruenceClass(a, b)
            if mult_arity(cc) is not None:
                yield a, b, additive_arity(cc)


class SquareK(KSequence):
    """k_i = (i-1)**2, summed by :meth:`KSequence.K`."""

    def k(self, i, ell):
        return (i - 1) ** 2


keys = st.binary(min_size=16, max_size=16).map(SessionKey)
powers = st.lists(st.integers(1, 8), min_size=3, max_size=3, unique=True).map(lambda p: PowerTriple(*p))


# -- encoding ---------------------------------------------------------------

def test_encode_worked_symbol(worked_key):
    assert encode_symbol(3, worked_key) == RingParams(3, 4, 5)


def test_encode_zero():
    key = SessionKey.from_seed(11)
    d = SessionKey.from_seed(11).randint(1, 16)
    assert encode_symbol(0, key) == RingParams(0, d, 2)


def test_encode_rejects_non_byte():
    with pytest.raises(ValueError):
        encode_symbol(256, SessionKey.from_seed(0))


@given(st.integers(0, 255), keys)
def test_encode_consistent(y, key):
    p = encode_symbol(y, key)
    assert p.m == y + 2
    assert additive_arity(p.congruence) == p.m
    assert 1 <= p.b // (p.m - 1) <= 16


# -- amplitudes ---------------------------------------------------------------

@pytest.mark.parametrize("ell,B", [(1, 55), (2, 171), (3, 351)])
def test_amplitude_worked(ell, B):
    assert amplitude(RingParams(3, 4, 5), ell) == B


def test_amplitude_matches_summation_oracle():
    for a, b, m in ring_grid():
        for ell in range(1, 6):
            assert amplitude(RingParams(a, b, m), ell) == summed_amplitude(a, b, m, ell)
            assert amplitude(RingParams(a, b, m), ell, SquareK()) == summed_amplitude(a, b, m, ell, lambda i: (i - 1) ** 2)


def test_linear_k_closed_form():
    ks = LinearK()
    for m in range(2, 20):
        for ell in range(1, 6):
            assert ks.K(m, ell) == KSequence.K(ks, m, ell)


def test_amplitude_overflow():
    with pytest.raises(OverflowError):
        amplitude(RingParams(0, 2**45, 257), 8)


def test_make_cipher(worked_key):
    c = make_cipher(RingParams(3, 4, 5), DEFAULT_POWERS, LinearK(), worked_key)
    assert c.amplitudes == (55, 171, 351)
    assert sorted(c.waveform_ids) == [1, 2, 3]
    assert make_cipher(RingParams(0, 1, 2), DEFAULT_POWERS, LinearK(), worked_key).amplitudes == (1, 3, 6)


def test_permutations_cover_all_orderings():
    key = SessionKey.from_seed(5)
    p = RingParams(3, 4, 5)
    seen = {make_cipher(p, DEFAULT_POWERS, LinearK(), key).waveform_ids for _ in range(200)}
    assert len(seen) == 6


# -- closed form ------------------------------------------------------------

def test_closed_form_worked():
    B = (55, 171, 351)
    assert discriminant(B) == 64
    assert arity_roots(B) == [(1, 5)]
    assert solve_closed_form(B) == RingParams(3, 4, 5)


def test_closed_form_double_root():
    B = tuple(summed_amplitude(1, 2, 3, ell) for ell in (1, 2, 3))
    assert B == (9, 25, 49)
    assert discriminant(B) == 0
    assert solve_closed_form(B) == RingParams(1, 2, 3)


def test_closed_form_no_solution():
    with pytest.raises(NoSolutionError):
        solve_closed_form((1, 1, 1))


@pytest.mark.parametrize("B", [(55, 171, 352), (55, 170, 351), (0, 1, 6)])
def test_closed_form_rejects_bad_amplitudes(B):
    with pytest.raises((NoSolutionError, InconsistentCipherError)):
        solve_closed_form(B)


def test_closed_form_identities_on_grid():
    for a, b, m in ring_grid():
        B = [summed_amplitude(a, b, m, ell) for ell in (1, 2, 3)]
        assert 3 * B[0] - 3 * B[1] + B[2] == a
        D = discriminant(B)
        assert D >= 0 and math.isqrt(D) ** 2 == D


def test_closed_form_identities_on_encoder_output():
    key = SessionKey.from_seed(99)
    for y in range(1, 256):
        p = encode_symbol(y, key)
        B = [amplitude(p, ell) for ell in (1, 2, 3)]
        assert 3 * B[0] - 3 * B[1] + B[2] == p.a
        assert math.isqrt(discriminant(B)) ** 2 == discriminant(B)
        assert solve_closed_form(B) == p


# -- search -----------------------------------------------------------------

def test_search_worked():
    assert solve_search((55, 171, 351), DEFAULT_POWERS) == RingParams(3, 4, 5)


def test_search_round_trip_grid():
    for a, b, m in ring_grid():
        B = [summed_amplitude(a, b, m, ell) for ell in (1, 2, 3)]
        assert solve_search(B) == RingParams(a, b, m)


def test_search_wrong_powers():
    # B >= b*K(m, l) bounds b and m by 60 for powers (2, 3, 4), so the box is exhaustive
    assert box_solutions((55, 171, 351), (2, 3, 4), 60) == []
    with pytest.raises(NoSolutionError):
        solve_search((55, 171, 351), PowerTriple(2, 3, 4))


def test_search_matches_box_oracle():
    assert box_solutions((55, 171, 351), (1, 2, 3), 60) == [(3, 4, 5)]


def test_search_custom_k_sequence():
    p = RingParams(6, 9, 4)
    ks = SquareK()
    pw = PowerTriple(2, 5, 3)
    B = [amplitude(p, ell, ks) for ell in pw]
    assert solve_search(B, pw, ks) == p


def test_search_reports_ambiguity():
    class Skewed(LinearK):
        # (1, 4, 5) reproduces the amplitudes of (1, 2, 3) under this sequence
        def K(self, m, ell):
            return ell * ell if m == 5 else super().K(m, ell)

    with pytest.raises(AmbiguousCipherError) as info:
        solve_search((9, 25, 49), DEFAULT_POWERS, Skewed(), m_max=16)
    assert set(info.value.candidates) == {RingParams(1, 2, 3), RingParams(1, 4, 5)}


def test_search_respects_m_max():
    with pytest.raises(NoSolutionError):
        solve_search((55, 171, 351), m_max=4)
    with pytest.raises(ValueError):
        solve_search((55, 171, 351), m_max=1)


# -- decoding ---------------------------------------------------------------

def test_decode_symbol():
    assert decode_symbol(RingParams(3, 4, 5)) == 3
    assert decode_symbol(RingParams(0, 1, 2)) == 0


def test_decode_inconsistent_arity():
    with pytest.raises(InconsistentCipherError):
        decode_symbol(RingParams(2, 4, 5))


def test_decode_out_of_range():
    with pytest.raises(ValueError):
        decode_symbol(RingParams(1, 257, 258))


def test_decode_replays_nonce(worked_key):
    assert decode_symbol(RingParams(3, 4, 5), worked_key.fresh()) == 3
    with pytest.raises(InconsistentCipherError):
        decode_symbol(RingParams(1, 4, 5), worked_key.fresh())


# -- streams ----------------------------------------------------------------

def test_stream_empty():
    assert encrypt_stream(b"", SessionKey.from_seed(1)) == []
    assert decrypt_stream([], SessionKey.from_seed(1)) == b""


def test_stream_worked(worked_key):
    (c,) = encrypt_stream(b"\x03", worked_key.fresh())
    assert c.amplitudes == (55, 171, 351)
    assert decrypt_stream([c], worked_key.fresh()) == b"\x03"


def test_stream_nonce_varies():
    key = SessionKey.from_seed(4)
    ciphers = encrypt_stream(b"zz", key.fresh())
    a, b = (solve_closed_form(c.amplitudes) for c in ciphers)
    assert (a.a, a.b) != (b.a, b.b)
    assert a.m == b.m == ord("z") + 2
    assert decrypt_stream(ciphers, key.fresh()) == b"zz"


def test_stream_tampered(worked_key):
    (c,) = encrypt_stream(b"\x03", worked_key.fresh())
    bad = type(c)(c.powers, (55, 171, 352), c.waveform_ids)
    assert box_solutions(bad.amplitudes, (1, 2, 3), 60) == []
    with pytest.raises(DecryptionError) as info:
        decrypt_stream([c, bad], worked_key.fresh())
    assert info.value.index == 1


def test_stream_wrong_key_detected():
    ciphers = encrypt_stream(b"hello", SessionKey.from_seed(1))
    with pytest.raises(DecryptionError):
        decrypt_stream(ciphers, SessionKey.from_seed(2))


def test_stream_zero_byte():
    key = SessionKey.from_seed(8)
    assert decrypt_stream(encrypt_stream(b"\x00\x00\x01", key.fresh()), key.fresh()) == b"\x00\x00\x01"


@settings(max_examples=50, deadline=None)
@given(st.binary(max_size=8), keys, powers)
def test_stream_round_trip(data, key, pw):
    ciphers = encrypt_stream(data, key.fresh(), pw)
    assert decrypt_stream(ciphers, key.fresh()) == data


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 255), keys, keys)
def test_nonce_independence(y, k1, k2):
    p1 = solve_search(encrypt_stream(bytes([y]), k1)[0].amplitudes)
    p2 = solve_search(encrypt_stream(bytes([y]), k2)[0].amplitudes)
    assert p1.m == p2.m
    assert decode_symbol(p1) == decode_symbol(p2) == y


def test_power_triple_validation():
    with pytest.raises(ValueError):
        PowerTriple(1, 1, 2)
    with pytest.raises(ValueError):
        PowerTriple(0, 1, 2)
    assert PowerTriple.parse("3, 1,2") == PowerTriple(3, 1, 2)
    with pytest.raises(ValueError):
        PowerTriple.parse("1,2")


def test_table_classes_decrypt_via_search():
    for ab, (m, *_rest) in TABLE_1.items():
        B = [summed_amplitude(*ab, m, ell) for ell in (1, 2, 3)]
        assert solve_search(B) == solve_closed_form(B) == RingParams(*ab, m)
