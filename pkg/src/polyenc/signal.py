"""Integer waveform templates, frame synthesis and matched-filter recovery.

Every sample is an exact integer.  A noiseless frame is ``B * proto`` repeated
over whole periods, and correlating with the prototype divided by its energy
returns ``B`` exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Tuple

from .errors import FrameError
from .keys import SessionKey

__all__ = [
    "WAVEFORM_IDS",
    "RECTANGULAR",
    "TRIANGULAR",
    "SAWTOOTH",
    "DEFAULT_PERIOD",
    "WaveformTemplate",
    "SignalFrame",
    "template",
    "synthesize",
    "recover_amplitude",
    "max_deviation",
    "add_noise",
]

RECTANGULAR, TRIANGULAR, SAWTOOTH = 1, 2, 3
WAVEFORM_IDS = (RECTANGULAR, TRIANGULAR, SAWTOOTH)
DEFAULT_PERIOD = 64

SAMPLE_MIN = -(1 << 63)
SAMPLE_MAX = (1 << 63) - 1


@dataclass(frozen=True)
class WaveformTemplate:
    waveform_id: int
    period: int
    proto: Tuple[int, ...]

    @property
    def energy(self) -> int:
        return sum(v * v for v in self.proto)

    @property
    def l1(self) -> int:
        """Sum of absolute prototype values; bounds the effect of per-sample noise."""
        return sum(abs(v) for v in self.proto)

    def noise_tolerance(self) -> int:
        """Largest eta with eta * l1 < energy / 2, i.e. noise that recovery always absorbs."""
        return (self.energy - 1) // (2 * self.l1)


@dataclass(frozen=True)
class SignalFrame:
    waveform_id: int
    samples: Tuple[int, ...]

    def __add__(self, other: "SignalFrame") -> "SignalFrame":
        if self.waveform_id != other.waveform_id or len(self.samples) != len(other.samples):
            raise FrameError("can only add frames of the same waveform and length")
        return SignalFrame(self.waveform_id, tuple(x + y for x, y in zip(self.samples, other.samples)))


@lru_cache(maxsize=None)
def template(waveform_id: int, period: int = DEFAULT_PERIOD) -> WaveformTemplate:
    if period < 4 or period % 4:
        raise ValueError(f"period must be a positive multiple of 4, got {period}")
    half, quarter = period // 2, period // 4
    if waveform_id == RECTANGULAR:
        proto = [1 if s < half else -1 for s in range(period)]
    elif waveform_id == TRIANGULAR:
        proto = [
            s if s < quarter else half - s if s < 3 * quarter else s - period
            for s in range(period)
        ]
    elif waveform_id == SAWTOOTH:
        proto = [s - half for s in range(period)]
    else:
        raise ValueError(f"unknown waveform id {waveform_id}, expected one of {WAVEFORM_IDS}")
    return WaveformTemplate(waveform_id, period, tuple(proto))


def _check_range(samples: Sequence[int]):
    for v in samples:
        if not SAMPLE_MIN <= v <= SAMPLE_MAX:
            raise OverflowError(f"sample {v} does not fit a signed 64-bit integer")


def synthesize(B: int, tpl: WaveformTemplate, periods: int = 1) -> SignalFrame:
    if periods < 1:
        raise ValueError(f"periods must be >= 1, got {periods}")
    one = [B * v for v in tpl.proto]
    _check_range(one)
    return SignalFrame(tpl.waveform_id, tuple(one * periods))


def _check_frame(frame: SignalFrame, tpl: WaveformTemplate) -> int:
    if frame.waveform_id != tpl.waveform_id:
        raise FrameError(f"frame carries waveform {frame.waveform_id}, template is {tpl.waveform_id}")
    n = len(frame.samples)
    if n == 0 or n % tpl.period:
        raise FrameError(f"frame length {n} is not a positive multiple of period {tpl.period}")
    return n // tpl.period


def _round_half_away(num: int, den: int) -> int:
    q = (2 * abs(num) + den) // (2 * den)
    return q if num >= 0 else -q


def recover_amplitude(frame: SignalFrame, tpl: WaveformTemplate) -> int:
    periods = _check_frame(frame, tpl)
    P = tpl.period
    corr = sum(x * tpl.proto[s % P] for s, x in enumerate(frame.samples))
    return _round_half_away(corr, periods * tpl.energy)


def max_deviation(frame: SignalFrame, tpl: WaveformTemplate, B: int) -> int:
    """Largest absolute difference between ``frame`` and the ideal frame for ``B``."""
    _check_frame(frame, tpl)
    P = tpl.period
    return max(abs(x - B * tpl.proto[s % P]) for s, x in enumerate(frame.samples))


def add_noise(frame: SignalFrame, eta: int, key: SessionKey) -> SignalFrame:
    if eta < 0:
        raise ValueError(f"noise bound must be >= 0, got {eta}")
    if eta == 0:
        return frame
    noisy = tuple(x + key.randint(-eta, eta) for x in frame.samples)
    _check_range(noisy)
    return SignalFrame(frame.waveform_id, noisy)
