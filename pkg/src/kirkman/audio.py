"""15-note scale construction and windowed chord synthesis.

Each two-qubit operator owns one note name, a letter A..E with a flat,
natural or sharp signature; all fifteen combinations are distinct pitches
(no enharmonic equivalence) and ascend with the operator's coordinate
index, so A-flat is the lowest note and E-sharp the highest.

The scale itself is a combination-product set: every pairwise product of
six odd primes, octave-reduced into [1, 2), sorted ascending and applied
to a tonic.  Chords render as Gabor atoms: a Gaussian window centered at
the chord's time slot multiplying a sine carrier per note.  Synthesis is
pure accumulation in a fixed order, so identical inputs give identical
buffers and identical files.
"""

from __future__ import annotations

import math
import wave
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import pauli
from .designs import display_order
from .errors import SynthesisError
from .resolver import DAY_DISPLAY_ORDER

__all__ = [
    "NoteLabel",
    "Scale",
    "WindowParams",
    "SynthConfig",
    "SlotSpectrum",
    "SpectralReport",
    "NOTE_ORDER",
    "DEFAULT_PRIMES",
    "build_cps_scale",
    "note_of",
    "chord_sequence",
    "synthesize",
    "write_wav",
    "scale_listing",
    "spectral_report",
]

_LETTERS = "ABCDE"
_SIGNATURES = ("flat", "natural", "sharp")
_SIGNATURE_MARK = {"flat": "♭", "natural": "", "sharp": "♯"}
_SIGNATURE_ASCII = {"flat": "b", "natural": "", "sharp": "#"}

DEFAULT_PRIMES = (3, 5, 7, 11, 13, 17)


@dataclass(frozen=True)
class NoteLabel:
    """A letter A..E with a flat/natural/sharp signature; 15 distinct pitches."""

    letter: str
    signature: str

    def __post_init__(self):
        if self.letter not in _LETTERS or self.signature not in _SIGNATURES:
            raise SynthesisError(f"invalid note {self.letter!r}/{self.signature!r}")

    @classmethod
    def parse(cls, text):
        text = text.strip()
        if not text:
            raise SynthesisError("empty note name")
        letter, rest = text[0].upper(), text[1:]
        if rest in ("", "♮"):
            return cls(letter, "natural")
        if rest in ("♭", "b"):
            return cls(letter, "flat")
        if rest in ("♯", "#"):
            return cls(letter, "sharp")
        raise SynthesisError(f"unparseable note name {text!r}")

    @property
    def text(self):
        return self.letter + _SIGNATURE_MARK[self.signature]

    @property
    def ascii_text(self):
        return self.letter + _SIGNATURE_ASCII[self.signature]

    @property
    def rank(self):
        """Scale degree 0..14; flats below naturals below sharps per letter."""
        return _LETTERS.index(self.letter) * 3 + _SIGNATURES.index(self.signature)

    def __str__(self):
        return self.text


NOTE_ORDER = tuple(
    NoteLabel(letter, sig) for letter in _LETTERS for sig in _SIGNATURES
)


def note_of(label):
    """Note name of a nonidentity two-qubit operator label."""
    return NoteLabel.parse(pauli.dictionary(label).note)


@dataclass(frozen=True)
class Scale:
    """A tonic frequency and 15 ascending rational ratios in [1, 2)."""

    tonic: float
    ratios: tuple

    def __post_init__(self):
        if self.tonic <= 0:
            raise SynthesisError(f"tonic must be positive, got {self.tonic}")
        if len(self.ratios) != 15 or len(set(self.ratios)) != 15:
            raise SynthesisError("a scale needs 15 distinct ratios")
        if list(self.ratios) != sorted(self.ratios):
            raise SynthesisError("scale ratios must ascend")
        if not all(1 <= r < 2 for r in self.ratios):
            raise SynthesisError("scale ratios must lie in [1, 2)")

    @property
    def frequencies(self):
        return tuple(self.tonic * float(r) for r in self.ratios)

    def frequency_of(self, note):
        return self.frequencies[note.rank]


def _is_prime(n):
    if n < 2:
        return False
    return all(n % d for d in range(2, int(math.isqrt(n)) + 1))


def build_cps_scale(primes=DEFAULT_PRIMES, tonic=220.0):
    """Combination-product-set scale from the pairwise products of 6 odd primes.

    Each product is divided by the unique power of two placing it in
    [1, 2); a collision after reduction is an error.
    """
    primes = tuple(primes)
    if len(primes) != 6 or len(set(primes)) != 6:
        raise SynthesisError(f"need 6 distinct primes, got {primes}")
    for p in primes:
        if not _is_prime(p) or p == 2:
            raise SynthesisError(f"{p} is not an odd prime (2 is reserved for the octave)")
    ratios = set()
    for i in range(6):
        for j in range(i + 1, 6):
            r = Fraction(primes[i] * primes[j])
            while r >= 2:
                r /= 2
            while r < 1:
                r *= 2
            if r in ratios:
                raise SynthesisError(f"octave reduction collides at {r} for primes {primes}")
            ratios.add(r)
    return Scale(tonic=float(tonic), ratios=tuple(sorted(ratios)))


def chord_sequence(design, resolution=None, matching=None):
    """Ordered note triples read off a design.

    A resolved size-4 design yields 35 chords: the Sunday class rows
    first, then Monday through Saturday, each class in its display order.
    A size-3 design yields 7 chords, ordered by a day-to-block matching
    when one is given, else by block order; a size-2 design yields its
    single block.
    """
    def notes(block):
        return tuple(note_of(design.assignment[p]) for p in display_order(design, block))

    if design.m == 4:
        if resolution is None:
            raise SynthesisError("a size-4 design needs a resolution for its 35-chord ordering")
        return tuple(
            notes(block) for day in DAY_DISPLAY_ORDER for block in resolution.classes[day]
        )
    if design.m == 3 and matching is not None:
        if set(matching) != {d for d in DAY_DISPLAY_ORDER}:
            raise SynthesisError("day matching must cover all seven days")
        return tuple(notes(matching[day]) for day in DAY_DISPLAY_ORDER)
    if design.m >= 2:
        return tuple(notes(block) for block in design.blocks)
    raise SynthesisError("a single-point design has no chords")


@dataclass(frozen=True)
class WindowParams:
    """Gaussian window width and hop; hop must keep chord onsets apart."""

    hop: float = 0.8
    sigma: float = 0.12
    duration: float | None = None

    def __post_init__(self):
        if self.hop <= 0 or self.sigma <= 0:
            raise SynthesisError("hop and sigma must be positive")
        if self.duration is not None and self.duration <= 0:
            raise SynthesisError("note duration must be positive")
        # the window must fall below 1% of peak by the next-but-one onset
        if math.exp(-2.0 * self.hop**2 / self.sigma**2) >= 0.01:
            raise SynthesisError(
                f"hop {self.hop} s is too short for sigma {self.sigma} s; "
                "chord onsets would not be separable"
            )

    @property
    def span(self):
        """Truncation span of one windowed note, default six sigma."""
        return self.duration if self.duration is not None else 6.0 * self.sigma


@dataclass(frozen=True)
class SynthConfig:
    sample_rate: int = 44100
    bit_depth: int = 16
    channels: int = 1
    note_amplitude: float = 1.0 / 3.0
    peak_ceiling: float = 0.9

    def __post_init__(self):
        if self.sample_rate <= 0:
            raise SynthesisError("sample rate must be positive")
        if self.bit_depth != 16 or self.channels != 1:
            raise SynthesisError("only 16-bit mono output is supported")
        if not 0 < self.peak_ceiling < 1:
            raise SynthesisError("peak ceiling must sit below full scale")
        if self.note_amplitude <= 0:
            raise SynthesisError("per-note amplitude must be positive")


def buffer_length(chord_count, window, config):
    """Closed-form sample count: ceil((count*hop + 6*sigma) * rate)."""
    return math.ceil((chord_count * window.hop + 6.0 * window.sigma) * config.sample_rate)


def _note_frequency(scale, note, pitch_order):
    if pitch_order == "q":
        return scale.frequency_of(note)
    if pitch_order == "o":
        # alternative ordering by the coefficient index used in the
        # commutator table: degree = o-index - 2
        return scale.frequencies[pauli.dictionary(note.text).o_index - 2]
    raise SynthesisError(f"unknown pitch order {pitch_order!r}")


def synthesize(chords, scale, window=None, config=None, pitch_order="q"):
    """Render chords to a float64 sample buffer.

    Chord n is centered at t_n = n*hop + 3*sigma; each note contributes
    amp * exp(-(t - t_n)^2 / (2 sigma^2)) * sin(2 pi f t) over a window
    truncated to the note span.  The buffer is scaled down only if its
    peak exceeds the configured ceiling.
    """
    window = window or WindowParams()
    config = config or SynthConfig()
    chords = [tuple(c) for c in chords]
    if not chords:
        raise SynthesisError("nothing to synthesize: no chords")
    rate = config.sample_rate
    total = buffer_length(len(chords), window, config)
    buf = np.zeros(total, dtype=np.float64)
    half = window.span / 2.0
    for n, chord in enumerate(chords):
        center = n * window.hop + 3.0 * window.sigma
        lo = max(0, math.ceil((center - half) * rate))
        hi = min(total - 1, math.floor((center + half) * rate))
        if lo > hi:
            continue
        t = np.arange(lo, hi + 1, dtype=np.float64) / rate
        envelope = config.note_amplitude * np.exp(-((t - center) ** 2) / (2.0 * window.sigma**2))
        for note in chord:
            freq = _note_frequency(scale, note, pitch_order)
            buf[lo : hi + 1] += envelope * np.sin(2.0 * math.pi * freq * t)
    peak = float(np.max(np.abs(buf))) if total else 0.0
    if peak > config.peak_ceiling:
        buf *= config.peak_ceiling / peak
    return buf


def write_wav(path, buffer, config=None):
    """Write a float buffer as linear PCM: 16-bit signed mono RIFF/WAVE."""
    config = config or SynthConfig()
    samples = np.clip(np.floor(buffer * 32767.0 + 0.5), -32768, 32767).astype("<i2")
    with wave.open(str(path), "wb") as out:
        out.setnchannels(config.channels)
        out.setsampwidth(config.bit_depth // 8)
        out.setframerate(config.sample_rate)
        out.writeframes(samples.tobytes())


def scale_listing(scale):
    """Text listing of the scale: note, exact ratio, frequency in Hz."""
    lines = []
    for note, ratio, hz in zip(NOTE_ORDER, scale.ratios, scale.frequencies):
        lines.append(f"{note.text:<3} {str(ratio):>7}  {hz:9.3f} Hz")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SlotSpectrum:
    index: int
    expected_hz: tuple
    expected_bins: tuple
    peak_bins: tuple
    passed: bool


@dataclass(frozen=True)
class SpectralReport:
    bin_hz: float
    slots: tuple

    @property
    def passed(self):
        return all(s.passed for s in self.slots)

    def text(self):
        lines = [f"bin width {self.bin_hz:.3f} Hz"]
        for s in self.slots:
            mark = "ok  " if s.passed else "FAIL"
            peaks = ", ".join(str(b) for b in s.peak_bins)
            lines.append(f"{mark} slot {s.index:2d}: peaks at bins {peaks}")
        return "\n".join(lines)


def _local_maxima(mag):
    idx = []
    for k in range(1, len(mag) - 1):
        if mag[k] > mag[k - 1] and mag[k] >= mag[k + 1]:
            idx.append(k)
    return idx


def spectral_report(buffer, chords, scale, window=None, config=None, pitch_order="q"):
    """Check each chord slot's spectrum against its expected frequencies.

    The segment around each slot center (plus and minus three sigma) is
    Fourier transformed; the largest local maxima, as many as the chord
    has distinct frequencies, must each sit within one bin of an expected
    frequency.
    """
    window = window or WindowParams()
    config = config or SynthConfig()
    chords = [tuple(c) for c in chords]
    if not chords:
        raise SynthesisError("nothing to analyze: no chords")
    rate = config.sample_rate
    expected_len = buffer_length(len(chords), window, config)
    if len(buffer) != expected_len:
        raise SynthesisError(
            f"buffer length {len(buffer)} does not match these parameters "
            f"(expected {expected_len}); synthesize and analyze with the same settings"
        )
    seg_len = int(round(6.0 * window.sigma * rate))
    bin_hz = rate / seg_len
    slots = []
    for n, chord in enumerate(chords):
        center = n * window.hop + 3.0 * window.sigma
        lo = max(0, int(round((center - 3.0 * window.sigma) * rate)))
        lo = min(lo, len(buffer) - seg_len)
        mag = np.abs(np.fft.rfft(buffer[lo : lo + seg_len]))
        freqs = sorted({_note_frequency(scale, note, pitch_order) for note in chord})
        expected_bins = tuple(f / bin_hz for f in freqs)
        maxima = _local_maxima(mag)
        maxima.sort(key=lambda k: mag[k], reverse=True)
        peak_bins = tuple(sorted(maxima[: len(freqs)]))
        ok = len(peak_bins) == len(freqs) and all(
            abs(k - e) <= 1.0 for k, e in zip(peak_bins, expected_bins)
        )
        slots.append(
            SlotSpectrum(
                index=n,
                expected_hz=tuple(freqs),
                expected_bins=expected_bins,
                peak_bins=peak_bins,
                passed=ok,
            )
        )
    return SpectralReport(bin_hz=bin_hz, slots=tuple(slots))
