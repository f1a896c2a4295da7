"""Scale construction, chord sequences, synthesis, spectra."""

import math
import wave
from fractions import Fraction

import numpy as np
import pytest

from kirkman import audio, designs, pauli, resolver
from kirkman.errors import KirkmanError, SynthesisError


@pytest.fixture(scope="module")
def scale():
    return audio.build_cps_scale()


class TestNoteLabel:
    def test_parse_variants(self):
        assert audio.NoteLabel.parse("D♯") == audio.NoteLabel("D", "sharp")
        assert audio.NoteLabel.parse("D#") == audio.NoteLabel("D", "sharp")
        assert audio.NoteLabel.parse("Bb") == audio.NoteLabel("B", "flat")
        assert audio.NoteLabel.parse("E") == audio.NoteLabel("E", "natural")

    def test_text_forms(self):
        n = audio.NoteLabel("A", "flat")
        assert (n.text, n.ascii_text) == ("A♭", "Ab")

    def test_rank_order(self):
        assert [n.rank for n in audio.NOTE_ORDER] == list(range(15))
        assert audio.NOTE_ORDER[0].text == "A♭"
        assert audio.NOTE_ORDER[14].text == "E♯"

    def test_rejects_garbage(self):
        for bad in ("F", "Dx", "", "A♭♭"):
            with pytest.raises(SynthesisError):
                audio.NoteLabel.parse(bad)

    def test_note_of_tracks_the_dictionary(self):
        assert audio.note_of(pauli.q_label(1)).text == "A♭"
        assert audio.note_of(pauli.q_label(12)).text == "D♯"
        assert audio.note_of(pauli.q_label(15)).text == "E♯"

    def test_note_of_rejects_identity(self):
        with pytest.raises(KirkmanError):
            audio.note_of(pauli.PauliLabel(0, 4))


class TestScale:
    def test_default_scale_shape(self, scale):
        assert len(scale.ratios) == 15
        assert len(set(scale.ratios)) == 15
        assert list(scale.ratios) == sorted(scale.ratios)
        assert all(1 <= r < 2 for r in scale.ratios)
        assert all(isinstance(r, Fraction) for r in scale.ratios)

    def test_known_ratios_present(self, scale):
        assert Fraction(33, 32) in scale.ratios
        assert Fraction(15, 8) in scale.ratios
        assert scale.ratios[0] == Fraction(65, 64)

    def test_frequencies(self, scale):
        assert scale.tonic == 220.0
        assert scale.frequencies[0] == pytest.approx(220.0 * 65 / 64)
        assert scale.frequency_of(audio.NoteLabel.parse("E♯")) == pytest.approx(220.0 * 15 / 8)

    def test_rejects_bad_prime_sets(self):
        with pytest.raises(SynthesisError):
            audio.build_cps_scale(primes=(3, 5, 7, 11, 13))
        with pytest.raises(SynthesisError):
            audio.build_cps_scale(primes=(3, 5, 7, 11, 13, 13))
        with pytest.raises(SynthesisError):
            audio.build_cps_scale(primes=(3, 5, 7, 11, 13, 9))
        with pytest.raises(SynthesisError):
            audio.build_cps_scale(primes=(2, 5, 7, 11, 13, 17))
        with pytest.raises(SynthesisError):
            audio.build_cps_scale(tonic=0.0)


class TestChordSequence:
    def test_week_sequence(self, canonical_design, lex_resolution):
        chords = audio.chord_sequence(canonical_design, lex_resolution)
        assert len(chords) == 35
        counts = {}
        pairs = set()
        for chord in chords:
            assert len(chord) == 3
            for n in chord:
                counts[n.text] = counts.get(n.text, 0) + 1
            for a in chord:
                for b in chord:
                    if a.text < b.text:
                        assert (a.text, b.text) not in pairs
                        pairs.add((a.text, b.text))
        assert set(counts.values()) == {7}
        assert len(counts) == 15

    def test_needs_resolution_for_full_design(self, canonical_design):
        with pytest.raises(SynthesisError):
            audio.chord_sequence(canonical_design)

    def test_fano_sequence_default_is_block_order(self, fano_design):
        chords = audio.chord_sequence(fano_design)
        assert len(chords) == 7
        want = [
            tuple(
                audio.note_of(fano_design.assignment[p])
                for p in designs.display_order(fano_design, blk)
            )
            for blk in fano_design.blocks
        ]
        assert list(chords) == want

    def test_fano_sequence_with_matching(self, fano_design):
        matching = resolver.match_days(fano_design)
        chords = audio.chord_sequence(fano_design, matching=matching)
        assert len(chords) == 7
        # first chord belongs to Sunday's line
        sun = matching[resolver.DayLabel.from_name("SUN")]
        assert chords[0] == tuple(
            audio.note_of(fano_design.assignment[p])
            for p in designs.display_order(fano_design, sun)
        )

    def test_center_median_chord(self, fano_design):
        p = designs.Point.from_bits
        median = designs.Block.of(p("001"), p("110"), p("111"))
        chord = {
            audio.note_of(fano_design.assignment[q]).text
            for q in designs.display_order(fano_design, median)
        }
        assert chord == {"B", "D", "E"}

    def test_nesting(self, canonical_design, fano_design, lex_resolution):
        seq35 = audio.chord_sequence(canonical_design, lex_resolution)
        seq7 = audio.chord_sequence(fano_design, matching=resolver.match_days(fano_design))
        assert [seq35[5 * k] for k in range(7)] == list(seq7)

    def test_pair_design_single_chord(self):
        d = designs.expand_seeds((pauli.q_label(12), pauli.q_label(10)))
        chords = audio.chord_sequence(d)
        assert len(chords) == 1 and len(chords[0]) == 3

    def test_single_point_design_has_no_chords(self):
        d = designs.expand_seeds((pauli.q_label(7),))
        with pytest.raises(SynthesisError):
            audio.chord_sequence(d)


class TestWindowAndConfig:
    def test_defaults(self):
        w = audio.WindowParams()
        assert (w.hop, w.sigma) == (0.8, 0.12)
        assert w.span == pytest.approx(0.72)

    def test_separability_guard(self):
        with pytest.raises(SynthesisError):
            audio.WindowParams(hop=0.1, sigma=0.12)
        with pytest.raises(SynthesisError):
            audio.WindowParams(hop=-1.0)
        # comfortably separable
        audio.WindowParams(hop=0.5, sigma=0.12)

    def test_config_invariants(self):
        with pytest.raises(SynthesisError):
            audio.SynthConfig(peak_ceiling=1.0)
        with pytest.raises(SynthesisError):
            audio.SynthConfig(bit_depth=24)
        with pytest.raises(SynthesisError):
            audio.SynthConfig(channels=2)
        with pytest.raises(SynthesisError):
            audio.SynthConfig(sample_rate=0)


class TestSynthesis:
    def test_buffer_length_closed_form(self, canonical_design, lex_resolution, scale):
        chords = audio.chord_sequence(canonical_design, lex_resolution)
        buf = audio.synthesize(chords, scale)
        want = math.ceil((35 * 0.8 + 6 * 0.12) * 44100)
        assert len(buf) == want
        assert abs(len(buf) - 28.72 * 44100) <= 1

    def test_peak_ceiling(self, canonical_design, lex_resolution, scale):
        chords = audio.chord_sequence(canonical_design, lex_resolution)
        buf = audio.synthesize(chords, scale)
        assert float(np.max(np.abs(buf))) <= 0.9 + 1e-12

    def test_determinism(self, fano_design, scale):
        chords = audio.chord_sequence(fano_design)
        a = audio.synthesize(chords, scale)
        b = audio.synthesize(chords, scale)
        assert np.array_equal(a, b)

    def test_rejects_empty(self, scale):
        with pytest.raises(SynthesisError):
            audio.synthesize([], scale)

    def test_single_chord_energy_concentration(self, fano_design, scale):
        chords = [audio.chord_sequence(fano_design)[0]]
        buf = audio.synthesize(chords, scale)
        rate = 44100
        edge = int(round(6 * 0.12 * rate))
        inside = float(np.sum(buf[:edge] ** 2))
        total = float(np.sum(buf**2))
        assert inside >= 0.99 * total

    def test_o_pitch_order_differs(self, scale):
        # B-flat is fourth by coordinate but lowest by table row
        note = audio.NoteLabel.parse("B♭")
        q_hz = audio.synthesize([(note,)], scale, pitch_order="q")
        o_hz = audio.synthesize([(note,)], scale, pitch_order="o")
        assert not np.array_equal(q_hz, o_hz)
        with pytest.raises(SynthesisError):
            audio.synthesize([(note,)], scale, pitch_order="x")

    def test_wav_round_trip(self, fano_design, scale, tmp_path):
        chords = audio.chord_sequence(fano_design)
        buf = audio.synthesize(chords, scale)
        out = tmp_path / "fano.wav"
        audio.write_wav(out, buf)
        with wave.open(str(out)) as wav:
            assert wav.getnchannels() == 1
            assert wav.getsampwidth() == 2
            assert wav.getframerate() == 44100
            assert wav.getnframes() == len(buf)
        # half-up quantization
        audio.write_wav(out, np.array([0.5, -0.5, 0.0]))
        with wave.open(str(out)) as wav:
            raw = np.frombuffer(wav.readframes(3), dtype="<i2")
        assert list(raw) == [16384, -16383, 0]

    def test_scale_listing(self, scale):
        listing = audio.scale_listing(scale)
        lines = listing.strip().split("\n")
        assert len(lines) == 15
        assert lines[0].startswith("A♭") and "65/64" in lines[0]
        assert lines[-1].startswith("E♯") and "15/8" in lines[-1]


class TestSpectralReport:
    def test_week_all_slots_pass(self, canonical_design, lex_resolution, scale):
        chords = audio.chord_sequence(canonical_design, lex_resolution)
        buf = audio.synthesize(chords, scale)
        report = audio.spectral_report(buf, chords, scale)
        assert len(report.slots) == 35
        assert report.passed, report.text()

    def test_fano_all_slots_pass(self, fano_design, scale):
        chords = audio.chord_sequence(fano_design)
        buf = audio.synthesize(chords, scale)
        report = audio.spectral_report(buf, chords, scale)
        assert len(report.slots) == 7
        assert report.passed, report.text()

    def test_detuned_slot_fails(self, fano_design, scale):
        chords = audio.chord_sequence(fano_design)
        buf = audio.synthesize(chords, scale).copy()
        window = audio.WindowParams()
        rate = 44100
        center = 3 * window.hop + 3 * window.sigma
        lo = int(round((center - 3 * window.sigma) * rate))
        n = int(round(6 * window.sigma * rate))
        t = np.arange(lo, lo + n) / rate
        buf[lo : lo + n] = (
            0.3 * np.exp(-((t - center) ** 2) / (2 * window.sigma**2)) * np.sin(2 * math.pi * 500.0 * t)
        )
        report = audio.spectral_report(buf, chords, scale)
        failed = [s.index for s in report.slots if not s.passed]
        assert failed == [3]

    def test_single_note_dominant_peak(self, scale):
        chords = [(audio.NoteLabel.parse("B"),)]
        buf = audio.synthesize(chords, scale)
        report = audio.spectral_report(buf, chords, scale)
        slot = report.slots[0]
        assert len(slot.peak_bins) == 1
        assert slot.passed

    def test_parameter_mismatch_rejected(self, fano_design, scale):
        chords = audio.chord_sequence(fano_design)
        buf = audio.synthesize(chords, scale)
        with pytest.raises(SynthesisError):
            audio.spectral_report(buf[:-10], chords, scale)
        with pytest.raises(SynthesisError):
            audio.spectral_report(buf, chords[:-1], scale)
