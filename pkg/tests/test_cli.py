"""Document round trips and the command-line pipeline."""

import hashlib
import json

import pytest

from kirkman import cli, pauli, resolver, serialize
from kirkman.errors import DocumentError


def sha(path):
    return hashlib.sha256(path.read_bytes()).hexdigest()


class TestDocuments:
    def test_design_round_trip(self, canonical_design, tmp_path):
        path = tmp_path / "design.json"
        serialize.save_document(path, canonical_design)
        loaded, resolution = serialize.load_document(path)
        assert resolution is None
        assert loaded.seeds == canonical_design.seeds
        assert loaded.assignment == canonical_design.assignment
        assert loaded.blocks == canonical_design.blocks
        assert loaded.kinds == canonical_design.kinds

    def test_resolution_round_trip(self, canonical_design, lex_resolution, tmp_path):
        path = tmp_path / "resolved.json"
        serialize.save_document(path, canonical_design, lex_resolution)
        loaded, resolution = serialize.load_document(path)
        assert resolution is not None
        assert resolution.classes == lex_resolution.classes
        assert resolution.matching == lex_resolution.matching

    def test_serialization_is_stable(self, canonical_design, lex_resolution):
        a = serialize.to_json(serialize.design_to_doc(canonical_design, lex_resolution))
        b = serialize.to_json(serialize.design_to_doc(canonical_design, lex_resolution))
        assert a == b
        assert a.endswith("\n")

    def test_days_serialize_in_display_order(self, canonical_design, lex_resolution):
        doc = serialize.design_to_doc(canonical_design, lex_resolution)
        assert [d["name"] for d in doc["days"]] == ["SUN", "MON", "TU", "WED", "TH", "FRI", "SAT"]

    def test_tampered_color_is_rejected(self, canonical_design, tmp_path):
        path = tmp_path / "design.json"
        serialize.save_document(path, canonical_design)
        doc = json.loads(path.read_text())
        doc["points"][0]["color"] = "G4"
        path.write_text(json.dumps(doc))
        with pytest.raises(DocumentError):
            serialize.load_document(path)

    def test_tampered_kind_is_rejected(self, canonical_design, tmp_path):
        path = tmp_path / "design.json"
        serialize.save_document(path, canonical_design)
        doc = json.loads(path.read_text())
        doc["kinds"][0] = "cyclic" if doc["kinds"][0] == "commuting" else "commuting"
        path.write_text(json.dumps(doc))
        with pytest.raises(DocumentError):
            serialize.load_document(path)

    def test_tampered_day_is_rejected(self, canonical_design, lex_resolution, tmp_path):
        path = tmp_path / "resolved.json"
        serialize.save_document(path, canonical_design, lex_resolution)
        doc = json.loads(path.read_text())
        doc["days"][0]["blocks"] = doc["days"][0]["blocks"][:4] + doc["days"][1]["blocks"][:1]
        path.write_text(json.dumps(doc))
        with pytest.raises(DocumentError):
            serialize.load_document(path)

    def test_unknown_format_rejected(self, canonical_design, tmp_path):
        path = tmp_path / "design.json"
        serialize.save_document(path, canonical_design)
        doc = json.loads(path.read_text())
        doc["format"] = "something-else"
        path.write_text(json.dumps(doc))
        with pytest.raises(DocumentError):
            serialize.load_document(path)

    def test_malformed_json_rejected(self, tmp_path):
        path = tmp_path / "design.json"
        path.write_text("{not json")
        with pytest.raises(DocumentError):
            serialize.load_document(path)


class TestCli:
    def run(self, *argv):
        return cli.main(list(argv))

    def test_generate_resolve_render_pipeline(self, tmp_path, capsys):
        design = tmp_path / "design.json"
        resolved = tmp_path / "resolved.json"
        assert self.run("generate", "--out", str(design)) == 0
        out = capsys.readouterr().out
        assert "D(15,3,1)|Q12,Q10,Q4,Q11>" in out
        assert "v=15 b=35 r=7 k=3 lambda=1" in out
        assert "15 commuting, 20 cyclic" in out

        assert self.run("resolve", str(design), "--out", str(resolved)) == 0
        grid = capsys.readouterr().out
        assert "SUN 111" in grid and "SAT 110" in grid
        assert grid.count("|") == 36  # 6 column separators, header + 5 rows

        svg = tmp_path / "week.svg"
        assert self.run("render", str(resolved), "--kind", "color-tiling", "--out", str(svg)) == 0
        capsys.readouterr()
        assert svg.read_text().count('class="tile"') == 105

        wav = tmp_path / "week.wav"
        assert self.run("render", str(resolved), "--kind", "audio", "--out", str(wav)) == 0
        capsys.readouterr()
        assert wav.stat().st_size > 2_000_000

        assert self.run("verify", str(resolved)) == 0
        assert "verification passed" in capsys.readouterr().out

    def test_generate_to_stdout(self, capsys):
        assert self.run("generate", "--seeds", "Q10,Q4,Q11") == 0
        out = capsys.readouterr().out
        doc = json.loads(out)
        assert doc["m"] == 3 and len(doc["blocks"]) == 7

    def test_repeated_renders_hash_identically(self, tmp_path, capsys):
        design = tmp_path / "design.json"
        self.run("generate", "--seeds", "Q10,Q4,Q11", "--out", str(design))
        a = tmp_path / "a.svg"
        b = tmp_path / "b.svg"
        w1 = tmp_path / "a.wav"
        w2 = tmp_path / "b.wav"
        self.run("render", str(design), "--kind", "diagram", "--out", str(a))
        self.run("render", str(design), "--kind", "diagram", "--out", str(b))
        self.run("render", str(design), "--kind", "audio", "--out", str(w1))
        self.run("render", str(design), "--kind", "audio", "--out", str(w2))
        capsys.readouterr()
        assert sha(a) == sha(b)
        assert sha(w1) == sha(w2)

    def test_resolve_matching_presets_differ(self, tmp_path, capsys):
        design = tmp_path / "design.json"
        lex_doc = tmp_path / "lex.json"
        ref_doc = tmp_path / "ref.json"
        self.run("generate", "--out", str(design))
        self.run("resolve", str(design), "--out", str(lex_doc))
        self.run("resolve", str(design), "--matching", "table4", "--out", str(ref_doc))
        capsys.readouterr()
        assert sha(lex_doc) != sha(ref_doc)
        _, res = serialize.load_document(ref_doc)
        assert res.matching == resolver.reference_matching(
            serialize.load_document(design)[0]
        )

    def test_dependent_seeds_exit_one(self, capsys):
        assert self.run("generate", "--seeds", "Q1,Q2,Q3") == 1
        assert "GF(2)-dependent" in capsys.readouterr().err

    def test_resolve_fano_exit_one(self, tmp_path, capsys):
        design = tmp_path / "fano.json"
        self.run("generate", "--seeds", "Q10,Q4,Q11", "--out", str(design))
        assert self.run("resolve", str(design)) == 1
        assert "not a Kirkman-resolvable size" in capsys.readouterr().err

    def test_audio_without_out_exit_one(self, tmp_path, capsys):
        design = tmp_path / "fano.json"
        self.run("generate", "--seeds", "Q10,Q4,Q11", "--out", str(design))
        assert self.run("render", str(design), "--kind", "audio") == 1
        capsys.readouterr()

    def test_usage_error_exit_two(self, capsys):
        with pytest.raises(SystemExit) as err:
            self.run("render", "x.json", "--kind", "bogus")
        assert err.value.code == 2
        capsys.readouterr()

    def test_verify_tampered_document_exit_one(self, tmp_path, capsys):
        design = tmp_path / "design.json"
        self.run("generate", "--out", str(design))
        doc = json.loads(design.read_text())
        doc["points"][3]["note"] = "C"
        design.write_text(json.dumps(doc))
        assert self.run("verify", str(design)) == 1
        capsys.readouterr()

    def test_tables_dictionary(self, capsys):
        assert self.run("tables", "--dictionary") == 0
        out = capsys.readouterr().out
        assert "Q12 | [1100] | O5 | σx/2 | -γ5/2 | G2 | D♯" in out
        assert len(out.strip().split("\n")) == 15

    def test_tables_commutators(self, capsys):
        assert self.run("tables", "--commutators") == 0
        out = capsys.readouterr().out.strip().split("\n")
        header = out[0].split()
        row2 = out[1].split()
        assert row2[0] == "O2"
        col = header.index("O5")
        assert row2[1 + col] == "iO6"

    def test_dictionary_lookup(self, capsys):
        assert self.run("dictionary", "D#") == 0
        assert "Q12" in capsys.readouterr().out
        assert self.run("dictionary", "Q99") == 1
        capsys.readouterr()

    def test_custom_synthesis_flags(self, tmp_path, capsys):
        design = tmp_path / "fano.json"
        wav = tmp_path / "fast.wav"
        self.run("generate", "--seeds", "Q10,Q4,Q11", "--out", str(design))
        code = self.run(
            "render", str(design), "--kind", "audio",
            "--tonic", "330", "--hop", "0.5", "--sigma", "0.1",
            "--sample-rate", "22050", "--out", str(wav),
        )
        capsys.readouterr()
        assert code == 0
        import wave

        with wave.open(str(wav)) as fh:
            assert fh.getframerate() == 22050

    def test_seed_echo_matches_dictionary(self, capsys):
        # default seeds are the worked example of the operator dictionary
        assert cli.DEFAULT_SEEDS == "Q12,Q10,Q4,Q11"
        assert [pauli.q_label(q).q_index for q in (12, 10, 4, 11)] == [12, 10, 4, 11]
