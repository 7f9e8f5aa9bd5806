import json
import shutil
from pathlib import Path

import pytest

from hyperfuzzy import cli
from hyperfuzzy import dfuzzy as df
from hyperfuzzy import hypnum as hn
from hyperfuzzy.hypnum import Hyp

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def pair_doc(tmp_path):
    p = tmp_path / "pair.json"
    shutil.copy(SAMPLES / "separation_pair.json", p)
    return p


@pytest.fixture
def example_doc(tmp_path):
    p = tmp_path / "example1.json"
    shutil.copy(SAMPLES / "example1.json", p)
    return p


def write_doc(path, data):
    path.write_text(json.dumps(data))
    return path


BASE = {
    "version": 1,
    "universe": {"dim": 1, "points": [[0], [1], [2]]},
    "sets": {},
}


class TestDocument:
    def test_standard_entries_convert_on_load(self, example_doc):
        doc = cli.load(example_doc)
        assert hn.isclose(doc.sets["A"][3], Hyp(0.06, 0.07))
        assert hn.render(doc.sets["A"][3]) == "0.06e1+0.07e2"

    def test_round_trip(self, example_doc, tmp_path):
        doc = cli.load(example_doc)
        out = tmp_path / "again.json"
        cli.save(doc, out)
        again = cli.load(out)
        assert cli.dumps(again) == cli.dumps(doc)
        assert again.universe == doc.universe

    def test_out_of_range_entry(self, tmp_path):
        data = dict(BASE, sets={"A": {"values": [{"e1": 0, "e2": 0}, {"e1": 1.2, "e2": 0.5}, 0]}})
        with pytest.raises(cli.DocumentError, match=r"set 'A', point 1"):
            cli.load(write_doc(tmp_path / "d.json", data))

    def test_duplicate_points(self, tmp_path):
        data = dict(BASE, universe={"dim": 1, "points": [[0], [0]]})
        with pytest.raises(cli.DocumentError, match="duplicate"):
            cli.load(write_doc(tmp_path / "d.json", data))

    def test_parse_error_position(self, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text('{\n  "version": 1,\n  "universe": oops\n}')
        with pytest.raises(cli.DocumentError, match="line 3, column 15"):
            cli.load(p)

    def test_version_required(self, tmp_path):
        data = dict(BASE)
        del data["version"]
        with pytest.raises(cli.DocumentError, match="version"):
            cli.load(write_doc(tmp_path / "d.json", data))

    def test_bad_entry_shape(self, tmp_path):
        data = dict(BASE, sets={"A": {"values": [{"e1": 0}, 0, 0]}})
        with pytest.raises(cli.DocumentError, match="point 0"):
            cli.load(write_doc(tmp_path / "d.json", data))


class TestOp:
    def test_de_morgan_pipeline(self, capsys, pair_doc):
        assert run(capsys, "op", "union", "A", "B", "--out", "C", "-f", str(pair_doc))[0] == 0
        assert run(capsys, "op", "complement", "C", "--out", "notC", "-f", str(pair_doc))[0] == 0
        assert run(capsys, "op", "complement", "A", "--out", "A'", "-f", str(pair_doc))[0] == 0
        assert run(capsys, "op", "complement", "B", "--out", "B'", "-f", str(pair_doc))[0] == 0
        assert run(capsys, "op", "intersection", "A'", "B'", "--out", "D", "-f", str(pair_doc))[0] == 0
        doc = cli.load(pair_doc)
        assert df.equals(doc.sets["notC"], doc.sets["D"])

    def test_report_flags_lattice_extension(self, capsys, tmp_path):
        data = dict(BASE, sets={"A": {"values": ["0.3e1+0.6e2", 0, 0]}, "B": {"values": ["0.5e1+0.4e2", 0, 0]}})
        p = write_doc(tmp_path / "d.json", data)
        code, out, _ = run(capsys, "op", "union", "A", "B", "--out", "C", "-f", str(p), "--format", "structured")
        rep = json.loads(out)
        assert code == 0 and rep["lattice_extension"] is True and rep["incomparable_at"] == [0]
        assert rep["values"][0] == "0.5e1+0.6e2"
        code, _, err = run(capsys, "op", "union", "A", "B", "--mode", "strict", "-f", str(p))
        assert code == cli.EXIT_VALIDATION and "point 0" in err

    def test_sum_guard(self, capsys, tmp_path):
        data = dict(BASE, sets={"A": {"values": [0, 0.7, 0]}, "B": {"values": [0, 0.6, 0]}})
        p = write_doc(tmp_path / "d.json", data)
        code, _, err = run(capsys, "op", "algebraic_sum", "A", "B", "-f", str(p))
        assert code == cli.EXIT_VALIDATION
        assert "point 1" in err and "provided the sum" in err

    def test_cartesian_across_documents(self, capsys, pair_doc, tmp_path):
        other = write_doc(tmp_path / "y.json", dict(BASE, sets={"Y": {"values": [1, 0.5, 0]}}))
        out = tmp_path / "prod.json"
        code, _, _ = run(capsys, "op", "cartesian", "A", "Y", "-f", str(pair_doc), "--other", str(other),
                         "--out", "P", "--save", str(out))
        assert code == 0
        doc = cli.load(out)
        assert doc.universe.dim == 2 and len(doc.universe) == 15
        assert doc.sets["P"][1] == Hyp(0.2, 0.2)

    def test_cartesian_needs_save(self, capsys, pair_doc):
        assert run(capsys, "op", "cartesian", "A", "B", "-f", str(pair_doc))[0] == cli.EXIT_USAGE

    def test_unknown_op_and_set(self, capsys, pair_doc):
        assert run(capsys, "op", "xor", "A", "B", "-f", str(pair_doc))[0] == cli.EXIT_USAGE
        assert run(capsys, "op", "union", "A", "Z", "-f", str(pair_doc))[0] == cli.EXIT_USAGE
        assert run(capsys, "op", "union", "A", "-f", str(pair_doc))[0] == cli.EXIT_USAGE


class TestAnalyze:
    def test_separate(self, capsys, pair_doc):
        code, out, _ = run(capsys, "analyze", "separate", "A", "B", "-f", str(pair_doc))
        assert code == 0
        assert "D: 0.5e1+0.5e2" in out and "M: 0.5e1+0.5e2" in out and "theorem_check: PASS" in out

    def test_convexity_witness(self, capsys, pair_doc):
        code, out, _ = run(capsys, "analyze", "convexity", "W", "-f", str(pair_doc), "--format", "structured")
        rep = json.loads(out)
        assert code == 0 and rep["convex"] is False
        assert rep["witness"]["x1"]["coords"] == [0.0]
        assert rep["witness"]["x"]["coords"] == [1.0]
        assert rep["definitions_agree"] is True

    def test_core(self, capsys, pair_doc):
        code, out, _ = run(capsys, "analyze", "core", "P", "-f", str(pair_doc), "--format", "structured")
        rep = json.loads(out)
        assert [c["index"] for c in rep["core"]] == [1, 2]
        assert rep["M"] == "0.7e1+0.7e2" and rep["core_convex"] is True

    def test_empty_epsilon_core_flagged(self, capsys, tmp_path):
        data = {"version": 1, "universe": {"points": [[0], [1]]},
                "sets": {"A": {"values": ["0.8e1+0.1e2", "0.1e1+0.9e2"]}}}
        p = write_doc(tmp_path / "d.json", data)
        code, out, _ = run(capsys, "analyze", "core", "A", "-f", str(p), "--epsilon", "0.05e1+0.05e2",
                           "--format", "structured")
        rep = json.loads(out)
        assert code == 0 and rep["attained"] is False and rep["empty_epsilon_core"] is True

    def test_bounded(self, capsys, pair_doc):
        code, out, _ = run(capsys, "analyze", "bounded", "A", "-f", str(pair_doc), "--format", "structured")
        rep = json.loads(out)
        assert rep["bounded"] is True
        assert rep["radii"][-1] == {"alpha": "0.8e1+0.8e2", "R": "1e1+1e2"}

    def test_shadow(self, capsys, tmp_path):
        data = {"version": 1, "universe": {"dim": 2, "points": [[0, 0], [0, 1], [1, 0], [1, 1]]},
                "sets": {"A": {"values": [0.1, 0.3, 0.4, 0.2]}, "B": {"values": [0.1, 0.3, 0.4, 0.5]}}}
        p = write_doc(tmp_path / "d.json", data)
        code, out, _ = run(capsys, "analyze", "shadow", "A", "B", "--axis", "0", "-f", str(p),
                           "--format", "structured")
        rep = json.loads(out)
        assert [s["value"] for s in rep["shadow"]] == ["0.4e1+0.4e2", "0.3e1+0.3e2"]
        assert rep["comparison"] == {"verdict": "differ", "axis": 0}

    def test_structured_and_text_carry_same_content(self, capsys, pair_doc):
        _, text, _ = run(capsys, "analyze", "separate", "A", "B", "-f", str(pair_doc))
        _, js, _ = run(capsys, "analyze", "separate", "A", "B", "-f", str(pair_doc), "--format", "structured")
        assert cli.render_text(json.loads(js)) == text


class TestProps:
    def test_deterministic(self, capsys):
        first = run(capsys, "props", "demorgan", "--seed", "1", "--trials", "10")
        second = run(capsys, "props", "demorgan", "--seed", "1", "--trials", "10")
        assert first == second and first[0] == 0

    def test_unknown_suite(self, capsys):
        assert run(capsys, "props", "nope")[0] == cli.EXIT_USAGE

    def test_failure_exit_code(self, capsys, monkeypatch):
        from hyperfuzzy import testkit

        def broken(seed, trials):
            r = testkit.SuiteResult("broken", trials=1)
            r.fail("always")
            return r

        monkeypatch.setitem(testkit.SUITES, "broken", broken)
        code, out, _ = run(capsys, "props", "broken")
        assert code == cli.EXIT_PROPERTY and "FAIL" in out


class TestConvertAndEval:
    def test_convert_values(self, capsys):
        code, out, _ = run(capsys, "convert", "0.3e1+0.7e2", "0.5+(-0.2)k", "--format", "structured")
        rows = json.loads(out)["values"]
        assert rows[0]["standard"] == "0.5+(-0.2)k" and rows[1]["idempotent"] == "0.3e1+0.7e2"

    def test_convert_document_both_ways(self, capsys, example_doc, tmp_path):
        std = tmp_path / "std.json"
        back = tmp_path / "back.json"
        assert run(capsys, "convert", "-f", str(example_doc), "--to", "standard", "--save", str(std))[0] == 0
        assert '"a1"' in std.read_text()
        assert run(capsys, "convert", "-f", str(std), "--to", "idempotent", "--save", str(back))[0] == 0
        assert cli.dumps(cli.load(back)) == cli.dumps(cli.load(example_doc))

    def test_eval(self, capsys, example_doc):
        code, out, _ = run(capsys, "eval", "A", "--at", "2", "-f", str(example_doc))
        assert code == 0 and "5e1+2e2" in out and "0.06e1+0.04e2" in out

    def test_usage_errors_exit_1(self, capsys):
        assert run(capsys, "eval")[0] == cli.EXIT_USAGE
        assert run(capsys, "frobnicate")[0] == cli.EXIT_USAGE
        assert run(capsys, "props", "--trials", "many")[0] == cli.EXIT_USAGE

    def test_missing_file_is_validation_error(self, capsys, tmp_path):
        assert run(capsys, "eval", "-f", str(tmp_path / "none.json"))[0] == cli.EXIT_VALIDATION
