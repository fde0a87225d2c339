import csv
import io
import json

import pytest
from click.testing import CliRunner

from conftest import MINCUT_DEMO_TEXT, COUNTEREXAMPLE_6X3
from factorid.cli import main

COUNTEREXAMPLE_TEXT = "\n".join(" ".join(str(v) for v in row) for row in COUNTEREXAMPLE_6X3) + "\n"

DELETION_DEMO_TEXT = """\
1 1 1
1 1 0
1 0 1
0 0 1
1 0 0
0 1 0
1 1 0
1 0 0
"""


@pytest.fixture
def runner():
    return CliRunner()


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


class TestCheck:
    def test_holding_pattern(self, runner, tmp_path):
        path = write(tmp_path, "demo.txt", MINCUT_DEMO_TEXT)
        result = runner.invoke(main, ["check", "--input", path, "--s", "1"])
        assert result.exit_code == 0
        assert "21" in result.output

    def test_json_output(self, runner, tmp_path):
        path = write(tmp_path, "demo.txt", MINCUT_DEMO_TEXT)
        result = runner.invoke(main, ["check", "--input", path, "--json"])
        assert result.exit_code == 0
        payload = json.loads(result.output)
        assert payload["holds"] is True
        assert payload["mwvc_weight"] == 21
        assert payload["effective_r"] == 3
        assert payload["sufficient_only"] is True
        assert payload["witness"] is None

    def test_failing_pattern(self, runner, tmp_path):
        path = write(tmp_path, "counterexample.txt", COUNTEREXAMPLE_TEXT)
        result = runner.invoke(main, ["check", "--input", path, "--s", "1"])
        assert result.exit_code == 1
        assert "u1,u2,u3" in result.output

    def test_failing_pattern_json_witness(self, runner, tmp_path):
        path = write(tmp_path, "counterexample.txt", COUNTEREXAMPLE_TEXT)
        result = runner.invoke(main, ["check", "--input", path, "--json"])
        assert result.exit_code == 1
        payload = json.loads(result.output)
        assert payload["holds"] is False
        assert payload["witness"]["columns"] == [0, 1, 2]
        assert payload["witness"]["nonzero_rows"] == 6
        assert payload["mwvc_weight"] == 18

    def test_parse_error_exits_2(self, runner, tmp_path):
        path = write(tmp_path, "ragged.txt", "1 0\n0 1 1\n")
        result = runner.invoke(main, ["check", "--input", path])
        assert result.exit_code == 2

    def test_missing_file_exits_2(self, runner, tmp_path):
        result = runner.invoke(main, ["check", "--input", str(tmp_path / "nope.txt")])
        assert result.exit_code == 2

    def test_jsonl_format(self, runner, tmp_path):
        path = write(tmp_path, "draw.jsonl", '{"id": 1, "delta": [[1],[1],[1]]}\n')
        result = runner.invoke(main, ["check", "--input", path, "--format", "jsonl", "--json"])
        assert result.exit_code == 0
        assert json.loads(result.output)["holds"] is True

    def test_s2_deletion_demo(self, runner, tmp_path):
        path = write(tmp_path, "deletion.txt", DELETION_DEMO_TEXT)
        result = runner.invoke(main, ["check", "--input", path, "--s", "2"])
        assert result.exit_code == 1
        assert "u3" in result.output

    def test_s2_infeasible_dimensions(self, runner, tmp_path):
        path = write(tmp_path, "demo.txt", MINCUT_DEMO_TEXT)
        result = runner.invoke(main, ["check", "--input", path, "--s", "3"])
        assert result.exit_code == 1
        assert "FAILS" in result.output

    def test_s0(self, runner, tmp_path):
        path = write(tmp_path, "deletion.txt", DELETION_DEMO_TEXT)
        result = runner.invoke(main, ["check", "--input", path, "--s", "0", "--json"])
        assert result.exit_code == 0

    def test_degenerate(self, runner, tmp_path):
        path = write(tmp_path, "zero.txt", "0 0\n0 0\n")
        result = runner.invoke(main, ["check", "--input", path, "--json"])
        assert result.exit_code == 0
        payload = json.loads(result.output)
        assert payload["degenerate"] is True and payload["holds"] is True


class TestWitness:
    def test_deletion_demo(self, runner, tmp_path):
        path = write(tmp_path, "deletion.txt", DELETION_DEMO_TEXT)
        result = runner.invoke(main, ["witness", "--input", path, "--delete", "v1,v6"])
        assert result.exit_code == 0
        assert "group A rows:" in result.output
        assert "group B rows:" in result.output
        assert "u1*" in result.output

    def test_numeric_labels(self, runner, tmp_path):
        path = write(tmp_path, "deletion.txt", DELETION_DEMO_TEXT)
        result = runner.invoke(main, ["witness", "--input", path, "--delete", "1,6"])
        assert result.exit_code == 0

    def test_no_decomposition(self, runner, tmp_path):
        path = write(tmp_path, "identity.txt", "1 0 0\n0 1 0\n0 0 1\n")
        result = runner.invoke(main, ["witness", "--input", path])
        assert result.exit_code == 1
        assert "no decomposition" in result.output

    def test_bad_row_label(self, runner, tmp_path):
        path = write(tmp_path, "deletion.txt", DELETION_DEMO_TEXT)
        result = runner.invoke(main, ["witness", "--input", path, "--delete", "v99"])
        assert result.exit_code == 2
        result = runner.invoke(main, ["witness", "--input", path, "--delete", "vx"])
        assert result.exit_code == 2


STREAM = (
    json.dumps({"id": "dense_demo", "delta": [list(r) for r in
        [[1,0,0],[0,1,0],[1,1,0],[1,0,1],[1,1,1],[0,0,1],[0,1,1],[0,1,0]]]}) + "\n"
    + json.dumps({"id": "staircase", "delta": COUNTEREXAMPLE_6X3}) + "\n"
    + json.dumps({"id": "empty", "delta": [[0, 0], [0, 0]]}) + "\n"
)


class TestFilter:
    def test_three_draw_stream(self, runner, tmp_path):
        inp = write(tmp_path, "in.jsonl", STREAM)
        out = str(tmp_path / "out.jsonl")
        summary = str(tmp_path / "summary.json")
        result = runner.invoke(
            main, ["filter", "--input", inp, "--output", out, "--summary", summary]
        )
        assert result.exit_code == 0
        records = [json.loads(l) for l in open(out)]
        assert [r["id"] for r in records] == ["dense_demo", "staircase", "empty"]
        assert [r["identified"] for r in records] == [True, False, True]
        assert [r["effective_r"] for r in records] == [3, 3, 0]
        assert records[0]["mwvc_weight"] == 21
        assert records[2]["mwvc_weight"] is None
        s = json.load(open(summary))
        assert s["total"] == 3 and s["accepted"] == 2
        assert abs(s["acceptance_fraction"] - 2 / 3) < 1e-12
        assert s["histogram_effective_r"] == {"0": 1, "3": 2}
        assert s["histogram_effective_r_accepted"] == {"0": 1, "3": 1}
        assert s["errors"] == 0

    def test_empty_input(self, runner, tmp_path):
        inp = write(tmp_path, "in.jsonl", "")
        out = str(tmp_path / "out.jsonl")
        result = runner.invoke(
            main, ["filter", "--input", inp, "--output", out, "--summary", "-"]
        )
        assert result.exit_code == 0
        summary = json.loads(result.output)
        assert summary["total"] == 0
        assert summary["acceptance_fraction"] == 0.0

    def test_malformed_line_continues(self, runner, tmp_path):
        lines = STREAM.splitlines()
        lines.insert(1, "{broken")
        inp = write(tmp_path, "in.jsonl", "\n".join(lines) + "\n")
        out = str(tmp_path / "out.jsonl")
        summary = str(tmp_path / "summary.json")
        result = runner.invoke(
            main, ["filter", "--input", inp, "--output", out, "--summary", summary]
        )
        assert result.exit_code == 2
        records = [json.loads(l) for l in open(out)]
        assert len(records) == 4
        assert records[1]["error"] is not None
        assert records[1]["identified"] is None
        s = json.load(open(summary))
        assert s["total"] == 3 and s["errors"] == 1

    def test_unreadable_input(self, runner, tmp_path):
        result = runner.invoke(
            main, ["filter", "--input", str(tmp_path / "absent.jsonl"),
                   "--output", str(tmp_path / "out.jsonl")]
        )
        assert result.exit_code == 2

    def test_parallel_matches_serial(self, runner, tmp_path):
        inp = write(tmp_path, "in.jsonl", STREAM * 20)
        out_serial = str(tmp_path / "serial.jsonl")
        out_parallel = str(tmp_path / "parallel.jsonl")
        assert runner.invoke(
            main, ["filter", "--input", inp, "--output", out_serial]
        ).exit_code == 0
        assert runner.invoke(
            main, ["filter", "--input", inp, "--output", out_parallel, "--parallel", "3"]
        ).exit_code == 0
        assert open(out_serial, "rb").read() == open(out_parallel, "rb").read()


class TestBench:
    def test_csv_shape_and_agreement(self, runner, tmp_path):
        out = str(tmp_path / "bench.csv")
        result = runner.invoke(
            main,
            ["bench", "--m", "20,30", "--r", "3,4", "--density", "0.4",
             "--seed", "5", "--patterns", "3", "--output", out],
        )
        assert result.exit_code == 0
        rows = list(csv.DictReader(open(out)))
        assert len(rows) == 8
        assert {r["method"] for r in rows} == {"mincut", "bruteforce"}
        assert all(r["verdict_agreement"] == "true" for r in rows)
        assert all(int(r["median_ns"]) > 0 for r in rows)

    def test_brute_cap_skips(self, runner, tmp_path):
        out = str(tmp_path / "bench.csv")
        result = runner.invoke(
            main,
            ["bench", "--m", "40", "--r", "30", "--patterns", "2", "--output", out],
        )
        assert result.exit_code == 0
        rows = list(csv.DictReader(open(out)))
        brute = next(r for r in rows if r["method"] == "bruteforce")
        assert brute["verdict_agreement"] == "skipped"
        assert brute["median_ns"] == ""

    def test_compare_backends(self, runner, tmp_path):
        out = str(tmp_path / "bench.csv")
        result = runner.invoke(
            main,
            ["bench", "--m", "15", "--r", "3", "--patterns", "2",
             "--compare-backends", "--output", out],
        )
        assert result.exit_code == 0
        rows = list(csv.DictReader(open(out)))
        methods = {r["method"] for r in rows}
        assert any(m.startswith("mincut@") for m in methods)

    def test_stdout_output(self, runner):
        result = runner.invoke(main, ["bench", "--m", "10", "--r", "2", "--patterns", "2"])
        assert result.exit_code == 0
        rows = list(csv.DictReader(io.StringIO(result.output)))
        assert rows and rows[0]["m"] == "10"

    def test_unwritable_output(self, runner, tmp_path):
        result = runner.invoke(
            main,
            ["bench", "--m", "10", "--r", "2", "--patterns", "2",
             "--output", str(tmp_path / "no" / "dir" / "x.csv")],
        )
        assert result.exit_code == 2

    def test_density_zero_degenerates(self, runner):
        result = runner.invoke(
            main, ["bench", "--m", "10", "--r", "2", "--density", "0", "--patterns", "2"]
        )
        assert result.exit_code == 0
        rows = list(csv.DictReader(io.StringIO(result.output)))
        assert all(r["verdict_agreement"] == "true" for r in rows)
