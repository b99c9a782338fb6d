"""
测试命令行：输出格式、退出码和文件导出
"""
import json

import pytest

from cli import run
from exceptions import EXIT_COUNTEREXAMPLE, EXIT_OK, EXIT_USAGE


def run_json(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_bound_diversity(capsys):
    code, payload = run_json(capsys, "bound", "--kind", "diversity", "--gamma", "4", "--n", "10", "--k", "4")
    assert code == EXIT_OK
    assert payload["value"] == "70"
    assert payload["window_l"] == 2
    assert payload["kind"] == "diversity"


def test_bound_text_format(capsys):
    code = run(["bound", "--kind", "size", "--variant", "hm", "--n", "10", "--k", "4", "--format", "text"])
    assert code == EXIT_OK
    assert "value: 75" in capsys.readouterr().out


def test_cascade(capsys):
    code, payload = run_json(capsys, "cascade", "--gamma", "7", "--n", "10", "--k", "4")
    assert code == EXIT_OK
    assert payload["terms"] == [[4, 5], [6, 4]]
    assert payload["T"] == [4, 6]
    assert payload["S"] == [2, 3, 5, 6]


def test_resistant_numbers(capsys):
    code, payload = run_json(capsys, "resistant", "--n", "12", "--k", "5")
    assert code == EXIT_OK
    assert payload["resistant_numbers"] == ["1", "2", "7", "8", "28"]


def test_resistant_pairs_csv(capsys):
    code = run(["resistant", "--n", "10", "--k", "4", "--pairs", "--format", "csv"])
    assert code == EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "l,S,T,size_a,size_b,sum,sentinel"
    assert len(lines) == 4


def test_family_with_stats(capsys):
    code, payload = run_json(capsys, "family", "--kind", "hm", "--n", "10", "--k", "4", "--stats")
    assert code == EXIT_OK
    assert payload["family"]["size"] == "75"
    assert payload["stats"]["diversity"] == "1"
    assert payload["stats"]["max_degree"] == "74"


def test_family_from_pair(capsys):
    code, payload = run_json(capsys, "family", "--kind", "from_pair", "--n", "10", "--k", "4",
                             "--S", "1,4", "--T", "2,3,4")
    assert code == EXIT_OK
    assert payload["family"]["size"] == "70"


def test_family_bad_input(capsys):
    assert run(["family", "--kind", "from_B", "--n", "7", "--k", "3", "--G", "[[2,3"]) == EXIT_USAGE
    assert run(["family", "--kind", "h_u", "--n", "10", "--k", "4"]) == EXIT_USAGE
    capsys.readouterr()


def test_verify_exit_codes(capsys):
    code, payload = run_json(capsys, "verify", "--thm", "eqfull2", "--n", "10", "--k", "4")
    assert code == EXIT_OK
    assert payload["status"] == "verified"
    code, payload = run_json(capsys, "verify", "--thm", "eqfull4", "--n", "10", "--k", "4")
    assert code == EXIT_COUNTEREXAMPLE
    assert payload["status"] == "counterexample"


@pytest.mark.parametrize("argv", [
    ["bound"],
    ["bound", "--kind", "diversity", "--gamma", "0", "--n", "10", "--k", "4"],
    ["bound", "--kind", "diversity", "--n", "10", "--k", "4"],
    ["verify", "--thm", "thm99", "--n", "10", "--k", "4"],
    ["cascade", "--gamma", "x", "--n", "10", "--k", "4"],
    ["frobnicate"],
])
def test_usage_errors(capsys, argv):
    assert run(argv) == EXIT_USAGE
    assert "error:" in capsys.readouterr().err


def test_verify_out_and_stable(tmp_path, capsys):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    for path in (first, second):
        code = run(["verify", "--thm", "thmfull1", "--n", "10", "--k", "4", "--stable", "--out", str(path)])
        assert code == EXIT_OK
    assert first.read_bytes() == second.read_bytes()
    data = json.loads(first.read_text(encoding="utf-8"))
    assert data["theorem"] == "thmfull1"
    assert data["elapsed_ms"] == 0
    assert capsys.readouterr().out == ""


def test_scan_writes_csv_and_workbook(tmp_path, capsys):
    from openpyxl import load_workbook

    csv_path, xlsx_path = tmp_path / "scan.csv", tmp_path / "scan.xlsx"
    code, payload = run_json(capsys, "scan", "--thm", "eqfull2", "--n-range", "9:11", "--k-range", "4:4",
                             "--csv", str(csv_path), "--xlsx", str(xlsx_path), "--stable")
    assert code == EXIT_OK
    assert payload["rows"] == 3
    assert payload["verified"] == 3
    lines = csv_path.read_text(encoding="utf-8").strip().splitlines()
    assert lines[0] == "theorem,n,k,t,status,checks,elapsed_ms,witness"
    assert [line.split(",")[1] for line in lines[1:]] == ["9", "10", "11"]
    wb = load_workbook(xlsx_path)
    assert wb.sheetnames == ["eqfull2"]
    ws = wb["eqfull2"]
    assert ws.cell(row=1, column=1).font.bold
    assert ws.max_row == 4


def test_scan_marks_out_of_range_as_skipped(tmp_path, capsys):
    csv_path = tmp_path / "scan.csv"
    code, payload = run_json(capsys, "scan", "--thm", "thmfullw", "--n-range", "8:10", "--k-range", "4:4",
                             "--csv", str(csv_path))
    assert code == EXIT_OK
    assert payload["skipped"] == 1
    assert payload["verified"] == 2


def test_oracle_maximal_intersecting(capsys):
    code, payload = run_json(capsys, "oracle", "--mode", "maximal-intersecting", "--n", "5", "--k", "2")
    assert code == EXIT_OK
    assert payload["count"] == "15"
    assert payload["sizes"] == {"3": "10", "4": "5"}
    code, payload = run_json(capsys, "oracle", "--mode", "maximal-intersecting", "--n", "5", "--k", "2",
                             "--anchored")
    assert payload["count"] == "5"


def test_oracle_lex_scan(capsys):
    code, payload = run_json(capsys, "oracle", "--mode", "lex-scan", "--n", "10", "--k", "4", "--a", "3",
                             "--b", "4", "--bsize", "6", "--ground", "tail")
    assert code == EXIT_OK
    assert payload["value"] == "70"
    assert payload["B"]["size"] == "6"
