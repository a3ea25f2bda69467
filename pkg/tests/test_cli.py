import json

import pytest

from cli import EXIT_IDENTITY_FAILED, EXIT_OK, main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_flag_eulerian_table_csv(capsys):
    code, out = run(capsys, "table", "--family", "flag-eulerian", "--n", "3", "--r", "1", "--format", "csv")
    assert code == EXIT_OK
    assert out == "k,count\n1,1\n2,4\n3,1\n"


def test_flag_eulerian_table_json(capsys):
    code, out = run(capsys, "table", "--family", "flag-eulerian", "--n", "2", "--r", "2")
    assert code == EXIT_OK
    assert json.loads(out)["counts"] == ["1", "3", "3", "1"]


def test_b_table_json(capsys):
    code, out = run(capsys, "table", "--family", "B", "--n", "2", "--r", "1")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["family"] == "B"
    assert data["rows"] == [{"k": "1", "coeffs": ["0", "1"]}, {"k": "2", "coeffs": ["1"]}]


def test_empty_length_table(capsys):
    code, out = run(capsys, "table", "--family", "A", "--n", "0", "--r", "2")
    assert code == EXIT_OK
    assert json.loads(out)["rows"] == [{"k": "0", "coeffs": ["1"]}]


def test_a_table_csv(capsys):
    code, out = run(capsys, "table", "--family", "A", "--n", "2", "--r", "1", "--format", "csv")
    assert code == EXIT_OK
    assert out == "k,coeffs\n1,0;1\n2,0;0;1\n"


def test_ehrhart_interpolate_and_closed_form_agree(capsys):
    _, interpolated = run(capsys, "ehrhart", "--family", "B", "--n", "2", "--r", "1", "--k", "1")
    _, closed = run(capsys, "ehrhart", "--family", "B", "--n", "2", "--r", "1", "--k", "1",
                    "--mode", "closed-form")
    assert json.loads(interpolated)["coeffs"] == json.loads(closed)["coeffs"] == [
        {"num": "0", "den": "1"}, {"num": "1", "den": "2"}, {"num": "1", "den": "2"}]


def test_ehrhart_csv_outputs(capsys):
    _, series = run(capsys, "ehrhart", "--family", "B", "--n", "2", "--r", "1", "--k", "1",
                    "--mode", "series", "--format", "csv")
    assert series == "degree,coeff\n0,0\n1,1\n"
    _, poly = run(capsys, "ehrhart", "--family", "A", "--n", "1", "--r", "1", "--k", "1", "--format", "csv")
    assert poly == "degree,num,den\n0,0,1\n1,1,1\n"


def test_output_file(tmp_path, capsys):
    out = tmp_path / "table.json"
    code, printed = run(capsys, "table", "--family", "B", "--n", "1", "--r", "2", "--out", str(out))
    assert code == EXIT_OK
    assert printed == ""
    assert json.loads(out.read_text(encoding="utf-8"))["rows"][1] == {"k": "2", "coeffs": ["1"]}


@pytest.mark.parametrize("argv", [
    ["table", "--family", "A", "--n", "99"],
    ["table", "--family", "A", "--n", "2", "--r", "0"],
    ["table", "--family", "C", "--n", "2"],
    ["ehrhart", "--family", "B", "--n", "2", "--r", "1", "--k", "5"],
    ["ehrhart", "--family", "flag-eulerian", "--n", "2", "--k", "1"],
    ["verify", "--suite", "plots"],
    ["verify", "--max-n", "40"],
])
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(argv)
    assert excinfo.value.code == 2


def test_verify_fixtures_pass(capsys):
    code, out = run(capsys, "verify", "--suite", "fixtures")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["passed"] is True
    assert data["count"] == 2


def test_verify_small_permstats(capsys):
    code, out = run(capsys, "verify", "--suite", "permstats", "--max-n", "2", "--max-r", "2")
    assert code == EXIT_OK
    assert {r["identity"] for r in json.loads(out)["reports"]} >= {"permstats.total_mass"}


def test_verify_perturbed_fixture_exits_1(perturbed_fixtures, capsys):
    code, out = run(capsys, "verify", "--suite", "fixtures", "--fixtures", perturbed_fixtures)
    data = json.loads(out)
    assert code == EXIT_IDENTITY_FAILED
    assert data["passed"] is False
    [failed] = [r for r in data["reports"] if not r["passed"]]
    assert failed["identity"] == "fixtures.flag_eulerian"
    assert failed["witness"]["computed"] == ["1", "4", "1"]


def test_verify_with_no_lengths_passes_vacuously(capsys):
    code, out = run(capsys, "verify", "--suite", "permstats", "--max-n", "0", "--max-r", "1")
    assert code == EXIT_OK
    assert all(r["passed"] for r in json.loads(out)["reports"])


def test_two_color_flag_eulerian_table_csv(capsys):
    code, out = run(capsys, "table", "--family", "flag-eulerian", "--n", "3", "--r", "2", "--format", "csv")
    assert code == EXIT_OK
    assert out == "k,count\n1,1\n2,7\n3,16\n4,16\n5,7\n6,1\n"


def test_verify_all_suites_pass_up_to_n4_r3(capsys):
    code, out = run(capsys, "verify", "--suite", "all", "--max-n", "4", "--max-r", "3")
    data = json.loads(out)
    failed = [r["identity"] for r in data["reports"] if not r["passed"]]
    assert failed == []
    assert code == EXIT_OK
    assert {"series.flagpol", "closedform.eulerian_specialization"} <= {r["identity"] for r in data["reports"]}
