import json

import pytest

from tamecert.cli import main
from tamecert.golden import FIXTURES, fixture_names, regen, run_fixture, run_golden


@pytest.mark.parametrize("name", fixture_names())
def test_golden(name):
    res = run_golden(name)
    assert res.ok, res.diff


def test_regen_is_identity(tmp_path):
    import shutil

    shutil.copytree(FIXTURES / "sl2-report", tmp_path / "sl2-report")
    before = (tmp_path / "sl2-report" / "expected.json").read_text()
    regen("sl2-report", tmp_path)
    assert (tmp_path / "sl2-report" / "expected.json").read_text() == before
    assert run_golden("sl2-report", tmp_path).ok


def test_bad_descriptor_exit_code():
    out = json.loads(run_fixture("bad-descriptor"))
    assert out["exit_code"] == 2 and out["stderr"].startswith("error:")


def test_report_to_file(tmp_path, capsys):
    target = tmp_path / "r.json"
    assert main(["report", "--algebra", "A1", "--out", str(target)]) == 0
    assert json.loads(target.read_text())["global"]["delta_sup"] == "2/1"


def test_matrix_file(tmp_path, capsys):
    m = tmp_path / "m.json"
    m.write_text("[[2, -1], [-1, 2]]")
    assert main(["report", "--algebra", str(m)]) == 0
    assert json.loads(capsys.readouterr().out)["global"]["delta_sup"] == "5/3"


def test_nilpotent_data_file(tmp_path, capsys):
    # so_5 orbits by sl_2 highest weights; the zero orbit is added automatically
    data = {"B2": [
        {"label": "reg", "weights": [6, 2], "distinguished": True},
        {"label": "subreg", "weights": [2, 2, 2, 0], "distinguished": False},
        {"label": "minimal", "weights": [2, 1, 1, 0, 0, 0], "distinguished": False},
    ]}
    f = tmp_path / "nil.json"
    f.write_text(json.dumps(data))
    code = main(["report", "--algebra", "B2", "--nilpotent-data", str(f)])
    rep = json.loads(capsys.readouterr().out)
    assert code == 0
    assert rep["subject"]["name"] == "B2"
    assert rep["global"]["delta_sup"] == rep["delta_formula"] == "3/2"
    codims = {s["orbit"]: s["codim"] for s in rep["strata"] if s["class_id"] == "B2"}
    assert codims == {"reg": 2, "subreg": 4, "minimal": 6, "0": 10}


@pytest.mark.parametrize("argv", [["report", "--algebra", "Z9"], ["report", "--algebra", "/nonexistent.json"],
                                  ["pair-report", "--descriptor", "/nonexistent.json"],
                                  ["fourier", "--expr", "x1 +", "--dim", "1"], ["verify-bn", "--max-d", "0"],
                                  ["nonsense"]])
def test_input_errors(argv, capsys):
    assert main(argv) == 2


def test_fourier_command(capsys):
    assert main(["fourier", "--expr", "x1*Dx1", "--dim", "1"]) == 0
    assert capsys.readouterr().out.strip() == "-x1*Dx1 - 1"
