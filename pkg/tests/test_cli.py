import json
from pathlib import Path

import pytest

from figlab.cli import EXIT_INVALID, EXIT_MAX_DIM, EXIT_OK, EXIT_WINDOW, execute, main
from figlab.config import config
from figlab.models import Command, RunConfig
from figlab.module_parser import module_parser

SAMPLES = Path(__file__).resolve().parents[1] / "sample_modules"
GOLDEN = Path(__file__).resolve().parent / "golden"


def sample(name: str) -> str:
    return str(SAMPLES / f"{name}.json")


def run_json(capsys, *argv):
    code = main([*argv, "--format", "json"])
    return code, json.loads(capsys.readouterr().out)


def test_every_sample_validates(capsys):
    paths = sorted(str(p) for p in SAMPLES.glob("*.json"))
    code, rows = run_json(capsys, "validate", *paths)
    assert code == EXIT_OK
    assert len(rows) == len(paths)
    assert all(r["status"] == "ok" for r in rows)


def test_invariants_of_kG0(capsys, golden):
    code, rows = run_json(capsys, "invariants", sample("kG0"))
    assert code == EXIT_OK
    (row,) = rows
    assert row["module-id"] == "kG0"
    assert row["reg"] == golden["kG0"]["reg"]
    assert row["N_direct"] == row["N_formula"] == golden["kG0"]["N"]
    assert row["reg_status"] == "certified"
    assert row["window_used"] == 4


def test_invariants_csv_follows_the_schema(capsys):
    code = main(["invariants", sample("J0"), "--format", "csv"])
    header = capsys.readouterr().out.splitlines()[0]
    assert code == EXIT_OK
    assert header.split(",")[:5] == ["module-id", "field", "group", "gd", "td"]


def test_homology_degrees(capsys, golden):
    code, rows = run_json(capsys, "homology", sample("kG0"), "--imax", "2")
    assert code == EXIT_OK
    assert [r["hd"] for r in rows] == golden["kG0"]["hd"]
    assert rows[1]["dims"] == [0, 1, 0, 0, 0]


def test_localcoh_of_J0(capsys, golden):
    code, rows = run_json(capsys, "localcoh", sample("J0"))
    assert code == EXIT_OK
    assert [r["td"] for r in rows] == golden["J0"]["lc_td"]
    assert rows[1]["b"] == 1


def test_depths_agree(capsys, golden):
    code, rows = run_json(capsys, "depth", sample("J0"))
    assert code == EXIT_OK
    assert rows[0]["depth_lc"] == golden["J0"]["depth"]
    assert rows[0]["agree"] is True


def test_conjecture_on_files(capsys):
    code, rows = run_json(capsys, "conjecture", sample("kG0"), sample("J0"), sample("M0"))
    assert code == EXIT_OK
    assert [r["gap"] for r in rows[:2]] == [0, 0]
    assert rows[2]["applicable"] is False


def test_generate_is_deterministic(capsys):
    assert main(["generate", "--seed", "7"]) == EXIT_OK
    first = capsys.readouterr().out
    assert main(["generate", "--seed", "7"]) == EXIT_OK
    assert capsys.readouterr().out == first
    parsed = module_parser.parse_text(first)
    assert parsed.name == "random-7"


def test_generate_respects_field_and_group(capsys):
    assert main(["generate", "--seed", "3", "--prime", "3", "--group-order", "2"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["field"] == {"Fp": 3}
    assert data["group"]["order"] == 2


def test_output_file(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert main(["validate", sample("M0"), "--format", "json", "-o", str(out)]) == EXIT_OK
    assert capsys.readouterr().out == ""
    assert json.loads(out.read_text())[0]["module-id"] == "M0"


def test_broken_file_exits_2(tmp_path, capsys):
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert main(["validate", str(broken)]) == EXIT_INVALID
    assert "broken.json" in capsys.readouterr().out


def test_missing_file_exits_2(tmp_path):
    assert main(["validate", str(tmp_path / "absent.json")]) == EXIT_INVALID


def test_invalid_module_exits_2(tmp_path, capsys):
    data = json.loads((SAMPLES / "raw_M0.json").read_text())
    # s_1 acting by -1 moves the image of degree 0 in degree 2
    data["actions"][2] = [[[-1]]]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    assert main(["validate", str(path), "--format", "json"]) == EXIT_INVALID
    rows = json.loads(capsys.readouterr().out)
    assert "error" in rows[0]


def test_window_exhaustion_exits_3():
    run = RunConfig(command=Command.INVARIANTS, paths=[sample("kG0")], window=0, retries=0)
    assert execute(run).exit_code == EXIT_WINDOW


def test_max_dim_exits_4(monkeypatch):
    monkeypatch.setattr(config, "max_dim", 1)
    run = RunConfig(command=Command.INVARIANTS, paths=[sample("C2_regular")])
    assert execute(run).exit_code == EXIT_MAX_DIM


def test_negative_window_is_rejected():
    assert main(["validate", sample("kG0"), "--window", "-1"]) == EXIT_INVALID


def test_bad_configuration_is_reported(monkeypatch, capsys):
    monkeypatch.setattr(config, "default_format", "xml")
    assert main(["validate", sample("kG0")]) == EXIT_INVALID
    assert "FIGLAB_FORMAT" in capsys.readouterr().err


@pytest.mark.parametrize("fmt", ["json", "csv", "table"])
def test_formats_render(fmt):
    run = RunConfig(command=Command.VALIDATE, paths=[sample("kG0")], output_format=fmt)
    result = execute(run)
    assert result.exit_code == EXIT_OK
    assert "kG0" in result.output


def test_conjecture_window_exhaustion_exits_3():
    run = RunConfig(command=Command.CONJECTURE, window=1, retries=0, count=3, output_format="json")
    result = execute(run)
    assert result.exit_code == EXIT_WINDOW
    assert any(r["error"] for r in json.loads(result.output))


def test_conjecture_max_dim_exits_4(monkeypatch):
    monkeypatch.setattr(config, "max_dim", 1)
    run = RunConfig(command=Command.CONJECTURE, paths=[sample("C2_regular")], output_format="json")
    result = execute(run)
    assert result.exit_code == EXIT_MAX_DIM
    assert "FIGLAB_MAX_DIM" in json.loads(result.output)[0]["error"]


@pytest.mark.parametrize("path", sorted(SAMPLES.glob("*.json")), ids=lambda p: p.stem)
def test_samples_reproduce_their_reports(path, capsys):
    expected = json.loads((GOLDEN / "reports" / path.name).read_text())
    code, rows = run_json(capsys, "invariants", str(path))
    assert code == EXIT_OK
    assert rows == [expected]
