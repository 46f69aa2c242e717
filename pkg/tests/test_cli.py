import json

import pytest

from cli import FAIL, PASS, USAGE, run_forge


@pytest.fixture(autouse=True)
def home(tmp_path, monkeypatch):
    monkeypatch.setenv("HOME", str(tmp_path / "home"))
    return tmp_path / "home"


@pytest.fixture
def out(tmp_path):
    return tmp_path / "out"


def summary(capsys):
    lines = [line for line in capsys.readouterr().out.splitlines() if line.startswith("{")]
    return json.loads(lines[-1])


def forge(out, *argv):
    return run_forge([*argv, "-q", "--output-dir", str(out)])


def test_bound_is_printed_exactly(out, capsys):
    code = forge(out, "bounds", "local-to-global", "--beta", "1", "--lambda", "0", "--k", "1")
    line = summary(capsys)

    assert code == PASS
    assert line["status"] == "pass"
    assert line["value_exact"] == "1/24"
    report = json.loads((out / "bounds-local-to-global.json").read_text())
    assert report["value_exact"] == "1/24"
    assert (out / "bounds-local-to-global.manifest.json").exists()


def test_missing_bound_parameter(out):
    assert forge(out, "bounds", "cone", "--radius", "3") == USAGE


def test_generated_complex_feeds_expansion(out, capsys):
    assert forge(out, "gen", "complete", "4", "2") == PASS
    path = out / "complete-4-2.json"
    assert path.exists()
    capsys.readouterr()

    code = forge(out, "expansion", str(path), "--k", "0")
    line = summary(capsys)

    assert code == PASS
    assert line["value"] == pytest.approx(4 / 3)
    report = json.loads((out / "expansion-complete-4-2-k0.json").read_text())
    assert report["value_exact"] == "4/3"
    manifest = json.loads((out / "expansion-complete-4-2-k0.manifest.json").read_text())
    assert str(path) in manifest["inputs"]


def test_planted_cochain_is_decoded(out, capsys):
    assert forge(out, "gen", "partite", "2", "2", "2", "2") == PASS
    capsys.readouterr()

    code = forge(out, "decode", str(out / "partite-2x2x2x2.json"), "--k", "1", "--noise", "0")
    line = summary(capsys)

    assert code == PASS
    assert line["verified"]
    assert line["overall"] == 0
    assert len(line["F"]) == 3
    assert (out / "decode-partite-2x2x2x2-k1.cochain.json").exists()


def test_abelian_cone_command(out, capsys):
    code = forge(out, "cone", "--boolean", "3", "--colors", "1", "2", "--k", "0")
    line = summary(capsys)

    assert code == PASS
    assert line["valid"]
    assert line["radius"] <= line["radius_limit"]


def test_lattice_check_command(out, capsys):
    assert forge(out, "lattice-check", "--boolean", "3", "--validate") == PASS
    assert summary(capsys)["value"] == pytest.approx(0.5)


def test_missing_input_is_a_usage_error(out):
    assert forge(out, "expansion", str(out / "absent.json"), "--k", "0") == USAGE


def test_command_is_required(capsys):
    assert run_forge([]) == USAGE
    assert "command is required" in capsys.readouterr().err


def test_config_can_be_set_from_the_command_line(home):
    assert run_forge(["--set-config", "workers", "8"]) == PASS
    assert json.loads((home / ".simplexforge" / "config.json").read_text())["workers"] == 8
    assert run_forge(["--set-config", "colour", "red"]) == FAIL


def test_version(capsys):
    assert run_forge(["--version"]) == PASS
    assert "SimplexForge" in capsys.readouterr().out
