import json

import pytest

from evoclass import catalog
from evoclass.cli import EXIT_MISMATCH, EXIT_PASS, EXIT_USAGE, main
from evoclass.fields import PrimeField


def write(tmp_path, name, algebra):
    path = tmp_path / name
    path.write_text(json.dumps(algebra.to_json()))
    return str(path)


@pytest.mark.parametrize("dim", [1, 2, 3, 4])
def test_verify_passes(dim, capsys):
    assert main(["verify", "--dim", str(dim)]) == EXIT_PASS
    assert f"{len(catalog.names(dim))}/{len(catalog.names(dim))} entries pass" in capsys.readouterr().out


def test_verify_json_over_fp(capsys):
    assert main(["verify", "--dim", "3", "--field", "fp:7", "--format", "json"]) == EXIT_PASS
    data = json.loads(capsys.readouterr().out)
    assert data["field"] == "F_7" and data["pass"]


def test_verify_bad_dim(capsys):
    assert main(["verify", "--dim", "7"]) == EXIT_USAGE
    assert "error" in capsys.readouterr().err


def test_enumerate(capsys):
    assert main(["enumerate", "--base", "E_4_9", "--ext", "1", "--field", "fp:3"]) == EXIT_PASS
    out = capsys.readouterr().out
    assert "1 orbits" in out and "E_5_24" in out


def test_enumerate_needs_finite_field():
    assert main(["enumerate", "--base", "E_4_9", "--ext", "1", "--field", "q"]) == EXIT_USAGE


def test_enumerate_partial(capsys):
    code = main(["enumerate", "--base", "E_4_5", "--ext", "1", "--field", "fp:3", "--budget", "2"])
    assert code == EXIT_USAGE
    assert "PARTIAL" in capsys.readouterr().out


def test_isocheck_exit_codes(tmp_path, capsys):
    a = write(tmp_path, "a.json", catalog.get("E_5_21"))
    b = write(tmp_path, "b.json", catalog.get("E_5_22"))
    assert main(["isocheck", a, b]) == EXIT_MISMATCH
    assert "invariant: Psi" in capsys.readouterr().out
    assert main(["isocheck", a, a, "--format", "json"]) == EXIT_PASS
    assert json.loads(capsys.readouterr().out)["status"] == "Isomorphic"
    F = PrimeField(13)
    c = write(tmp_path, "c.json", catalog.get("E_5_18", 4, F))
    d = write(tmp_path, "d.json", catalog.get("E_5_18", 10, F))
    assert main(["isocheck", c, d]) == EXIT_PASS
    assert "witness" in capsys.readouterr().out


def test_isocheck_malformed(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 2, "squares": [[0, 1]]}')
    assert main(["isocheck", str(bad), str(bad)]) == EXIT_USAGE
    assert main(["isocheck", str(tmp_path / "missing.json"), str(bad)]) == EXIT_USAGE
    no_rows = tmp_path / "no_rows.json"
    no_rows.write_text('{"dim": 2}')
    assert main(["isocheck", str(no_rows), str(no_rows)]) == EXIT_USAGE


def test_report_is_byte_stable(tmp_path, capsys):
    assert main(["report", "--dim", "5", "-o", str(tmp_path / "one")]) == EXIT_PASS
    assert main(["report", "--dim", "5", "-o", str(tmp_path / "two")]) == EXIT_PASS
    for name in ("report_dim5.txt", "report_dim5.json"):
        assert (tmp_path / "one" / name).read_bytes() == (tmp_path / "two" / name).read_bytes()
    data = json.loads((tmp_path / "one" / "report_dim5.json").read_text())
    assert data["count"] == 29


def test_usage_error():
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == EXIT_USAGE
