import json

import pytest

from krconverse.cli import EXIT_CONDITION, EXIT_OK, EXIT_USAGE, main, rat, unrat

A2 = ["--type", "A", "--rank", "2", "--levi", "1", "--mu", "1,1"]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_a2(capsys):
    code, out, _ = run(capsys, "verify", *A2)
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["lhs"] == rep["rhs"] == [[-3], [0], [3]]
    assert rep["certificates_ok"] == 3


def test_verify_improper_levi(capsys):
    code, _, err = run(capsys, "verify", "--type", "A", "--rank", "2", "--levi", "1,2", "--mu", "1,1")
    assert code == EXIT_USAGE and "proper" in err


def test_verify_g2(capsys):
    code, _, _ = run(capsys, "verify", "--type", "G", "--rank", "2", "--levi", "1", "--mu", "1,0")
    assert code == EXIT_OK


def test_verify_quasisplit(capsys):
    code, out, _ = run(capsys, "verify", "--type", "A", "--rank", "3", "--levi", "1,3", "--mu", "1,0,1", "--sigma", "3,2,1")
    assert code == EXIT_OK and json.loads(out)["relative_type"] == "C2"


def test_witness_round_trip(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["witness", *A2, "--y", "-3", "--out", str(a)]) == EXIT_OK
    assert main(["witness", *A2, "--y", "-3", "--out", str(b)]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    cert = json.loads(a.read_text())
    assert cert["word"]
    code, out, _ = run(capsys, "check-cert", str(a))
    assert code == EXIT_OK and json.loads(out)["ok"]


def test_witness_y3_has_empty_word(capsys):
    code, out, _ = run(capsys, "witness", *A2, "--y", "3")
    assert code == EXIT_OK
    assert json.loads(out)["word"] == [] and json.loads(out)["game"]["word"] == []


def test_witness_condition_i(capsys):
    code, _, err = run(capsys, "witness", *A2, "--y", "1")
    assert code == EXIT_CONDITION and "(i)" in err


def test_tampered_certificate_fails(tmp_path, capsys):
    a = tmp_path / "a.json"
    main(["witness", *A2, "--y", "-3", "--out", str(a)])
    cert = json.loads(a.read_text())
    cert["nu"] = [rat(5), rat(0)]
    a.write_text(json.dumps(cert))
    code, _, _ = run(capsys, "check-cert", str(a))
    assert code == EXIT_CONDITION


def test_folded_witness(tmp_path, capsys):
    a = tmp_path / "b2.json"
    argv = ["witness", "--type", "B", "--rank", "2", "--levi", "1", "--mu", "1,0", "--y=-1,1", "--out", str(a)]
    assert main(argv) == EXIT_OK
    code, _, _ = run(capsys, "check-cert", str(a))
    assert code == EXIT_OK


@pytest.mark.parametrize("value,expected", [("3", "nonempty"), ("6", "empty")])
def test_adlv(capsys, value, expected):
    code, out, _ = run(capsys, "adlv", *A2, f"--nu={value}")
    assert code == EXIT_OK and out.split()[0] == expected


def test_adlv_boundary_rejected(capsys):
    code, _, _ = run(capsys, "adlv", *A2, "--nu=-3")
    assert code == EXIT_USAGE


def test_sweep_csv(tmp_path, monkeypatch):
    monkeypatch.setenv("KR_WORKERS", "1")
    out = tmp_path / "s.csv"
    assert main(["sweep", "--types", "A2,G2", "--bound", "1", "--out", str(out)]) == EXIT_OK
    rows = out.read_text().splitlines()
    assert rows[0] == "type,rank,J,mu,lhs_size,equal,certified"
    assert len(rows) == 1 + 2 * 4 * 2
    assert all(r.endswith("true,true") for r in rows[1:])


def test_bad_type(capsys):
    code, _, _ = run(capsys, "verify", "--type", "E", "--rank", "2", "--levi", "1", "--mu", "1,0")
    assert code == EXIT_USAGE


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as e:
        main(["verify", "--type", "A"])
    assert e.value.code == 2


def test_rationals_round_trip():
    from fractions import Fraction

    for v in (0, 3, -7, Fraction(-5, 6)):
        assert unrat(rat(v)) == v
    assert rat(Fraction(2, 4)) == {"num": "1", "den": "2"}
