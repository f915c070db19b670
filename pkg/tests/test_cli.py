import json

import pytest

from superprolong.cli import main


def run_cli(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    out = capsys.readouterr()
    code = exc.value.code if exc.value.code is not None else 0
    return code, out.out, out.err


def test_prolong_stabilized_exit_zero(capsys):
    code, out, _ = run_cli(
        ["prolong", "--name", "odd_ode_symbol:3", "--g0", "scalings"], capsys
    )
    assert code == 0
    assert "total    (4|4)" in out
    assert "in the strong sense" in out


def test_prolong_truncated_exit_three(capsys):
    code, out, _ = run_cli(
        ["prolong", "--name", "skew_cpe:2", "--max-degree", "3"], capsys
    )
    assert code == 3
    assert "not stabilized" in out


def test_prolong_json_round_trips(capsys):
    code, out, _ = run_cli(
        ["prolong", "--name", "odd_ode_symbol:2", "--g0", "scalings",
         "--format", "json", "--constants"],
        capsys,
    )
    assert code == 0
    data = json.loads(out)
    assert data["total"] == {"even": 4, "odd": 4}
    from superprolong.liesuper import LieSuperalgebra, validate

    alg = LieSuperalgebra.from_json(data["algebra"])
    assert validate(alg) == []


def test_unknown_name_exit_two(capsys):
    code, _, err = run_cli(["prolong", "--name", "not_a_thing"], capsys)
    assert code == 2
    assert "input error" in err


def test_cohomology_table(capsys):
    code, out, _ = run_cli(
        ["cohomology", "--name", "sl_graded:2|1", "--d", "1..2", "--k", "1"],
        capsys,
    )
    assert code == 0
    assert out.count("(0|0)") == 2


def test_check_regular_fail_exit_four(tmp_path, capsys):
    data = {
        "ambient": {"even": ["x", "u", "p", "q", "z"], "odd": ["theta", "nu"]},
        "generators": [
            {"name": "Dx", "expr": "@x + p*@u + q*@p + q^2*@z"},
            {"name": "Dq", "expr": "@q"},
            {"name": "Dth", "expr": "@theta + q*@nu + theta*@p + 2*nu*@z"},
        ],
    }
    path = tmp_path / "dist.json"
    path.write_text(json.dumps(data))
    code, out, _ = run_cli(["check-regular", "--input", str(path)], capsys)
    assert code == 4
    assert "FAIL" in out
    assert "theta*@u" in out


def test_symbol_pass_json(tmp_path, capsys):
    data = {
        "ambient": {"even": ["x"], "odd": ["xi", "xi1"]},
        "generators": ["@x + xi1*@xi", "@xi1"],
    }
    path = tmp_path / "contact.json"
    path.write_text(json.dumps(data))
    code, out, _ = run_cli(
        ["symbol", "--input", str(path), "--format", "json"], capsys
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["regular"] is True
    from superprolong.liesuper import LieSuperalgebra, validate

    sym = LieSuperalgebra.from_json(payload["symbol"])
    assert validate(sym) == []
    assert sym.space.superdim() == (1, 2)


def test_odesym_text_report(capsys):
    code, out, _ = run_cli(
        ["odesym", "--order", "3", "--rhs", "xi2", "--poly-degree", "2"],
        capsys,
    )
    assert code == 0
    assert "(2|3)" in out
    assert "exp(x)" in out
    assert "bracket table" in out


def test_odesym_bad_rhs_exit_two(capsys):
    code, _, err = run_cli(["odesym", "--order", "2", "--rhs", "x"], capsys)
    assert code == 2


def test_missing_command_exit_two(capsys):
    code, _, _ = run_cli([], capsys)
    assert code == 2


def test_paper_suite_flag(capsys):
    code, out, _ = run_cli(["--paper-suite"], capsys)
    assert code == 0
    assert "FAIL" not in out
    assert out.count("PASS") >= 30
