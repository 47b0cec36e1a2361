"""
Tests for the dgd command-line interface.
"""

import json

import pytest

import main


def run_cli(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main.main(argv + ["--no-cache", "--quiet"])
    out = capsys.readouterr()
    return exc.value.code, out.out, out.err


def test_group_command(capsys):
    """Test dgd group S3"""
    code, out, _ = run_cli(["group", "S3"], capsys)
    assert code == main.EXIT_OK
    payload = json.loads(out)
    assert payload["order"] == 6
    assert payload["num_classes"] == 3
    assert payload["commuting_pair_orbits"] == 8


def test_trivial_group(capsys):
    """Test dgd group cyclic:1"""
    code, out, _ = run_cli(["group", "cyclic:1"], capsys)
    assert code == 0
    assert json.loads(out)["order"] == 1


def test_bad_cayley_file(tmp_path, capsys):
    """Test an axiom violation in a file is exit code 2"""
    path = tmp_path / "bad.cayley"
    path.write_text("2\n0 1\n1 1\n")
    code, _, err = run_cli(["group", f"file:{path}"], capsys)
    assert code == main.EXIT_INPUT_ERROR
    assert "latin-rows" in err


def test_verify_all(capsys):
    """Test dgd verify S3 --suite all"""
    code, out, _ = run_cli(["verify", "S3", "--suite", "all"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["pass"] is True
    assert payload["max_deviation"] <= 1e-9


def test_verify_ybe(capsys):
    """Test dgd verify Q8 --suite ybe"""
    code, out, _ = run_cli(["verify", "Q8", "--suite", "ybe"], capsys)
    assert code == 0
    assert json.loads(out)["suites"][0]["suite"] == "ybe"


def test_verify_trivial_group_zero_deviation(capsys):
    """Test the trivial group verifies with deviation 0"""
    code, out, _ = run_cli(["verify", "cyclic:1", "--suite", "bialgebra", "--suite", "hopf"], capsys)
    assert code == 0
    assert json.loads(out)["max_deviation"] == 0.0


def test_verify_csv(capsys):
    """Test CSV output of a verification"""
    code, out, _ = run_cli(["verify", "cyclic:2", "--suite", "hopf", "--format", "csv"], capsys)
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "suite,check,max_deviation,pass,skipped"
    assert all(line.startswith("hopf,") for line in lines[1:])


def test_irreps(capsys):
    """Test dgd irreps S3"""
    code, out, _ = run_cli(["irreps", "S3"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert sum(row["dim"] ** 2 for row in payload["rows"]) == 36


def test_modular_trivial(capsys):
    """Test dgd modular cyclic:1 gives 1 x 1 matrices"""
    code, out, _ = run_cli(["modular", "cyclic:1"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["format"] == "dgd-modular-v1"
    assert payload["S"] == [["1+0i"]]
    assert payload["T"] == ["1+0i"]


def test_verlinde(capsys):
    """Test dgd verlinde C2"""
    code, out, _ = run_cli(["verlinde", "C2"], capsys)
    assert code == 0
    assert json.loads(out)["match"] is True


def test_fusion_pretty(capsys):
    """Test the pretty format"""
    code, out, _ = run_cli(["fusion", "C2", "--format", "pretty"], capsys)
    assert code == 0
    assert out.startswith("✅ fusion")


@pytest.mark.parametrize("argv,dims", [
    (["nichols", "--fixture", "flip", "--dim", "2"], [2, 3, 4, 5]),
    (["nichols", "--fixture=-flip", "--dim", "2"], [2, 1, 0, 0]),
    (["nichols", "S3", "--label", "0,0"], [1, 1, 1, 1]),
])
def test_nichols(argv, dims, capsys):
    """Test the Nichols fixtures and the unit module"""
    code, out, _ = run_cli(argv, capsys)
    assert code == 0
    assert json.loads(out)["degree_dims"] == dims


def test_nichols_budget_is_input_error(capsys):
    """Test the symmetrizer limit"""
    code, _, _ = run_cli(["nichols", "--fixture", "flip", "--dim", "3", "--nmax", "6"], capsys)
    assert code == main.EXIT_INPUT_ERROR


def test_nichols_needs_group_or_fixture(capsys):
    """Test nichols without a spec or a fixture"""
    code, _, err = run_cli(["nichols"], capsys)
    assert code == main.EXIT_INPUT_ERROR
    assert "needs a group spec" in err


def test_negative_tolerance(capsys):
    """Test configuration validation"""
    code, _, _ = run_cli(["group", "S3", "--tol", "-1"], capsys)
    assert code == main.EXIT_INPUT_ERROR


def test_out_file(tmp_path, capsys):
    """Test writing to --out"""
    target = tmp_path / "group.json"
    code, out, _ = run_cli(["group", "D4", "--out", str(target)], capsys)
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["order"] == 8


def test_deterministic_json(capsys):
    """Test two runs with the same configuration give identical output"""
    _, first, _ = run_cli(["modular", "S3", "--seed", "7"], capsys)
    _, second, _ = run_cli(["modular", "S3", "--seed", "7"], capsys)
    assert first == second


def test_cached_output_identical(tmp_path, capsys):
    """Test a cached run prints the same bytes"""
    db = str(tmp_path / "results.db")
    outputs = []
    for _ in range(2):
        with pytest.raises(SystemExit):
            main.main(["fusion", "S3", "--cache-db", db, "--quiet"])
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1]


def test_run_config_defaults():
    """Test RunConfig defaults"""
    config = main.RunConfig(command="group", spec="S3")
    assert config.tol == 1e-9
    assert config.seed == 0x5EED
    assert config.triple_limit == 12
    assert config.symmetrizer_limit == 256
    with pytest.raises(ValueError):
        main.RunConfig(command="group", spec="S3", output_format="xml")


def test_parse_label():
    """Test label parsing"""
    assert main.parse_label("1,2") == (1, 2)


def run_cached(argv, db, capsys):
    with pytest.raises(SystemExit) as exc:
        main.main(argv + ["--cache-db", db, "--quiet"])
    out = capsys.readouterr()
    return exc.value.code, out.out, out.err


def test_cache_subcommand(tmp_path, capsys):
    """Test dgd cache stats, clear and prune against a real database"""
    db = str(tmp_path / "results.db")
    run_cached(["fusion", "S3"], db, capsys)
    run_cached(["group", "S3"], db, capsys)
    code, out, _ = run_cached(["cache"], db, capsys)
    assert code == main.EXIT_OK
    stats = json.loads(out)["stats"]
    assert stats["total_entries"] == 2
    assert set(stats["commands"]) == {"fusion", "group"}
    code, out, _ = run_cached(["cache", "clear", "--group", "S3", "--only", "fusion"], db, capsys)
    assert code == main.EXIT_OK
    assert json.loads(out)["removed"] == 1
    code, out, _ = run_cached(["cache", "prune", "--days", "30"], db, capsys)
    assert json.loads(out)["removed"] == 0


def test_cache_prune_needs_days(tmp_path, capsys):
    """Test dgd cache prune without --days is an input error"""
    code, _, err = run_cached(["cache", "prune"], str(tmp_path / "results.db"), capsys)
    assert code == main.EXIT_INPUT_ERROR
    assert "--days" in err


def test_cache_max_age_flag(tmp_path, capsys):
    """Test --cache-max-age is validated and accepted by every command"""
    db = str(tmp_path / "results.db")
    code, _, _ = run_cached(["group", "S3", "--cache-max-age", "30"], db, capsys)
    assert code == main.EXIT_OK
    code, _, err = run_cached(["group", "S3", "--cache-max-age", "-1"], db, capsys)
    assert code == main.EXIT_INPUT_ERROR
