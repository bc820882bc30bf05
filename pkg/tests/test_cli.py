import importlib.resources as resources
import json

import pytest

from tiltcheck import cli


def run_cli(argv, capsys):
    code = cli.run(argv)
    out = capsys.readouterr().out
    return code, json.loads(out) if out else None


def test_verify_kapranov(capsys):
    code, report = run_cli(["verify", "kapranov", "--d", "2", "--n", "4"], capsys)
    assert code == 0
    assert report["verdict"] == "pass"
    assert report["result"]["k0_rank"] == "6"


def test_verify_failure_exit_code(capsys):
    code, report = run_cli(["verify", "beilinson", "--n", "1", "--degrees", "0,-1"], capsys)
    assert code == 1
    assert report["verdict"] == "fail"
    assert report["result"]["triangularity_witness"] == ["1", "0"]


def test_bott_spec_example(capsys):
    code, report = run_cli(["bott", "--space", "grass:2,4", "--sub-dual", "0,-1"], capsys)
    assert code == 0
    assert report["result"] == {"zero": True}


def test_bott_flag_space(capsys):
    code, report = run_cli(["bott", "--space", "flag:1,2;3", "--blocks", "0|0|0"], capsys)
    assert code == 0
    assert report["result"]["dimension"] == "1"


def test_descent_bs(capsys):
    code, report = run_cli(["descent", "bs", "--degree", "2", "--period", "2"], capsys)
    assert code == 0
    assert report["result"]["total_rank"] == "3"
    assert report["result"]["end_dim"] == "9"


def test_descent_gbs(capsys):
    code, report = run_cli(
        ["descent", "gbs", "--degree", "4", "--period", "2", "--d", "2"], capsys
    )
    assert code == 0
    assert report["result"]["summand_count"] == "6"


def test_partitions_and_lr_and_dim(capsys):
    code, report = run_cli(["partitions", "--rows", "2", "--cols", "2"], capsys)
    assert code == 0
    assert report["result"]["count"] == "6"
    code, report = run_cli(["lr", "--a", "2,1", "--b", "1", "--rank", "3"], capsys)
    assert code == 0
    assert len(report["result"]["terms"]) == 3
    code, report = run_cli(["schur-dim", "--weight", "2,1", "--n", "3"], capsys)
    assert report["result"]["dimension"] == "8"


def test_euler(capsys):
    code, report = run_cli(["euler", "--a", "1", "--b", "", "--d", "2", "--n", "4"], capsys)
    assert code == 0
    assert report["result"]["euler_characteristic"] == "4"


def test_fibration_search_plan_file(capsys, tmp_path):
    data = resources.files("tiltcheck") / "data"
    plan_path = tmp_path / "plan.json"
    plan_path.write_text((data / "hirzebruch_plan.json").read_text(encoding="utf-8"))
    code, report = run_cli(["fibration", "search", "--plan", str(plan_path)], capsys)
    assert code == 0
    assert report["result"]["verified"] is True
    assert report["result"]["twists"] == ["1"]
    assert report["result"]["summand_count"] == "4"


def test_fibration_fixed_twist_plan(capsys, tmp_path):
    data = resources.files("tiltcheck") / "data"
    plan_path = tmp_path / "plan.json"
    plan_path.write_text((data / "hirzebruch_plan.json").read_text(encoding="utf-8"))
    code, report = run_cli(
        ["fibration", "plan", "--plan", str(plan_path), "--twists", "0"], capsys
    )
    assert code == 1
    assert report["result"]["verified"] is False
    assert report["result"]["obstruction"] is not None


def test_fibration_plan_with_table_stage(capsys, tmp_path):
    data = resources.files("tiltcheck") / "data"
    table_path = tmp_path / "conic.json"
    table_path.write_text((data / "conic_fiber.json").read_text(encoding="utf-8"))
    plan = {
        "cap": 3,
        "root": {"dim": 1, "kind": "pn"},
        "stages": [{"kind": "table", "path": str(table_path)}],
    }
    plan_path = tmp_path / "plan.json"
    plan_path.write_text(json.dumps(plan))
    code, report = run_cli(["fibration", "search", "--plan", str(plan_path)], capsys)
    assert code == 0
    assert report["result"]["verified"] is True
    assert report["result"]["summand_count"] == "4"


def test_determinism_byte_identical(capsys):
    argv = ["verify", "kapranov", "--d", "2", "--n", "4"]
    cli.run(argv)
    first = capsys.readouterr().out
    cli.run(argv)
    second = capsys.readouterr().out
    assert first == second


def test_numbers_are_strings(capsys):
    _code, report = run_cli(["schur-dim", "--weight", "2,1", "--n", "3"], capsys)
    assert isinstance(report["result"]["dimension"], str)


def test_invalid_inputs_exit_2(capsys):
    assert cli.run(["bott", "--space", "mystery:2", "--sub", "1"]) == 2
    capsys.readouterr()
    assert cli.run(["euler", "--a", "1", "--d", "4", "--n", "4"]) == 2
    capsys.readouterr()
    with pytest.raises(SystemExit) as exc:
        cli.run(["no-such-command"])
    assert exc.value.code == 2


def test_descent_tower_plan_file(capsys, tmp_path):
    plan = {
        "stages": [
            {"algebra": {"degree": 2, "period": 2}, "kind": "bs"},
            {"algebra": {"degree": 2, "period": 2}, "kind": "bs"},
        ]
    }
    path = tmp_path / "tower.json"
    path.write_text(json.dumps(plan))
    code, report = run_cli(["descent", "tower", "--plan", str(path)], capsys)
    assert code == 0
    assert report["result"]["summand_count"] == "4"
    assert report["result"]["total_rank"] == "9"
    assert report["result"]["end_dim"] == "81"


def test_pretty_is_same_payload(capsys):
    code, plain = run_cli(["schur-dim", "--weight", "1,1", "--n", "4"], capsys)
    assert code == 0
    code, pretty = run_cli(
        ["--pretty", "schur-dim", "--weight", "1,1", "--n", "4"], capsys
    )
    assert code == 0
    assert plain == pretty
    assert plain["result"]["dimension"] == "6"


def test_jobs_flag(capsys):
    code, report = run_cli(
        ["--jobs", "2", "verify", "kapranov", "--d", "2", "--n", "4"], capsys
    )
    assert code == 0
    assert report["result"]["k0_rank"] == "6"


def test_selftest_subset(capsys):
    code = cli.run(["selftest", "--criteria", "3"])
    captured = capsys.readouterr()
    assert code == 0
    report = json.loads(captured.out)
    assert report["verdict"] == "pass"
    assert "PASS 3" in captured.err
