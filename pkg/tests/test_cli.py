import json

import pandas as pd
import pytest

from src.cli import OUTPUT_DIR_VARIABLE, RunConfig, default_output_dir, main
from src.params_constants import ParameterRegimeError


def test_constants_prints_selected_quantities(tmp_path, capsys):
    code = main(["constants", "--salpha", "--alpha", "0.5", "--output-dir", str(tmp_path)])
    assert code == 0
    assert capsys.readouterr().out.strip() == "salpha 0.25"


def test_constants_prints_quantities_in_declaration_order(tmp_path, capsys):
    code = main(["constants", "--kappa", "--salpha", "--n", "2", "--output-dir", str(tmp_path)])
    assert code == 0
    lines = capsys.readouterr().out.splitlines()
    assert [line.split()[0] for line in lines] == ["salpha", "kappa"]
    assert float(lines[1].split()[1]) == pytest.approx(1.0 / 6.0)


def test_constants_writes_the_table(tmp_path):
    assert main(["constants", "--alpha", "0.5", "--output-dir", str(tmp_path)]) == 0
    table = pd.read_csv(tmp_path / "constants.csv")
    assert set(table["alpha"]) == {0.5}
    assert len(table) == 3


def test_constants_table_as_json(tmp_path):
    assert main(["constants", "--format", "json", "--output-dir", str(tmp_path)]) == 0
    records = json.loads((tmp_path / "constants.json").read_text())
    assert len(records) == 12


@pytest.mark.parametrize(
    "argv",
    [
        ["constants", "--salpha", "--alpha", "1.5"],
        ["constants", "--inverse-eta", "--r", "1.8"],
        ["verify", "--suite", "nss", "--alpha", "0.5"],
    ],
)
def test_invalid_parameters_exit_with_code_4(tmp_path, argv):
    assert main(argv + ["--output-dir", str(tmp_path)]) == 4


def test_usage_errors_exit_with_code_4(tmp_path):
    with pytest.raises(SystemExit) as error:
        main(["verify", "--suite", "bogus", "--output-dir", str(tmp_path)])
    assert error.value.code == 4


def test_solve_writes_field_trace_and_summary(tmp_path, capsys):
    code = main(
        ["solve", "--alpha", "0.5", "--n-r", "16", "--n-t", "32", "--output-dir", str(tmp_path)]
    )
    assert code == 0
    assert "converged True" in capsys.readouterr().out
    field = pd.read_csv(tmp_path / "solution_field.csv")
    assert len(field) == 16 * 32 + 1
    assert (tmp_path / "solution_trace.jsonl").read_text().count("\n") == 1
    summary = json.loads((tmp_path / "solution_summary.json").read_text())
    assert summary["reason"] == "tolerance"


def test_verify_writes_reports(tmp_path, capsys):
    assert main(["verify", "--suite", "nss", "--output-dir", str(tmp_path)]) == 0
    assert "no_small_solutions" in capsys.readouterr().out
    reports = json.loads((tmp_path / "verify_nss.json").read_text())
    assert reports[0]["status"] == "pass"
    summary = pd.read_csv(tmp_path / "verify_nss_summary.csv")
    assert list(summary.columns) == ["check_id", "status", "passed", "margin", "params"]


def test_verify_zero_field_passes_vacuously(tmp_path):
    argv = ["verify", "--suite", "nss", "--family", "zero", "--eps", "0.5", "--n", "1",
            "--output-dir", str(tmp_path)]
    assert main(argv) == 0
    reports = json.loads((tmp_path / "verify_nss.json").read_text())
    assert reports[0]["margin"] == "inf"


@pytest.mark.parametrize(
    "kwargs",
    [
        {"subcommand": "plot"},
        {"subcommand": "constants", "output_format": "xml"},
        {"subcommand": "verify", "suite": "bogus"},
        {"subcommand": "verify", "suite": "nss", "parameters": {"alpha": 0.5}},
        {"subcommand": "solve", "parameters": {"epsilon": 0.5}},
        {"subcommand": "constants", "quantities": ("salpha", "volume")},
    ],
)
def test_run_config_validation(kwargs):
    with pytest.raises(ParameterRegimeError):
        RunConfig(**kwargs)


def test_output_dir_from_environment(monkeypatch, tmp_path):
    monkeypatch.setenv(OUTPUT_DIR_VARIABLE, str(tmp_path))
    assert default_output_dir() == tmp_path
    assert RunConfig("constants").output_dir == tmp_path


@pytest.mark.parametrize(
    "argv",
    [
        ["constants", "--alpha", "0.5"],
        ["solve", "--alpha", "0.5", "--b", "0.01", "--n-r", "16", "--n-t", "32", "--max-iter", "20"],
        ["verify", "--suite", "ode", "--seed", "3"],
    ],
)
def test_repeated_runs_are_byte_identical(tmp_path, capsys, argv):
    outputs = []
    for run in ("first", "second"):
        directory = tmp_path / run
        code = main(argv + ["--output-dir", str(directory)])
        files = {path.name: path.read_bytes() for path in sorted(directory.iterdir())}
        outputs.append((code, capsys.readouterr().out, files))
    assert outputs[0][2]
    assert outputs[0] == outputs[1]


def test_verify_passes_solver_options_to_the_suite(tmp_path):
    argv = ["verify", "--suite", "kobayashi", "--n-r", "16", "--n-t", "32", "--max-iter", "3",
            "--relaxation", "0.5", "--output-dir", str(tmp_path)]
    assert main(argv) == 2
    report = json.loads((tmp_path / "verify_kobayashi.json").read_text())[0]
    assert report["status"] == "inconclusive"
    assert report["params"]["max_iter"] == 3
    assert report["params"]["relaxation"] == 0.25


def test_solver_options_belong_to_the_picard_suites(tmp_path):
    assert main(["verify", "--suite", "nss", "--relaxation", "0.5", "--output-dir", str(tmp_path)]) == 4
