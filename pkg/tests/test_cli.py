import json
import re
import subprocess
import sys
from pathlib import Path

import pytest

from dunkl_bose.cli import EXIT_DOMAIN, EXIT_NUMERICAL, EXIT_OK, main
from dunkl_bose.tables import read_csv_table, revalidate_sweep


def _value(pattern: str, text: str) -> float:
    match = re.search(pattern, text)
    assert match is not None, text

    return float(match.group(1))


def test_module_help():
    cp = subprocess.run(
        [sys.executable, "-m", "dunkl_bose", "--help"], capture_output=True, text=True
    )

    assert cp.returncode == 0, cp.stderr
    assert "Thermodynamics" in cp.stdout


def test_version(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["--version"])

    assert excinfo.value.code == 0
    assert "dunkl-bose" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [[], ["sweep", "--steps", "many"], ["tc", "--format", "xml"]])
def test_bad_arguments(argv):
    with pytest.raises(SystemExit) as excinfo:
        main(argv)

    assert excinfo.value.code == 2


def test_tc(capsys):
    assert main(["tc", "-d", "3", "--theta", "0", "-N", "1e6"]) == EXIT_OK
    out = capsys.readouterr().out

    assert _value(r"t_c (\S+)", out) == pytest.approx(94.0499, abs=1e-4)
    assert _value(r"tc_ratio (\S+)", out) == pytest.approx(1.0, rel=1e-12)
    assert "tc_ratio 1\n" in out


def test_tc_homogeneous(capsys):
    assert main(["tc", "-d", "3", "--homogeneous", "--hypervolume", "2"]) == EXIT_OK

    assert _value(r"t_c (\S+)", capsys.readouterr().out) == pytest.approx(
        (1e6 / 2.6123753486854883) ** (2.0 / 3.0), rel=1e-9
    )


def test_tc_without_transition(capsys):
    assert main(["tc", "-d", "1"]) == EXIT_OK

    assert "no_transition" in capsys.readouterr().out


@pytest.mark.parametrize(
    "theta, expected",
    [("1.2", "classical_anomaly"), ("0.3", "valid"), ("-0.6", "invalid_below")],
)
def test_validate_theta(capsys, theta, expected):
    assert main(["validate-theta", theta]) == EXIT_OK

    assert capsys.readouterr().out.splitlines()[0] == expected


def test_invalid_theta_exits_with_domain_code(capsys):
    assert main(["tc", "--theta", "-0.6"]) == EXIT_DOMAIN

    assert "theta" in capsys.readouterr().err


def test_numerical_failure_exit_code(capsys):
    argv = ["sweep", "-d", "1", "-N", "1e3", "--t-min", "1", "--t-max", "2", "--steps", "2"]

    assert main(argv) == EXIT_NUMERICAL
    assert "numerical error" in capsys.readouterr().err


def test_sweep_rejects_single_step():
    assert main(["sweep", "--steps", "1"]) == EXIT_DOMAIN


def test_jump(capsys):
    assert main(["jump", "--theta", "0"]) == EXIT_OK
    out = capsys.readouterr().out

    assert _value(r"delta_c\W+([-+0-9.eE]+)", out) == pytest.approx(6.57687, abs=1e-5)
    assert _value(r"delta_c_direct\W+([-+0-9.eE]+)", out) == pytest.approx(6.57687, abs=1e-5)
    assert _value(r"normalized\W+([-+0-9.eE]+)", out) == pytest.approx(1.0)


def _sweep_argv(out: Path, workers: int) -> list[str]:
    return [
        "sweep",
        "-d", "3",
        "--theta", "0.3",
        "--relative",
        "--t-min", "0.5",
        "--t-max", "1.5",
        "--steps", "4",
        "--workers", str(workers),
        "--out", str(out),
    ]


@pytest.mark.slow
def test_sweep_csv_is_reproducible_and_revalidates(tmp_path):
    first, second = tmp_path / "one.csv", tmp_path / "four.csv"

    assert main(_sweep_argv(first, 1)) == EXIT_OK
    assert main(_sweep_argv(second, 4)) == EXIT_OK
    assert first.read_bytes() == second.read_bytes()

    metadata, frame = read_csv_table(first.read_text(encoding="utf-8"))
    points = revalidate_sweep(frame, metadata["spec"]["n_particles"])

    assert len(points) == 5
    assert metadata["spec"]["theta"] == 0.3
    assert (frame["t_over_tc"] == 1.0).sum() == 1


def test_sweep_json(capsys):
    argv = ["sweep", "--relative", "--t-min", "0.5", "--t-max", "2", "--steps", "3", "--format", "json"]

    assert main(argv) == EXIT_OK
    document = json.loads(capsys.readouterr().out)

    assert document["metadata"]["kind"] == "sweep"
    assert [row["regime"] for row in document["rows"]] == ["condensed", "condensed", "normal", "normal"]


def test_fig1(capsys):
    assert main(["fig1", "--steps", "5"]) == EXIT_OK
    _, frame = read_csv_table(capsys.readouterr().out)

    assert len(frame) == 8
    assert frame["normalized"].iloc[0] == 1.0


def test_fig2(capsys):
    argv = ["fig2", "--thetas", "0", "-0.2", "--t-min", "0.5", "--t-max", "1.5", "--steps", "3"]

    assert main(argv) == EXIT_OK
    metadata, frame = read_csv_table(capsys.readouterr().out)

    assert len(frame) == 6
    assert metadata["notes"]["reference_peak"] == pytest.approx(4.38458, abs=1e-5)


def test_classical(capsys):
    assert main(["classical", "--theta", "0", "0.3", "--t-over-tc", "100"]) == EXIT_OK
    _, frame = read_csv_table(capsys.readouterr().out)

    assert (frame["relative_difference"].abs() < 1e-2).all()


def test_classical_rejects_low_temperature():
    assert main(["classical", "--theta", "0", "--t-over-tc", "10"]) == EXIT_DOMAIN


def test_exact_check(capsys):
    argv = ["exact-check", "-d", "3", "--theta", "0", "--t-grid", "50", "100", "--z", "1"]

    assert main(argv) == EXIT_OK
    metadata, frame = read_csv_table(capsys.readouterr().out)

    assert metadata["kind"] == "exact-check"
    assert (frame["n_deviation_corrected"].abs() < 1e-2).all()
    assert (frame["n_deviation"].abs() < 5e-2).all()


def test_exact_check_needs_integer_dimension():
    assert main(["exact-check", "-d", "2.5", "--t-grid", "10"]) == EXIT_DOMAIN
