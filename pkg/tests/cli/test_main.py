"""Tests for the command-line entry point."""
import json

import pytest

from petersen_flow.cli.main import (
    EXIT_ERROR,
    EXIT_OK,
    EXIT_VALIDATION,
    build_parser,
    main,
    make_config,
)
from petersen_flow.cli.suites import SUITES
from petersen_flow.combinatorics.amplitudes import YoungDiagram
from petersen_flow.config.settings import OutputFormat
from petersen_flow.traces.engine import TraceEngine
from petersen_flow.transfer.builder import BlockBuilder


@pytest.fixture
def cli(cache_dir):
    """Run the CLI against an isolated cache."""

    def run(*argv):
        return main(["--cache-dir", str(cache_dir), *argv])

    return run


def test_make_config_overrides(cache_dir):
    """Global options land in the run configuration."""
    args = build_parser().parse_args(
        ["--cache-dir", str(cache_dir), "--jobs", "3", "--format", "text", "sectors", "--k", "2"]
    )
    config = make_config(args)
    assert config.cache_dir == cache_dir
    assert config.jobs == 3
    assert config.output_format is OutputFormat.TEXT


def test_flowpoly_json(cli, tmp_path):
    """G(6, 2) is assembled, validated and written as JSON."""
    out = tmp_path / "g6_2.json"
    assert cli("flowpoly", "--n", "6", "--k", "2", "--output", str(out)) == EXIT_OK
    document = json.loads(out.read_text())
    assert document["coefficients"] == ["-576", "1770", "-2221", "1498", "-593", "139", "-18", "1"]
    assert document["method"] == "complete"
    assert all(document["validation"].values())


def test_flowpoly_text(cli, tmp_path):
    """Text output shows the factored form."""
    out = tmp_path / "g6_2.txt"
    assert cli("--format", "text", "flowpoly", "--n", "6", "--k", "2", "--output", str(out)) == EXIT_OK
    assert out.read_text().startswith("(Q-1)(Q-2)(Q-3) * P_4(Q)")


def test_flowpoly_generic_graph(cli, test_data_dir, tmp_path):
    """Non-Petersen graphs go to the subset oracle."""
    out = tmp_path / "triangle.json"
    graph = test_data_dir / "triangle.json"
    assert cli("flowpoly", "--graph", str(graph), "--output", str(out)) == EXIT_OK
    assert json.loads(out.read_text())["coefficients"] == ["-1", "1"]


def test_flowpoly_domain_error(cli):
    """k must divide n for transfer assembly."""
    assert cli("flowpoly", "--n", "5", "--k", "2") == EXIT_ERROR
    assert cli("flowpoly", "--k", "2") == EXIT_ERROR


def test_roots_csv(cli, test_data_dir, tmp_path):
    """Six Petersen roots, real ones certified."""
    out = tmp_path / "roots.csv"
    code = cli(
        "roots", "--input", str(test_data_dir / "g5_2_flow.json"),
        "--digits", "20", "--certify", "--output", str(out),
    )
    assert code == EXIT_OK
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "re,im,radius,certified"
    assert len(lines) == 7
    assert sum(line.endswith(",true") for line in lines[1:]) == 4


def test_amplitudes_and_sectors(cli, tmp_path):
    """Amplitude and sector tables are written as JSON."""
    amps = tmp_path / "amps.json"
    assert cli("amplitudes", "--k", "1", "--output", str(amps)) == EXIT_OK
    assert json.loads(amps.read_text())["gamma"]["name"] == "gamma_2"
    sectors = tmp_path / "sectors.json"
    assert cli("sectors", "--k", "2", "--output", str(sectors)) == EXIT_OK
    rows = json.loads(sectors.read_text())
    assert len(rows) == 8
    assert rows[-1]["lambda"] == "trivial"


def test_sector_table_printed(cli, capsys):
    """Without an output file the sector table goes to the console."""
    assert cli("sectors", "--k", "1") == EXIT_OK
    assert "Sectors" in capsys.readouterr().out


def test_spectrum_and_qc(cli, capsys):
    """Q = 3 for k = 1 is a limiting-curve point and equals Q_c(1)."""
    assert cli("spectrum", "--k", "1", "--q", "3") == EXIT_OK
    assert "curve-b" in capsys.readouterr().out
    assert cli("qc", "--k", "1", "--bracket", "2.9,3.1") == EXIT_OK
    out = capsys.readouterr().out
    value = out.split("Q_c(1) = ")[1].split(":")[0]
    assert float(value) == pytest.approx(3.0, abs=1e-9)


def test_curve_outputs(cli, tmp_path):
    """The curve command writes both the CSV and the SVG."""
    prefix = tmp_path / "k1"
    code = cli("curve", "--k", "1", "--window", "2.5,3.5,-0.5,0.5", "--res", "7", "--output", str(prefix))
    assert code == EXIT_OK
    assert (tmp_path / "k1.csv").exists()
    assert (tmp_path / "k1.svg").exists()


def test_curve_branch_angles(cli, capsys, tmp_path):
    """k = 1 reports the two vertical outward branches."""
    prefix = tmp_path / "wide"
    code = cli(
        "curve", "--k", "1", "--window=-30,30,-30,30", "--res", "21",
        "--branch-radius", "10", "--output", str(prefix),
    )
    assert code == EXIT_OK
    out = capsys.readouterr().out
    assert "outward branch at arg Q = -1.570796" in out
    assert "outward branch at arg Q = 1.570796" in out


def test_verify_closed_form(cli, capsys):
    """The ladder suite passes end to end."""
    assert cli("verify", "--suite", "closed-form") == EXIT_OK
    assert "10/10 passed" in capsys.readouterr().out


@pytest.mark.slow
def test_verify_small_oracle(cli):
    """Every small graph matches the oracle and passes validation."""
    assert cli("--jobs", "4", "verify", "--suite", "small-oracle") == EXIT_OK


def test_qc_passes_bracket_and_config(cli, cache_dir, mocker):
    """The qc command hands its bracket and run configuration to find_qc."""
    from petersen_flow.spectra.qc import QcResult

    fake = mocker.patch(
        "petersen_flow.spectra.qc.find_qc",
        return_value=QcResult(7, 5.2352605291, (2, "(2)"), (3, "(3)"), (5.2, 5.3)),
    )
    assert cli("qc", "--k", "7", "--bracket", "5.2,5.3") == EXIT_OK
    k, bracket, config = fake.call_args.args
    assert (k, bracket) == (7, (5.2, 5.3))
    assert config.cache_dir == cache_dir


def test_primes_and_points_reach_the_plan(cache_dir):
    """--primes and --points replace the automatic evaluation plan."""
    args = build_parser().parse_args(
        [
            "--cache-dir", str(cache_dir),
            "--primes", "65521,65519,65497,65479",
            "--points", "1,2,3,4,5,6,7",
            "flowpoly", "--n", "3", "--k", "1",
        ]
    )
    config = make_config(args)
    assert config.primes == [65521, 65519, 65497, 65479]
    assert config.points == [1, 2, 3, 4, 5, 6, 7]
    block = BlockBuilder(config, use_disk_cache=False).block(1, 0, YoungDiagram(()))
    plan = TraceEngine(config, use_disk_cache=False).plan(block, 3)
    assert plan.primes == (65521, 65519, 65497, 65479)
    assert plan.points == (1, 2, 3, 4, 5, 6, 7)


def test_primes_flag_rejects_garbage():
    """Non-integer moduli stop at the parser."""
    with pytest.raises(SystemExit):
        build_parser().parse_args(["--primes", "65521,abc", "sectors", "--k", "1"])


def test_flowpoly_with_explicit_plan(cli, tmp_path):
    """An explicit plan still assembles the ladder G(3, 1)."""
    out = tmp_path / "g3_1.json"
    code = cli(
        "--primes", "65521,65519,65497,65479", "--points", "1,2,3,4,5,6,7",
        "flowpoly", "--n", "3", "--k", "1", "--output", str(out),
    )
    assert code == EXIT_OK
    assert json.loads(out.read_text())["coefficients"] == ["18", "-39", "29", "-9", "1"]


def test_verify_defaults_to_every_suite(cli, capsys, mocker):
    """Without --suite every registered suite lands on one scoreboard."""
    assert build_parser().parse_args(["verify"]).suite == "all"
    mocker.patch.dict(
        SUITES,
        {"first": lambda config: [("x", True, "")], "second": lambda config: [("y", False, "[odd-n]")]},
        clear=True,
    )
    assert cli("verify") == EXIT_VALIDATION
    out = capsys.readouterr().out
    assert "first: x" in out
    assert "second: y" in out
    assert "[odd-n]" in out
    assert "1/2 passed" in out


@pytest.mark.parametrize("suite", ["counting", "amplitudes", "structure"])
def test_verify_cheap_suites(cli, capsys, suite):
    """The combinatorial and structural suites pass."""
    assert cli("verify", "--suite", suite) == EXIT_OK
    out = capsys.readouterr().out
    passed, total = out.strip().splitlines()[-1].split()[0].split("/")
    assert passed == total


@pytest.mark.slow
@pytest.mark.parametrize("suite", ["fixture", "qc"])
def test_verify_expensive_suites(cli, suite):
    """The fixture and Q_c suites pass."""
    assert cli("verify", "--suite", suite) == EXIT_OK
