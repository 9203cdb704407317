"""CLI contract: precedence, report schema, exit codes, reproducibility."""

from __future__ import annotations

import argparse
import json
import re
import subprocess
import sys

import pytest

from demonlab import cli
from demonlab.cli import UsageError


def run_cli(*args: str, env_extra: dict | None = None) -> subprocess.CompletedProcess:
    import os

    env = dict(os.environ)
    env.pop("DEMONLAB_SEED", None)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "demonlab", *args],
        capture_output=True,
        text=True,
        timeout=300,
        env=env,
    )


def strip_wall_time(body: str) -> str:
    return re.sub(r'^\s*"wall_time_s":.*\n', "", body, flags=re.MULTILINE)


def _namespace(scenario: str, **kwargs) -> argparse.Namespace:
    table = cli._param_table(scenario)
    ns = argparse.Namespace(config=kwargs.pop("config", None))
    for key in table:
        setattr(ns, key, kwargs.get(key))
    return ns


class TestResolveConfig:
    def test_defaults(self, monkeypatch):
        monkeypatch.delenv("DEMONLAB_SEED", raising=False)
        config = cli.resolve_config("szilard", _namespace("szilard"))
        assert config.params["cycles"] == 1
        assert config.params["seed"] == 0
        assert config.params["temperature"] == 1.0

    def test_flags_win(self, monkeypatch):
        monkeypatch.delenv("DEMONLAB_SEED", raising=False)
        ns = _namespace("szilard", cycles="10", seed="7")
        config = cli.resolve_config("szilard", ns)
        assert config.scenario == "szilard"
        assert config.params["cycles"] == 10
        assert config.params["seed"] == 7

    def test_config_file_between_flags_and_defaults(self, monkeypatch, tmp_path):
        monkeypatch.delenv("DEMONLAB_SEED", raising=False)
        cfg = tmp_path / "run.cfg"
        cfg.write_text("temperature = 300  # bath\ncycles = 4\n")
        ns = _namespace("szilard", config=str(cfg), temperature="150")
        config = cli.resolve_config("szilard", ns)
        assert config.params["temperature"] == 150.0  # flag beats file
        assert config.params["cycles"] == 4  # file beats default

    def test_env_seed_lowest_precedence(self, monkeypatch, tmp_path):
        monkeypatch.setenv("DEMONLAB_SEED", "99")
        config = cli.resolve_config("szilard", _namespace("szilard"))
        assert config.params["seed"] == 99
        cfg = tmp_path / "run.cfg"
        cfg.write_text("seed = 55\n")
        config = cli.resolve_config("szilard", _namespace("szilard", config=str(cfg)))
        assert config.params["seed"] == 55
        ns = _namespace("szilard", config=str(cfg), seed="7")
        assert cli.resolve_config("szilard", ns).params["seed"] == 7

    def test_unknown_config_key_is_hard_error(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("cycels = 10\n")
        with pytest.raises(UsageError, match="unknown config key"):
            cli.resolve_config("szilard", _namespace("szilard", config=str(cfg)))

    def test_type_mismatch_is_hard_error(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("cycles = soon\n")
        with pytest.raises(UsageError, match="expected int"):
            cli.resolve_config("szilard", _namespace("szilard", config=str(cfg)))

    def test_malformed_line_rejected(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("cycles 10\n")
        with pytest.raises(UsageError, match="key = value"):
            cli.parse_config_file(cfg)

    def test_duplicate_key_rejected(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("cycles = 1\ncycles = 2\n")
        with pytest.raises(UsageError, match="duplicate"):
            cli.parse_config_file(cfg)

    def test_comments_and_blanks_ignored(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("# header\n\nseed = 3 # trailing\n")
        assert cli.parse_config_file(cfg) == {"seed": "3"}


class TestScenarios:
    def test_szilard_report(self, tmp_path):
        out = tmp_path / "report.json"
        result = run_cli(
            "szilard", "--cycles", "10", "--seed", "7", "--output", str(out)
        )
        assert result.returncode == 0, result.stderr
        report = json.loads(out.read_text())
        assert report["scenario"] == "szilard"
        assert report["config"]["cycles"] == 10
        assert report["config"]["seed"] == 7
        assert report["derived"]["insertion_dS"] == pytest.approx(0.693147, abs=1e-6)
        assert report["derived"]["net_dS"] == 0.0
        assert report["verdicts"]["prefix_nonnegative"] is True
        assert report["version"] == "0.1.0"

    def test_speed_demon_ratio_flag(self):
        result = run_cli("speed-demon", "--ratio", "100", "--attempts", "2000")
        assert result.returncode == 0, result.stderr
        report = json.loads(result.stdout)
        assert report["derived"]["feasibility_ratio"] == pytest.approx(10.0, abs=1e-9)
        assert report["verdicts"]["sorting_infeasible"] is True

    def test_h_theorem_equilibrium_start(self):
        result = run_cli(
            "h-theorem", "--states", "4", "--p0", "0.25,0.25,0.25,0.25", "--t-max", "5"
        )
        assert result.returncode == 0, result.stderr
        report = json.loads(result.stdout)
        assert report["verdicts"]["entropy_monotone"] is True
        assert abs(report["derived"]["S_final"] - report["derived"]["S_initial"]) < 1e-10

    def test_fgr_scenario(self):
        result = run_cli("fgr", "--gamma", "2.0", "--samples", "50000", "--seed", "3")
        assert result.returncode == 0, result.stderr
        report = json.loads(result.stdout)
        assert report["verdicts"]["survival_within_3sigma"] is True
        assert report["derived"]["lifetime"] == 0.5

    def test_qiur_scenario(self):
        result = run_cli("qiur", "--sigma-x", "1.0")
        assert result.returncode == 0, result.stderr
        report = json.loads(result.stdout)
        assert report["verdicts"]["bound_satisfied"] is True
        assert report["derived"]["joint"] == pytest.approx(0.306853, abs=1e-3)

    def test_einstein_scenario_with_brillouin(self):
        result = run_cli(
            "einstein",
            "--n-components", "3",
            "--volume-ratio", "0.5",
            "--trials", "20000",
            "--brillouin-b", "10",
            "--info-fraction", "1e-6",
        )
        assert result.returncode == 0, result.stderr
        report = json.loads(result.stdout)
        assert report["derived"]["probability"] == 0.125
        assert report["verdicts"]["identity_ok"] is True
        assert report["verdicts"]["mc_within_3sigma"] is True
        assert report["verdicts"]["brillouin_net_positive"] is True

    def test_brownian_scenario(self):
        result = run_cli("brownian", "--steps", "100", "--walkers", "20000")
        assert result.returncode == 0, result.stderr
        report = json.loads(result.stdout)
        assert report["verdicts"]["msd_within_3sigma"] is True
        assert report["verdicts"]["msd_fit_linear"] is True

    def test_csv_output(self, tmp_path):
        out = tmp_path / "ledger.csv"
        result = run_cli(
            "szilard", "--cycles", "2", "--output", str(out), "--format", "csv"
        )
        assert result.returncode == 0
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "cycle,step_label,dS,dW,cum_dS"
        assert len(lines) == 5


class TestExitContract:
    def test_usage_error_unknown_flag(self):
        result = run_cli("szilard", "--cycels", "10")
        assert result.returncode == 2

    def test_usage_error_missing_scenario(self):
        result = run_cli()
        assert result.returncode == 2

    def test_usage_error_unknown_config_key(self, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("not_a_key = 1\n")
        result = run_cli("szilard", "--config", str(cfg))
        assert result.returncode == 2
        assert "unknown config key" in result.stderr

    def test_scenario_failure_asymmetric_rates(self, tmp_path):
        rates = tmp_path / "rates.txt"
        rates.write_text("0 1\n2 0\n")
        result = run_cli("h-theorem", "--rates-file", str(rates))
        assert result.returncode == 1
        assert "symmetric" in result.stderr

    def test_env_seed_respected_end_to_end(self, tmp_path):
        out = tmp_path / "r.json"
        result = run_cli(
            "szilard", "--cycles", "3", "--output", str(out),
            env_extra={"DEMONLAB_SEED": "31"},
        )
        assert result.returncode == 0
        assert json.loads(out.read_text())["seed"] == 31


class TestReproducibility:
    def test_byte_identical_reports_excluding_wall_time(self, tmp_path):
        # identical invocation twice, including the output path in the config
        out = tmp_path / "r.json"
        args = ["einstein", "--trials", "20000", "--seed", "5", "--output", str(out)]
        assert run_cli(*args).returncode == 0
        body_a = out.read_text()
        assert run_cli(*args).returncode == 0
        body_b = out.read_text()
        assert strip_wall_time(body_a).encode() == strip_wall_time(body_b).encode()
        assert body_a != ""

    def test_stable_key_ordering(self, tmp_path):
        out = tmp_path / "r.json"
        run_cli("szilard", "--output", str(out))
        keys = list(json.loads(out.read_text()))
        assert keys == sorted(keys)
