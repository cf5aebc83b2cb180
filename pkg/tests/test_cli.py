import json
import subprocess
import sys

import pytest

from pwlcanard.config import (RunConfig, load_config, normal_form_from,
                              parse_config_text)


def run_cli(*args, cwd=None):
    return subprocess.run([sys.executable, "-m", "pwlcanard.cli", *args],
                          capture_output=True, text=True, cwd=cwd)


class TestConfig:
    def test_defaults_valid(self):
        cfg = RunConfig()
        assert cfg.phi_name == "arctan"

    def test_parse_text(self):
        ov = parse_config_text("# comment\n\nepsilon = 0.2\ncase=saddle.1\n"
                               "time_reversed = true\nn_scan = 48\n")
        assert ov == {"epsilon": 0.2, "case": "saddle.1",
                      "time_reversed": True, "n_scan": 48}

    def test_unknown_key_rejected(self):
        with pytest.raises(ValueError, match="unknown key"):
            parse_config_text("epsilno = 0.2\n")

    def test_duplicate_key_rejected(self):
        with pytest.raises(ValueError, match="duplicate"):
            parse_config_text("epsilon = 0.2\nepsilon = 0.3\n")

    def test_bad_value_rejected(self):
        with pytest.raises(ValueError):
            parse_config_text("time_reversed = maybe\n")

    def test_unknown_case_rejected(self):
        with pytest.raises(ValueError, match="unknown case"):
            RunConfig(case="nope")

    def test_case_overrides_params(self):
        cfg = load_config(None, case="saddle.1")
        nf = normal_form_from(cfg)
        assert nf.beta_minus == -1.0 and nf.gamma_minus == 1.5

    def test_file_and_override_merge(self, tmp_path):
        p = tmp_path / "run.cfg"
        p.write_text("epsilon = 0.2\nseed = 11\n")
        cfg = load_config(p, seed=42)
        assert cfg.epsilon == 0.2 and cfg.seed == 42


class TestSubcommands:
    def test_classify_json(self, tmp_path):
        r = run_cli("classify", "--case", "saddle.3", "--out", str(tmp_path))
        assert r.returncode == 0
        payload = json.loads((tmp_path / "report.json").read_text())
        assert payload["case_id"] == "saddle.3"
        assert payload["claim"] == "AtMostOneZero"
        assert payload["schema_version"] == 1

    def test_classify_csv(self, tmp_path):
        r = run_cli("classify", "--case", "focus.1", "--format", "csv",
                    "--out", str(tmp_path))
        assert r.returncode == 0
        text = (tmp_path / "report.csv").read_text()
        lines = text.splitlines()
        assert lines[0].startswith("case_id,")
        assert lines[1].startswith("focus.1,Focus,")

    def test_sdi_pass_and_artifacts(self, tmp_path):
        r = run_cli("sdi", "--case", "saddle.3", "--out", str(tmp_path))
        assert r.returncode == 0
        assert "PASS case=saddle.3" in r.stdout
        for name in ("report.json", "samples.csv", "sdi.svg"):
            assert (tmp_path / name).exists()
        payload = json.loads((tmp_path / "report.json").read_text())
        assert payload["verdict"] == "PASS"
        assert len(payload["zeros"]) == 1

    def test_portrait_deterministic(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        assert run_cli("portrait", "--case", "saddle.1", "--out", str(a)).returncode == 0
        assert run_cli("portrait", "--case", "saddle.1", "--out", str(b)).returncode == 0
        assert (a / "portrait.svg").read_bytes() == (b / "portrait.svg").read_bytes()

    def test_verify_single_suite(self, tmp_path):
        r = run_cli("verify", "--suite", "symmetry", "--out", str(tmp_path))
        assert r.returncode == 0
        assert "PASS suite=symmetry" in r.stdout
        payload = json.loads((tmp_path / "verify_summary.json").read_text())
        assert payload["all_passed"] is True

    def test_unknown_case_exits_2(self, tmp_path):
        r = run_cli("classify", "--case", "nope", "--out", str(tmp_path))
        assert r.returncode == 2
        assert "unknown case" in r.stderr

    def test_bad_config_exits_2(self, tmp_path):
        p = tmp_path / "bad.cfg"
        p.write_text("bogus = 1\n")
        r = run_cli("sdi", "--config", str(p), "--out", str(tmp_path))
        assert r.returncode == 2
        assert "unknown key" in r.stderr

    def test_unknown_suite_exits_2(self, tmp_path):
        r = run_cli("verify", "--suite", "nope", "--out", str(tmp_path))
        assert r.returncode == 2
