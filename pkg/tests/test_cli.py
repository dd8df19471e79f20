import json
import subprocess
import sys

import pytest

from ellipsum.cli import main
from ellipsum.suites import SUITES


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, out


class TestList:
    def test_prints_ids_and_suites(self, capsys):
        code, out = run_cli(["list"], capsys)
        lines = out.strip().splitlines()
        assert code == 0
        assert "e87" in lines and "e109" in lines and "quartic_sum" in lines
        for suite in ("kernel", "inversion", "determinants", "cn", "conjecture"):
            assert suite in lines
        assert len(lines) == 31 + len(SUITES)


class TestRun:
    def test_identity_run_writes_report(self, tmp_path, capsys):
        out_path = tmp_path / "report.json"
        code, out = run_cli(
            ["run", "--identity", "e87", "--trials", "50", "--seed", "42",
             "--tol", "1e-9", "--json", str(out_path)], capsys)
        assert code == 0
        payload = json.loads(out_path.read_text())
        assert payload["schema"] == 1
        assert payload["rng"]
        rep = payload["reports"][0]
        assert rep["identity_id"] == "e87"
        assert rep["max_rel_err"] <= 1e-9
        assert rep["failures"] == []

    def test_unknown_identity_is_usage_error(self, capsys):
        code = main(["run", "--identity", "zzz"])
        capsys.readouterr()
        assert code == 2

    def test_missing_target_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main(["run"])
        assert exc.value.code == 2

    def test_suite_run(self, tmp_path, capsys):
        out_path = tmp_path / "suite.json"
        code, out = run_cli(
            ["run", "--suite", "conjecture", "--n", "2", "--N", "2",
             "--trials", "5", "--seed", "3", "--json", str(out_path)], capsys)
        assert code == 0
        payload = json.loads(out_path.read_text())
        names = [c["name"] for c in payload["suite_checks"]]
        assert names == ["conjecture_n2", "rectangle_evaluation_n2"]
        assert all(c["passed"] for c in payload["suite_checks"])

    def test_custom_sampling_region(self, capsys):
        code, out = run_cli(
            ["run", "--identity", "e87", "--trials", "10", "--seed", "5",
             "--p-mod", "0.0,0.0"], capsys)
        assert code == 0

    def test_determinism_byte_identical_modulo_timing(self, tmp_path, capsys):
        paths = []
        for run_index in (0, 1):
            path = tmp_path / f"out{run_index}.json"
            code, _ = run_cli(
                ["run", "--identity", "thmr_r2", "--trials", "25",
                 "--seed", "9", "--json", str(path)], capsys)
            assert code == 0
            paths.append(path)

        def normalized(path):
            payload = json.loads(path.read_text())
            for rep in payload["reports"]:
                rep.pop("wall_time_ms")
            return json.dumps(payload, sort_keys=True)

        assert normalized(paths[0]) == normalized(paths[1])


class TestConsoleEntry:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "ellipsum.cli", "list"],
            capture_output=True, text=True)
        assert proc.returncode == 0
        assert "e109" in proc.stdout
