import json
import subprocess
import sys

import pytest

import rdomset.cli as cli


def run_cli(args, cwd):
    return subprocess.run(
        [sys.executable, "-m", "rdomset.cli", *args],
        capture_output=True, text=True, cwd=cwd,
    )


@pytest.fixture
def p5_file(tmp_path):
    proc = run_cli(["gen", "path", "5", "--out", "p5.el"], tmp_path)
    assert proc.returncode == 0
    return tmp_path


class TestGen:
    def test_writes_file_and_report(self, tmp_path):
        proc = run_cli(["gen", "grid", "3", "3", "--out", "g.el"], tmp_path)
        assert proc.returncode == 0
        doc = json.loads(proc.stdout)
        assert (doc["n"], doc["edges"]) == (9, 12)
        assert (tmp_path / "g.el").exists()

    def test_seeded_rerun_is_identical(self, tmp_path):
        args = ["gen", "partial_ktree", "10", "2", "0.8", "--seed", "7", "--out", "k.el"]
        run_cli(args, tmp_path)
        first = (tmp_path / "k.el").read_bytes()
        run_cli(args, tmp_path)
        assert (tmp_path / "k.el").read_bytes() == first

    def test_bad_family_is_usage_error(self, tmp_path):
        proc = run_cli(["gen", "moebius", "5", "--out", "x.el"], tmp_path)
        assert proc.returncode == 1


class TestDomset:
    def test_p5_with_verify(self, p5_file):
        proc = run_cli(["domset", "p5.el", "1", "--verify"], p5_file)
        assert proc.returncode == 0
        doc = json.loads(proc.stdout)
        assert doc["size"] == 4
        assert doc["opt_size"] == 2
        assert doc["certificate_c"] == 3

    def test_star_center_minimal(self, tmp_path):
        run_cli(["gen", "star", "7", "--out", "s.el"], tmp_path)
        doc = json.loads(run_cli(["domset", "s.el", "1"], tmp_path).stdout)
        assert doc["size"] == 1

    def test_connected_minor(self, p5_file):
        doc = json.loads(
            run_cli(["domset", "p5.el", "1", "--connected", "minor"], p5_file).stdout
        )
        assert "D_prime" in doc and "minor" in doc

    def test_order_file(self, p5_file):
        (p5_file / "ord.txt").write_text("4\n3\n2\n1\n0\n")
        doc = json.loads(
            run_cli(["domset", "p5.el", "1", "--order-file", "ord.txt"], p5_file).stdout
        )
        assert doc["order"] == [4, 3, 2, 1, 0]

    def test_missing_file_is_usage_error(self, tmp_path):
        proc = run_cli(["domset", "nope.el", "1"], tmp_path)
        assert proc.returncode == 1

    def test_byte_determinism(self, p5_file):
        a = run_cli(["domset", "p5.el", "1", "--connected", "wreach"], p5_file).stdout
        b = run_cli(["domset", "p5.el", "1", "--connected", "wreach"], p5_file).stdout
        assert a == b


class TestSimulate:
    def test_domset_matches_sequential(self, tmp_path):
        run_cli(["gen", "path", "3", "--out", "p3.el"], tmp_path)
        doc = json.loads(
            run_cli(["simulate", "p3.el", "1", "domset", "congest_bc"], tmp_path).stdout
        )
        assert doc["D"] == [0, 1]

    def test_cds_local_round_count(self, tmp_path):
        run_cli(["gen", "star", "6", "--out", "s.el"], tmp_path)
        doc = json.loads(
            run_cli(["simulate", "s.el", "1", "cds-local", "local"], tmp_path).stdout
        )
        assert doc["rounds"] == 4

    def test_wreach_trace_rounds(self, p5_file):
        proc = run_cli(
            ["simulate", "p5.el", "1", "wreach", "congest_bc", "--trace", "t.jsonl"],
            p5_file,
        )
        doc = json.loads(proc.stdout)
        assert doc["rounds"] == 2
        lines = (p5_file / "t.jsonl").read_text().strip().splitlines()
        assert len(lines) == 2
        assert all("round" in json.loads(line) for line in lines)

    def test_bandwidth_violation_exit_code(self, tmp_path):
        run_cli(["gen", "grid", "4", "4", "--out", "g.el"], tmp_path)
        proc = run_cli(
            ["simulate", "g.el", "3", "cds-congest", "congest_bc", "--kappa", "2"],
            tmp_path,
        )
        assert proc.returncode == 3
        doc = json.loads(proc.stdout)
        assert doc["error"] == "bandwidth_violation"

    def test_cds_local_requires_local_model(self, p5_file):
        proc = run_cli(["simulate", "p5.el", "1", "cds-local", "congest_bc"], p5_file)
        assert proc.returncode == 1

    def test_simulated_order_source(self, tmp_path):
        run_cli(["gen", "cycle", "6", "--out", "c.el"], tmp_path)
        doc = json.loads(
            run_cli(
                ["simulate", "c.el", "1", "domset", "congest_bc",
                 "--order-source", "simulated"],
                tmp_path,
            ).stdout
        )
        assert doc["order_rounds"] > 0
        assert doc["total_rounds"] == doc["order_rounds"] + doc["rounds"]

    def test_byte_determinism(self, p5_file):
        args = ["simulate", "p5.el", "2", "cds-congest", "congest_bc"]
        assert run_cli(args, p5_file).stdout == run_cli(args, p5_file).stdout


class TestVerify:
    def test_passes_on_p5(self, p5_file):
        proc = run_cli(["verify", "p5.el", "1"], p5_file)
        assert proc.returncode == 0
        doc = json.loads(proc.stdout)
        assert doc["passed"] is True

    def test_passes_on_k4(self, tmp_path):
        run_cli(["gen", "complete", "4", "--out", "k4.el"], tmp_path)
        proc = run_cli(["verify", "k4.el", "1"], tmp_path)
        assert proc.returncode == 0

    def test_failure_exit_code(self, monkeypatch, tmp_path, capsys):
        run_cli(["gen", "path", "3", "--out", "p3.el"], tmp_path)
        monkeypatch.setattr(
            cli, "run_battery", lambda graph, r: {"passed": False, "checks": []}
        )
        code = cli.main(["verify", str(tmp_path / "p3.el"), "1"])
        assert code == 2

    def test_usage_error_exit_code(self):
        assert cli.main(["verify"]) == 1


class TestInProcessMain:
    def test_gen_and_domset(self, tmp_path, capsys):
        assert cli.main(["gen", "path", "5", "--out", str(tmp_path / "p.el")]) == 0
        capsys.readouterr()
        assert cli.main(["domset", str(tmp_path / "p.el"), "1"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["D"] == [0, 1, 2, 3]

    def test_kappa_env_var_sets_default_cap(self, tmp_path, capsys, monkeypatch):
        cli.main(["gen", "path", "5", "--out", str(tmp_path / "p.el")])
        capsys.readouterr()
        monkeypatch.setenv("RDOMSET_KAPPA", "2")
        code = cli.main(["simulate", str(tmp_path / "p.el"), "1", "wreach", "congest_bc"])
        doc = json.loads(capsys.readouterr().out)
        assert code == 3
        assert doc["error"] == "bandwidth_violation"
