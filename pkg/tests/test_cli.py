import json
import subprocess
import sys

import pytest
from click.testing import CliRunner

from hyperbell.cache import cache_load, cache_store
from hyperbell.cli import main, run_verification
from hyperbell.triangles import Fault, higher_stirling

from golden import TABLE1, TABLE2


@pytest.fixture(autouse=True)
def no_ambient_cache(monkeypatch):
    monkeypatch.delenv("HYPERBELL_CACHE", raising=False)


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(main, list(args), catch_exceptions=False)


EXPECTED_TABLE1_CSV = (
    "m,1,2,3,4,5,6,7,8\n"
    + "\n".join(
        str(m) + "," + ",".join(str(TABLE1[m][n]) for n in range(1, 9))
        for m in range(1, 6)
    )
    + "\n"
)


class TestTable:
    def test_bell_csv_reproduces_published_grid(self, runner):
        result = invoke(runner, "table", "--n-max", "8", "--m-max", "5", "--format", "csv")
        assert result.exit_code == 0
        assert result.stdout == EXPECTED_TABLE1_CSV

    def test_single_cell(self, runner):
        result = invoke(runner, "table", "--n-max", "1", "--m-max", "1", "--format", "csv")
        assert result.stdout == "m,1\n1,1\n"

    def test_json_nests_by_m_then_n(self, runner):
        result = invoke(runner, "table", "--n-max", "4", "--m-max", "2", "--format", "json")
        doc = json.loads(result.stdout)
        assert doc["kind"] == "bell-table"
        assert doc["by_m"]["2"]["3"] == "12"
        # every emitted number re-parses to the exact integer that made it
        for m, row in doc["by_m"].items():
            for n, value in row.items():
                assert int(value) == TABLE1[int(m)][int(n)]

    def test_stirling_single_row(self, runner):
        result = invoke(runner, "stirling", "--m", "50", "--n", "5", "--format", "csv")
        lines = result.stdout.strip().split("\n")
        assert lines[0] == "n,k=1,k=2,k=3,k=4,k=5,bell"
        assert lines[1] == "5,45533300,3706375,74750,500,1,49314926"

    def test_stirling_full_triangle(self, runner):
        result = invoke(runner, "stirling", "--m", "5", "--n-max", "5", "--format", "csv")
        lines = result.stdout.strip().split("\n")
        assert len(lines) == 6
        assert lines[-1].split(",")[1:6] == [str(v) for v in TABLE2[5]["row"]]

    def test_requires_exactly_one_row_selector(self, runner):
        result = runner.invoke(main, ["stirling", "--m", "2"])
        assert result.exit_code == 2
        result = runner.invoke(main, ["stirling", "--m", "2", "--n", "3", "--n-max", "4"])
        assert result.exit_code == 2


class TestEnumerate:
    def test_list_mode_streams_twelve_lines(self, runner):
        result = invoke(runner, "enumerate", "--n", "3", "--m", "2", "--list")
        lines = result.stdout.strip().split("\n")
        assert len(lines) == 12
        assert len(set(lines)) == 12
        assert all(line.startswith("{") for line in lines)

    def test_single_atom_single_line(self, runner):
        result = invoke(runner, "enumerate", "--n", "1", "--m", "4", "--list")
        assert result.stdout == "{{{{{1}}}}}\n"

    def test_census_total(self, runner):
        result = invoke(runner, "enumerate", "--n", "5", "--m", "3", "--format", "json")
        doc = json.loads(result.stdout)
        assert doc["total"] == "1304"

    def test_budget_refusal_exits_3(self, runner):
        result = runner.invoke(main, ["enumerate", "--n", "6", "--m", "3", "--budget", "1000"])
        assert result.exit_code == 3
        assert "12915" in result.output


class TestVerify:
    def test_default_range_passes(self, runner):
        result = runner.invoke(main, ["verify"])
        assert result.exit_code == 0

    def test_eq6_wide_range(self, runner):
        result = runner.invoke(main, ["verify", "--identities", "eq6",
                                      "--n-max", "10", "--m-max", "5"])
        assert result.exit_code == 0

    def test_report_enumerates_cells(self, runner):
        result = invoke(runner, "verify", "--identities", "eq5",
                        "--n-max", "3", "--m-max", "2", "--format", "csv")
        lines = result.stdout.strip().split("\n")
        assert lines[0] == "identity,n,m,k,r,status,lhs,rhs"
        assert len(lines) == 1 + 6  # every (n, m) cell listed

    def test_fault_injection_exits_1_and_names_cell(self, runner):
        result = runner.invoke(main, ["verify", "--n-max", "4", "--m-max", "3",
                                      "--inject-fault", "2,3,2", "--format", "csv"])
        assert result.exit_code == 1
        failing = [line for line in result.stdout.split("\n") if "FAIL" in line]
        assert failing
        assert any(line.split(",")[1:4] == ["3", "2", "2"] for line in failing)

    def test_unknown_identity_is_usage_error(self, runner):
        result = runner.invoke(main, ["verify", "--identities", "eq7"])
        assert result.exit_code == 2

    def test_malformed_fault_is_usage_error(self, runner):
        result = runner.invoke(main, ["verify", "--inject-fault", "nope"])
        assert result.exit_code == 2

    def test_library_aggregation_passes(self):
        report = run_verification(
            ("eq5", "egf-agreement", "egf-composition", "egf-stacking", "enum-census"),
            n_max=4, m_max=3,
        )
        assert report.passed
        assert len(report.checks) > 50

    def test_fault_reaches_law_checks(self):
        report = run_verification(("enum-census",), n_max=4, m_max=2,
                                  fault=Fault(order=2, n=3, k=2))
        assert not report.passed


class TestEgfCommand:
    def test_bell_dump_counts(self, runner):
        result = invoke(runner, "egf", "--m", "3", "--order", "6", "--format", "csv")
        lines = result.stdout.strip().split("\n")
        counts = [int(line.split(",")[-1]) for line in lines[1:]]
        assert counts == [1, 1, 4, 22, 154, 1304, 12915]

    def test_column_dump(self, runner):
        result = invoke(runner, "egf", "--m", "5", "--order", "5", "--k", "3",
                        "--format", "csv")
        lines = result.stdout.strip().split("\n")
        assert lines[-1].split(",")[-1] == "725"
        assert lines[1].split(",")[-1] == "0"  # below the column index

    def test_rejects_column_beyond_order(self, runner):
        result = runner.invoke(main, ["egf", "--m", "2", "--order", "3", "--k", "9"])
        assert result.exit_code == 2


class TestAsymptotic:
    def test_exact_averages_and_share(self, runner):
        result = invoke(runner, "asymptotic", "--n", "5", "--m-list", "5,20,50",
                        "--format", "csv")
        blocks = result.stdout.strip().split("\n\n")
        rows = [line.split(",") for line in blocks[0].split("\n")[1:]]
        averages = [row[4] for row in rows]
        assert averages == ["12485/7556", "1617925/1360471", "53172305/49314926"]
        shares = [row[6] for row in rows]
        assert shares[-1] == "22766650/24657463"  # 45533300/49314926 reduced
        diff = blocks[1].split("\n")
        assert diff[1].split(",") == ["5", "180;180;180", "true", "180"]

    def test_single_atom(self, runner):
        result = invoke(runner, "asymptotic", "--n", "1", "--m-list", "3",
                        "--format", "csv")
        row = result.stdout.strip().split("\n")[1].split(",")
        assert row[2] == "1/1" and row[4] == "1/1"
        assert "\n\n" not in result.stdout  # no difference block for n=1

    def test_malformed_m_list(self, runner):
        result = runner.invoke(main, ["asymptotic", "--n", "5", "--m-list", "5,x"])
        assert result.exit_code == 2


class TestCache:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "cache.json"
        tri = higher_stirling(8, 5)
        cache_store(path, tri)
        loaded = cache_load(path, 8, 5)
        assert loaded is not None
        assert loaded.rows == tri.rows and loaded.order == 5

    def test_missing_key(self, tmp_path):
        path = tmp_path / "cache.json"
        cache_store(path, higher_stirling(4, 2))
        assert cache_load(path, 8, 5) is None

    def test_corrupted_digit_rejected(self, tmp_path):
        path = tmp_path / "cache.json"
        cache_store(path, higher_stirling(8, 5))
        text = path.read_text()
        assert '"3325"' in text
        path.write_text(text.replace('"3325"', '"3326"', 1))
        assert cache_load(path, 8, 5) is None

    def test_version_mismatch_rejected(self, tmp_path):
        path = tmp_path / "cache.json"
        cache_store(path, higher_stirling(4, 2))
        doc = json.loads(path.read_text())
        doc["version"] = 99
        path.write_text(json.dumps(doc))
        assert cache_load(path, 4, 2) is None

    def test_cold_and_warm_runs_identical(self, runner, tmp_path):
        path = str(tmp_path / "cache.json")
        args = ["table", "--n-max", "6", "--m-max", "3", "--format", "csv",
                "--cache", path]
        cold = invoke(runner, *args).stdout
        warm = invoke(runner, *args).stdout
        assert cold == warm

    def test_corrupted_cache_recomputes_correctly(self, runner, tmp_path):
        path = tmp_path / "cache.json"
        args = ["table", "--n-max", "8", "--m-max", "5", "--format", "csv",
                "--cache", str(path)]
        reference = invoke(runner, *args).stdout
        text = path.read_text()
        path.write_text(text.replace('"3325"', '"9999"', 1))
        again = invoke(runner, *args).stdout
        assert again == reference == EXPECTED_TABLE1_CSV


class TestDeterminism:
    def test_json_identical_modulo_timestamp(self, runner):
        args = ["table", "--n-max", "5", "--m-max", "3", "--format", "json"]
        first = json.loads(invoke(runner, *args).stdout)
        second = json.loads(invoke(runner, *args).stdout)
        first["metadata"].pop("timestamp")
        second["metadata"].pop("timestamp")
        assert first == second

    def test_env_var_sets_cache_path(self, runner, tmp_path):
        path = tmp_path / "env-cache.json"
        result = runner.invoke(
            main, ["table", "--n-max", "4", "--m-max", "2", "--format", "csv"],
            env={"HYPERBELL_CACHE": str(path)},
        )
        assert result.exit_code == 0
        assert path.exists()


class TestModuleInvocation:
    def test_python_m_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "hyperbell", "table", "--n-max", "3",
             "--m-max", "2", "--format", "csv"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout == "m,1,2,3\n1,1,2,5\n2,1,3,12\n"

    def test_usage_error_exit_code(self):
        proc = subprocess.run(
            [sys.executable, "-m", "hyperbell", "table", "--no-such-flag"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 2

    def test_stderr_carries_diagnostics_not_data(self):
        proc = subprocess.run(
            [sys.executable, "-m", "hyperbell", "verify", "--identities", "eq5",
             "--n-max", "3", "--m-max", "2", "--format", "csv"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert "cells checked" in proc.stderr
        assert "cells checked" not in proc.stdout
