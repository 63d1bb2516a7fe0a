"""End-to-end checks of the command line interface."""

import json

import pytest

from cqsing import config
from cqsing.cli import main
from cqsing.reportio import deserialize_report


@pytest.fixture(autouse=True)
def _restore_verification():
    yield
    config.set_verification("assert")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestInfo:
    def test_resolution_data(self, capsys):
        code, out, _ = run(capsys, "info", "14", "11")
        data = json.loads(out)
        assert code == 0
        assert data["qseq"] == [14, 11, 8, 5, 2, 1, 0]
        assert data["q_matrix"][0] == [1, 2, 3, 4, 9, 14]
        assert data["discrepancy"][3] == {"num": -4, "den": 7}

    def test_raw_action_is_normalized(self, capsys):
        code, out, _ = run(capsys, "info", "5", "2", "--raw", "3")
        assert code == 0
        assert json.loads(out)["q"] == 4


class TestClass:
    def test_worked_example(self, capsys):
        code, out, _ = run(capsys, "class", "14", "11", "10")
        data = json.loads(out)
        assert code == 0
        assert data["Delta"] == {"num": 4, "den": 7}
        assert data["mu"] == {"num": 15, "den": 7}
        assert data["kappa"] == 1

    def test_smooth_point(self, capsys):
        code, out, _ = run(capsys, "class", "1", "0", "0")
        data = json.loads(out)
        assert code == 0
        assert data["Delta"] == {"num": 0, "den": 1}
        assert data["kappa"] == 0

    def test_invalid_type_exits_one(self, capsys):
        code, _, err = run(capsys, "class", "9", "6", "1")
        assert code == 1
        assert "error" in err

    def test_csv_format(self, capsys):
        code, out, _ = run(capsys, "--format", "csv", "class", "5", "2", "3")
        assert code == 0
        assert deserialize_report(out, "csv")["k"] == 3

    def test_format_env_default(self, capsys, monkeypatch):
        monkeypatch.setenv("CQSING_FORMAT", "csv")
        code, out, _ = run(capsys, "class", "5", "2", "3")
        assert code == 0
        assert out.startswith("d,q,k,")


class TestTable:
    def test_rows_in_order(self, capsys):
        code, out, _ = run(capsys, "--format", "csv", "table", "5", "2")
        rows = deserialize_report(out, "csv")
        assert code == 0
        assert [r["k"] for r in rows] == [0, 1, 2, 3, 4]

    def test_json_table(self, capsys):
        code, out, _ = run(capsys, "table", "2", "1")
        data = json.loads(out)
        assert code == 0
        assert data[1]["Delta"] == {"num": 1, "den": 4}


class TestGerm:
    def test_worked_example(self, capsys):
        code, out, _ = run(
            capsys, "germ", "14", "11", "x^24+x^13*y+x^3*y^7+x*y^11+y^20"
        )
        data = json.loads(out)
        assert code == 0
        assert data["mu"] == {"num": 64, "den": 7}
        assert data["generic"] is False
        assert data["interior_points"] == 1
        assert data["lattice_segments"] == 5

    def test_generic_product(self, capsys):
        code, out, _ = run(capsys, "germ", "5", "2", "(x^2-y)*(x-y^3)")
        data = json.loads(out)
        assert code == 0
        assert data["generic"] is True
        assert data["k"] == 3

    def test_parse_error_exits_one(self, capsys):
        code, _, err = run(capsys, "germ", "5", "2", "x +")
        assert code == 1 and "syntax" in err


class TestNewton:
    def test_writes_svg(self, capsys, tmp_path):
        path = str(tmp_path / "out.svg")
        code, out, _ = run(
            capsys, "newton", "14", "11", "10",
            "--germ", "x^24+x^13*y+x^3*y^7+x*y^11+y^20", "--svg", path,
        )
        data = json.loads(out)
        assert code == 0
        assert data["polygons"][0] == [[0, 6], [2, 2], [10, 0]]
        with open(path) as fh:
            assert fh.read().startswith("<svg")

    def test_class_mismatch(self, capsys, tmp_path):
        code, _, err = run(
            capsys, "newton", "14", "11", "9",
            "--germ", "y^20", "--svg", str(tmp_path / "x.svg"),
        )
        assert code == 1


class TestCheck:
    def test_single_pair(self, capsys):
        code, out, _ = run(capsys, "check", "14", "11")
        assert code == 0
        assert json.loads(out)["checked_types"] == 1

    def test_small_sweep(self, capsys):
        code, out, _ = run(capsys, "check", "2", "1", "--dmax", "8")
        assert code == 0
        assert json.loads(out)["checked_types"] == len(
            [(d, q) for d in range(2, 9) for q in range(1, d)
             if __import__("math").gcd(d, q) == 1]
        )

    def test_verification_failure_exits_two(self, capsys, monkeypatch):
        # force one dual-route check to fail and make sure it maps to 2
        import cqsing.cli as cli_mod

        def broken(args):
            config.check("synthetic check", False, "forced by the test")
            return 0

        monkeypatch.setattr(cli_mod, "_cmd_info", broken)
        code, _, err = run(capsys, "info", "5", "2")
        assert code == 2
        assert "synthetic check" in err

    def test_verify_off_skips_second_routes(self, capsys):
        code, out, _ = run(capsys, "--verify", "off", "class", "14", "11", "10")
        assert code == 0
        assert json.loads(out)["Delta"] == {"num": 4, "den": 7}

    def test_verify_report_prints_checks(self, capsys):
        code, _, err = run(capsys, "--verify", "report", "class", "5", "2", "3")
        assert code == 0
        assert "verify:" in err and "ok" in err


class TestReconstruct:
    def test_round_trip(self, capsys):
        code, out, _ = run(capsys, "reconstruct", "2/5", "2/5")
        assert code == 0
        assert json.loads(out) == {"d": 5, "q": 3}

    def test_inconsistent_input(self, capsys):
        code, _, err = run(capsys, "reconstruct", "2/5", "1/7")
        assert code == 1

    def test_malformed_fraction(self, capsys):
        code, _, err = run(capsys, "reconstruct", "a/b", "1/2")
        assert code == 1
