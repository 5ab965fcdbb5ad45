import csv
import subprocess
import sys

import pytest

from werner_owd.cli import SweepConfig, UsageError, fmt, main, p_grid


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def read_rows(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def field(out, name):
    for line in out.splitlines():
        if line.startswith(name + " "):
            return float(line.split()[1])
    raise AssertionError(f"{name} missing from report:\n{out}")


class TestReport:
    def test_maximally_mixed(self, capsys):
        code, out, _ = run(capsys, "report", "--n", "2", "--p", "0")
        assert code == 0
        assert field(out, "owd_closed") == 0
        assert field(out, "holevo") == 0

    def test_pure(self, capsys):
        code, out, _ = run(capsys, "report", "--n", "2", "--p", "1")
        assert code == 0
        assert field(out, "owd_closed") == pytest.approx(1, abs=1e-12)
        assert field(out, "state_entropy") == pytest.approx(0, abs=1e-12)

    def test_half(self, capsys):
        code, out, _ = run(capsys, "report", "--n", "2", "--p", "0.5", "--theta", "0.3", "--phi", "1")
        assert code == 0
        assert field(out, "owd_closed") == pytest.approx(0.262483, abs=1e-5)
        assert field(out, "owd_numeric") == pytest.approx(0.262483, abs=1e-6)
        assert "delta" in out

    def test_large_n_skips_numeric(self, capsys):
        code, out, _ = run(capsys, "report", "--n", "20", "--p", "0.5")
        assert code == 0
        assert "owd_numeric       skipped" in out

    @pytest.mark.parametrize("argv", [("--n", "2", "--p", "1.5"), ("--n", "1", "--p", "0.5"), ("--n", "2", "--p", "0.5", "--theta", "2")])
    def test_invalid_values(self, capsys, argv):
        code, _, err = run(capsys, "report", *argv)
        assert code == 2
        assert "error" in err

    def test_argparse_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["report", "--n", "two", "--p", "0.5"])
        assert exc.value.code == 2


class TestSweep:
    def test_small_grid(self, tmp_path, capsys):
        out = tmp_path / "s.csv"
        code, _, _ = run(capsys, "sweep", "--n-list", "2", "--p-steps", "3", "--out", str(out))
        assert code == 0
        rows = read_rows(out)
        assert list(rows[0]) == ["n", "p", "owd_closed"]
        assert [r["p"] for r in rows] == ["0", "0.5", "1"]
        assert [float(r["owd_closed"]) for r in rows] == pytest.approx([0, 0.262483, 1], abs=1e-5)

    def test_p1_independent_of_n(self, tmp_path, capsys):
        out = tmp_path / "s.csv"
        run(capsys, "sweep", "--n-list", "2,3,4", "--p-steps", "11", "--out", str(out))
        rows = [r for r in read_rows(out) if r["p"] == "1"]
        assert len(rows) == 3 and all(r["owd_closed"] == "1" for r in rows)

    def test_large_n_saturates(self, tmp_path, capsys):
        out = tmp_path / "s.csv"
        run(capsys, "sweep", "--n-list", "30", "--out", str(out))
        rows = read_rows(out)
        assert max(abs(float(r["owd_closed"]) - float(r["p"])) for r in rows) < 1e-3

    def test_rows_sorted_and_bounded(self, tmp_path, capsys):
        out = tmp_path / "s.csv"
        run(capsys, "sweep", "--n-list", "4,2,3", "--p-steps", "21", "--out", str(out))
        rows = read_rows(out)
        keys = [(int(r["n"]), float(r["p"])) for r in rows]
        assert keys == sorted(keys)
        assert all(0 <= float(r["owd_closed"]) <= 1 for r in rows)
        assert all(float(r["owd_closed"]) == 0 for r in rows if r["p"] == "0")

    def test_both_modes(self, tmp_path, capsys):
        out = tmp_path / "s.csv"
        code, _, _ = run(capsys, "sweep", "--n-list", "2,3", "--p-steps", "5", "--mode", "both", "--grid", "4", "--out", str(out))
        assert code == 0
        rows = read_rows(out)
        assert list(rows[0]) == ["n", "p", "owd_closed", "owd_numeric"]
        for r in rows:
            assert float(r["owd_numeric"]) == pytest.approx(float(r["owd_closed"]), abs=1e-8)

    def test_numeric_mode_header(self, capsys):
        code, out, _ = run(capsys, "sweep", "--n-list", "2", "--p-steps", "2", "--mode", "numeric", "--grid", "4", "--out", "-")
        assert code == 0
        assert out.splitlines()[0] == "n,p,owd_numeric"

    def test_deterministic(self, tmp_path, capsys):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        run(capsys, "sweep", "--n-list", "2,3", "--mode", "both", "--grid", "4", "--p-steps", "6", "--out", str(a))
        run(capsys, "sweep", "--n-list", "2,3", "--mode", "both", "--grid", "4", "--p-steps", "6", "--out", str(b))
        assert a.read_bytes() == b.read_bytes()

    def test_unwritable(self, tmp_path, capsys):
        code, _, err = run(capsys, "sweep", "--n-list", "2", "--out", str(tmp_path / "missing" / "x.csv"))
        assert code == 3
        assert "cannot write" in err

    @pytest.mark.parametrize(
        "argv",
        [
            ("--p-start", "0.6", "--p-end", "0.5"),
            ("--p-steps", "1"),
            ("--n-list", "1,2"),
            ("--n-list", "13", "--mode", "numeric"),
        ],
    )
    def test_config_errors(self, capsys, argv):
        code, _, _ = run(capsys, "sweep", "--out", "-", *argv)
        assert code == 2


class TestVerify:
    def test_reports_every_check(self, capsys):
        code, out, _ = run(capsys, "verify", "--n-max", "2", "--grid", "4")
        lines = [line for line in out.splitlines() if line.startswith("[")]
        assert len(lines) == 6
        status = {line.split("] ")[1].split(":")[0]: line[1:5] for line in lines}
        # every closed form agrees with its oracle; the ensemble Holevo quantity is nonzero
        assert status.pop("Holevo quantity equals zero") == "FAIL"
        assert set(status.values()) == {"PASS"}
        assert code == 1
        assert "first failure at (n=2, p=0.5, theta=0, phi=0)" in out

    def test_owd_deviation_small(self, capsys):
        _, out, _ = run(capsys, "verify", "--n-max", "4", "--grid", "8")
        line = next(l for l in out.splitlines() if "owd closed form" in l)
        assert line.startswith("[PASS]")
        assert float(line.split("max deviation ")[1].split()[0]) < 1e-8

    def test_flatness_n6(self, capsys):
        _, out, _ = run(capsys, "verify", "--n-max", "6", "--grid", "8")
        line = next(l for l in out.splitlines() if "entropy spread" in l)
        assert line.startswith("[PASS]")

    @pytest.mark.parametrize("argv", [("--n-max", "1"), ("--n-max", "11"), ("--grid", "3")])
    def test_usage(self, capsys, argv):
        code, _, _ = run(capsys, "verify", *argv)
        assert code == 2


def test_limit(capsys):
    code, out, _ = run(capsys, "limit", "--n", "10,30")
    assert code == 0
    values = [float(l.split("=")[-1]) for l in out.splitlines()]
    assert values[0] == pytest.approx(5.82168e-3, rel=1e-4)
    assert values[1] < 1e-3


def test_fmt():
    assert fmt(0.262483183763734) == "0.262483183764"
    assert fmt(1e-4) == "0.0001"
    assert fmt(1.0) == "1"


def test_p_grid_inclusive():
    pts = p_grid(0.0, 1.0, 101)
    assert pts[0] == 0 and pts[-1] == 1 and len(pts) == 101
    assert fmt(pts[7]) == "0.07"


def test_sweep_config_validation():
    with pytest.raises(UsageError):
        SweepConfig(mode="fast")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "werner_owd", "sweep", "--n-list", "2", "--p-steps", "2", "--out", "-"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == "n,p,owd_closed\n2,0,0\n2,1,1\n"
