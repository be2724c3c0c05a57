import math
import subprocess
import sys
import textwrap
from pathlib import Path

import pytest

from qgspectra.cli import main

SPECS_DIR = Path(__file__).resolve().parents[1] / "specs"

STAR_YAML = """\
kind: star
alpha: [1.0, 7.0, 11.0]
beta: [0.1, 0.2, 0.5]
"""

# A cosine sum that no regular level can certify against the counting law:
# it is not the secular function of any self-adjoint network, so the root
# count in a long window falls short of S0*K/pi by more than the term
# budget.  The solver and the scan still agree with each other.
UNPHYSICAL_YAML = """\
kind: trig
leading:
  S0: 6.0
  gamma0: 0.25
terms:
  - {S: 3.5, gamma: 0.0, a: 0.55}
  - {S: 1.25, gamma: 1.5, a: -0.4}
  - {S: 5.0, gamma: 0.75, a: 0.35}
solver:
  k_max: 40.0
"""


@pytest.fixture()
def star_file(tmp_path):
    p = tmp_path / "star.yaml"
    p.write_text(STAR_YAML, encoding="utf-8")
    return str(p)


def run(capsys, argv):
    rc = main(argv)
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


class TestSolve:
    def test_csv_shape(self, capsys, star_file):
        rc, out, err = run(capsys, ["solve", "--graph", star_file, "--kmax", "4"])
        assert rc == 0
        lines = out.splitlines()
        assert lines[0] == "n,k,E,kind"
        for i, line in enumerate(lines[1:], start=1):
            n, k, e, kind = line.split(",")
            assert int(n) == i
            assert float(e) == pytest.approx(float(k) ** 2, rel=1e-15)
            assert kind in ("interior", "separator-coincidence")
        assert float(lines[-1].split(",")[1]) <= 4.0
        assert "order M=1;" in err and "roots in (0, 4]" in err

    def test_coincidence_row(self, capsys, star_file):
        rc, out, _ = run(capsys, ["solve", "--graph", star_file, "--kmax", "4"])
        assert rc == 0
        fields = out.splitlines()[18].split(",")
        assert fields[0] == "18"
        assert abs(float(fields[1]) - math.pi) < 1e-10
        assert fields[3] == "separator-coincidence"

    def test_reruns_byte_identical(self, capsys, star_file):
        _, first, _ = run(capsys, ["solve", "--graph", star_file, "--kmax", "6"])
        _, second, _ = run(capsys, ["solve", "--graph", star_file, "--kmax", "6"])
        assert first == second

    def test_out_file(self, capsys, star_file, tmp_path):
        dest = tmp_path / "roots.csv"
        rc, out, err = run(
            capsys,
            ["solve", "--graph", star_file, "--kmax", "4", "--out", str(dest)],
        )
        assert rc == 0
        assert out == ""
        assert "order M=1" in err
        text = dest.read_text(encoding="utf-8")
        assert text.startswith("n,k,E,kind\n")
        assert "separator-coincidence" in text

    def test_shipped_examples(self, capsys):
        for name in ("star.yaml", "star_bonds.yaml", "chain.yaml", "trig.yaml"):
            rc, out, _ = run(capsys, ["solve", "--graph", str(SPECS_DIR / name)])
            assert rc == 0, name
            assert out.startswith("n,k,E,kind\n"), name
            assert len(out.splitlines()) > 10, name


class TestOrder:
    def test_worked_star(self, capsys, star_file):
        rc, out, _ = run(capsys, ["order", "--graph", star_file])
        assert rc == 0
        lines = out.splitlines()
        assert lines[0] == "M = 1"
        sums = [float(line.rpartition("= ")[2]) for line in lines[1:]]
        assert sums[0] == pytest.approx(1.5, abs=1e-14)
        assert sums[1] == pytest.approx(16 / 19, abs=1e-14)

    def test_no_window_needed(self, capsys, star_file):
        # order never searches, so --kmax must not be required
        rc, _, _ = run(capsys, ["order", "--graph", star_file])
        assert rc == 0


class TestVerify:
    def test_pass(self, capsys, star_file):
        rc, out, _ = run(capsys, ["verify", "--graph", star_file, "--kmax", "20"])
        assert rc == 0
        assert "comparison: pass" in out
        assert "verdict: pass" in out
        assert "order: M = 1" in out

    def test_counting_law_failure(self, capsys, tmp_path):
        p = tmp_path / "unphysical.yaml"
        p.write_text(UNPHYSICAL_YAML, encoding="utf-8")
        rc, out, _ = run(capsys, ["verify", "--graph", str(p)])
        assert rc == 3
        assert "comparison: pass" in out  # scan and solver still agree
        assert "verdict: fail" in out


class TestEval:
    def test_explicit_points(self, capsys, star_file):
        rc, out, _ = run(
            capsys, ["eval", "--graph", star_file, "--k", "0.5", "--k", "1.5"]
        )
        assert rc == 0
        lines = out.splitlines()
        assert lines[0] == "k,g0,g1"
        assert len(lines) == 3
        assert lines[1].split(",")[0] == "0.5"

    def test_grid(self, capsys, star_file):
        rc, out, _ = run(
            capsys,
            ["eval", "--graph", star_file, "--kmin", "0", "--kmax", "1",
             "--step", "0.5"],
        )
        assert rc == 0
        lines = out.splitlines()
        assert len(lines) == 4
        assert [row.split(",")[0] for row in lines[1:]] == ["0", "0.5", "1"]

    def test_needs_grid_or_points(self, capsys, star_file):
        rc, _, err = run(capsys, ["eval", "--graph", star_file])
        assert rc == 1
        assert "eval needs" in err


class TestFailureModes:
    def test_missing_graph_flag(self, capsys):
        rc, _, err = run(capsys, ["solve"])
        assert rc == 1
        assert "--graph" in err

    def test_unreadable_file(self, capsys, tmp_path):
        rc, _, err = run(
            capsys, ["solve", "--graph", str(tmp_path / "nope.yaml"), "--kmax", "4"]
        )
        assert rc == 1
        assert "cannot read" in err

    def test_bad_contents_reported_with_position(self, capsys, tmp_path):
        p = tmp_path / "bad.yaml"
        p.write_text("kind: pentagram\n", encoding="utf-8")
        rc, _, err = run(capsys, ["solve", "--graph", str(p), "--kmax", "4"])
        assert rc == 1
        assert f"{p}:1:" in err

    def test_no_search_window(self, capsys, star_file):
        rc, _, err = run(capsys, ["solve", "--graph", star_file])
        assert rc == 1
        assert "no search window" in err

    def test_order_cap_is_solver_failure(self, capsys, star_file):
        rc, _, err = run(
            capsys,
            ["solve", "--graph", star_file, "--kmax", "4", "--max-order", "0"],
        )
        assert rc == 2
        assert "solver failure" in err
        assert "order cap" in err

    def test_unknown_command(self, capsys):
        rc, _, err = run(capsys, ["frobnicate"])
        assert rc == 1
        assert "invalid choice" in err

    def test_help_exits_clean(self, capsys):
        rc, out, _ = run(capsys, ["--help"])
        assert rc == 0
        assert "solve" in out and "verify" in out


def test_module_entry_point(star_file):
    proc = subprocess.run(
        [sys.executable, "-m", "qgspectra", "order", "--graph", star_file],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "M = 1"
