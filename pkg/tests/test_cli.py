import csv
import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from homogenizer import experiments
from homogenizer.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def table(text):
    return list(csv.DictReader(io.StringIO(text)))


class TestSimulate:
    def test_schema(self, capsys):
        code, out, _ = run(["simulate", "--protocol", "cswap", "--eta", "pi/4", "-N", "5"], capsys)
        assert code == 0
        rows = table(out)
        assert list(rows[0]) == experiments.TRACE_COLUMNS
        assert [int(r["step"]) for r in rows] == list(range(6))
        assert float(rows[-1]["fidelity"]) > float(rows[0]["fidelity"])

    def test_deterministic(self, capsys, tmp_path):
        args = ["simulate", "--protocol", "pswap", "--eta", "0.4", "-N", "8",
                "--system", "0.2,0.1,0.5", "--reservoir", "plus"]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(args + ["-o", str(a)]) == 0
        assert main(args + ["-o", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_cswap_planar_pswap_not(self, capsys):
        _, out, _ = run(["simulate", "--protocol", "cswap", "-N", "20"], capsys)
        assert all(abs(float(r["sys_y"])) <= 1e-12 for r in table(out))
        _, out, _ = run(["simulate", "--protocol", "pswap", "-N", "20"], capsys)
        assert max(abs(float(r["sys_y"])) for r in table(out)) > 1e-6

    def test_entropy_column(self, capsys):
        _, out, _ = run(["simulate", "-N", "3", "--metrics", "fidelity,bloch_distance,entropy"],
                        capsys)
        rows = table(out)
        assert "entropy" in rows[0]
        assert float(rows[0]["entropy"]) == pytest.approx(0.0, abs=1e-12)

    def test_repeated_has_system_column(self, capsys):
        _, out, _ = run(["simulate", "-N", "3", "--n", "2"], capsys)
        rows = table(out)
        assert list(rows[0])[1] == "system"
        assert {r["system"] for r in rows} == {"1", "2"}

    @pytest.mark.parametrize("argv", [
        ["simulate", "--eta", "2.0"],
        ["simulate", "--protocol", "iswap"],
        ["simulate", "--system", "1,1,1"],
        ["simulate", "-N", "2", "--n", "3"],
        ["simulate", "--n", "2", "--metrics", "entropy"],
        ["frobnicate"],
    ])
    def test_usage_errors(self, capsys, argv):
        code, _, err = run(argv, capsys)
        assert code == 1
        assert err.startswith("error:")

    def test_io_error(self, capsys, tmp_path):
        code, _, _ = run(["simulate", "-o", str(tmp_path / "missing" / "x.csv")], capsys)
        assert code == 3
        code, _, _ = run(["simulate", "--config", str(tmp_path / "nope.cfg")], capsys)
        assert code == 3


class TestConfigFile:
    def test_flags_override(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("# comment\nprotocol = pswap\neta = pi/8\nN = 4\nreservoir = one\n")
        _, out, _ = run(["simulate", "--config", str(cfg), "-N", "2"], capsys)
        rows = table(out)
        assert len(rows) == 3
        assert rows[0]["protocol"] == "pswap"
        assert float(rows[0]["eta"]) == pytest.approx(math.pi / 8)
        assert float(rows[0]["res_z"]) == -1.0

    def test_bad_key(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("colour = blue\n")
        code, _, err = run(["simulate", "--config", str(cfg)], capsys)
        assert code == 1 and "colour" in err


class TestBounds:
    def test_single(self, capsys):
        code, out, _ = run(["bounds", "single", "--delta", "0.1", "--d", "2", "--json"], capsys)
        assert code == 0
        assert json.loads(out)["n_min"] == 59

    def test_single_text(self, capsys):
        _, out, _ = run(["bounds", "single", "--delta", "0.1", "--d", "2"], capsys)
        assert "n_min: 59" in out

    def test_reuse(self, capsys):
        eta = math.acos(math.sqrt(0.99))
        code, out, _ = run(["bounds", "reuse", "--delta", "0.1", "--d", "2",
                            "--eta", repr(eta), "--json"], capsys)
        assert code == 0
        reservoir, count = (json.loads(line) for line in out.splitlines())
        assert count["n_max"] == 5
        assert reservoir["n_min"] == 59

    def test_reuse_infeasible(self, capsys):
        code, _, _ = run(["bounds", "reuse", "--Delta", "0.1", "--d", "2", "--eta", "1.0",
                          "--n", "3"], capsys)
        assert code == 4

    def test_missing_argument(self, capsys):
        code, _, err = run(["bounds", "single", "--delta", "0.1"], capsys)
        assert code == 1 and "--d" in err

    def test_fidelity_gap_scan(self, capsys):
        _, out, _ = run(["bounds", "fidelity-gap", "--json"], capsys)
        data = json.loads(out)
        assert 0.0203 <= data["max_gap"] <= 0.0213
        assert 0.79 <= data["argmax_alpha"] <= 0.82

    def test_fidelity_gap_point(self, capsys):
        _, out, _ = run(["bounds", "fidelity-gap", "--alpha", "0.5", "--variant", "measured",
                         "--json"], capsys)
        assert json.loads(out)["gap"] > 0


class TestSweep:
    def test_no_axes_is_final_row(self, capsys):
        _, sim, _ = run(["simulate", "-N", "6", "--eta", "0.3"], capsys)
        _, sw, _ = run(["sweep", "-N", "6", "--eta", "0.3"], capsys)
        last = table(sim)[-1]
        row = table(sw)[0]
        for key, value in last.items():
            assert row[key] == value

    def test_eta_axis(self, capsys):
        _, out, _ = run(["sweep", "-N", "5", "--reservoir", "one",
                         "--axis", "eta=0.1:0.5:0.1"], capsys)
        rows = table(out)
        assert len(rows) == 5
        for r in rows:
            eta = float(r["axis_eta"])
            assert float(r["bloch_distance"]) == pytest.approx(
                2 * math.cos(eta) ** 10, abs=1e-12)

    def test_n_axis(self, capsys):
        _, out, _ = run(["sweep", "-N", "4", "--eta", "0.3", "--reservoir", "one",
                         "--axis", "n=1,2,3"], capsys)
        for r in table(out):
            n = int(r["axis_n"])
            assert r["system"] == str(n)
            assert float(r["res1_distance"]) == pytest.approx(
                2 * (1 - math.cos(0.3) ** (2 * n)), abs=1e-12)

    def test_cap(self, capsys):
        code, _, err = run(["sweep", "--axis", "eta=0:1:0.01", "--axis", "N=1,2",
                            "--max-rows", "10"], capsys)
        assert code == 1 and "cap" in err

    def test_parallel_matches_serial(self, capsys):
        argv = ["sweep", "-N", "4", "--axis", "eta=0.1:0.4:0.1", "--axis", "N=2,3"]
        _, serial, _ = run(argv, capsys)
        _, parallel, _ = run(argv + ["--jobs", "2"], capsys)
        assert serial == parallel

    def test_bad_axis(self, capsys):
        code, _, _ = run(["sweep", "--axis", "colour=1,2"], capsys)
        assert code == 1


def test_verify_maps(capsys):
    code, out, _ = run(["verify", "maps"], capsys)
    assert code == 0
    assert out.strip().splitlines()[-1].startswith("OK")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "homogenizer", "bounds", "single",
                           "--delta", "0.1", "--d", "2", "--json"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["n_min"] == 59


@pytest.mark.parametrize("text,value", [("pi/8", math.pi / 8), ("3pi/8", 3 * math.pi / 8),
                                        ("3*pi/8", 3 * math.pi / 8), ("0.25", 0.25)])
def test_parse_angle(text, value):
    assert experiments.parse_angle(text) == pytest.approx(value)


def test_fmt_negative_zero():
    assert experiments.fmt(-0.0) == "0.0"
    assert experiments.fmt(np.float64(0.1)) == "0.1"
