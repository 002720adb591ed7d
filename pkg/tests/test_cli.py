import csv
import io
import json
import subprocess
import sys
from fractions import Fraction
from importlib import resources

import jsonschema
import pytest

from rmrll.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows_of(text):
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(lines))))


def schema(name):
    return json.loads(resources.files("rmrll").joinpath("schemas", f"{name}.json").read_text())


class TestRates:
    def test_default_table(self, capsys):
        code, out, _ = run_cli(capsys, "rates")
        assert code == 0
        rows = rows_of(out)
        assert [int(r["m"]) for r in rows] == list(range(2, 61))
        last = rows[-1]
        assert float(last["asymptote"]) == 0.25 and abs(float(last["gap"])) < 0.05
        assert float(Fraction(last["rate_exact"])) == pytest.approx(float(last["rate"]), rel=1e-12)

    def test_gap_shrinks_along_each_parity(self, capsys):
        _, out, _ = run_cli(capsys, "rates", "--m", "2:60")
        gaps = {int(r["m"]): abs(float(r["gap"])) for r in rows_of(out)}
        for start in (3, 4):
            seq = [gaps[m] for m in range(start, 61, 2)]
            assert all(a >= b - 1e-15 for a, b in zip(seq, seq[1:]))

    def test_d0_is_full_code(self, capsys):
        _, out, _ = run_cli(capsys, "rates", "--m", "10", "--d", "0")
        row = rows_of(out)[0]
        assert Fraction(row["rate_exact"]) == Fraction(638, 1024)

    def test_d2_d3_share_asymptote(self, capsys):
        _, out, _ = run_cli(capsys, "rates", "--m", "20", "--d", "2,3")
        a, b = rows_of(out)
        assert a["asymptote"] == b["asymptote"] == "0.125"


class TestBounds:
    def test_curve(self, capsys):
        _, out, _ = run_cli(capsys, "bounds")
        rows = {round(float(r["R"]), 2): r for r in rows_of(out)}
        assert len(rows) == 99
        assert float(rows[0.2]["upper_bound"]) < float(rows[0.2]["trivial"])
        assert rows[0.5]["upper_bound"] == rows[0.5]["trivial"]
        for R, r in rows.items():
            assert float(r["achievable"]) == pytest.approx(R / 2, abs=1e-12)
        assert out.startswith("# d = 1; for the BEC read R = 1 - epsilon")

    def test_finite_m_columns(self, capsys):
        _, out, _ = run_cli(capsys, "bounds", "--m", "24", "--delta", "0.2", "--grid-step", "0.1")
        rows = rows_of(out)
        assert all(r["beta_below_theta"] == "1" for r in rows)
        assert rows[0]["m"] == "24"

    def test_delta_changes_theta(self, capsys):
        _, a, _ = run_cli(capsys, "bounds", "--m", "24", "--delta", "0.1", "--grid-step", "0.5")
        _, b, _ = run_cli(capsys, "bounds", "--m", "24", "--delta", "0.3", "--grid-step", "0.5")
        assert rows_of(a)[0]["log2_theta"] != rows_of(b)[0]["log2_theta"]

    def test_small_m_rejected(self, capsys):
        assert run_cli(capsys, "bounds", "--m", "3")[0] == 2


class TestSimulate:
    def test_erasure_free_is_zero(self, capsys):
        _, out, _ = run_cli(capsys, "simulate", "--m", "5,6", "--epsilon", "0", "--trials", "20")
        assert all(float(r["pb"]) == 0.0 for r in rows_of(out))

    def test_byte_identical(self, capsys):
        args = ("simulate", "--m", "6,7", "--epsilon", "0.4,0.5", "--trials", "150", "--seed", "17")
        _, a, _ = run_cli(capsys, *args)
        _, b, _ = run_cli(capsys, *args)
        assert a == b

    def test_seed_matters(self, capsys):
        base = ("simulate", "--m", "7", "--epsilon", "0.5", "--trials", "150")
        _, a, _ = run_cli(capsys, *base, "--seed", "1")
        _, b, _ = run_cli(capsys, *base, "--seed", "2")
        assert a != b

    def test_timing_column_opt_in(self, capsys):
        _, out, _ = run_cli(capsys, "simulate", "--m", "4", "--epsilon", "0.3", "--trials", "5", "--timing", "true")
        assert "wall_time" in rows_of(out)[0]
        _, out, _ = run_cli(capsys, "simulate", "--m", "4", "--epsilon", "0.3", "--trials", "5")
        assert "wall_time" not in rows_of(out)[0]

    def test_bsc_guard(self, capsys):
        code, _, err = run_cli(capsys, "simulate", "--m", "9", "--p", "0.05", "--trials", "5")
        assert code == 3 and "refused" in err

    def test_bsc_small(self, capsys):
        code, out, _ = run_cli(capsys, "simulate", "--m", "4", "--p", "0.05", "--trials", "20")
        assert code == 0 and rows_of(out)[0]["channel"] == "bsc"

    def test_needs_channel(self, capsys):
        assert run_cli(capsys, "simulate", "--m", "4")[0] == 2

    def test_one_channel_only(self, capsys):
        assert run_cli(capsys, "simulate", "--epsilon", "0.1", "--p", "0.1")[0] == 2


class TestOracle:
    def test_rm21(self, capsys):
        _, out, _ = run_cli(capsys, "oracle", "--m", "2", "--r", "1")
        row = json.loads(out)["rows"][0]
        assert row["rll_subcode_size"] == 4 and row["plotkin_filter_size"] >= 4

    def test_repetition(self, capsys):
        _, out, _ = run_cli(capsys, "oracle", "--m", "3", "--r", "0")
        assert json.loads(out)["rows"][0]["rll_subcode_size"] == 1

    def test_rm42(self, capsys):
        _, out, _ = run_cli(capsys, "oracle", "--m", "4", "--r", "2")
        row = json.loads(out)["rows"][0]
        assert row["code_size"] == 2**11
        assert row["plotkin_filter_size"] >= row["rll_subcode_size"] >= 1

    def test_guard(self, capsys):
        assert run_cli(capsys, "oracle", "--m", "8", "--r", "4")[0] == 3

    def test_missing_r(self, capsys):
        assert run_cli(capsys, "oracle", "--m", "3")[0] == 2


class TestWeights:
    def test_rm21(self, capsys):
        _, out, _ = run_cli(capsys, "weights", "--m", "2", "--r", "1")
        assert {int(r["w"]): int(r["count"]) for r in rows_of(out)} == {0: 1, 2: 6, 4: 1}


class TestChannelCap:
    def test_bsc(self, capsys):
        _, out, _ = run_cli(capsys, "channel-cap", "--p", "0.11")
        assert abs(float(rows_of(out)[0]["capacity"]) - 0.5) < 0.002

    def test_large_erasure_beats_baseline(self, capsys):
        _, out, _ = run_cli(capsys, "channel-cap", "--epsilon", "0.9", "--d", "1")
        row = rows_of(out)[0]
        assert float(row["coset_baseline"]) == 0.0 < float(row["achievable"])


class TestConfig:
    def test_file_and_override(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("# sweep\nm = 8\nrate = 0.3   # low rate\nd = 1,3\n")
        _, out, _ = run_cli(capsys, "rates", "--config", str(cfg))
        assert [(r["m"], r["d"]) for r in rows_of(out)] == [("8", "1"), ("8", "3")]
        _, out, _ = run_cli(capsys, "rates", "--config", str(cfg), "--m", "9")
        assert {r["m"] for r in rows_of(out)} == {"9"}

    def test_unknown_key(self, capsys, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("m = 8\ncolour = blue\n")
        code, _, err = run_cli(capsys, "rates", "--config", str(cfg))
        assert code == 2 and "colour" in err

    def test_key_from_other_command(self, capsys, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("trials = 10\n")
        assert run_cli(capsys, "rates", "--config", str(cfg))[0] == 2

    def test_malformed_line(self, capsys, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("m 8\n")
        assert run_cli(capsys, "rates", "--config", str(cfg))[0] == 2

    def test_missing_file(self, capsys, tmp_path):
        assert run_cli(capsys, "rates", "--config", str(tmp_path / "nope.cfg"))[0] == 2

    @pytest.mark.parametrize("argv", [("rates", "--rate", "1.5"), ("simulate", "--trials", "0", "--epsilon", "0.1"), ("rates", "--format", "xml")])
    def test_bad_values(self, capsys, argv):
        assert run_cli(capsys, *argv)[0] == 2

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "w.csv"
        code, out, _ = run_cli(capsys, "weights", "--m", "3", "--r", "1", "--out", str(target))
        assert code == 0 and out == ""
        assert "w,count" in target.read_text()


@pytest.mark.parametrize("command,argv", [
    ("rates", ["--m", "2:12"]),
    ("bounds", ["--grid-step", "0.05"]),
    ("bounds", ["--grid-step", "0.1", "--m", "4"]),
    ("simulate", ["--m", "5", "--epsilon", "0.3", "--trials", "10", "--timing", "true"]),
    ("simulate", ["--m", "4", "--sigma", "0.8", "--trials", "10"]),
    ("oracle", ["--m", "3", "--r", "1"]),
    ("weights", ["--m", "4", "--r", "2"]),
    ("channel-cap", ["--sigma", "0.5,1.0", "--d", "1,2"]),
])
def test_json_matches_schema(capsys, command, argv):
    code, out, _ = run_cli(capsys, command, *argv, "--format", "json")
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, schema(command))
    assert doc["command"] == command and doc["rows"]


def test_console_script():
    res = subprocess.run([sys.executable, "-m", "rmrll.cli", "weights", "--m", "2", "--r", "0"], capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.splitlines()[-2:] == ["0,1", "4,1"]


def test_unwritable_output(capsys, tmp_path):
    assert run_cli(capsys, "weights", "--m", "2", "--r", "1", "--out", str(tmp_path / "no" / "dir.csv"))[0] == 2
