import csv
import io
import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

from cvdj.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


class TestSubcommands:
    def test_dv_run(self, capsys):
        assert run_json(capsys, "dv-run", "--z", "0000") == {"n": 2, "class": "Constant", "prob_zero": 1.0}
        res = run_json(capsys, "dv-run", "--z", "0011")
        assert res["class"] == "Balanced" and res["prob_zero"] == 0.0

    def test_dv_run_neither(self, capsys):
        res = run_json(capsys, "dv-run", "--z", "0001")
        assert res["class"] == "Neither" and res["prob_zero"] == pytest.approx(0.25)

    def test_cv_encode_csv(self, capsys):
        code, out, _ = run(capsys, "cv-encode", "--z", "0011", "--samples", "64")
        rows = list(csv.DictReader(io.StringIO(out)))
        assert code == 0 and len(rows) == 64
        assert set(r["encoded"] for r in rows) == {"1", "-1"}

    def test_cv_encode_json(self, capsys):
        res = run_json(capsys, "--format", "json", "cv-encode", "--z", "01", "--samples", "16")
        assert set(res) == {"p", "encoded", "value"} and len(res["p"]) == 16

    def test_cv_pdf(self, capsys):
        code, out, _ = run(capsys, "cv-pdf", "--z", "0000", "--xmin", "-1", "--xmax", "1", "--points", "3")
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["x", "pdf"]
        assert float(rows[2][1]) == pytest.approx(1 / math.pi, rel=1e-12)

    def test_cv_prob(self, capsys):
        res = run_json(capsys, "cv-prob", "--z", "0011", "--delta", repr(math.pi / 2))
        assert res["prob"] == pytest.approx(0.161044119879687, abs=1e-9)
        res = run_json(capsys, "cv-prob", "--z", "1111", "--delta", repr(math.pi / 2))
        assert res["prob"] == pytest.approx(0.773695009902816, abs=1e-9)

    def test_optimal_delta(self, capsys):
        res = run_json(capsys, "optimal-delta", "--P", "2")
        assert res["delta"] == pytest.approx(math.pi / 4, abs=1e-12)
        assert res["P_delta_product"] == pytest.approx(math.pi / 2, abs=1e-9)

    def test_asb_check(self, capsys):
        res = run_json(capsys, "asb-check", "--N", "6", "--grid", "201")
        assert res["holds"] is True and res["witness"] is None and res["worst_margin"] > 0

    def test_amplify(self, capsys):
        res = run_json(capsys, "--seed", "5", "amplify", "--m", "96", "--runs", "2000", "--illustrative")
        assert res["illustrative"] is True and res["p_detect_constant"] == 0.75
        const, bal = res["reports"]
        assert const["truth"] == "Constant" and bal["truth"] == "Balanced"
        assert const["seed"] == 5 and const["runs"] == 2000

    def test_amplify_csv(self, capsys):
        code, out, _ = run(capsys, "--format", "csv", "amplify", "--m", "10", "--runs", "100")
        rows = list(csv.DictReader(io.StringIO(out)))
        assert code == 0 and [r["truth"] for r in rows] == ["Constant", "Balanced"]

    def test_classical_baseline(self, capsys):
        res = run_json(capsys, "classical-baseline", "--N", "8", "--m", "2")
        assert res["exact"] == pytest.approx(11 / 14) and res["lower_bound"] == 0.75

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "out.json"
        code, out, _ = run(capsys, "--output", str(target), "optimal-delta")
        assert code == 0 and out == ""
        assert json.loads(target.read_text())["delta"] == pytest.approx(math.pi / 2)

    def test_flags_after_subcommand(self, capsys):
        res = run_json(capsys, "amplify", "--m", "4", "--runs", "10", "--seed", "3")
        assert res["reports"][0]["seed"] == 3


class TestErrors:
    @pytest.mark.parametrize(
        "argv, fragment",
        [
            (["dv-run", "--z", "001"], "power of two"),
            (["dv-run", "--z", "0a"], "0"),
            (["cv-prob", "--z", "001", "--delta", "1"], "even"),
            (["cv-prob", "--z", "0011", "--delta", "-1"], "positive"),
            (["asb-check", "--N", "18"], "cap"),
            (["amplify", "--m", "0"], ">= 1"),
            (["classical-baseline", "--N", "7", "--m", "1"], "even"),
        ],
    )
    def test_invalid_input_exit_1(self, capsys, argv, fragment):
        code, out, err = run(capsys, *argv)
        assert code == 1 and out == ""
        assert err.startswith(f"cvdj {argv[0]}: error:") and fragment in err

    def test_unknown_subcommand_exit_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_console_script(self):
        proc = subprocess.run(
            [sys.executable, "-m", "cvdj.cli", "dv-run", "--z", "0110"], capture_output=True, text=True
        )
        assert proc.returncode == 0 and json.loads(proc.stdout)["class"] == "Balanced"


class TestReproduceFigures:
    @pytest.fixture(scope="class")
    @classmethod
    def outputs(cls, tmp_path_factory):
        dirs = [tmp_path_factory.mktemp(f"figs{i}") for i in range(2)]
        for d in dirs:
            assert main(["--output", str(d), "reproduce-figures"]) == 0
        return dirs

    def test_files(self, outputs):
        names = sorted(p.name for p in outputs[0].iterdir())
        expected = sorted(
            [f"fig4_{c}.csv" for c in "abcd"] + [f"fig6_{c}.csv" for c in "abcd"]
            + ["fig7_phasors.csv", "fig8_window.csv"]
        )
        assert names == expected

    def test_byte_identical(self, outputs):
        a, b = outputs
        for p in a.iterdir():
            assert p.read_bytes() == (b / p.name).read_bytes()

    def test_lf_and_header(self, outputs):
        data = (outputs[0] / "fig6_a.csv").read_bytes()
        assert b"\r" not in data and data.startswith(b"x,pdf\n")

    def test_density_at_origin(self, outputs):
        def at_zero(name):
            rows = list(csv.reader((outputs[0] / name).open()))[1:]
            return next(float(v) for x, v in rows if float(x) == 0.0)

        assert at_zero("fig6_a.csv") == pytest.approx(1 / math.pi, rel=1e-12)
        assert at_zero("fig6_b.csv") == 0.0

    def test_window_column(self, outputs):
        rows = list(csv.DictReader((outputs[0] / "fig8_window.csv").open()))
        for r in rows:
            assert r["in_window"] == ("1" if abs(float(r["x"])) <= math.pi / 2 else "0")

    def test_phasor_panel(self, outputs):
        rows = list(csv.DictReader((outputs[0] / "fig7_phasors.csv").open()))
        assert len(rows) == 16
        for r in rows:
            assert float(r["re"]) ** 2 + float(r["im"]) ** 2 == pytest.approx(1.0)
