import subprocess
import sys

import pytest

from groverlimits.cli import FIGURES, main
from groverlimits.experiments import CSV_HEADER


def usage_error(argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    return info.value.code


class TestBound:
    def test_phase(self, capsys):
        assert main(["bound", "phase", "1e-2"]) == 0
        out = capsys.readouterr().out
        assert out == "80000.0 log2=16.2877\n"

    def test_hadamard(self, capsys):
        assert main(["bound", "hadamard", "1e-3"]) == 0
        value = float(capsys.readouterr().out.split()[0])
        assert value == pytest.approx(405284.7, abs=1)

    def test_combined(self, capsys):
        assert main(["bound", "combined", "2e-2"]) == 0
        assert capsys.readouterr().out.startswith("160000.0 ")

    @pytest.mark.parametrize("param", ["0", "-0.001", "nan"])
    def test_nonpositive(self, param, capsys):
        assert usage_error(["bound", "phase", param]) == 2
        captured = capsys.readouterr()
        assert captured.out == ""
        assert "positive" in captured.err

    def test_negative_exponent_form(self):
        # argparse reads "-1e-3" as an option; still a usage error
        assert usage_error(["bound", "phase", "-1e-3"]) == 2

    def test_unknown_kind(self):
        assert usage_error(["bound", "gravity", "1e-2"]) == 2


class TestValidate:
    def test_default_run(self, capsys):
        assert main(["validate"]) == 0
        out = capsys.readouterr().out
        worst = float(out.split()[2])
        assert worst <= 1e-10

    def test_max_n_cap(self):
        assert usage_error(["validate", "--max-n", "13"]) == 2

    def test_zero_trials(self):
        assert usage_error(["validate", "--trials", "0"]) == 2


class TestSweep:
    def test_em1_to_file(self, tmp_path, capsys):
        out = tmp_path / "em1.csv"
        assert main(["sweep", "--em1", "--delta0", "1e-2", "--n", "4..24", "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == CSV_HEADER
        assert [int(line.split(",")[0]) for line in lines[1:]] == list(range(4, 25))
        assert capsys.readouterr().out == ""

    def test_em2_deterministic(self, tmp_path):
        argv = ["sweep", "--em2", "--s", "1e-2", "--samples", "200", "--seed", "42", "--n", "4..12"]
        main(argv + ["--out", str(tmp_path / "a.csv")])
        main(argv + ["--out", str(tmp_path / "b.csv")])
        a = (tmp_path / "a.csv").read_bytes()
        assert a == (tmp_path / "b.csv").read_bytes()
        assert len(a.splitlines()) == 10

    def test_seed_changes_output(self, capsys):
        main(["sweep", "--em2", "--s", "1e-1", "--samples", "5", "--seed", "1", "--n", "6"])
        first = capsys.readouterr().out
        main(["sweep", "--em2", "--s", "1e-1", "--samples", "5", "--seed", "2", "--n", "6"])
        assert capsys.readouterr().out != first

    def test_leakage_row(self, capsys):
        assert main(["sweep", "--leak", "--delta1", "1e-3", "--n", "16"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 2
        fields = lines[1].split(",")
        assert fields[:4] == ["16", "65536", "HLEAK", "0.001"]

    def test_scientific_notation_accepted(self, capsys):
        assert main(["sweep", "--em1", "--delta0", "1E-2", "--n", "4"]) == 0
        assert ",0.01," in capsys.readouterr().out

    def test_model_flags_exclusive(self):
        assert usage_error(["sweep", "--em1", "--em2"]) == 2
        assert usage_error(["sweep"]) == 2

    def test_unknown_flag(self):
        assert usage_error(["sweep", "--em1", "--bogus"]) == 2

    def test_configuration_error(self, capsys):
        assert main(["sweep", "--em1", "--delta0", "1e-2", "--n", "27", "--engine", "full"]) == 1
        captured = capsys.readouterr()
        assert captured.out == ""
        assert captured.err.startswith("groverlimits: error:")
        assert len(captured.err.strip().splitlines()) == 1

    def test_io_error(self, tmp_path, capsys):
        bad = tmp_path / "nope" / "x.csv"
        assert main(["sweep", "--em1", "--n", "4", "--out", str(bad)]) == 1
        assert "nope" in capsys.readouterr().err


class TestFigure:
    @pytest.mark.parametrize("which,count", [(1, 3), (2, 1), (3, 3)])
    def test_file_count(self, which, count, tmp_path, capsys):
        argv = ["figure", str(which), "--out", str(tmp_path), "--n", "4..8"]
        if which == 3:
            argv += ["--samples", "50"]
        assert main(argv) == 0
        files = sorted(tmp_path.glob("*.csv"))
        assert len(files) == count == len(FIGURES[which])
        captured = capsys.readouterr()
        assert captured.out == ""
        assert captured.err.count("wrote") == count

    def test_samples_override(self, tmp_path):
        main(["figure", "3", "--samples", "50", "--out", str(tmp_path), "--n", "4,6"])
        for path in tmp_path.glob("*.csv"):
            rows = path.read_text().splitlines()[1:]
            assert {row.split(",")[5] for row in rows} == {"50"}

    def test_figure_1_parameters(self, tmp_path):
        main(["figure", "1", "--out", str(tmp_path), "--n", "4"])
        deltas = sorted(float(p.read_text().splitlines()[1].split(",")[3])
                        for p in tmp_path.glob("*.csv"))
        assert deltas == [1e-4, 1e-3, 1e-2]

    def test_unknown_figure(self):
        assert usage_error(["figure", "4"]) == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "groverlimits", "bound", "phase", "1e-2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.startswith("80000.0")
