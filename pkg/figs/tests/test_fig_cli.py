"""Exit codes and argument plumbing of the vscfigs entry point."""

import subprocess
import sys

import pytest

from vscfigs.cli import main

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def test_successful_render_exits_zero(tmp_path, rates_csv, capsys):
    out = tmp_path / "ratio.png"
    rc = main(["ratio_vs_n", str(rates_csv), "-o", str(out)])
    assert rc == 0
    assert out.read_bytes()[:8] == PNG_MAGIC
    assert str(out) in capsys.readouterr().out


def test_schema_mismatch_exits_two(tmp_path, rates_csv, capsys):
    # rates.csv lacks every eyring column
    rc = main(["eyring", str(rates_csv), "-o", str(tmp_path / "x.png")])
    assert rc == 2
    err = capsys.readouterr().err
    assert "dH_kJ_mol" in err
    assert not (tmp_path / "x.png").exists()


def test_missing_file_exits_two(tmp_path, capsys):
    rc = main(["spectrum", str(tmp_path / "gone.csv"),
               "-o", str(tmp_path / "x.png")])
    assert rc == 2
    assert "not found" in capsys.readouterr().err


def test_unknown_kind_is_a_usage_error(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["contour", "data.csv", "-o", str(tmp_path / "x.png")])
    assert exc.value.code == 2


def test_output_flag_is_required(rates_csv):
    with pytest.raises(SystemExit) as exc:
        main(["ratio_vs_n", str(rates_csv)])
    assert exc.value.code == 2


def test_gaussian_flags_reach_the_renderer(tmp_path, eigen_stats_csv):
    default = tmp_path / "default.png"
    shifted = tmp_path / "shifted.png"
    assert main(["spectrum", str(eigen_stats_csv), "-o", str(default)]) == 0
    assert main(["spectrum", str(eigen_stats_csv), "-o", str(shifted),
                 "--gaussian-mean", "1950", "--gaussian-sigma", "25"]) == 0
    assert default.read_bytes() != shifted.read_bytes()


def test_multiple_inputs_accepted(tmp_path, rates_csv, capsys):
    out = tmp_path / "combined.png"
    rc = main(["ratio_vs_n", str(rates_csv), str(rates_csv),
               "-o", str(out)])
    assert rc == 0
    assert out.exists()


def test_module_invocation(tmp_path, eyring_csv):
    out = tmp_path / "eyring.png"
    proc = subprocess.run(
        [sys.executable, "-m", "vscfigs", "eyring", str(eyring_csv),
         "-o", str(out)],
        capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert out.read_bytes()[:8] == PNG_MAGIC
