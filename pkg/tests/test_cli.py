import subprocess
import sys
from pathlib import Path

import pytest

from lpalg.cli import main

from conftest import quiver_path

GOLDEN = Path(__file__).resolve().parent / "golden"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_golden_verify_rose2(capsys):
    code, out, _ = run(capsys, "--format", "machine", "verify", quiver_path("rose2"))
    assert code == 0
    assert out == (GOLDEN / "verify_rose2.txt").read_text()


def test_golden_exactness_a2(capsys):
    code, out, _ = run(capsys, "exactness", quiver_path("a2"), "--full", "--format", "machine")
    assert code == 0
    assert out == (GOLDEN / "exactness_a2_full.txt").read_text()


def test_exactness_text(capsys):
    code, out, _ = run(capsys, "exactness", quiver_path("a2"), "--full")
    assert code == 0
    assert "dims: 4/8/4" in out and "status: exact" in out


def test_center_loop(capsys):
    code, out, _ = run(capsys, "center", quiver_path("loop"), "--max-len", 5)
    assert code == 0
    assert "dim: 11" in out
    assert out.count("basis.") == 11


def test_normalize(capsys):
    code, out, _ = run(capsys, "normalize", quiver_path("rose2"), "-e", "a' * a")
    assert (code, out) == (0, "normal_form: e(v) - b' * b\n")


def test_equal_exit_codes(capsys):
    f = quiver_path("rose2")
    assert run(capsys, "equal", f, "-a", "a' * a + b' * b", "-b", "e(v)")[0] == 0
    code, out, _ = run(capsys, "equal", f, "-a", "a", "-b", "b")
    assert code == 1 and "false" in out


def test_prime_field_flag(capsys):
    code, out, _ = run(capsys, "normalize", quiver_path("rose2"), "--field", "gf:7", "-e", "8 * a")
    assert (code, out) == (0, "normal_form: a\n")


def test_basis(capsys):
    code, out, _ = run(capsys, "--format", "machine", "basis", quiver_path("a2"), "--max-len", 2)
    assert code == 0
    assert "count\t4\n" in out


def test_check(capsys):
    code, out, _ = run(capsys, "check", quiver_path("sink_parallel"), "--format", "machine")
    assert code == 0
    assert "special.v1\ta\n" in out and "sinks\tv2\n" in out


def test_hh1(capsys):
    code, out, _ = run(capsys, "hh1", quiver_path("a3"))
    assert code == 0 and "dim.HH1: 0" in out


def test_derivation(capsys):
    code, out, _ = run(capsys, "derivation", quiver_path("a2"), "--component", "v1=e(v1)",
                       "--eval", "a + a'")
    assert code == 0
    assert "d(a): a\n" in out and "d(a'): -a'\n" in out
    assert "eval: a - a'\n" in out and "inner: yes" in out


@pytest.mark.parametrize("argv", [
    ["normalize", "QUIVER", "-e", "a * c"],
    ["normalize", "QUIVER", "-e", "a +"],
    ["normalize", "missing.quiver", "-e", "a"],
    ["normalize", "QUIVER", "--field", "gf:4", "-e", "a"],
    ["derivation", "QUIVER", "--component", "v2=e(v2)"],
    ["derivation", "QUIVER", "--component", "nonsense"],
    ["hh1", "LOOP"],
    ["center", "LOOP", "--full"],
])
def test_input_errors_exit_2(capsys, argv):
    argv = [str(quiver_path("a2")) if a == "QUIVER" else str(quiver_path("loop")) if a == "LOOP"
            else a for a in argv]
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("lpalg: error:") and err.count("\n") == 1
    assert "Traceback" not in err


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_console_script_runs():
    r = subprocess.run([sys.executable, "-m", "lpalg.cli", "normalize", str(quiver_path("a2")),
                        "-e", "a' * a"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "normal_form: e(v1)\n"


def test_failed_verification_exit_1(capsys, monkeypatch):
    import functools
    from lpalg import resolution
    broken = functools.partial(resolution.partial_map, sign=1)
    monkeypatch.setattr(resolution, "partial_map", broken)
    code, out, _ = run(capsys, "--format", "machine", "verify", quiver_path("rose2"),
                       "--samples", 5)
    assert code == 1
    assert "check.partial_D_equals_delta\tFAIL\n" in out
    assert "check.partial_D_equals_delta.witness\ta\n" in out
    assert out.endswith("status\tFAIL\n")
