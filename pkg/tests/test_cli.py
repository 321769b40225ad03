import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from rrdiagrams.cli import main, parse_spec
from rrdiagrams.diagrams import Fig15
from rrdiagrams.errors import InvalidParams

ROOT = Path(__file__).resolve().parent.parent
FIG8 = ROOT / "diagrams" / "fig8.rr"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_classify_example():
    code, out = run("classify", "--family", "fig1b", "-a", "1", "-b", "0", "-m", "1", "-n", "2", "-s", "3")
    assert code == 0
    assert out == "Torus(2,3), condition 1, u=1, delta=+1\n"


def test_word_fig8_file():
    code, out = run("word", "--file", str(FIG8))
    assert code == 0
    assert out.splitlines() == ["AB", "A^3 B^2 A^2 B^2"]


def test_meridians_fig15():
    code, out = run("meridians", "--family", "fig15", *"-a 1 -b 1 -c 1 -q 3 -r 2 -u 3 -t 2".split())
    assert code == 0
    assert "M1 = A^2 B A^2 B^3" in out
    assert "M2 = A^3 B^2 A B^2" in out
    assert "[M1] + [M2] = [R]: yes" in out


def test_meridians_jsonl():
    code, out = run("meridians", "--format", "jsonl", "--family", "fig15", *"-a 1 -b 1 -c 1 -q 3 -r 2 -u 3 -t 2".split())
    rec = json.loads(out)
    assert rec["shorter"] == "tie" and rec["class_sum_ok"] is True


def test_classify_fig9():
    code, out = run("classify", "--family", "fig9", *"-a 2 -b 1 -c 1 -m 2 -n -1 -s 3".split())
    assert code == 0 and out == "NotEmbeddable(TorsionMeridian)\n"


def test_census_formats_agree():
    _, c = run("census", "--family", "fig1b", "--bound", "3", "--format", "csv")
    _, j = run("census", "--family", "fig1b", "--bound", "3", "--format", "jsonl")
    assert len(c.splitlines()) == len(j.splitlines()) + 1
    assert c.splitlines()[0].startswith("family,a,b,c,m,n,s,u")


def test_deterministic():
    assert run("census", "--family", "fig9", "--bound", "2") == run("census", "--family", "fig9", "--bound", "2")


def test_check():
    code, out = run("check", "--bound", "4")
    assert code == 0
    assert out.strip().endswith("0 failed")


def test_invalid_params_exit_1(capsys):
    code, _ = run("classify", "--family", "fig1b", "-a", "2", "-b", "2", "-m", "1", "-n", "2", "-s", "3")
    assert code == 1
    assert "gcd" in capsys.readouterr().err


def test_missing_param(capsys):
    code, _ = run("classify", "--family", "fig1b", "-a", "1")
    assert code == 1
    assert "needs" in capsys.readouterr().err


def test_int64_range(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["classify", "--family", "fig1a", "-s", str(2**63)], io.StringIO())
    assert exc.value.code == 1
    assert "64-bit" in capsys.readouterr().err


def test_bad_subcommand_exit_1():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"], io.StringIO())
    assert exc.value.code == 1


def test_spec_line_numbers(tmp_path, capsys):
    f = tmp_path / "bad.rr"
    f.write_text("family = fig15\na = 1\nb = x\n")
    code, _ = run("word", "--file", str(f))
    assert code == 1
    assert "line 3" in capsys.readouterr().err


class TestSpecParser:
    def test_family(self):
        spec = parse_spec("# comment\nfamily = fig15\na=1\nb=1\nc=1\nq=3\nr=2\nu=3\nt=2\n")
        assert spec.params == Fig15(1, 1, 1, 3, 2, 3, 2)

    def test_fig1b_u(self):
        spec = parse_spec("family = fig1b\na=1\nb=0\nm=1\nn=2\ns=3\nu=1\n")
        assert spec.u == 1

    def test_custom(self):
        spec = parse_spec(FIG8.read_text())
        assert spec.family == "custom" and len(spec.diagram.chords) == 6

    @pytest.mark.parametrize(
        "text, where",
        [
            ("a = 1\n", "line 1"),
            ("family = fig99\n", "line 1"),
            ("family = fig1a\ns = 3\ns = 4\n", "line 3"),
            ("family = fig1a\nwhat\n", "line 2"),
            ("family = fig1a\nq = 3\ns = 2\n", "line 2"),
            ("custom\nhandleA.bands = 1\nhandleB.bands = 1:1\nchords = A0+ B0- 1\n", "line 2"),
            ("custom\nhandleA.bands = 1:1\nhandleB.bands = 1:1\nchords = A0+ B0-\n", "line 4"),
            ("family = custom\nhandleA.bands = 1:1\n", "line 1"),
        ],
    )
    def test_errors(self, text, where):
        with pytest.raises(InvalidParams, match=where):
            parse_spec(text)


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "rrdiagrams", "word", "--file", str(FIG8)],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines() == ["AB", "A^3 B^2 A^2 B^2"]


def test_verbose_version_on_stderr():
    proc = subprocess.run(
        [sys.executable, "-m", "rrdiagrams", "--verbose", "classify", "--family", "fig1a", "-s", "3"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.stdout == "Unknot\n"
    assert proc.stderr.startswith("rrdiagrams ")
