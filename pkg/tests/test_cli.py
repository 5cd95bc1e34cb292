import json
import subprocess
import sys

import pytest

from gtassoc.associators import GTElement, format_gt, parse_candidate, parse_gt
from gtassoc.associators.candidates import xy_alphabet
from gtassoc.cli import main
from gtassoc.families import DK, Family
from gtassoc.series import Alphabet, Series, bracket, exp, format_series, parse_series


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def dims(out):
    return [int(line.split()[1]) for line in out.splitlines()]


@pytest.mark.parametrize("family, expected", [
    ("t(3)", [1, 3, 7, 15]),
    ("free(x,y)", [1, 2, 4, 8]),
    ("tellbar(2)", [1, 2, 4, 8]),
])
def test_dims(capsys, family, expected):
    code, out, _ = run(capsys, "dims", "--family", family, "--maxdeg", 3)
    assert code == 0 and dims(out) == expected


def test_dims_report_format_and_cap(capsys):
    code, out, _ = run(capsys, "dims", "--family", "t(3)", "--maxdeg", 2, "--format", "report")
    assert code == 0 and json.loads(out) == {"family": "t(3)", "dims": [1, 3, 7]}
    code, _, err = run(capsys, "dims", "--family", "t(4)", "--maxdeg", 5, "--cap", 10)
    assert code == 2 and "cap" in err


def test_solve_then_verify(capsys, tmp_path):
    path = tmp_path / "phi.cand"
    code, _, _ = run(capsys, "solve", "--lambda", 1, "--maxdeg", 2, "-o", path)
    assert code == 0
    code, out, _ = run(capsys, "verify", path)
    assert code == 0 and "hexagon PASS" in out


def test_verify_failures_and_errors(capsys, tmp_path):
    trivial = tmp_path / "one.cand"
    trivial.write_text("candidate drinfeld\nlambda 1\nphi:\nalphabet free(x,y)\nmaxdeg 3\n1 1\n")
    code, out, _ = run(capsys, "verify", trivial)
    assert code == 1 and "hexagon FAIL deg=2" in out
    zero = tmp_path / "zero.cand"
    zero.write_text(trivial.read_text().replace("lambda 1", "lambda 0"))
    assert run(capsys, "verify", zero)[0] == 0
    bad = tmp_path / "bad.cand"
    bad.write_text("candidate drinfeld\nphi:\nnonsense\n")
    code, _, err = run(capsys, "verify", bad)
    assert code == 2 and err.startswith("error:")
    assert run(capsys, "verify", tmp_path / "missing.cand")[0] == 2


def test_verify_json_report(capsys, tmp_path):
    trivial = tmp_path / "one.cand"
    trivial.write_text("candidate drinfeld\nlambda 1\nphi:\nalphabet free(x,y)\nmaxdeg 2\n1 1\n")
    code, out, _ = run(capsys, "verify", trivial, "--format", "report")
    data = json.loads(out)
    assert code == 1 and data["passed"] is False
    assert {r["name"] for r in data["results"]} >= {"pentagon", "hexagon"}


def test_cyclotomic_and_elliptic_round_trips(capsys, tmp_path):
    cyc = tmp_path / "cyc.cand"
    assert run(capsys, "solve", "--kind", "cyclotomic", "--N", 2, "--maxdeg", 3, "-o", cyc)[0] == 0
    assert run(capsys, "verify", cyc, "--reading", "operadic")[0] == 0
    assert run(capsys, "verify", cyc, "--reading", "printed")[0] == 1
    assert run(capsys, "solve", "--kind", "cyclotomic", "--N", 2, "--maxdeg", 2, "--reading", "printed")[0] == 2
    ell = tmp_path / "ell.cand"
    assert run(capsys, "solve", "--kind", "elliptic", "--maxdeg", 3, "-o", ell)[0] == 0
    assert run(capsys, "verify", ell, "--reading", "operadic")[0] == 0


def test_verify_with_lower_maxdeg(capsys, tmp_path):
    path = tmp_path / "phi.cand"
    run(capsys, "solve", "--maxdeg", 3, "-o", path)
    code, out, _ = run(capsys, "verify", path, "--maxdeg", 2)
    assert code == 0 and "deg=2" in out
    assert run(capsys, "verify", path, "--maxdeg", 5)[0] == 2


def test_compose_with_identity_and_act(capsys, tmp_path):
    D = 3
    x = Series.gen(xy_alphabet(), D, "x")
    y = Series.gen(xy_alphabet(), D, "y")
    f = GTElement(2, exp(bracket(x, y) / 5))
    (tmp_path / "id.gt").write_text(format_gt(GTElement.identity(D)))
    (tmp_path / "f.gt").write_text(format_gt(f))
    code, out, _ = run(capsys, "compose", "gt", tmp_path / "id.gt", tmp_path / "f.gt")
    assert code == 0 and parse_gt(out) == f
    run(capsys, "solve", "--maxdeg", D, "-o", tmp_path / "phi.cand")
    code, out, _ = run(capsys, "act", "gt", tmp_path / "id.gt", tmp_path / "phi.cand")
    assert code == 0 and parse_candidate(out) == parse_candidate((tmp_path / "phi.cand").read_text())
    assert run(capsys, "compose", "gtell", tmp_path / "f.gt")[0] == 2


def test_verify_gt_file(capsys, tmp_path):
    (tmp_path / "id.gt").write_text(format_gt(GTElement.identity(3)))
    code, out, _ = run(capsys, "verify", tmp_path / "id.gt")
    assert code == 0 and "relation3 SKIP" in out


def test_op_insert_notation_example(capsys, tmp_path):
    src = tmp_path / "x.series"
    src.write_text(format_series(Family(DK, 3).t(1, 2, 2)))
    code, out, _ = run(capsys, "op", "insert", "--pmap", "pmap(3<-6: 1,3|2|5)", "--in", src)
    t6 = Family(DK, 6)
    assert code == 0 and parse_series(out) == t6.t(1, 2, 2) + t6.t(2, 3, 2)


def test_op_compose_and_act(capsys, tmp_path):
    t2 = Family(DK, 2)
    (tmp_path / "a.series").write_text(format_series(t2.t(1, 2, 2)))
    (tmp_path / "one.series").write_text(format_series(Series.one(t2.alphabet, 2)))
    code, out, _ = run(capsys, "op", "compose", "--slot", 1, tmp_path / "a.series", tmp_path / "one.series")
    t3 = Family(DK, 3)
    assert code == 0 and parse_series(out) == t3.t(1, 3, 2) + t3.t(2, 3, 2)
    (tmp_path / "b.series").write_text(format_series(t3.t(1, 3, 2)))
    code, out, _ = run(capsys, "op", "act", "--perm", "perm(2,1,3)", "--in", tmp_path / "b.series")
    assert code == 0 and parse_series(out) == t3.t(2, 3, 2)
    assert run(capsys, "op", "act", "--in", tmp_path / "b.series")[0] == 2


def test_word(capsys):
    code, out, _ = run(capsys, "word", "--context", "F(2)", "--maxdeg", 2, "--log", "x y x^-1 y^-1")
    assert code == 0
    xy = Alphabet.free("x", "y")
    assert parse_series(out, resolve_alphabet=lambda _: xy) == bracket(Series.gen(xy, 2, "x"), Series.gen(xy, 2, "y"))
    code, out, _ = run(capsys, "word", "--context", "PB3", "--maxdeg", 3, "x12 x13 x23")
    assert code == 0 and out.startswith("scalar 1")


def test_console_script_is_deterministic(tmp_path):
    cmd = [sys.executable, "-m", "gtassoc.cli", "solve", "--maxdeg", "3"]
    first = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    assert first == second and first.startswith("candidate drinfeld")
