import io
import json
import subprocess
import sys

import pytest

from laxcalc.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue().strip()


def test_norm_command():
    assert run("norm", "--flavor", "mlc", "--ctx", "x:i", "let y = return x in return y") == (0, "return x")


def test_norm_annotated():
    code, out = run("norm", "--flavor", "slc", "--annotate", r"\x:<>i. x")
    assert (code, out) == (0, r"\x:<>i. letmap y = x in y")


def test_inadmissible_command():
    assert run("inadmissible", "--flavor", "slc", "i -> <>i", "--depth", "8") == (0, "Empty")
    code, out = run("inadmissible", "--flavor", "rlc", "i -> <>i")
    assert (code, out) == (0, r"Inhabited: \x:i. return x")


def test_check_flavor_diagnostic():
    code, out = run("check", "--flavor", "slc", "", r"\x:i. return x")
    assert code == 1
    assert "return is not available in SLC" in out


def test_check_with_lone_term():
    assert run("check", "--flavor", "slc", r"\x:i*<>i. letmap y = snd x in (fst x, y)") == (
        0, "i * <>i -> <>(i * i)")


def test_check_unannotated_lambda():
    code, out = run("check", "--flavor", "rlc", r"\x. return x")
    assert code == 1 and "annotation" in out


def test_parse_error_exit_code():
    code, out = run("check", "--flavor", "mlc", "let x = in")
    assert code == 2 and "1:9" in out


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["norm", "--flavor", "xlc", "x"])
    assert exc.value.code == 2


def test_eq_command():
    assert run("eq", "--flavor", "rlc", "--ctx", "z:<>i", "letmap x = z in x", "z") == (0, "true")
    assert run("eq", "--flavor", "slc", r"\x:i. \y:i. x", r"\x:i. \y:i. y") == (1, "false")
    code, _ = run("eq", "--flavor", "slc", "--ctx", "x:i", "x", "()")
    assert code == 1


def test_enumerate_command():
    code, out = run("enumerate", "--flavor", "rlc", "--ctx", "a:i, b:i", "<>(i * i)", "--depth", "4")
    assert code == 0
    assert out.splitlines() == ["return (b, b)", "return (b, a)", "return (a, b)", "return (a, a)"]


def test_json_document():
    code, out = run("--format", "json", "norm", "--flavor", "slc", "--ctx", "z:<>i", "z")
    doc = json.loads(out)
    assert code == 0
    assert doc == {
        "format_version": 1, "command": "norm", "flavor": "slc",
        "input": {"ctx": "z:<>i", "term": "z"},
        "result": "letmap x = z in x", "diagnostics": [],
    }


def test_json_diagnostics_on_error():
    code, out = run("--format", "json", "check", "--flavor", "slc", r"\x:i. return x")
    doc = json.loads(out)
    assert code == 1 and doc["result"] is None and len(doc["diagnostics"]) == 1


def test_term_from_file(tmp_path):
    src = tmp_path / "t.lax"
    src.write_text("let y = return x\nin return y\n")
    assert run("norm", "--flavor", "mlc", "--ctx", "x:i", "--file", str(src)) == (0, "return x")
    code, out = run("norm", "--flavor", "mlc", "--file", str(tmp_path / "missing"))
    assert code == 2


def test_kripke_commands(tmp_path):
    good = tmp_path / "good.frame"
    good.write_text("worlds: w\nRm w w\nV p: w\n")
    assert run("kripke-check", str(good), "--class", "ll") == (0, "Ok")
    assert run("kripke-sat", str(good), "p -> <>p") == (0, "w: true")
    bad = tmp_path / "bad.frame"
    bad.write_text("worlds: w v\nRm w v\nV p:\n")
    code, out = run("kripke-check", str(bad))
    assert code == 1 and "Inclusion" in out
    empty = tmp_path / "empty.frame"
    empty.write_text("worlds: w\nV p: w\n")
    assert run("kripke-sat", str(empty), "p -> <>p") == (1, "w: false")
    assert run("kripke-sat", str(empty), "<>q")[0] == 2
    assert run("kripke-sat", str(empty), "p", "--world", "nowhere")[0] == 2


def test_kripke_frame_syntax_error(tmp_path):
    f = tmp_path / "broken.frame"
    f.write_text("Ri w\n")
    code, out = run("kripke-check", str(f))
    assert code == 2 and "line 1" in out


def test_rules_command():
    code, out = run("rules")
    assert code == 0 and len(out.splitlines()) == 19
    doc = json.loads(run("--format", "json", "rules")[1])
    assert len(doc["result"]) == 19 and doc["flavor"] is None


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "laxcalc.cli", "inadmissible", "--flavor", "jlc",
                           "i -> <>i"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "Empty"
