"""Golden-file tests for the command line.

Each case runs ``presemiring`` in-process from the tests directory and compares
stdout (or stderr for usage errors) with ``golden/<name>.txt``.  Regenerate
after an intended output change with ``python3 tests/test_cli.py --regen``.
"""

import contextlib
import io
import os
import shlex
import subprocess
import sys
from pathlib import Path

import pytest

from presemiring.cli import main
from presemiring.formats import emit_structure, parse_structure_text
from presemiring.instances import parse_builtin

HERE = Path(__file__).resolve().parent
GOLDEN = HERE / "golden"

# name, command line, expected exit code
CASES = [
    ("classify_bni", "classify builtin:bni(4,2)", 0),
    ("classify_file", "classify data/boolean2.sr", 0),
    ("classify_bad_row", "classify data/bad_row.sr", 2),
    ("comp_truncation", "comp builtin:truncation(2)", 0),
    ("check_count", "check --prop modular data/count3.fn", 0),
    ("check_rational", "check --prop probability data/weights.fn", 0),
    ("check_not_modular", "check --prop modular data/notmodular.fn", 1),
    ("check_not_normalized", "check --prop probability builtin:count@powerset(2)", 1),
    ("check_seven_values", "check --prop modular data/seven.fn", 2),
    ("check_sampled", "check --prop finitely_additive builtin:indicator --seed 1 --trials 500", 0),
    ("identity_c1", "identity C1 builtin:count@powerset(3) 1_2 2_3", 0),
    ("identity_unmet", "identity N1 builtin:count@powerset(2) 1", 2),
    ("independent_dependent", "independent builtin:uniform@powerset(2) 1 1", 1),
    ("propagate", "propagate builtin:uniform@cube(3) 2_4_6_8 3_4_7_8 5_6_7_8", 0),
    ("metric", "metric builtin:count@powerset(3) 1 2 3", 0),
    ("bayes", "bayes builtin:uniform@powerset(6) --event 2_3 --part 1_2 --part 3_4_5_6 --k 1", 0),
    ("totalprob", "totalprob builtin:uniform@powerset(6) --event 2_3 --part 1_2 --part 3_4_5_6", 0),
    ("boole", "boole builtin:uniform@powerset(3) 1_2 2_3", 0),
    ("parallel", "parallel builtin:uniform@cube(2) 3_4 2_4", 0),
    ("poincare", "poincare builtin:count@powerset(3) 1_2 2_3 1_3", 0),
    ("dedekind_verify", "dedekind verify --spec data/counting.spec --trials 10000 --seed 7", 0),
    ("dedekind_eval", "dedekind eval --spec data/five_seven.spec 12 1", 0),
    ("dedekind_corollary", "dedekind corollary --spec data/counting.spec 2 3", 1),
    ("dedekind_factor", "dedekind factor 12 1 999983", 0),
    ("enumerate_bni", "enumerate --codomain zmod:3 --claim bni builtin:bni(5,2)", 0),
    ("enumerate_powerset", "enumerate --codomain zmod:4 --claim powerset builtin:powerset(2)", 0),
    ("sample_arctic", "sample-theorem arctic --constant 4 --at ninf=-7 --trials 2000", 0),
    ("sample_gminplus", "sample-theorem gminplus --rule identity --trials 500 --seed 3", 1),
    ("sample_parity", "sample-theorem qnonneg --rule numerator-parity --trials 2000", 1),
    ("unknown_builtin", "classify builtin:nosuch(3)", 2),
]


def run(cmdline, fmt="lines"):
    """(exit code, stdout, stderr) of one in-process invocation from the tests dir."""
    out, err = io.StringIO(), io.StringIO()
    cwd = os.getcwd()
    os.chdir(HERE)
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            try:
                code = main(shlex.split(cmdline) + ["--format", fmt])
            except SystemExit as e:
                code = e.code
    finally:
        os.chdir(cwd)
    return code, out.getvalue(), err.getvalue()


def _captured(code, out, err):
    return out if code != 2 else err


@pytest.mark.parametrize("name,cmdline,expected", CASES, ids=[c[0] for c in CASES])
def test_golden(name, cmdline, expected):
    code, out, err = run(cmdline)
    assert code == expected, err
    assert _captured(code, out, err) == (GOLDEN / f"{name}.txt").read_text()


@pytest.mark.parametrize("name,cmdline,expected", CASES[:12], ids=[c[0] for c in CASES[:12]])
def test_lines_output_is_byte_stable(name, cmdline, expected):
    assert run(cmdline) == run(cmdline)


def test_exit_one_always_prints_a_witness_line():
    for name, cmdline, expected in CASES:
        if expected == 1:
            _, out, _ = run(cmdline)
            last = out.splitlines()[-1]
            assert last.startswith("witness: ") and last != "witness: ", name


def test_failing_check_witness_rechecks_via_identity():
    code, out, _ = run("check --prop modular data/notmodular.fn")
    assert code == 1
    fields = dict(line.split("=", 1) for line in out.splitlines() if "=" in line)
    witness = out.splitlines()[-1][len("witness: "):]
    code, out, _ = run(f"identity {fields['recheck']} data/notmodular.fn {witness}")
    assert code == 1 and "verdict=violated" in out


def test_lines_and_text_carry_the_same_fields():
    _, lines, _ = run("enumerate --codomain zmod:3 --claim bni builtin:bni(5,2)")
    _, text, _ = run("enumerate --codomain zmod:3 --claim bni builtin:bni(5,2)", fmt="text")
    assert [ln.split("=", 1) for ln in lines.splitlines()] == \
        [ln.split(": ", 1) for ln in text.splitlines()]
    assert "total=243\nmodular=9\nclaim=holds\n" in lines


@pytest.mark.parametrize("ref", ["bni(4,2)", "truncation(3)", "arcticwindow(2)",
                                 "bottleneck(4)", "powerset(3)", "cube(2)"])
def test_emit_round_trip(ref, tmp_path):
    S = parse_builtin(ref)
    code, out, _ = run(f"classify builtin:{ref} --emit {tmp_path / 'out.sr'}")
    assert code == 0
    text = (tmp_path / "out.sr").read_text()
    T = parse_structure_text(text, "out.sr")
    assert (T.add_table, T.mul_table, T.zero, T.one, T.names) == \
        (S.add_table, S.mul_table, S.zero, S.one, S.names)
    assert emit_structure(T) == text
    # the emitted file classifies the same way
    _, a, _ = run(f"classify builtin:{ref}")
    _, b, _ = run(f"classify {tmp_path / 'out.sr'}")
    assert a.splitlines()[1:] == b.splitlines()[1:]


def test_parse_errors_carry_line_and_column():
    _, _, err = run("classify data/bad_row.sr")
    assert err.startswith("error: data/bad_row.sr:6:1:")
    _, _, err = run("check --prop modular data/seven.fn")
    assert "data/seven.fn:4:" in err and "7 values for a domain of size 8" in err


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "presemiring.cli", "dedekind", "factor", "12",
                           "--format", "lines"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "12=2^2 3^1\n"


def regenerate():
    GOLDEN.mkdir(exist_ok=True)
    for name, cmdline, expected in CASES:
        code, out, err = run(cmdline)
        if code != expected:
            print(f"{name}: exit {code}, expected {expected}\n{err}", file=sys.stderr)
            continue
        (GOLDEN / f"{name}.txt").write_text(_captured(code, out, err))
        print(f"wrote {name}.txt")


if __name__ == "__main__":
    if sys.argv[1:] == ["--regen"]:
        regenerate()
    else:
        sys.exit(pytest.main([__file__, "-q"]))
