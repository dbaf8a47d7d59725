import io
import subprocess
import sys
from collections import Counter

import pytest

import oracles as orc
from gtrellis.cli import main
from gtrellis.errors import NotHomomorphism, ParseError
from gtrellis.textio import bundled_names, dump_section, load_bundled, load_section, parse_group, parse_indices, parse_section

DIAGONAL = """\
# the diagonal of Z2 x Z2
section
states: group order=2
0 1
1 0
branches: group order=2
0 1
1 0
left: 0 1
right: 0 1
"""


def run(argv, stdin=""):
    out = io.StringIO()
    old = sys.stdin
    sys.stdin = io.StringIO(stdin)
    try:
        code = main(argv, out=out)
    finally:
        sys.stdin = old
    return code, out.getvalue()


@pytest.mark.parametrize("name", bundled_names())
def test_dump_parse_round_trip(name):
    doc = load_bundled(name)
    text = dump_section(doc.section, doc.provenance)
    sec, prov = parse_section(text)
    assert sec.B.table == doc.section.B.table and sec.S.table == doc.section.S.table
    assert sec.left == doc.section.left and sec.right == doc.section.right
    assert dump_section(sec, prov) == text


def test_builders():
    sec, prov = parse_section("builder shift_register p=3 m=1\n")
    assert (sec.B.order, prov) == (9, "shift_register")
    sec, prov = parse_section("builder complete group=S3  # comment\n")
    assert (sec.B.order, prov) == (36, "complete")


@pytest.mark.parametrize(
    "text,line",
    [
        (DIAGONAL.replace("1 0\nbranches", "1 x\nbranches"), 5),
        (DIAGONAL.replace("left: 0 1", "left: 0 1 1"), 9),
        (DIAGONAL.replace("left: 0 1", "colour: 0 1"), 9),
        (DIAGONAL.replace("right: 0 1\n", ""), 9),
        ("group order=2\n0 1\n1 2\n", 3),
        ("builder shift_register p=2\n", 1),
        ("builder banana\n", 1),
        ("\n\nnonsense\n", 3),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        if text.startswith("group"):
            parse_group(text)
        else:
            parse_section(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}: ")


def test_non_homomorphic_projection():
    text = DIAGONAL.replace("left: 0 1", "left: 1 0")
    with pytest.raises(NotHomomorphism):
        parse_section(text)


def test_index_streams():
    assert parse_indices("1 2\n# note\n3 # tail\n") == [(1, 1), (2, 1), (3, 3)]
    with pytest.raises(ParseError) as info:
        parse_indices("1\n2 z\n")
    assert info.value.line == 2


def test_load_section_names_from_file(tmp_path):
    p = tmp_path / "mine.sec"
    p.write_text("builder shift_register p=2 m=1\n")
    assert load_section(p).section.name == "SR(2,1)"
    p.write_text(dump_section(load_bundled("complete_z2").section).replace("name: complete(Z2)\n", ""))
    assert load_section(p).section.name == "mine"


# ---------------------------------------------------------------------------
# cli


def test_analyze_machine_is_deterministic():
    code1, out1 = run(["analyze", "--builtin", "sr22", "--machine"])
    code2, out2 = run(["analyze", "--builtin", "sr22", "--machine"])
    assert code1 == code2 == 0 and out1 == out2
    kv = dict(line.split("=", 1) for line in out1.splitlines())
    assert kv["ell"] == "2" and kv["X_orders"] == "1,2,4,8" and kv["controllable"] == "true"


def test_verify_passes_and_reports(tmp_path):
    code, out = run(["verify", "--builtin", "complete_s3", "--seed", "3"])
    assert code == 0
    assert "FAIL" not in out and "checks passed" in out
    code, out = run(["verify", "--builtin", "sr21", "--suite", "trellis,encoder", "--machine"])
    assert code == 0 and out.rstrip().endswith("ok=true")


def test_not_controllable_exit(tmp_path):
    p = tmp_path / "diag.sec"
    p.write_text(DIAGONAL)
    code, out = run(["analyze", "--section", str(p)])
    assert code == 2 and "not controllable" in out
    code, out = run(["encode", "--section", str(p), "--machine"], "0\n")
    assert code == 2 and "controllable=false" in out


def test_usage_errors(tmp_path, capsys):
    assert run(["analyze"])[0] == 1
    assert run(["analyze", "--section", str(tmp_path / "missing.sec")])[0] == 1
    assert run(["analyze", "--builtin", "nope"])[0] == 1
    assert run(["verify", "--builtin", "sr21", "--suite", "bogus"])[0] == 1
    assert run(["frobnicate"])[0] == 1
    bad = tmp_path / "bad.sec"
    bad.write_text(DIAGONAL.replace("1 0\nbranches", "1 x\nbranches"))
    assert run(["analyze", "--section", str(bad)])[0] == 1
    assert "line 5" in capsys.readouterr().err


def test_encode_and_track():
    code, out = run(["encode", "--builtin", "sr22"], "1 0 0\n0\n")
    assert code == 0 and out.split() == ["1", "2", "4", "0"]
    code, out = run(["track", "--builtin", "sr22"], "1 2 4 0\n")
    assert code == 0 and out.splitlines()[-1] == "EXACT"
    code, out = run(["encode", "--builtin", "sr22"], "1\n5\n")
    assert code == 1


def test_track_reports_offending_line(capsys):
    code, _ = run(["track", "--builtin", "sr22"], "1 2\n4 0 3\n")
    assert code == 1
    assert "line 2" in capsys.readouterr().err


def test_generators_and_compose():
    code, out = run(["generators", "--builtin", "complete_s3", "--refined", "--machine"])
    kv = dict(line.split("=", 1) for line in out.splitlines())
    assert code == 0 and kv["cells_product"] == "36" and kv["cell_count"] == "4"
    code, out = run(["compose", "--builtin", "d4_ell2", "--machine"])
    kv = dict(line.split("=", 1) for line in out.splitlines())
    assert code == 0
    assert Counter(int(x) for x in kv["factors"].split(",")) == Counter(orc.prime_factors(32))
    assert kv["solvable"] == "true"


def test_search_writes_loadable_hits(tmp_path):
    code, out = run(["search", "--group", "Z2xZ2", "--min-ell", "2", "--out", str(tmp_path)])
    assert code == 0
    files = sorted(tmp_path.glob("hit*.sec"))
    assert files and out.splitlines()[-1] == f"hits={len(files)}"
    for f in files:
        doc = load_section(f)
        assert doc.provenance == "search hit"
        assert orc.ell_oracle(doc.section) == 2
    code, out = run(["search", "--group", "S3", "--nonabelian"])
    assert code == 0 and "abelian=false" in out


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "gtrellis.cli", "analyze", "--builtin", "sr21", "--machine"],
        capture_output=True,
        text=True,
        timeout=60,
    )
    assert res.returncode == 0
    assert "ell=1" in res.stdout.splitlines()
