import json

import pytest

from polyhom.cli import main

SAMPLE = """\
algebra sl2
size 2
op meet 2
0 0
0 1
end
"""


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_text_output(capsys):
    code, out, err = run(capsys, "analyze", "--builtin", "chain-semilattice:2")
    assert code == 0
    assert "semilattice" in out
    assert "exact-true" in out
    assert "cbullet" in out


def test_analyze_json_schema(capsys):
    code, out, _ = run(capsys, "analyze", "--builtin", "chain-semilattice:2",
                       "--json")
    assert code == 0
    data = json.loads(out)
    assert data["schema_version"] == 1
    assert data["size"] == 2
    props = data["properties"]
    assert props["sdc"]["value"] == "exact-true"
    assert props["cbullet"]["value"] == "exact-false"
    assert props["sdc"]["bounds"]["max_arity"] == 3  # two-element default


def test_check_single_property(capsys):
    code, out, _ = run(capsys, "check", "sdc", "--builtin", "chain-lattice:3",
                       "--max-arity", "2", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["value"] == "exact-false"
    assert data["witness"]["kind"] in (
        "qfpp-gap-relation", "non-algebraic-invariant-set")


def test_check_reads_algebra_file(tmp_path, capsys):
    f = tmp_path / "sl2.alg"
    f.write_text(SAMPLE)
    code, out, _ = run(capsys, "check", "sdc", "--file", str(f))
    assert code == 0
    assert "exact-true" in out


def test_closure_modes_agree_on_spec_example(capsys):
    # centralizer closure of {01,10} over the two element semilattice
    code, out, _ = run(capsys, "closure", "--builtin", "chain-semilattice:2",
                       "--arity", "2", "--tuples", "01,10",
                       "--mode", "centralizer")
    assert code == 0
    tuples = {line.strip() for line in out.splitlines() if line.strip()}
    assert tuples >= {"00", "01", "10", "11"}


def test_closure_algebraic_of_diagonal_is_diagonal(capsys):
    # x = y holds on the seed, so the algebraic closure stays on the diagonal
    code, out, _ = run(capsys, "closure", "--builtin", "chain-semilattice:2",
                       "--arity", "2", "--tuples", "00,11")
    assert code == 0
    lines = {l.strip() for l in out.splitlines() if l.strip()}
    assert lines == {"00", "11"}


def test_qe_output_is_quantifier_free(capsys):
    code, out, _ = run(capsys, "qe", "--builtin", "monounary:1,2,0,0",
                       "--formula", "Ey. f^2(y)=x1")
    assert code == 0
    assert "Ey" not in out


def test_bad_file_exit_code(capsys, tmp_path):
    f = tmp_path / "bad.alg"
    f.write_text("algebra x\nsize 2\nop f 1\n0 7\nend")
    code, _, err = run(capsys, "check", "sdc", "--file", str(f))
    assert code == 1
    assert "error" in err


def test_missing_file_exit_code(capsys):
    code, _, err = run(capsys, "check", "sdc", "--file", "/nonexistent.alg")
    assert code == 1


def test_resource_bound_exit_code(capsys):
    code, _, err = run(capsys, "check", "sdc", "--builtin", "boolean-lattice:2",
                       "--max-arity", "4", "--max-cells", "10")
    assert code == 2
    assert "resource bound" in err


def test_builtin_and_file_mutually_exclusive(capsys):
    with pytest.raises(SystemExit):
        main(["analyze"])
