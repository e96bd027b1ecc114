import subprocess
import sys

import pytest

from fingroups.cli import main, parse_group, parse_subgroup, run_command
from fingroups.errors import InvalidParameter
from fingroups.group import export_cayley, is_isomorphic, symmetric


def test_analyze_a4():
    status, text = run_command(["analyze", "alternating:4"])
    assert status == 0
    assert any(ln.split() == ["WSupersoluble", "False"] for ln in text.splitlines())


def test_residual_trivial():
    status, text = run_command(["--format", "structured", "residual", "trivial",
                                "--formation", "Nilpotent"])
    assert status == 0
    assert "check=trivial value=True" in text


def test_psn_with_chain():
    status, text = run_command(["psn", "paper:g18_3", "--subgroup", "sylow:3"])
    fields = dict(ln.split(None, 1) for ln in text.splitlines()[1:])
    assert status == 0 and fields["p_subnormal"] == "True"
    assert fields["chain"] == "H0 (order 9) < G (order 18) [2]"
    status, text = run_command(["psn", "alternating:4", "--subgroup", "sylow:3"])
    fields = dict(ln.split(None, 1) for ln in text.splitlines()[1:])
    assert status == 0 and fields["p_subnormal"] == "False" and "chain" not in fields


def test_group_expressions(tmp_path):
    G = parse_group("product(cyclic:2,product(symmetric:3,dihedral:8))")
    assert G.order == 96
    assert parse_group("elementary:3:2").exponent == 3
    path = tmp_path / "s3.txt"
    path.write_text(export_cayley(symmetric(3)))
    assert is_isomorphic(parse_group(f"file:{path}"), symmetric(3))[0]
    gens = tmp_path / "gens.txt"
    gens.write_text("degree 4\n(0 1 2 3)\n(0 2)\n")
    assert parse_group(f"file:{gens}").order == 8
    for bad in ("cyclic", "cyclic:x", "product(cyclic:2)", "klein:4", f"file:{tmp_path}/none"):
        with pytest.raises(InvalidParameter):
            parse_group(bad)


def test_subgroup_specs():
    G = symmetric(4)
    assert parse_subgroup(G, "sylow:2").order == 8
    assert parse_subgroup(G, "derived").order == 12
    assert parse_subgroup(G, "gens:1").order == G.element_order[1]
    assert parse_subgroup(G, "lattice:0").is_trivial
    with pytest.raises(InvalidParameter):
        parse_subgroup(G, "gens:99")


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as e:
        run_command(["frobnicate"])
    assert e.value.code == 2
    assert run_command(["residual", "cyclic:4", "--formation", "Bogus"])[0] == 2
    assert run_command(["analyze", "cyclic:x"])[0] == 2
    assert run_command(["verify", "theorems", "--max-order", "500"])[0] == 2


def test_export(tmp_path):
    out = tmp_path / "d10.cayley"
    assert run_command(["export", "dihedral:10", "--cayley", str(out)])[0] == 0
    assert out.read_text().startswith("order 10\n")


def test_report_file_and_main(tmp_path, capsys):
    rep = tmp_path / "r.txt"
    assert main(["--format", "structured", "--report", str(rep), "analyze", "cyclic:6"]) == 0
    assert rep.read_text() == capsys.readouterr().out


def test_verify_examples_exit_zero():
    status, text = run_command(["--format", "structured", "--parallelism", "1", "verify", "examples"])
    assert status == 0
    assert "G=g144_115 |G^{wU}|=9 |(G^A)^N|=9 verdict=equal" in text
    assert text.rstrip().splitlines()[-1].endswith("violations=0")


def test_verify_small_corpus_and_determinism():
    argv = ["--format", "structured", "--parallelism", "1", "verify", "theorems", "--max-order", "20"]
    s1, t1 = run_command(argv)
    s2, t2 = run_command(argv[:3] + ["2"] + argv[4:])
    assert s1 == s2 == 0 and t1 == t2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "fingroups", "analyze", "cyclic:3"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "Abelian" in r.stdout
