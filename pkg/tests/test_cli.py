import json
import subprocess
import sys

import pytest

from molpreduce.cli import main
from molpreduce.linalg import Q, RationalMatrix
from molpreduce.problems import parse_factorization, parse_problem, parse_result, serialize_problem

PENTAGON_FILE = """\
vlp max 4 2
obj 0 1 0
obj 1 0 1
obj 2 1 1
obj 3 2 1
rows 1
row -inf 1 1 3
var 0 2 0 2
"""

SQUARE_RANK_ONE = """\
vlp min 2 2
obj 0 1 2
obj 1 2 4
rows 0
var 0 1 0 1
"""


@pytest.fixture
def pentagon_file(tmp_path):
    path = tmp_path / "pentagon.vlp"
    path.write_text(PENTAGON_FILE)
    return path


def test_solve_with_oracle(pentagon_file, tmp_path, capsys):
    out = tmp_path / "res.txt"
    assert main(["solve", str(pentagon_file), "--solver", "enum", "--oracle", "-o", str(out)]) == 0
    assert "oracle: match" in capsys.readouterr().out
    res = parse_result(out.read_text())
    assert res.status == "optimal"
    assert res.vertex_set() == {(1, 2), (2, 1)}


def test_solve_benson_to_stdout(pentagon_file, capsys):
    assert main(["solve", str(pentagon_file)]) == 0
    text = capsys.readouterr().out
    assert text.startswith("status optimal\n")
    assert "eff 1 2" in text and "eff 2 1" in text


def test_reduce_writes_problem_and_sidecar(tmp_path, capsys):
    src = tmp_path / "r1.vlp"
    src.write_text(SQUARE_RANK_ONE)
    out = tmp_path / "red.vlp"
    assert main(["reduce", str(src), "-o", str(out)]) == 0
    assert "reduced 2 objectives to 1" in capsys.readouterr().err
    red = parse_problem(out.read_text())
    assert red.q == 1 and red.C.B == RationalMatrix.from_rows([[2], [4]])
    f = parse_factorization((tmp_path / "red.vlp.fact").read_text())
    assert f.product() == parse_problem(SQUARE_RANK_ONE).P


def test_reduce_full_rank_is_skipped(tmp_path, capsys):
    src = tmp_path / "id.vlp"
    src.write_text(SQUARE_RANK_ONE.replace("obj 1 2 4", "obj 1 2 3"))
    assert main(["reduce", str(src)]) == 0
    captured = capsys.readouterr()
    assert "reduction skipped" in captured.err
    assert parse_problem(captured.out) == parse_problem(src.read_text())


def test_nonessential_report(pentagon_file, capsys):
    assert main(["nonessential", str(pentagon_file), "--verify"]) == 0
    out = capsys.readouterr().out
    assert "retained 0 1" in out
    assert "removed 3 : lambda 0=2 1=1" in out
    assert out.endswith("verified true\n")


def test_nonessential_combinations_pass_through(pentagon_file, capsys):
    assert main(["nonessential", str(pentagon_file), "--combination", "1 1 0 0", "--combination", "0,0,1/2,0"]) == 0
    out = capsys.readouterr().out
    assert "combination 1 1 0 0 : 1 1\n" in out
    assert "combination 0 0 1/2 0 : 1/2 1/2\n" in out
    assert main(["nonessential", str(pentagon_file), "--combination", "1 x"]) == 2


def test_interpret_points_on_image_boundary(pentagon_file, tmp_path, capsys):
    csv_path = tmp_path / "boundary.csv"
    assert main(["interpret", str(pentagon_file), "--csv", str(csv_path)]) == 0
    region = parse_problem(capsys.readouterr().out).S
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "z1,z2,minimal"
    for line in lines[1:]:
        *z, flag = line.split(",")
        z = tuple(Q(v) for v in z)
        assert region.contains(z)
        assert any(sum(x * v for x, v in zip(a, z)) == b for a, b in region.inequalities())
    assert sorted(l for l in lines[1:] if l.endswith(",1")) == ["1,2,1", "2,1,1"]


def test_interpret_csv(tmp_path, capsys):
    src = tmp_path / "r1.vlp"
    src.write_text(SQUARE_RANK_ONE)
    csv_path = tmp_path / "boundary.csv"
    assert main(["interpret", str(src), "--csv", str(csv_path)]) == 0
    assert csv_path.read_text() == "z1,minimal\n0,1\n3/2,0\n"
    molp0 = parse_problem(capsys.readouterr().out)
    assert molp0.q == 2 and molp0.n == 1


def test_bench_small(tmp_path):
    cfg = tmp_path / "bench.json"
    cfg.write_text(json.dumps({"ell": 1, "q_max": 4}))
    out = tmp_path / "bench.csv"
    assert main(["bench", "--config", str(cfg), "--trials", "2", "--warmup", "1", "-o", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "q,molp_ms,vlp_ms,molp_minpts,vlp_minpts"
    assert [l.split(",")[0] for l in lines[1:]] == ["3", "4"]


def test_bench_bad_config(tmp_path):
    assert main(["bench", "--trials", "0"]) == 2


def test_usage_error():
    assert main(["solve", "--no-such-flag", "x"]) == 2
    assert main([]) == 2


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.vlp"
    bad.write_text("vlp min 2 2\nobj 0 1 x\n")
    assert main(["solve", str(bad)]) == 1
    assert "line 2, column 9" in capsys.readouterr().err


def test_missing_file(tmp_path):
    assert main(["solve", str(tmp_path / "nope.vlp")]) == 1


def test_module_entry_point(pentagon_file):
    proc = subprocess.run(
        [sys.executable, "-m", "molpreduce", "solve", str(pentagon_file), "--solver", "enum"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("status optimal")


def test_problem_file_matches_fixture(pentagon_file, pentagon_molp):
    p = parse_problem(pentagon_file.read_text())
    assert p == pentagon_molp
    # the serializer always writes the vars line
    assert serialize_problem(p) == PENTAGON_FILE.replace("var 0", "vars\nvar 0")
