import json
import subprocess
import sys

import pytest

from polynum.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_seq_square(capsys):
    assert run(capsys, "seq", "cube:2", "--n", "4") == (0, "0 1 4 9 16\n", "")


def test_seq_tetrahedral(capsys):
    code, out, _ = run(capsys, "seq", "simplex:3", "--n", "4")
    assert out.split() == ["0", "1", "4", "10", "20"]


def test_seq_product(capsys):
    code, out, _ = run(capsys, "seq", "prod(simplex:1,simplex:1)", "--n", "3")
    assert out.split() == ["0", "1", "4", "9"]


def test_seq_interior(capsys):
    code, out, _ = run(capsys, "seq", "cube:2", "--n", "4", "--interior")
    assert out.splitlines() == ["0 1 4 9 16", "0 0 0 1 4"]


def test_seq_bfile(capsys):
    code, out, _ = run(capsys, "seq", "cube:2", "--n", "3", "--format", "bfile")
    assert out == "0 0\n1 1\n2 4\n3 9\n"


def test_seq_csv(capsys):
    code, out, _ = run(capsys, "seq", "simplex:2", "--n", "2", "--format", "csv", "--interior")
    assert out.splitlines() == ["n,value,interior", "0,0,0", "1,1,0", "2,3,0"]


def test_seq_json_round_trip(capsys):
    from polynum import NumberEngine, build

    code, out, _ = run(capsys, "seq", "cross:3", "--n", "8", "--format", "json")
    doc = json.loads(out)
    assert doc["values"] == NumberEngine(build("cross:3")).sequence(8)
    assert doc["polynomial"] == ["2/3", "0", "1/3", "0"]


def test_seq_byte_stable(capsys):
    first = run(capsys, "seq", "bipyr(cube:2)", "--n", "6", "--format", "json")
    assert run(capsys, "seq", "bipyr(cube:2)", "--n", "6", "--format", "json") == first


def test_seq_functional(capsys):
    code, out, _ = run(capsys, "seq", "cube:2", "--n", "4", "--functional", "1/2,-3")
    assert out == "0 1 4 9 16\n"


def test_bad_functional(capsys):
    code, _, err = run(capsys, "seq", "cube:2", "--n", "4", "--functional", "1,2,3")
    assert code == 2 and "functional" in err
    code, _, _ = run(capsys, "seq", "cube:2", "--n", "4", "--functional", "x")
    assert code == 2


def test_parse_error(capsys):
    code, _, err = run(capsys, "seq", "dodecahedron:3", "--n", "4")
    assert code == 2 and err.startswith("polynum: error")


def test_negative_n(capsys):
    assert run(capsys, "seq", "cube:2", "--n", "-1")[0] == 2


def test_argparse_usage_exit():
    with pytest.raises(SystemExit) as info:
        main(["seq"])
    assert info.value.code == 2


@pytest.mark.parametrize(
    "expr,theorem,coeffs",
    [("cube:3", "1", [1, 4, 1]), ("cross:3", "2", [1, 4, 4]), ("simplex:4", "3-1", [1, 4, 6, 4, 1]),
     ("cube:2", "4", [4, 5, 2])],
)
def test_decompose(capsys, expr, theorem, coeffs):
    code, out, _ = run(capsys, "decompose", expr, "--theorem", theorem)
    doc = json.loads(out)
    assert code == 0
    assert doc["coeffs"] == coeffs
    assert doc["verified_range"] == [0, 2 * len(coeffs) + (2 if theorem in ("1", "2") else 0)]


def test_decompose_check(capsys):
    code, out, _ = run(capsys, "decompose", "cube:4", "--theorem", "1", "--check")
    doc = json.loads(out)
    assert code == 0 and doc["check"]["agree"]
    code, out, _ = run(capsys, "decompose", "cube:4", "--theorem", "1", "--method", "solve", "--check")
    assert code == 0 and json.loads(out)["coeffs"] == [1, 11, 11, 1]


def test_decompose_T32_terms(capsys):
    code, out, _ = run(capsys, "decompose", "cross:3", "--theorem", "3-2")
    assert code == 0
    assert json.loads(out)["terms"] == [[1, 0, 0], [1, 1, 1], [4, 2, 1], [4, 3, 2]]


def test_decompose_mismatch_reported(capsys):
    code, out, _ = run(capsys, "decompose", "simplex:2", "--theorem", "3-2")
    doc = json.loads(out)
    assert code == 1
    assert doc["verified_range"] is None and doc["mismatch_at"]


def test_decompose_usage(capsys):
    assert run(capsys, "decompose", "cube:3", "--theorem", "4", "--method", "solve")[0] == 2
    assert run(capsys, "decompose", "simplex:0", "--theorem", "1")[0] == 2


def test_verify_product(capsys):
    code, out, err = run(capsys, "verify", "product")
    doc = json.loads(out)
    assert code == 0 and doc["passed"] and err == ""
    assert all(v["passed"] for v in doc["checks"].values())
    assert list(doc["checks"]) == sorted(doc["checks"])


def test_verify_identities(capsys):
    code, out, _ = run(capsys, "verify", "identities", "--max-d", "5")
    checks = json.loads(out)["checks"]
    for name in ("worpitzky", "stirling_descent", "macmahon_oracle"):
        assert checks[f"identities.{name}"]["passed"]


def test_verify_decompositions_cube4(capsys):
    code, out, _ = run(capsys, "verify", "decompositions", "--expr", "cube:4")
    assert code == 0
    # five forms, the dual T1 path and three conversions
    assert len(json.loads(out)["checks"]) == 9


def test_verify_failure_witness(capsys):
    code, out, err = run(capsys, "verify", "decompositions", "--expr", "simplex:2")
    assert code == 1
    assert "FAIL decompositions.T32.simplex:2" in err


def test_verify_bad_expr(capsys):
    assert run(capsys, "verify", "counts", "--expr", "cube:")[0] == 2


def test_identity(capsys):
    assert json.loads(run(capsys, "identity", "eulerian", "4")[1]) == [1, 11, 11, 1]
    assert json.loads(run(capsys, "identity", "generalized-eulerian", "2,1")[1]) == [1, 2, 0]
    assert json.loads(run(capsys, "identity", "stirling2", "4", "2")[1]) == 7
    assert json.loads(run(capsys, "identity", "narayana", "3", "2")[1]) == 3
    assert json.loads(run(capsys, "identity", "macmahon", "2", "2", "2")[1]) == 20
    assert json.loads(run(capsys, "identity", "young", "3", "3")[1])["count"] == 42
    assert json.loads(run(capsys, "identity", "ballot", "3", "3")[1])[:3] == [1, 3, 1]
    assert json.loads(run(capsys, "identity", "paths", "1,1,1")[1]) == [1, 4, 1]
    assert run(capsys, "identity", "stirling2", "4")[0] == 2


def test_identity_budget(capsys):
    code, _, err = run(capsys, "identity", "young", "4", "4")
    assert code == 3 and "budget" in err


def test_triangulate(capsys):
    code, out, _ = run(capsys, "triangulate", "cube:3", "--shelling")
    doc = json.loads(out)
    assert len(doc["simplexes"]) == 6
    assert sorted(doc["shelling"]["l_counts"]) == [1, 1, 1, 1, 2]


def test_triangulate_budget(capsys, monkeypatch):
    monkeypatch.setenv("POLYNUM_BUDGET", "shelling_nodes=3")
    code, _, err = run(capsys, "triangulate", "cube:4", "--shelling")
    assert code == 3


def test_polytope(capsys):
    code, out, _ = run(capsys, "polytope", "hypersimplex:4,2")
    doc = json.loads(out)
    assert len(doc["vertices"]) == 6 and doc["dim"] == 3


def test_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "polynum.cli", "seq", "cube:2", "--n", "4"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "0 1 4 9 16\n"
