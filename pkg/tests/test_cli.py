"""Tests for the command-line interface."""

import io
import json

import pytest

from splinedim.cli import main


def run(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


def test_dim_single_triangle_exact():
    code, text = run(["dim", "--gen", "triangle", "-r", "1", "-s", "2", "-d", "4",
                      "--method", "exact"])
    assert code == 0
    assert "15" in text.split()


def test_dim_two_triangles_argyris():
    code, text = run(["dim", "--gen", "two-triangles", "-r", "1", "-s", "2", "-d", "5",
                      "--method", "exact", "--format", "csv"])
    assert code == 0
    lines = text.strip().splitlines()
    assert lines[0] == "d,h0,lb52,lb51,ub53,exact,method"
    assert lines[1].split(",")[5] == "29"


def test_dim_ps6_morgan_scott_all():
    code, text = run(["dim", "--gen", "ps6:morgan-scott", "-r", "2", "-s", "3",
                      "-d", "5", "--method", "all", "--format", "csv", "--check"])
    assert code == 0
    row = text.strip().splitlines()[1].split(",")
    assert row[:5] == ["5", "0", "67", "67", "76"]
    assert row[5] == "67"


def test_dim_star_formula():
    code, text = run(["dim", "--gen", "star:4-generic", "-r", "1", "-d", "2",
                      "--method", "formula", "--format", "csv"])
    assert code == 0
    row = text.strip().splitlines()[1].split(",")
    assert row[5] == "7"
    assert row[6] == "formula"


def test_dim_formula_fallback_to_oracle():
    # d below the closed-form range: the CLI falls back and labels it
    code, text = run(["dim", "--gen", "ps6:triangle", "-r", "1", "-s", "2", "-d", "2",
                      "--method", "formula", "--format", "csv"])
    assert code == 0
    row = text.strip().splitlines()[1].split(",")
    assert row[6] == "oracle"


def test_table_rows_and_check():
    code, text = run(["table", "--gen", "ps6:morgan-scott", "-r", "2", "-s", "3",
                      "--degrees", "4:6", "--format", "csv", "--check"])
    assert code == 0
    rows = [line.split(",") for line in text.strip().splitlines()[1:]]
    got = [(int(r[1]), int(r[2]), int(r[3]), int(r[5])) for r in rows]
    assert got == [(9, 15, 15, 16), (0, 67, 67, 67), (0, 160, 160, 160)]


def test_table_json_is_sorted_and_stable():
    code, text = run(["table", "--gen", "triangle", "-r", "0", "--degrees", "0:2",
                      "--format", "json"])
    assert code == 0
    data = json.loads(text)
    assert [row["exact"] for row in data["rows"]] == [1, 3, 6]
    assert text == json.dumps(data, sort_keys=True) + "\n"


def test_ideal_canonical_dump():
    code, text = run(["ideal", "--canonical", "-r", "1", "-s", "2",
                      "--degrees", "3:5", "--format", "json"])
    assert code == 0
    data = json.loads(text)
    assert data["dims"] == {"3": 1, "4": 4, "5": 8}
    exps = [t["exp"] for g in data["ideal"]["generators"] for t in g["terms"]]
    assert [3, 0, 0] in exps and [2, 1, 1] in exps


def test_ideal_vertex_variants():
    for variant in ("full", "bar", "tilde"):
        code, text = run(["ideal", "--gen", "morgan-scott", "-r", "1", "-s", "2",
                          "--vertex", "3", "--variant", variant, "-d", "6"])
        assert code == 0
        assert "vertex ideal" in text


def test_ideal_edge_selector():
    code, text = run(["ideal", "--gen", "morgan-scott", "-r", "1", "-s", "1",
                      "--edge", "3,4", "-d", "3"])
    assert code == 0
    assert "dim at degree 3" in text


def test_gen_round_trip(tmp_path):
    code, text = run(["gen", "--gen", "ps6:two-triangles", "-r", "1", "-s", "2"])
    assert code == 0
    path = tmp_path / "mesh.json"
    path.write_text(text)
    code1, t1 = run(["dim", "--mesh", str(path), "-d", "4", "-r", "1",
                     "--method", "all", "--format", "csv"])
    code2, t2 = run(["dim", "--gen", "ps6:two-triangles", "-r", "1", "-s", "2",
                     "-d", "4", "--method", "all", "--format", "csv"])
    assert code1 == code2 == 0
    assert t1 == t2


def test_refine_emits_split_mesh():
    code, text = run(["refine", "--gen", "triangle", "-r", "1", "-s", "2"])
    assert code == 0
    data = json.loads(text)
    assert len(data["triangles"]) == 6
    assert "smoothness" in data


def test_validate_builtin():
    code, text = run(["validate", "--gen", "morgan-scott"])
    assert code == 0
    assert "valid disk" in text
    assert "f1°=9" in text


def test_validate_bad_mesh(tmp_path):
    doc = {
        "vertices": [["0", "0"], ["1", "0"], ["0", "1"], ["-1", "0"], ["0", "-1"]],
        "triangles": [[0, 1, 2], [0, 3, 4]],
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, text = run(["validate", "--mesh", str(path)])
    assert code == 1


def test_exit_code_one_on_bad_args():
    assert run(["dim", "--gen", "nope", "-r", "1", "-d", "2"])[0] == 1
    assert run(["dim", "--gen", "triangle", "-d", "2"])[0] == 1  # missing -r
    assert run(["dim", "--gen", "triangle", "-r", "1"])[0] == 1  # missing degree
    assert run(["dim"])[0] == 1


def test_degree_guard():
    code, _ = run(["dim", "--gen", "triangle", "-r", "0", "-d", "40"])
    assert code == 1
    code, _ = run(["dim", "--gen", "triangle", "-r", "0", "-d", "40", "--allow-large",
                   "--method", "exact"])
    assert code == 0


def test_methods_lb_ub():
    for method, col in [("lb51", 3), ("lb52", 2), ("ub53", 4)]:
        code, text = run(["dim", "--gen", "star:3-generic", "-r", "1", "-s", "2",
                          "-d", "4", "--method", method, "--format", "csv"])
        assert code == 0
        row = text.strip().splitlines()[1].split(",")
        assert row[col] != ""
