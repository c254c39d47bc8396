import json
import subprocess
import sys

import pytest

from crumby.cli import main, parse_graph_spec, UsageError
from crumby.families import bundled_lines


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_color_gp_odd_verify(capsys):
    code, out, _ = run(capsys, "color", "gp", "--family", "odd", "--k", "13", "--verify")
    assert code == 0
    d = json.loads(out)
    assert d["n"] == 54 and len(d["colors"]) == 54


def test_color_gp_by_n_and_dot(capsys):
    code, out, _ = run(capsys, "color", "gp", "--n", "12", "--k", "5", "--dot", "--verify", "--strict-stars")
    assert code == 0 and out.startswith('graph "GP(12,5)"')


def test_color_gp_usage_errors(capsys):
    assert run(capsys, "color", "gp", "--n", "10", "--k", "3")[0] == 2
    assert run(capsys, "color", "gp", "--k", "3")[0] == 2
    assert run(capsys, "color", "gp", "--family", "odd", "--n", "7", "--k", "3")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["color", "gp", "--family", "weird", "--k", "3"])
    assert exc.value.code == 2


def test_search_prism_count(capsys):
    code, out, _ = run(capsys, "search", "--graph", "named:prism3", "--goal", "crumby", "--mode", "count")
    assert code == 0 and json.loads(out)["count"] == 0


def test_search_custom_and_rbipm(capsys):
    code, out, _ = run(capsys, "search", "--graph", "named:q3", "--goal", "custom", "--blue-sizes", "2",
                       "--red-sizes", "2", "--mode", "count")
    assert code == 0 and json.loads(out)["count"] == 6
    code, out, _ = run(capsys, "search", "--graph", "named:h_graph", "--goal", "rbipm", "--mode", "none")
    assert code == 0 and json.loads(out)["none"] is True
    assert run(capsys, "search", "--graph", "named:q3", "--goal", "custom", "--blue-sizes", "2")[0] == 2
    assert run(capsys, "search", "--graph", "named:q3", "--red-sizes", "2")[0] == 2
    assert run(capsys, "search", "--graph", "named:q3", "--goal", "custom", "--blue-sizes", "9",
               "--red-sizes", "2")[0] == 2


def test_search_torus_with_checkpoint(capsys, tmp_path):
    ck = tmp_path / "c.json"
    code, out, _ = run(capsys, "search", "--graph", "torus:5:5", "--L", "4", "--mode", "none",
                       "--checkpoint", str(ck), "--split-depth", "6")
    assert code == 0 and json.loads(out)["none"] is True and ck.exists()


def test_verify_all_red_petersen(capsys, tmp_path):
    f = tmp_path / "red.json"
    f.write_text(json.dumps({"n": 10, "colors": "R" * 10}))
    code, out, _ = run(capsys, "verify", "--graph", "named:petersen", "--coloring", str(f))
    assert code == 1
    report = json.loads(out)
    assert report["violations"][0]["kind"] == "RedLongPath"
    code, _, _ = run(capsys, "verify", "--graph", "named:petersen", "--coloring", "RRBRBBBRRR")
    assert code == 0


def test_verify_rbipm_goal(capsys):
    assert run(capsys, "verify", "--graph", "named:wagner", "--goal", "rbipm", "--coloring", "RBRBRBRB")[0] == 0
    assert run(capsys, "verify", "--graph", "named:wagner", "--goal", "rbipm", "--coloring", "RRRRBBBB")[0] == 1


def test_color_tree(capsys, tmp_path):
    f = tmp_path / "t.json"
    f.write_text('{"parents": [-1, 0, 0, 1, 1, 3, 4, 4]}')
    code, out, _ = run(capsys, "color", "tree", "--in", str(f), "--trace")
    assert code == 0 and json.loads(out)["trace"][-1] == "5b+"
    code, _, err = run(capsys, "color", "tree", "--in", str(f), "--rules", "literal")
    assert code == 1 and "InvariantBroken" in err
    f.write_text("not json")
    assert run(capsys, "color", "tree", "--in", str(f))[0] == 2
    assert run(capsys, "color", "tree", "--in", str(tmp_path / "missing.json"))[0] == 2


def test_build_formats(capsys, tmp_path):
    code, out, _ = run(capsys, "build", "--graph", "gp:5:2")
    assert code == 0 and out.strip() == "IheA@GUAo"
    code, out, _ = run(capsys, "build", "--graph", "named:wagner", "--format", "json")
    assert json.loads(out)["n"] == 8
    target = tmp_path / "g.dot"
    assert run(capsys, "build", "--graph", "torus:3:3", "--format", "dot", "--out", str(target))[0] == 0
    assert target.read_text().count(" -- ") == 18


def test_graph_specs(tmp_path):
    g6 = tmp_path / "c.g6"
    g6.write_text("\n".join(bundled_lines("cubic_bipartite_12")) + "\n")
    assert parse_graph_spec(f"g6:{g6}").n == 12
    assert parse_graph_spec(f"g6:{g6}:5").n == 12
    tree = tmp_path / "t.json"
    tree.write_text('{"parents": [-1, 0, 0]}')
    assert parse_graph_spec(f"tree:{tree}").num_edges == 2
    for bad in ("named:nope", "gp:4:2", "gp:x:2", "torus:2:5", "zzz:1", "petersen", f"g6:{g6}:9"):
        with pytest.raises(UsageError):
            parse_graph_spec(bad)


def test_malformed_graph6_is_usage_error(capsys, tmp_path):
    g6 = tmp_path / "bad.g6"
    g6.write_text("A_ x\n")
    code, _, err = run(capsys, "search", "--graph", f"g6:{g6}")
    assert code == 2 and "byte 2" in err and err.count("\n") == 1


def test_census(capsys):
    code, out, _ = run(capsys, "census", "--corpus", "cubic_bipartite_12", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 5
    assert run(capsys, "census")[0] == 2


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "crumby", "search", "--graph", "named:petersen"],
                         capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["witness"]
