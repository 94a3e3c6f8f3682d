import json
import subprocess
import sys


def run(*args):
    return subprocess.run([sys.executable, "-m", "affgrass", *args],
                          capture_output=True, text=True)


def test_polytope_command():
    r = run("polytope", "--word", "121", "--n", "2,1,1", "--base=-1,1,1")
    assert r.returncode == 0
    out = json.loads(r.stdout)
    verts = {tuple(v) for v in out["family"]["vertices"].values()}
    assert verts == {(0, 2, -1), (2, 0, -1), (-1, 2, 0),
                     (2, -1, 0), (-1, 1, 1), (1, -1, 1)}
    assert out["dimension"] == 5


def test_polytope_single_point():
    r = run("polytope", "--word", "121", "--n", "0,0,0")
    out = json.loads(r.stdout)
    assert out["lattice_points"] == [[0, 0, 0]]


def test_polytope_apply_crystal():
    r = run("polytope", "--word", "121", "--n", "2,1,0", "--apply", "E2")
    out = json.loads(r.stdout)
    assert out["word121"] == [1, 1, 0]


def test_braid_command():
    r = run("braid", "--word", "121", "--n", "2,1,0")
    assert json.loads(r.stdout) == {"word": "212", "n": [1, 0, 3]}


def test_points_graph_betti(tmp_path):
    poly = tmp_path / "p.json"
    poly.write_text(json.dumps({"word": "121", "n": [1, 0, 0]}))
    r = run("points", "--polytope", str(poly), "--prime", "2")
    assert json.loads(r.stdout)["count"] == 3
    dot = tmp_path / "g.dot"
    r = run("graph", "--polytope", str(poly), "--dot", str(dot))
    assert r.returncode == 0 and "a12" in dot.read_text()
    r = run("betti", "--polytope", str(poly))
    assert json.loads(r.stdout)["min_poincare"] == [1, 1]


def test_pave_command(tmp_path):
    poly = tmp_path / "p.json"
    poly.write_text(json.dumps({"word": "121", "n": [1, 0, 1]}))
    r = run("pave", "--polytope", str(poly), "--verify-q", "2,3")
    out = json.loads(r.stdout)
    assert out["verified"]["ok"] and out["poincare"] == [1, 1, 1]
    r = run("pave", "--polytope", str(poly), "--method", "iwahori")
    assert json.loads(r.stdout)["poincare"] == [1, 1, 1]


def test_springer_command(tmp_path):
    gam = tmp_path / "g.json"
    gam.write_text(json.dumps({"pattern": [2, 1, 1], "prime": 3}))
    r = run("springer", "--gamma", str(gam), "--truncate", "j=12",
            "--verify-q", "2,3")
    out = json.loads(r.stdout)
    assert out["verified"]["per_q"][0]["total"] == 19


def test_check_fast_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    r1 = run("check", "--suite", "fast", "--seed", "7", "--out", str(a))
    r2 = run("check", "--suite", "fast", "--seed", "7", "--out", str(b))
    assert r1.returncode == 0 and r2.returncode == 0
    assert a.read_text() == b.read_text()


def test_domain_error_exit_code():
    r = run("braid", "--word", "121", "--n", "1,-1,0")
    assert r.returncode == 2
