"""One test per acceptance criterion; each prints its own pass/fail line."""

from affgrass import acceptance

SEED = 7


def _run(fn):
    r = fn(SEED)
    status = "PASS" if r["passed"] else "FAIL"
    detail = {k: v for k, v in r.items()
              if k not in ("criterion", "name", "passed")}
    print(f"[{status}] criterion {r['criterion']}: {r['name']} {detail}")
    return r


def test_criterion_01_braid_involution():
    r = _run(acceptance.check_braid_involution)
    assert r["passed"], r
    assert r["seconds"] < 1.0


def test_criterion_02_tropicalization():
    r = _run(acceptance.check_tropicalization)
    assert r["passed"], r
    assert r["samples"] == 1000 and r["tropical"] > 0 and r["degenerate"] > 0
    assert r["seconds"] < 30.0


def test_criterion_03_parametrization():
    r = _run(acceptance.check_parametrization)
    assert r["passed"], r
    assert r["members"] == r["samples"] == 27 * 20
    assert r["seconds"] < 120.0


def test_criterion_04_canonicalization():
    r = _run(acceptance.check_polytope_canonicalization)
    assert r["passed"], r
    assert r["seconds"] < 120.0


def test_criterion_05_contracting_cells():
    r = _run(acceptance.check_contracting_cells)
    assert r["passed"], r
    assert r["cases"] == 60
    assert r["seconds"] < 300.0


def test_criterion_06_purity_bridge():
    r = _run(acceptance.check_purity_bridge)
    assert r["passed"], r
    assert r["seconds"] < 600.0


def test_criterion_07_springer_criterion():
    r = _run(acceptance.check_springer_criterion)
    assert r["passed"], r
    assert r["raw_form_failures"] == 0
    assert r["seconds"] < 900.0


def test_criterion_08_truncated_pavings():
    r = _run(acceptance.check_truncated_pavings)
    assert r["passed"], r
    assert r["seconds"] < 900.0


def test_criterion_09_springer_dimension():
    r = _run(acceptance.check_springer_dimension)
    assert r["passed"], r


def test_criterion_10_kostant():
    r = _run(acceptance.check_kostant_count)
    assert r["passed"], r
    assert r["seconds"] < 1.0
