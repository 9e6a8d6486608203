import json
import subprocess
import sys

import pytest

from ehrkit import generators as G
from ehrkit.cli import main, run_census


def _write(tmp_path, P, name="p.json"):
    path = tmp_path / name
    path.write_text(json.dumps(P.to_json()))
    return str(path)


def _run(capsys, argv):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_reflexive_simplex(tmp_path, capsys):
    code, out, _ = _run(capsys, ["analyze", _write(tmp_path, G.standard_reflexive_simplex(2))])
    rec = json.loads(out)
    assert code == 0
    assert rec["delta"] == [1, 1, 1]
    assert rec["n"] == 4 and rec["d"] == 2 and rec["M"] == 4 and rec["c_max"] == 2
    assert rec["flags"]["reflexive"] and rec["flags"]["integrally_closed"]
    assert rec["extremal_class"] == "standard_reflexive_simplex"
    assert all(r["holds"] for r in rec["reports"] if r["applicable"])
    assert [r["theorem_id"] for r in rec["reports"]][0] == "volume_upper"


def test_analyze_reeve(tmp_path, capsys):
    code, out, _ = _run(capsys, ["analyze", _write(tmp_path, G.reeve_simplex(2))])
    rec = json.loads(out)
    assert code == 0
    assert rec["flags"]["integrally_closed"] is False
    assert rec["flags"]["closure"]["witness"] == {"c": 2, "z": [1, 1, 1]}
    vu = next(r for r in rec["reports"] if r["theorem_id"] == "volume_upper")
    assert vu["applicable"] is False
    assert rec["extremal_class"] is None


def test_analyze_flags(tmp_path, capsys):
    code, out, _ = _run(capsys, ["analyze", _write(tmp_path, G.cube(2)), "--c-max", "3", "--dilates", "5"])
    rec = json.loads(out)
    assert code == 0 and rec["c_max"] == 3 and rec["M"] == 5 and len(rec["counts"]) == 6


def test_malformed_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 2,\n "vertices": [[0, 0], [1, 0]')
    code, out, err = _run(capsys, ["analyze", str(bad)])
    assert code == 1 and out == ""
    assert "line 2" in err


@pytest.mark.parametrize("payload", [
    {"dim": 2, "vertices": [[0, 0], [1, 0], [2, 0]]},
    {"dim": 2, "vertices": [[0, 0], [1, 0, 3]]},
    {"vertices": [[0]]},
])
def test_invalid_polytope_file(tmp_path, capsys, payload):
    path = tmp_path / "x.json"
    path.write_text(json.dumps(payload))
    code, out, err = _run(capsys, ["analyze", str(path)])
    assert code == 1 and out == "" and err.startswith("error:")


def test_missing_file(capsys):
    code, out, _ = _run(capsys, ["analyze", "/nonexistent/p.json"])
    assert code == 1 and out == ""


def test_verify(tmp_path, capsys):
    code, out, _ = _run(capsys, ["verify", _write(tmp_path, G.cube(2, -1, 1)), "--theorem", "reflexive_upper"])
    r = json.loads(out)
    assert code == 0 and (r["lhs"], r["rhs"], r["holds"]) == (8, 9, True)
    code, out, _ = _run(capsys, ["verify", _write(tmp_path, G.cube(2)), "--theorem", "hibi_lbt"])
    assert code == 0 and json.loads(out)["applicable"] is False
    code, out, _ = _run(capsys, ["verify", _write(tmp_path, G.reeve_simplex(2)), "--theorem", "partial_sums"])
    assert code == 0 and json.loads(out)["applicable"] is False


def test_verify_unknown_theorem(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", _write(tmp_path, G.cube(2)), "--theorem", "nope"])
    assert exc.value.code == 2
    assert "invalid choice" in capsys.readouterr().err


def test_violation_exit_code(tmp_path, capsys, monkeypatch):
    from ehrkit import bounds
    from ehrkit.bounds import VerificationReport
    monkeypatch.setattr(bounds, "verify_hibi_lbt",
                        lambda data: VerificationReport("hibi_lbt", True, False, 1, 0))
    code, out, _ = _run(capsys, ["analyze", _write(tmp_path, G.cube(2, -1, 1))])
    assert code == 2 and json.loads(out)["reports"]


@pytest.mark.parametrize("argv,vertices", [
    (["gen", "unimodular-simplex", "--dim", "2"], [[0, 0], [0, 1], [1, 0]]),
    (["gen", "standard-reflexive-simplex", "--dim", "2"], [[-1, -1], [0, 1], [1, 0]]),
    (["gen", "cube", "--dim", "2", "--lo", "-1"], [[-1, -1], [-1, 1], [1, -1], [1, 1]]),
    (["gen", "reeve-simplex", "--k", "3"], [[0, 0, 0], [0, 1, 0], [1, 0, 0], [1, 1, 3]]),
    (["gen", "random", "--dim", "2", "--n-points", "5", "--seed", "1"], [[-2, -2], [-2, 2], [-1, 1]]),
])
def test_gen(capsys, argv, vertices):
    code, out, _ = _run(capsys, argv)
    assert code == 0 and json.loads(out)["vertices"] == vertices


def test_gen_cyclic_and_dilate_and_order(tmp_path, capsys):
    code, out, _ = _run(capsys, ["gen", "cyclic", "--n", "5", "--dim", "3"])
    assert code == 0 and len(json.loads(out)["vertices"]) == 5
    code, out, _ = _run(capsys, ["gen", "dilate", _write(tmp_path, G.cube(1)), "--factor", "4"])
    assert json.loads(out) == {"dim": 1, "vertices": [[0], [4]]}
    poset = tmp_path / "q.json"
    poset.write_text('{"size": 2, "covers": [[0, 1]]}')
    code, out, _ = _run(capsys, ["gen", "order-polytope", str(poset)])
    assert json.loads(out)["vertices"] == [[0, 0], [1, 0], [1, 1]]
    poset.write_text('{"size": 2, "covers": [[0, 1], [1, 0]]}')
    code, out, err = _run(capsys, ["gen", "order-polytope", str(poset)])
    assert code == 1 and "cycle" in err


def test_gen_random_invalid(capsys):
    code, _, err = _run(capsys, ["gen", "random", "--dim", "7"])
    assert code == 1 and err


def test_census_small(tmp_path, capsys):
    out = tmp_path / "c.jsonl"
    code, stdout, _ = _run(capsys, ["census", "--dim", "2", "--count", "20", "--seed", "7", "--out", str(out)])
    summary = json.loads(stdout)
    assert code == 0
    assert summary["generated"] == 20 and summary["violations"] == 0
    assert summary["integrally_closed"] == 20
    lines = out.read_text().splitlines()
    assert len(lines) == 20
    recs = [json.loads(x) for x in lines]
    assert [r["index"] for r in recs] == list(range(20))
    assert not (tmp_path / "c.jsonl.quarantine.jsonl").exists()


def test_census_zero(tmp_path):
    out = tmp_path / "z.jsonl"
    summary = run_census(2, 2, 0, 1, str(out))
    assert summary == {"generated": 0, "integrally_closed": 0, "reflexive": 0, "smooth": 0,
                       "violations": 0}
    assert out.read_text() == ""


def test_census_deterministic_and_parallel(tmp_path):
    a, b, c = (tmp_path / f"{x}.jsonl" for x in "abc")
    run_census(3, 2, 12, 5, str(a))
    run_census(3, 2, 12, 5, str(b))
    run_census(3, 2, 12, 5, str(c), jobs=2)
    assert a.read_bytes() == b.read_bytes() == c.read_bytes()


def test_census_quarantine(tmp_path, monkeypatch):
    from ehrkit import bounds
    from ehrkit.bounds import VerificationReport
    monkeypatch.setattr(bounds, "verify_partial_sums",
                        lambda delta, closed=True: VerificationReport("partial_sums", True, False))
    out = tmp_path / "q.jsonl"
    summary = run_census(2, 2, 3, 1, str(out))
    assert summary["violations"] == 3
    q = (tmp_path / "q.jsonl.quarantine.jsonl").read_text().splitlines()
    assert [json.loads(x)["violations"] for x in q] == [["partial_sums"]] * 3


def test_census_aborts_on_unimodality_failure(tmp_path, monkeypatch):
    from ehrkit import bounds
    from ehrkit.bounds import VerificationReport
    monkeypatch.setattr(bounds, "verify_unimodality_n_le_d4",
                        lambda data, closure, reflexive: VerificationReport("unimodality", True, False))
    out = tmp_path / "u.jsonl"
    summary = run_census(2, 2, 10, 1, str(out))
    assert summary["aborted_at"] == 0 and summary["generated"] == 1
    assert len(out.read_text().splitlines()) == 1


def test_module_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "ehrkit", "gen", "cube", "--dim", "1"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["vertices"] == [[0], [1]]
