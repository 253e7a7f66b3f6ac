from __future__ import annotations

import csv
import io
import json

import pytest

from fusionobs.cli import main
from fusionobs.fusion import cyclic_group_ring, enumerate_fusion_rings, rank2_ring, ring_to_dict
from fusionobs.pentagon import swap_operator


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def ring_file(tmp_path):
    def write(data, name="ring.json"):
        p = tmp_path / name
        p.write_text(data if isinstance(data, str) else json.dumps(data))
        return str(p)
    return write


def test_validate_ok(capsys, ring_file):
    code, out, _ = run(capsys, "validate", "--input", ring_file(ring_to_dict(rank2_ring(1, 1))))
    assert code == 0
    assert json.loads(out)["ok"] is True


def test_validate_negative(capsys, ring_file):
    data = ring_to_dict(rank2_ring(1, 1))
    data["table"]["x,x"]["e"] = -1
    code, out, _ = run(capsys, "validate", "--input", ring_file(data))
    assert code == 1
    kinds = {v["kind"] for v in json.loads(out)["violations"]}
    assert "negative" in kinds


def test_validate_malformed(capsys, ring_file):
    code, _, err = run(capsys, "validate", "--input", ring_file("{not json"))
    assert code == 2 and "malformed" in err
    code, _, _ = run(capsys, "validate", "--input", ring_file({"names": ["e"], "table": {"e": {}}}))
    assert code == 2


def test_obstruction_verdicts(capsys, ring_file):
    code, out, _ = run(capsys, "obstruction", "--input", ring_file(ring_to_dict(cyclic_group_ring(2))))
    assert code == 0
    report = json.loads(out)
    assert report["verdict"] == "trivial" and report["cocycle_checked"]
    code, out, _ = run(capsys, "obstruction", "--verify-oracle", "--input", ring_file(ring_to_dict(rank2_ring(0, 2))))
    assert code == 3
    report = json.loads(out)
    assert report["verdict"] == "nontrivial" and report["oracle_checked"]
    assert report["oracle_mismatches"] == []
    assert report["alpha"]["x,x,x,x"] == {"e": 1, "x": 0}


def test_obstruction_rank4_refused(capsys, ring_file):
    code, _, _ = run(capsys, "obstruction", "--input", ring_file(ring_to_dict(cyclic_group_ring(4))))
    assert code == 4


def test_obstruction_invalid_ring(capsys, ring_file):
    data = {"names": ["e", "x"], "identity": "e", "table": {"x,x": {"e": 1}}}
    code, _, _ = run(capsys, "obstruction", "--input", ring_file(data))
    assert code == 1


def _rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_classify_rank2_cells(capsys):
    code, out, _ = run(capsys, "classify-rank2", "--m-max", "2", "--n-max", "1")
    assert code == 0
    rows = {(int(r["m"]), int(r["n"])): r for r in _rows(out)}
    assert len(rows) == 6
    assert rows[(2, 1)]["congruence_verdict"] == rows[(2, 1)]["generic_solver_verdict"] == "nontrivial"
    assert rows[(1, 1)]["congruence_verdict"] == rows[(1, 1)]["generic_solver_verdict"] == "trivial"
    assert list(rows[(0, 0)]) == ["m", "n", "alpha_x", "alpha_e", "congruence_verdict",
                                  "generic_solver_verdict", "agree", "evaluated_verdict"]


def test_classify_rank2_full_grid_agrees(capsys):
    code, out, _ = run(capsys, "classify-rank2")
    rows = _rows(out)
    assert len(rows) == 49
    disagree = [(int(r["m"]), int(r["n"])) for r in rows if r["agree"] != "true"]
    assert disagree == []


def test_classify_rank2_evaluated_column_matches_solver(capsys):
    _, out, _ = run(capsys, "classify-rank2", "--m-max", "16", "--n-max", "16")
    rows = _rows(out)
    assert len(rows) == 17 * 17
    assert all(r["evaluated_verdict"] == r["generic_solver_verdict"] for r in rows)


def test_classify_rank2_bounds(capsys):
    code, _, _ = run(capsys, "classify-rank2", "--m-max", "17")
    assert code == 4


def test_classify_rank2_parallel_identical(capsys):
    _, serial, _ = run(capsys, "classify-rank2", "--m-max", "8", "--n-max", "8")
    _, parallel, _ = run(capsys, "classify-rank2", "--m-max", "8", "--n-max", "8", "--jobs", "3")
    assert serial == parallel


def test_enumerate_rank2(capsys):
    code, out, _ = run(capsys, "enumerate", "--rank", "2", "--max-entry", "2", "--identity")
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert len(rows) == 9
    _, table, _ = run(capsys, "classify-rank2", "--m-max", "2", "--n-max", "2")
    solver = {(int(r["m"]), int(r["n"])): r["generic_solver_verdict"] for r in _rows(table)}
    for row in rows:
        xx = row["ring"]["table"].get("x,x", {})
        assert row["verdict"] == solver[(xx.get("x", 0), xx.get("e", 0))]
        assert row["identity"] == "e" and row["valid"]


def test_enumerate_rank1_all_trivial(capsys):
    code, out, _ = run(capsys, "enumerate", "--rank", "1", "--max-entry", "3", "--format", "csv")
    rows = _rows(out)
    assert len(rows) == 4
    assert {r["verdict"] for r in rows} == {"trivial"}


def test_enumerate_rank3_oracle(capsys):
    code, out, _ = run(capsys, "enumerate", "--rank", "3", "--max-entry", "1", "--identity", "--verify-oracle",
                       "--jobs", "2")
    rows = [json.loads(line) for line in out.splitlines()]
    assert len(rows) == len(list(enumerate_fusion_rings(3, 1, True)))
    assert all(r["oracle_agree"] for r in rows)


def test_enumerate_bounds(capsys):
    assert run(capsys, "enumerate", "--rank", "4", "--max-entry", "1")[0] == 4
    assert run(capsys, "enumerate", "--rank", "2", "--max-entry", "9")[0] == 4


def test_hochschild_report(capsys, ring_file):
    code, out, _ = run(capsys, "hochschild", "--degree", "4", "--input", ring_file(ring_to_dict(rank2_ring(0, 2))))
    assert code == 0
    report = json.loads(out)
    assert report["dim"] == 2 and report["alpha_trivial"] is False and report["witness"] is None
    code, out, _ = run(capsys, "hochschild", "--input", ring_file(ring_to_dict(rank2_ring(1, 1))))
    report = json.loads(out)
    assert report["alpha_trivial"] is True and report["witness"]["degree"] == 3


def test_pentagon_commands(capsys, ring_file):
    code, out, _ = run(capsys, "pentagon", "--input", ring_file({"order": 3, "table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]]}))
    assert code == 0 and json.loads(out)["pentagon_holds"]
    code, _, _ = run(capsys, "pentagon", "--input", ring_file(swap_operator(2).to_json()))
    assert code == 3
    code, out, _ = run(capsys, "pentagon", "--ne-case", "2")
    assert code == 3 and json.loads(out)["solvable"] is False
    assert run(capsys, "pentagon", "--ne-case", "1")[0] == 0
    code, _, _ = run(capsys, "pentagon", "--input", ring_file([["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]))
    assert code == 2


def test_output_file_and_determinism(capsys, ring_file, tmp_path):
    path = ring_file(ring_to_dict(rank2_ring(2, 3)))
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    main(["obstruction", "--input", path, "--output", str(out1)])
    main(["obstruction", "--input", path, "--output", str(out2), "--jobs", "2"])
    capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes()


def test_bad_arguments(capsys):
    assert run(capsys, "nosuch")[0] == 2
    assert run(capsys, "obstruction")[0] == 2
