import csv
import json

import pytest

from qpbranch.cli import main
from qpbranch.graph import read_graph


@pytest.fixture
def c5(tmp_path):
    p = tmp_path / "c5.txt"
    p.write_text("5 5\ne 0 1\ne 1 2\ne 2 3\ne 3 4\ne 4 0\n")
    return str(p)


def test_solve_text_output(c5, capsys):
    assert main(["solve", c5, "--t", "5", "--check-oracle"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert "weight: 2" in out and "oracle-match: true" in out


def test_solve_json_and_stats_file(c5, tmp_path, capsys):
    stats = tmp_path / "s.json"
    assert main(["solve", c5, "--problem", "degenerate", "--d", "1", "--t", "5", "--json",
                 "--stats-json", str(stats)]) == 0
    line = capsys.readouterr().out.strip()
    rec = json.loads(line)
    assert rec["weight"] == 4 and "elapsedMs" in rec["timing"]
    assert line == json.dumps(rec, sort_keys=True, ensure_ascii=False)
    saved = json.loads(stats.read_text())
    assert saved["weight"] == 4


def test_gen_round_trip(tmp_path, capsys):
    out = tmp_path / "g.txt"
    assert main(["gen", "--kind", "random-gnp-rejection", "--n", "9", "--seed", "4", "--weights", "1", "5",
                 "--out", str(out)]) == 0
    G = read_graph(out)
    assert G.n == 9
    assert main(["gen", "--kind", "random-gnp-rejection", "--n", "9", "--seed", "4", "--weights", "1", "5"]) == 0
    assert capsys.readouterr().out == out.read_text()


def test_oracle_subcommand(c5, capsys):
    assert main(["oracle", c5, "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["weight"] == 2


def test_separator_buckets_packing_automaton(c5, capsys):
    assert main(["separator", c5, "--t", "5"]) == 0
    sep = json.loads(capsys.readouterr().out)
    assert sep["connected"] and sep["balanced"] and sep["size"] <= 5
    assert main(["buckets", c5, "--t", "5"]) == 0
    bk = json.loads(capsys.readouterr().out)
    assert bk["buckets"] == 10 and bk["heavyVertex"] is not None
    assert main(["packing", c5, "--t", "5", "--family", "singletons", "--check-oracle"]) == 0
    assert json.loads(capsys.readouterr().out)["weight"] == 2
    assert main(["automaton", c5, "--builtin", "edgeless", "--d", "1", "--t", "5", "--check-oracle"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["weight"] == 2 and rec["oracleMatch"]


def test_automaton_from_file(c5, tmp_path, capsys):
    from qpbranch.automata import matching_automaton
    p = tmp_path / "m.json"
    p.write_text(json.dumps(matching_automaton().to_json(2)))
    assert main(["automaton", c5, "--automaton", str(p), "--d", "2", "--t", "5", "--check-oracle"]) == 0
    assert json.loads(capsys.readouterr().out)["oracleMatch"]


def test_batch_rows_and_csv(tmp_path, capsys):
    spec = {"instances": [{"kind": "random-gnp-rejection", "n": 7, "seed": [1, 2, 3]}],
            "configs": [{"problem": "mwis", "check_oracle": True}]}
    sp = tmp_path / "spec.json"
    sp.write_text(json.dumps(spec))
    out = tmp_path / "rows.json"
    assert main(["batch", str(sp), "--out", str(out)]) == 0
    rows = json.loads(out.read_text())["rows"]
    assert len(rows) == 3 and all(r["status"] == "ok" for r in rows)
    assert "3 rows, 0 not ok" in capsys.readouterr().err
    out_csv = tmp_path / "rows.csv"
    assert main(["batch", str(sp), "--out", str(out_csv)]) == 0
    with open(out_csv) as fh:
        assert len(list(csv.DictReader(fh))) == 3


def test_batch_budget_row(tmp_path):
    spec = {"instances": [{"kind": "random-gnp-rejection", "n": 12, "seed": 2}],
            "configs": [{"problem": "degenerate", "d": 1, "literal": True, "budget_nodes": 20}]}
    sp = tmp_path / "spec.json"
    sp.write_text(json.dumps(spec))
    out = tmp_path / "rows.json"
    assert main(["batch", str(sp), "--out", str(out)]) == 0
    row = json.loads(out.read_text())["rows"][0]
    assert row["status"] == "budget" and "nodes" in row


def test_exit_codes(tmp_path, c5, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("2 1\ne 0 0\n")
    assert main(["solve", str(bad)]) == 2
    assert "line 2" in capsys.readouterr().err
    assert main(["solve", str(tmp_path / "missing.txt")]) == 2
    assert main(["solve", c5, "--t", "1"]) == 2
    assert main(["solve"]) == 2
    assert main(["nonsense"]) == 2
    # C5 has an induced P4, so it is not P4-free
    assert main(["solve", c5, "--t", "4"]) == 1
