"""Command-line interface.

Core claims: subcommands emit deterministic JSON with 12-significant-digit
floats, exit codes separate input errors (2) from resource limits (3), the
report path writes CSV plus figure, and solve reports round-trip through
evaluate.
"""

import json
import subprocess
import sys

import pytest

from helpers import replay_witness
from patrolkit import Configuration, PeriodicWitness, from_matrix
from patrolkit.cli import run

SQUARE = {"points": [[0, 0], [1, 0], [1, 1], [0, 1]]}
TWO = {"matrix": [[0, 1], [1, 0]]}
RING4 = {"matrix": [[0, 1, 2, 1], [1, 0, 1, 2], [2, 1, 0, 1], [1, 2, 1, 0]]}


def _write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def _invoke(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_solve_square(tmp_path, capsys):
    inst = _write(tmp_path, "sq.json", SQUARE)
    code, out = _invoke(capsys, ["solve", "--input", inst, "--k", "2", "--epsilon", "1"])
    assert code == 0
    assert out["latency"] == 2.0
    assert out["gamma"] == 1.0
    assert out["bound"] == 2.0
    assert out["robots"] == [2]
    assert list(out.keys()) == [
        "latency", "k", "parts", "tours", "robots", "gamma", "epsilon", "bound",
    ]


def test_solve_is_deterministic_text(tmp_path, capsys):
    inst = _write(tmp_path, "sq.json", SQUARE)
    argv = ["solve", "--input", inst, "--k", "3", "--epsilon", "0.25", "--tsp", "2opt"]
    run(argv)
    first = capsys.readouterr().out
    run(argv)
    second = capsys.readouterr().out
    assert first == second


def test_solve_round_trips_through_evaluate(tmp_path, capsys):
    rng_points = [[0.1, 0.2], [0.9, 0.1], [0.5, 0.8], [0.2, 0.9], [0.7, 0.5]]
    inst = _write(tmp_path, "p.json", {"points": rng_points})
    code, solved = _invoke(
        capsys, ["solve", "--input", inst, "--k", "2", "--epsilon", "0.5"]
    )
    assert code == 0
    code, evaluated = _invoke(
        capsys,
        [
            "evaluate",
            "--input", inst,
            "--k", "2",
            "--partition", json.dumps(solved["parts"]),
        ],
    )
    assert code == 0
    assert evaluated["latency"] == pytest.approx(solved["latency"], rel=1e-9)


def test_floats_rounded_to_12_significant_digits(tmp_path, capsys):
    inst = _write(tmp_path, "diag.json", {"points": [[0, 0], [1, 1]]})
    code, out = _invoke(capsys, ["solve", "--input", inst, "--k", "1", "--epsilon", "1"])
    assert code == 0
    # tour 0 -> 1 -> 0 has length 2 * sqrt(2) = 2.82842712474619...
    assert out["latency"] == 2.82842712475


def test_oracle_square(tmp_path, capsys):
    inst = _write(tmp_path, "sq.json", SQUARE)
    code, out = _invoke(capsys, ["oracle", "--input", inst, "--k", "2"])
    assert code == 0
    assert out["latency"] == 2.0


def test_decide_and_witness(tmp_path, capsys):
    inst = _write(tmp_path, "ring.json", RING4)
    witness_path = str(tmp_path / "wit.json")
    code, out = _invoke(
        capsys,
        ["decide", "--input", inst, "--k", "2", "--ell", "2", "--witness", witness_path],
    )
    assert code == 0
    assert out["answer"] is True
    blob = json.loads((tmp_path / "wit.json").read_text())
    witness = PeriodicWitness(
        prefix=tuple(Configuration(tuple(c["positions"]), tuple(c["deadlines"])) for c in blob["prefix"]),
        cycle=tuple(Configuration(tuple(c["positions"]), tuple(c["deadlines"])) for c in blob["cycle"]),
    )
    replay_witness(from_matrix(RING4["matrix"]), 2, 2, witness)

    code, out = _invoke(capsys, ["decide", "--input", inst, "--k", "2", "--ell", "1"])
    assert code == 0
    assert out["answer"] is False


def test_min_latency(tmp_path, capsys):
    inst = _write(tmp_path, "two.json", TWO)
    code, out = _invoke(capsys, ["min-latency", "--input", inst, "--k", "1"])
    assert code == 0
    assert out["latency"] == 2


def test_decompose_modes(tmp_path, capsys):
    graph = {"vertices": 5, "edges": [[0, 1], [1, 2], [2, 3], [3, 0], [2, 4]]}
    inst = _write(tmp_path, "g.json", graph)
    code, out = _invoke(capsys, ["decompose", "--input", inst, "--mode", "claw"])
    assert code == 0
    assert out["claw"] is not None and out["leftover"] is None

    path = {"vertices": 3, "edges": [[0, 1], [1, 2]]}
    inst = _write(tmp_path, "p.json", path)
    code, out = _invoke(capsys, ["decompose", "--input", inst, "--mode", "even"])
    assert code == 0
    assert out["two_paths"] == [[0, 1]]

    tri = {"vertices": 3, "edges": [[0, 1], [1, 2], [2, 0]]}
    inst = _write(tmp_path, "t.json", tri)
    code, out = _invoke(
        capsys, ["decompose", "--input", inst, "--mode", "odd-anchored", "--anchor", "1"]
    )
    assert code == 0
    assert out["leftover"] is not None

    code, out = _invoke(capsys, ["decompose", "--input", inst, "--mode", "odd-anchored"])
    assert code == 2
    assert "anchor" in out["error"]

    code, out = _invoke(capsys, ["decompose", "--input", inst, "--mode", "eulerize"])
    assert code == 0
    assert len(out["result"]["edges"]) >= len(tri["edges"])


def test_gen_seed_determinism(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("PATROL_SEED", "11")
    code, a = _invoke(capsys, ["gen", "--kind", "points", "--n", "5"])
    assert code == 0
    code, b = _invoke(capsys, ["gen", "--kind", "points", "--n", "5"])
    assert a == b
    code, c = _invoke(capsys, ["gen", "--kind", "points", "--n", "5", "--seed", "12"])
    assert c != a
    # generated instances load back in
    inst = _write(tmp_path, "gen.json", a)
    code, out = _invoke(capsys, ["solve", "--input", inst, "--k", "2", "--epsilon", "1"])
    assert code == 0

    code, m = _invoke(capsys, ["gen", "--kind", "matrix", "--n", "4", "--seed", "3"])
    assert code == 0
    inst = _write(tmp_path, "genm.json", m)
    code, out = _invoke(capsys, ["min-latency", "--input", inst, "--k", "2"])
    assert code == 0

    code, g = _invoke(capsys, ["gen", "--kind", "graph", "--n", "5", "--seed", "4"])
    assert code == 0
    assert len(g["edges"]) >= 4


def test_error_exits(tmp_path, capsys):
    inst = _write(tmp_path, "sq.json", SQUARE)
    code, out = _invoke(capsys, ["solve", "--input", inst, "--k", "0", "--epsilon", "1"])
    assert code == 2 and "error" in out

    code, out = _invoke(capsys, ["solve", "--input", str(tmp_path / "nope.json"), "--k", "1", "--epsilon", "1"])
    assert code == 2 and "error" in out

    bad = _write(tmp_path, "bad.json", {"matrix": [[0, 1, 5], [1, 0, 1], [5, 1, 0]]})
    code, out = _invoke(capsys, ["solve", "--input", bad, "--k", "1", "--epsilon", "1"])
    assert code == 2 and "triangle" in out["error"]

    both = _write(tmp_path, "both.json", {"points": [[0, 0]], "matrix": [[0]]})
    code, out = _invoke(capsys, ["oracle", "--input", both, "--k", "1"])
    assert code == 2

    big = _write(
        tmp_path, "big.json", {"points": [[float(i), float(i * i % 7)] for i in range(11)]}
    )
    code, out = _invoke(capsys, ["oracle", "--input", big, "--k", "2"])
    assert code == 3 and "error" in out


def test_render_writes_tagged_svg(tmp_path, capsys):
    inst = _write(tmp_path, "sq.json", SQUARE)
    figure = str(tmp_path / "fig.svg")
    code, out = _invoke(
        capsys,
        ["solve", "--input", inst, "--k", "4", "--epsilon", "1", "--render", figure],
    )
    assert code == 0
    assert out["figure"] == figure
    svg = (tmp_path / "fig.svg").read_text()
    for i in range(len(out["parts"])):
        assert f'id="tour-{i}"' in svg
    assert f'id="tour-{len(out["parts"])}"' not in svg


def test_render_matrix_instance_fails(tmp_path, capsys):
    inst = _write(tmp_path, "two.json", TWO)
    figure = str(tmp_path / "fig.svg")
    code, out = _invoke(
        capsys,
        ["solve", "--input", inst, "--k", "1", "--epsilon", "1", "--render", figure],
    )
    assert code == 2
    assert "coordinates" in out["error"]


def test_report_writes_csv_and_figure(tmp_path, capsys):
    import csv as csv_mod

    inst = _write(tmp_path, "sq.json", SQUARE)
    outdir = tmp_path / "report"
    code, out = _invoke(
        capsys,
        ["report", "--input", inst, "--k", "2", "--epsilon", "0.5", "--outdir", str(outdir)],
    )
    assert code == 0
    assert (outdir / "summary.csv").exists()
    assert (outdir / "tours.svg").exists()
    assert out["csv"] == str(outdir / "summary.csv")
    assert out["figure"] == str(outdir / "tours.svg")
    with open(outdir / "summary.csv", newline="") as fh:
        rows = list(csv_mod.reader(fh))
    assert rows[0] == ["part", "sites", "robots", "tour_length", "part_latency", "order"]
    assert len(rows) == 1 + len(out["parts"])
    worst = max(float(r[4]) for r in rows[1:])
    assert worst == pytest.approx(out["latency"], rel=1e-9)


def test_report_matrix_instance_skips_figure(tmp_path, capsys):
    inst = _write(tmp_path, "two.json", TWO)
    outdir = tmp_path / "report"
    code, out = _invoke(
        capsys,
        ["report", "--input", inst, "--k", "1", "--epsilon", "1", "--outdir", str(outdir)],
    )
    assert code == 0
    assert (outdir / "summary.csv").exists()
    assert out["figure"] is None


def test_console_entry_point(tmp_path):
    inst = tmp_path / "two.json"
    inst.write_text(json.dumps(TWO))
    proc = subprocess.run(
        [sys.executable, "-m", "patrolkit.cli", "min-latency", "--input", str(inst), "--k", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["latency"] == 2
