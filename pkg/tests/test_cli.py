from __future__ import annotations

import json

import pytest

from helpers import DATA, FIG_COVERS
from sropt.cli import main
from sropt.core import format_costs, format_instance, format_sm, parse_instance
from sropt.generators import gen_random_costs, gen_random_sm, gen_solvable_sr
from sropt.poset import label

UNSOLVABLE = "sr 4\n1: 2 3 4\n2: 3 1 4\n3: 1 2 4\n4: 1 2 3\n"


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def fig_text():
    return "mp 5\n" + "".join(f"{label(a)} < {label(b)}\n" for a, b in FIG_COVERS)


def test_solve_text_and_json(capsys, files):
    path = files("a.sr", format_instance(gen_solvable_sr(0, 6)))
    code, out, _ = run(capsys, "solve", path)
    assert code == 0 and len(out.splitlines()) == 3
    code, out, _ = run(capsys, "solve", path, "--report", "json")
    assert json.loads(out)["status"] == "ok"


def test_malformed_file_exit_2(capsys, files):
    path = files("bad.sr", UNSOLVABLE.replace("1: 2 3 4", "1: 2 2 4"))
    code, _, err = run(capsys, "solve", path)
    assert code == 2 and "line 2" in err


def test_missing_file_exit_2(capsys, tmp_path):
    code, _, err = run(capsys, "solve", str(tmp_path / "nope.sr"))
    assert code == 2 and err


def test_unsolvable_exit_1(capsys, files):
    path = files("u.sr", UNSOLVABLE)
    code, out, _ = run(capsys, "optimal", path)
    assert code == 1 and json.loads(out) == {"status": "unsolvable"}
    code, out, _ = run(capsys, "solve", path)
    assert code == 1 and out.strip() == "unsolvable"


def test_optimal_report(capsys, files):
    inst = parse_instance((DATA / "climb-2414.sr").read_text())
    path = files("h.sr", format_instance(inst))
    cost = files("h.cost", format_costs(gen_random_costs(1, inst)))
    code, out, _ = run(capsys, "optimal", path, "--cost", cost)
    rep = json.loads(out)
    assert code == 0 and rep["k"] == 6 and rep["maximal_count"] == len(rep["per_interval"])
    code, oracle_out, _ = run(capsys, "oracle", "optimal", path, "--cost", cost, "--report", "json")
    assert json.loads(oracle_out)["cost"] == rep["cost"]
    code, out, _ = run(capsys, "optimal", path, "--report", "text")
    assert out.startswith("cost=")


def test_kmax_too_small_exit_3(capsys, files):
    path = files("h.sr", (DATA / "climb-2414.sr").read_text())
    code, _, err = run(capsys, "optimal", path, "--kmax", "2")
    assert code == 3 and "crossing" in err


def test_mco_poset(capsys, files):
    path = files("fig.mp", fig_text())
    code, out, _ = run(capsys, "mco", "--poset", path)
    assert code == 0
    assert out.splitlines()[0] == "k=2"
    assert out.splitlines()[1].startswith("base: ")
    code, out, _ = run(capsys, "oracle", "mco", "--poset", path, "--report", "json")
    assert json.loads(out)["k"] == 2


def test_mco_emit_2sat(capsys, files):
    path = files("fig.mp", fig_text())
    code, out, _ = run(capsys, "mco", "--poset", path, "--emit-2sat", "2")
    lines = out.splitlines()
    assert lines[0] == "c almost-2sat budget 2" and lines[1] == "p cnf 5 24"
    assert sum(l.startswith("h ") for l in lines) == 12
    code, out, _ = run(capsys, "mco", "--poset", path, "--emit-2sat", "2", "--all-soft")
    assert sum(l.startswith("s ") for l in out.splitlines()) == 12 * 3 + 12


def test_mco_from_instance_and_dot(capsys, files, tmp_path):
    path = files("h.sr", (DATA / "climb-2971.sr").read_text())
    dot = tmp_path / "o.dot"
    code, out, _ = run(capsys, "mco", path, "--report", "json", "--dot", str(dot))
    assert code == 0 and json.loads(out)["k"] == 4
    assert "color=red" in dot.read_text()


def test_mco_needs_input(capsys):
    code, _, err = run(capsys, "mco")
    assert code == 2 and "--poset" in err


def test_rotations_json(capsys, files, tmp_path):
    path = files("h.sr", (DATA / "climb-2971.sr").read_text())
    dot = tmp_path / "r.dot"
    code, out, _ = run(capsys, "rotations", path, "--dot", str(dot))
    rep = json.loads(out)
    assert code == 0 and set(rep) == {"rotations", "order", "fixed_pairs"}
    kinds = {r["kind"] for r in rep["rotations"]}
    assert kinds <= {"singular", "non-singular"}
    by_id = {r["id"]: r for r in rep["rotations"]}
    for r in rep["rotations"]:
        if r["dual"] is not None:
            assert by_id[r["dual"]]["dual"] == r["id"]
    assert dot.read_text().startswith("digraph")


def test_sm_input_is_embedded(capsys, files):
    sm = gen_random_sm(2, 3)
    path = files("s.sm", format_sm(sm))
    code, out, _ = run(capsys, "optimal", path)
    assert code == 0 and json.loads(out)["k"] == 0


def test_oracle_solve(capsys, files):
    path = files("a.sr", format_instance(gen_solvable_sr(1, 6)))
    code, out, _ = run(capsys, "oracle", "solve", path, "--report", "json")
    assert code == 0 and len(json.loads(out)["stable_matchings"]) >= 1
    code, _, _ = run(capsys, "oracle", "solve", files("u.sr", UNSOLVABLE))
    assert code == 1


def test_gen_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "gen", "sr", "--seed", "4", "--n", "6")
    assert code == 0 and out.startswith("sr 6")
    code, out2, _ = run(capsys, "gen", "sr", "--seed", "4", "--n", "6")
    assert out == out2
    code, out, _ = run(capsys, "gen", "solvable", "--seed", "4", "--n", "6")
    assert "sr 6" in out
    code, out, _ = run(capsys, "gen", "sm", "--n", "3")
    assert out.startswith("sm 3")
    code, out, _ = run(capsys, "gen", "costs", "--n", "4")
    assert out.startswith("cost 4")
    inst_path = tmp_path / "a.sr"
    inst_path.write_text(format_instance(gen_solvable_sr(7, 6)))
    code, out, _ = run(capsys, "gen", "costs", "--instance", str(inst_path), "--seed", "2")
    cost_path = tmp_path / "a.cost"
    cost_path.write_text(out)
    assert run(capsys, "optimal", str(inst_path), "--cost", str(cost_path))[0] == 0
    code, out, _ = run(capsys, "gen", "gadget", "--graph", "petersen")
    assert out.startswith("mp 10")
    code, out, _ = run(capsys, "gen", "sweep", "--n", "6", "--count", "20")
    rep = json.loads(out)
    assert sum(rep["k_histogram"].values()) + rep["unsolvable"] == 20


def test_gen_bad_graph(capsys):
    code, _, err = run(capsys, "gen", "gadget", "--graph", "k5")
    assert code == 2


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
