import json
from fractions import Fraction

from matmedian.cli import main
from matmedian.instances import MedianInstance, Plain, serialize_instance
from matmedian.matroids import UniformMatroid

F = Fraction


def write_line_fixture(path):
    facs = ("a", "b", "c")
    inst = MedianInstance(
        facilities=facs, clients=("j", "k"),
        demand={"j": F(1), "k": F(1)},
        open_cost={i: F(0) for i in facs},
        dist={("a", "j"): F(0), ("b", "j"): F(2), ("c", "j"): F(5),
              ("a", "k"): F(2), ("b", "k"): F(0), ("c", "k"): F(3)},
        matroid=UniformMatroid(frozenset(facs), 1), variant=Plain())
    path.write_bytes(serialize_instance(inst))


def test_solve_reports_cost_and_ratio(tmp_path, capsys):
    f = tmp_path / "i1.json"
    write_line_fixture(f)
    assert main(["solve", str(f), "--mode", "improved"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["costs"]["total"] == "2/1"
    assert doc["lp_objective"] == "2/1"
    assert doc["ratio_lp"] == "1.000000"


def test_exact_subcommand(tmp_path, capsys):
    f = tmp_path / "i1.json"
    write_line_fixture(f)
    assert main(["exact", str(f)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["costs"]["total"] == "2/1"


def test_check_flags_triangle_violation(tmp_path, capsys):
    inst = MedianInstance(
        facilities=("a", "b"), clients=("j", "k"),
        demand={"j": F(1), "k": F(1)},
        open_cost={"a": F(0), "b": F(0)},
        dist={("a", "j"): F(1), ("a", "k"): F(1),
              ("b", "k"): F(1), ("b", "j"): F(10)},
        matroid=UniformMatroid(frozenset("ab"), 1), variant=Plain())
    f = tmp_path / "bad.json"
    f.write_bytes(serialize_instance(inst))
    assert main(["check", str(f)]) == 3
    assert "triangle" in capsys.readouterr().out


def test_check_clean_instance(tmp_path):
    f = tmp_path / "ok.json"
    write_line_fixture(f)
    assert main(["check", str(f)]) == 0


def test_gen_writes_parseable_instance(tmp_path, capsys):
    out = tmp_path / "gen.json"
    assert main(["gen", "--seed", "7", "--facilities", "5", "--clients", "3",
                 "--matroid", "partition", "--variant", "penalty",
                 "--out", str(out)]) == 0
    assert main(["check", str(out)]) == 0


def test_infeasible_exit_code(tmp_path):
    inst = MedianInstance(
        facilities=("a",), clients=("j",), demand={"j": F(1)},
        open_cost={"a": F(0)}, dist={("a", "j"): F(1)},
        matroid=UniformMatroid(frozenset("a"), 0), variant=Plain())
    f = tmp_path / "inf.json"
    f.write_bytes(serialize_instance(inst))
    assert main(["solve", str(f)]) == 2


def test_usage_error_exit_code(capsys):
    assert main(["solve"]) == 1
    assert main(["nonsense"]) == 1


def test_bench_deterministic_and_bounded(tmp_path):
    args = ["bench", "--seeds", "0..6", "--variant", "plain",
            "--mode", "improved", "--facilities", "5", "--clients", "3",
            "--matroid", "graphic"]
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--out", str(out1)]) == 0
    assert main(args + ["--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    rows = out1.read_text().strip().splitlines()
    assert rows[0] == "seed,variant,mode,lp,alg,opt,ratio_lp,ratio_opt"
    assert len(rows) == 8
    for line in rows[1:]:
        ratio_lp = float(line.split(",")[6])
        assert ratio_lp <= 8.0


def test_reduce_subcommand_round_trip(tmp_path, capsys):
    src = {
        "caches": {"i0": 1, "i1": 1},
        "objects": ["o0", "o1"],
        "clients": {"j0": {"object": "o0", "demand": "1/1"},
                    "j1": {"object": "o1", "demand": "2/1"}},
        "storage_costs": [["i0", "o0", "1/1"], ["i0", "o1", "1/1"],
                          ["i1", "o0", "0/1"], ["i1", "o1", "2/1"]],
        "distances": [["i0", "j0", "1/1"], ["i0", "j1", "3/1"],
                      ["i1", "j0", "2/1"], ["i1", "j1", "2/1"]],
    }
    srcfile = tmp_path / "dp.json"
    srcfile.write_text(json.dumps(src))
    dest = tmp_path / "inst.json"
    assert main(["reduce", "data_placement", str(srcfile), str(dest)]) == 0
    assert main(["check", str(dest)]) == 0
    sidecar = json.loads((tmp_path / "inst.json.mapping.json").read_text())
    assert sidecar["kind"] == "data_placement"
    assert main(["solve", str(dest)]) == 0


def test_variant_flag_mismatch_is_usage_error(tmp_path, capsys):
    f = tmp_path / "i1.json"
    write_line_fixture(f)
    assert main(["solve", str(f), "--variant", "penalty"]) == 1
    assert main(["solve", str(f), "--variant", "plain"]) == 0


def test_solve_report_includes_solver_stats(tmp_path, capsys):
    f = tmp_path / "i1.json"
    write_line_fixture(f)
    assert main(["solve", str(f)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert "lp_pivots" in doc["certificates"]
    assert "lp_rank_cuts" in doc["certificates"]


def test_bench_hundred_rows_all_within_factor_eight(tmp_path):
    out = tmp_path / "bench.csv"
    assert main(["bench", "--seeds", "0..99", "--variant", "plain",
                 "--mode", "improved", "--facilities", "5", "--clients", "3",
                 "--matroid", "uniform", "--out", str(out)]) == 0
    rows = out.read_text().strip().splitlines()
    assert len(rows) == 101
    for line in rows[1:]:
        assert float(line.split(",")[6]) <= 8.0


def test_reduce_all_other_kinds(tmp_path):
    sources = {
        "mobile_facility": {
            "locations": ["s0", "s1"],
            "clients": {"j0": "1/1"},
            "initial": ["s0"],
            "metric": [["s0", "j0", "2/1"], ["s1", "j0", "0/1"]],
            "move_costs": [["s0", "s0", "0/1"], ["s0", "s1", "1/1"]],
        },
        "kmedian_forest": {
            "nodes": ["v0", "v1", "v2"],
            "assign_metric": [[u, v, f"{abs(a - b)}/1"]
                              for a, u in enumerate(["v0", "v1", "v2"])
                              for b, v in enumerate(["v0", "v1", "v2"])],
            "tree_metric": [[u, v, f"{2 * abs(a - b)}/1"]
                            for a, u in enumerate(["v0", "v1", "v2"])
                            for b, v in enumerate(["v0", "v1", "v2"])],
            "k": 1,
        },
        "mlufl": {
            "open_costs": {"i0": "1/1", "i1": "0/1"},
            "clients": {"j0": "1/1", "j1": "2/1"},
            "distances": [["i0", "j0", "0/1"], ["i0", "j1", "3/1"],
                          ["i1", "j0", "3/1"], ["i1", "j1", "0/1"]],
            "latency": ["0/1", "2/1"],
        },
    }
    for kind, doc in sources.items():
        src = tmp_path / f"{kind}.json"
        src.write_text(json.dumps(doc))
        dest = tmp_path / f"{kind}.inst.json"
        assert main(["reduce", kind, str(src), str(dest)]) == 0
        assert main(["check", str(dest)]) == 0
        assert main(["solve", str(dest)]) == 0
        sidecar = json.loads((tmp_path / f"{kind}.inst.json.mapping.json")
                             .read_text())
        assert sidecar["kind"] == kind
