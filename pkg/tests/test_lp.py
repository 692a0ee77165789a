import random
from fractions import Fraction

import pytest

from matmedian.instances import (
    GenParams,
    Knapsack,
    MedianInstance,
    Penalty,
    Plain,
    generate_random,
)
from matmedian.lp import Infeasible, Unbounded, simplex_solve, solve_relaxation
from matmedian.matroids import UniformMatroid
from matmedian.polytope import EQ, GE, LE, LinearSystem, Row, enumerate_vertices

F = Fraction


def line_instance():
    # facilities a,b,c at 0,2,5; clients j at 0, k at 2; free openings, rank 1
    facs = ("a", "b", "c")
    return MedianInstance(
        facilities=facs,
        clients=("j", "k"),
        demand={"j": F(1), "k": F(1)},
        open_cost={i: F(0) for i in facs},
        dist={("a", "j"): F(0), ("b", "j"): F(2), ("c", "j"): F(5),
              ("a", "k"): F(2), ("b", "k"): F(0), ("c", "k"): F(3)},
        matroid=UniformMatroid(frozenset(facs), 1),
        variant=Plain())


def penalty_fixture():
    return MedianInstance(
        facilities=("a",),
        clients=("j",),
        demand={"j": F(1)},
        open_cost={"a": F(10)},
        dist={("a", "j"): F(1)},
        matroid=UniformMatroid(frozenset("a"), 1),
        variant=Penalty({"j": F(2)}))


class TestSimplex:
    def test_max_single_variable(self):
        sys_ = LinearSystem(("x",), [Row({"x": F(1)}, LE, F(1))])
        res = simplex_solve(sys_, {"x": F(1)}, "max")
        assert res.objective == F(1)
        assert res.point.values["x"] == F(1)

    def test_min_hits_a_vertex(self):
        sys_ = LinearSystem(("x", "y"), [Row({"x": F(1), "y": F(1)}, GE, F(1))])
        res = simplex_solve(sys_, {"x": F(1), "y": F(1)}, "min")
        assert res.objective == F(1)
        assert sorted(res.point.values.values()) == [F(0), F(1)]

    def test_infeasible(self):
        sys_ = LinearSystem(("x",), [Row({"x": F(1)}, LE, F(1)),
                                     Row({"x": F(1)}, GE, F(2))])
        with pytest.raises(Infeasible):
            simplex_solve(sys_, {"x": F(1)}, "min")

    def test_unbounded(self):
        sys_ = LinearSystem(("x",), [Row({"x": F(1)}, GE, F(1))])
        with pytest.raises(Unbounded):
            simplex_solve(sys_, {"x": F(1)}, "max")

    def test_equality_rows(self):
        sys_ = LinearSystem(("x", "y"),
                            [Row({"x": F(1), "y": F(2)}, EQ, F(2))])
        res = simplex_solve(sys_, {"x": F(3), "y": F(1)}, "min")
        assert res.objective == F(1)

    def test_matches_vertex_enumeration_on_random_systems(self):
        rng = random.Random(97)
        for _ in range(60):
            n = rng.randint(2, 5)
            names = tuple(f"v{k}" for k in range(n))
            rows = [Row({v: F(1)}, LE, F(rng.randint(1, 2))) for v in names]
            for _ in range(rng.randint(1, 3)):
                sub = {v: F(rng.randint(1, 3)) for v in names if rng.random() < 0.7}
                if sub:
                    rows.append(Row(sub, LE, F(rng.randint(2, 6))))
            sys_ = LinearSystem(names, rows)
            obj = {v: F(rng.randint(-4, 4)) for v in names}
            res = simplex_solve(sys_, obj, "max")
            best = max(sum(obj[v] * vp.values[v] for v in names)
                       for vp in enumerate_vertices(sys_))
            assert res.objective == best


class TestRelaxation:
    def test_single_facility(self):
        inst = MedianInstance(
            facilities=("a",), clients=("j",), demand={"j": F(1)},
            open_cost={"a": F(0)}, dist={("a", "j"): F(1)},
            matroid=UniformMatroid(frozenset("a"), 1), variant=Plain())
        frac = solve_relaxation(inst)
        assert frac.objective == F(1)
        assert frac.y["a"] == F(1)

    def test_line_instance_value(self):
        frac = solve_relaxation(line_instance())
        # brute force over single facilities gives min(0+2, 2+0, 5+3) = 2
        assert frac.objective == F(2)
        for j in ("j", "k"):
            assert sum(v for (i, c), v in frac.x.items() if c == j) == F(1)

    def test_penalty_fixture_pays(self):
        frac = solve_relaxation(penalty_fixture())
        assert frac.objective == F(2)
        assert frac.z["j"] == F(1)

    def test_infeasible_when_rank_zero(self):
        inst = MedianInstance(
            facilities=("a",), clients=("j",), demand={"j": F(1)},
            open_cost={"a": F(0)}, dist={("a", "j"): F(1)},
            matroid=UniformMatroid(frozenset("a"), 0), variant=Plain())
        with pytest.raises(Infeasible):
            solve_relaxation(inst)

    def test_matroid_polytope_membership(self):
        rng = random.Random(12)
        for seed in range(30):
            params = GenParams(n_facilities=rng.randint(2, 6),
                               n_clients=rng.randint(1, 4),
                               matroid_kind=rng.choice(
                                   ["uniform", "partition", "laminar", "graphic"]),
                               variant="plain")
            inst = generate_random(seed, params)
            frac = solve_relaxation(inst)
            assert inst.matroid.separate(frac.y) is None
            for j in inst.clients:
                assert frac.xsum[j] == F(1)
                for i in inst.facilities:
                    assert frac.x.get((i, j), F(0)) <= frac.y[i]

    def test_rerun_with_accumulated_cuts_matches(self):
        inst = generate_random(3, GenParams(n_facilities=6, n_clients=4,
                                            matroid_kind="graphic"))
        first = solve_relaxation(inst)
        again = solve_relaxation(inst, extra_rows=list(first.stats.rank_cuts))
        assert again.objective == first.objective

    def test_knapsack_radii_deletions(self):
        inst = MedianInstance(
            facilities=("a", "b"), clients=("j",), demand={"j": F(1)},
            open_cost={"a": F(0), "b": F(0)},
            dist={("a", "j"): F(4), ("b", "j"): F(1)},
            matroid=UniformMatroid(frozenset("ab"), 2),
            variant=Knapsack(weight={"a": F(1), "b": F(1)}, budget=F(2)))
        frac = solve_relaxation(inst, radii={"j": F(2)})
        assert frac.objective == F(1)
        assert ("a", "j") not in frac.x


def test_concurrent_solves_share_nothing():
    import concurrent.futures

    inst = generate_random(5, GenParams(6, 4, "graphic", "plain"))
    with concurrent.futures.ThreadPoolExecutor(max_workers=4) as pool:
        results = list(pool.map(lambda _: solve_relaxation(inst), range(8)))
    assert all(r.objective == results[0].objective for r in results)
    assert all(r.y == results[0].y for r in results)


def test_two_matroid_relaxation_in_both_polytopes():
    from matmedian.instances import TwoMatroid

    for seed in range(20):
        inst = generate_random(seed, GenParams(5, 3, "graphic", "two_matroid"))
        frac = solve_relaxation(inst)
        assert inst.matroid.separate(frac.y) is None
        v = inst.variant
        assert isinstance(v, TwoMatroid)
        if v.f2:
            sub = {i: frac.y[i] for i in v.f2}
            assert v.matroid2.separate(sub) is None
        b = v.bounds
        y1 = sum(frac.y[i] for i in v.f1)
        y2 = sum((frac.y[i] for i in v.f2), F(0))
        assert b.lb1 <= y1 <= b.ub1 and b.lb2 <= y2 <= b.ub2
        assert b.lb <= y1 + y2 <= b.ub


def test_simplex_matches_scipy_on_random_lps():
    scipy_opt = pytest.importorskip("scipy.optimize")
    rng = random.Random(41)
    for _ in range(40):
        n = rng.randint(2, 6)
        names = tuple(f"v{k}" for k in range(n))
        rows = []
        for _ in range(rng.randint(1, 4)):
            coeffs = {v: F(rng.randint(-2, 4)) for v in names
                      if rng.random() < 0.8}
            if not coeffs:
                continue
            sense = rng.choice([LE, LE, GE, EQ])
            rhs = F(rng.randint(0, 8))
            rows.append(Row(coeffs, sense, rhs))
        for v in names:
            rows.append(Row({v: F(1)}, LE, F(rng.randint(1, 4))))
        sys_ = LinearSystem(names, rows)
        obj = {v: F(rng.randint(-5, 5)) for v in names}
        a_ub, b_ub, a_eq, b_eq = [], [], [], []
        for row in rows:
            vec = [float(row.coeffs.get(v, 0)) for v in names]
            if row.sense == LE:
                a_ub.append(vec)
                b_ub.append(float(row.rhs))
            elif row.sense == GE:
                a_ub.append([-x for x in vec])
                b_ub.append(-float(row.rhs))
            else:
                a_eq.append(vec)
                b_eq.append(float(row.rhs))
        ref = scipy_opt.linprog(
            [float(obj[v]) for v in names], A_ub=a_ub or None,
            b_ub=b_ub or None, A_eq=a_eq or None, b_eq=b_eq or None,
            bounds=[(0, None)] * n, method="highs")
        try:
            res = simplex_solve(sys_, obj, "min")
        except Infeasible:
            assert not ref.success
            continue
        assert ref.success
        assert abs(float(res.objective) - ref.fun) < 1e-7


def test_crash_output_is_an_enumerated_vertex():
    from matmedian.polytope import crash_to_extreme, enumerate_vertices

    rng = random.Random(17)
    for _ in range(40):
        n = rng.randint(2, 4)
        names = tuple(f"v{k}" for k in range(n))
        rows = [Row({v: F(1) for v in names}, LE, F(rng.randint(1, 3)))]
        for v in names:
            rows.append(Row({v: F(1)}, LE, F(1)))
        if rng.random() < 0.5:
            sub = {v: F(1) for v in names if rng.random() < 0.6}
            if sub:
                rows.append(Row(sub, GE, F(1, 2)))
        sys_ = LinearSystem(names, rows)
        point = {v: F(rng.randint(0, 2), 4) for v in names}
        if not sys_.is_feasible(point):
            continue
        obj = {v: F(rng.randint(-3, 3)) for v in names}
        out = crash_to_extreme(sys_, point, obj)
        coords = out.as_tuple(names)
        allowed = {vp.as_tuple(names) for vp in enumerate_vertices(sys_)}
        assert coords in allowed
