from fractions import Fraction

import pytest

from source_oracles import (
    data_placement_opt,
    kmedian_forest_opt,
    mlufl_opt,
    mobile_facility_opt,
    rnd_data_placement,
    rnd_kmf,
    rnd_mlufl,
    rnd_mobile,
)

from matmedian.extensions import round_two_matroid
from matmedian.instances import validate
from matmedian.oracle import exact_solve, exact_zero_cost_decision, hamiltonian_path_exists
from matmedian.reductions import (
    ReductionError,
    generate_hardness_instance,
    lift_data_placement,
    lift_kmedian_forest,
    lift_mlufl,
    lift_mobile_facility,
    reduce_data_placement,
    reduce_kmedian_forest,
    reduce_mlufl,
    reduce_mobile_facility,
)
from matmedian.rounding import round_matroid_median

F = Fraction


# ------------------------------------------------------------------- tests

class TestDataPlacement:
    def test_capacity_forces_object_choice(self):
        caches = {"i0": 1}
        clients = {"j0": ("o0", F(1)), "j1": ("o1", F(1))}
        storage = {("i0", "o0"): F(0), ("i0", "o1"): F(0)}
        metric = {("i0", "j0"): F(1), ("i0", "j1"): F(1)}
        inst, mapping = reduce_data_placement(caches, ["o0", "o1"], clients,
                                              storage, metric)
        assert validate(inst) == []
        # only one object fits, and the other client cannot be served
        with pytest.raises(Exception):
            exact_solve(inst)

    def test_oracle_equivalence_and_lift(self):
        for seed in range(12):
            caches, objects, clients, storage, metric = rnd_data_placement(seed)
            inst, mapping = reduce_data_placement(caches, objects, clients,
                                                  storage, metric)
            assert validate(inst) == []
            src = data_placement_opt(caches, objects, clients, storage, metric)
            sol = exact_solve(inst)
            assert sol.total_cost == src
            lifted = lift_data_placement(mapping, round_matroid_median(inst))
            for i, objs in lifted.placement.items():
                assert len(objs) <= caches[i]
            for j, i in lifted.assignment.items():
                assert clients[j][0] in lifted.placement[i]

    def test_admissible_sets_by_construction(self):
        caches, objects, clients, storage, metric = rnd_data_placement(1)
        inst, _ = reduce_data_placement(caches, objects, clients, storage, metric)
        for j, (o, _) in clients.items():
            admissible = {i for i in inst.facilities if (i, j) in inst.dist}
            assert admissible == {f"{i}|{o}" for i in caches}


class TestMobileFacility:
    def test_single_facility_two_locations(self):
        inst, mapping = reduce_mobile_facility(
            ["s0", "s1"], {("s0", "j"): F(1), ("s1", "j"): F(2)},
            {"j": F(1)}, ["s0"],
            {("s0", "s0"): F(0), ("s0", "s1"): F(3)})
        assert len(inst.facilities) == 2
        assert mapping.cost_offset == F(0)

    def test_oracle_equivalence_and_lift(self):
        for seed in range(12):
            locations, metric, clients, initial, move = rnd_mobile(seed)
            inst, mapping = reduce_mobile_facility(locations, metric, clients,
                                                   initial, move)
            assert validate(inst) == []
            src = mobile_facility_opt(locations, metric, clients, initial, move)
            assert exact_solve(inst).total_cost + mapping.cost_offset == src
            lifted = lift_mobile_facility(mapping, round_matroid_median(inst))
            check = sum((move[(i, lifted.destination[i])] for i in initial), F(0))
            for j, dj in clients.items():
                check += dj * metric[(lifted.assignment[j], j)]
            assert check == lifted.cost

    def test_nonzero_self_movement_rerooted(self):
        locations, metric, clients, initial, move = rnd_mobile(3, zero_self=False)
        inst, mapping = reduce_mobile_facility(locations, metric, clients,
                                               initial, move)
        src = mobile_facility_opt(locations, metric, clients, initial, move)
        assert exact_solve(inst).total_cost + mapping.cost_offset == src


class TestKMedianForest:
    def test_structure_is_spanning_tree_with_bounded_root_degree(self):
        nodes, cm, dm, k = rnd_kmf(0)
        inst, mapping = reduce_kmedian_forest(nodes, cm, dm, k)
        assert validate(inst) == []
        sol = exact_solve(inst)
        opened = sol.open_facilities
        assert len(opened) == len(nodes)
        medians = sum(1 for f in opened if f.startswith("r-"))
        assert 1 <= medians <= k

    def test_oracle_equivalence_and_lift(self):
        for seed in range(12):
            nodes, cm, dm, k = rnd_kmf(seed)
            inst, mapping = reduce_kmedian_forest(nodes, cm, dm, k)
            src = kmedian_forest_opt(nodes, cm, dm, k)
            sol = exact_solve(inst)
            assert sol.total_cost == src
            lifted = lift_kmedian_forest(mapping, round_two_matroid(inst))
            assert 1 <= len(lifted.medians) <= k
            check = sum(min(cm[(i, j)] for i in lifted.medians) for j in nodes)
            check += sum((dm[e] for e in lifted.forest), F(0))
            assert lifted.cost >= check  # assignment may be non-nearest

    def test_degenerate_k_equals_n(self):
        nodes, cm, dm, _ = rnd_kmf(5)
        inst, _ = reduce_kmedian_forest(nodes, cm, dm, len(nodes))
        src = kmedian_forest_opt(nodes, cm, dm, len(nodes))
        assert exact_solve(inst).total_cost == src


class TestMlufl:
    def test_single_facility_forced_slot(self):
        inst, mapping = reduce_mlufl({"i0": F(2)}, {"j0": F(1)},
                                     {("i0", "j0"): F(3)}, [F(5)])
        sol = exact_solve(inst)
        assert sol.total_cost == F(2) + F(3) + F(5)

    def test_monotonicity_enforced(self):
        with pytest.raises(ReductionError):
            reduce_mlufl({"i0": F(0), "i1": F(0)}, {"j0": F(1)},
                         {("i0", "j0"): F(0), ("i1", "j0"): F(0)},
                         [F(2), F(1)])

    def test_oracle_equivalence_and_lift(self):
        for seed in range(12):
            facs, clients, metric, lat = rnd_mlufl(seed)
            inst, mapping = reduce_mlufl(facs, clients, metric, lat)
            assert validate(inst) == []
            src = mlufl_opt(facs, clients, metric, lat)
            sol = exact_solve(inst)
            assert sol.total_cost == src
            rounded = round_matroid_median(inst)
            lifted = lift_mlufl(inst, mapping, rounded)
            assert lifted.cost <= rounded.total_cost
            assert len(set(lifted.slot_of.values())) == len(lifted.slot_of)


class TestHardness:
    def test_path_digraph_has_zero_cost(self):
        inst = generate_hardness_instance(3, [(0, 1), (1, 2)], 0, 2)
        assert validate(inst) == []
        assert exact_zero_cost_decision(inst)

    def test_rejected_by_solvers(self):
        inst = generate_hardness_instance(3, [(0, 1), (1, 2)], 0, 2)
        with pytest.raises(Exception):
            round_matroid_median(inst)

    def test_equivalence_on_all_three_node_digraphs(self):
        pairs = [(u, v) for u in range(3) for v in range(3) if u != v]
        for mask in range(1 << len(pairs)):
            arcs = {pairs[k] for k in range(len(pairs)) if mask >> k & 1}
            inst = generate_hardness_instance(3, sorted(arcs), 0, 2)
            assert (exact_zero_cost_decision(inst)
                    == hamiltonian_path_exists(3, arcs, 0, 2))


def test_data_placement_uncapacitated_behaves_like_ufl():
    # capacities at |objects| make the matroid non-binding: the optimum
    # equals per-cache free placement of whatever its clients want
    caches, objects, clients, storage, metric = rnd_data_placement(7)
    caches = {i: len(objects) for i in caches}
    inst, _ = reduce_data_placement(caches, objects, clients, storage, metric)
    src = data_placement_opt(caches, objects, clients, storage, metric)
    assert exact_solve(inst).total_cost == src


def test_mlufl_zero_latency_is_plain_ufl():
    facs, clients, metric, lat = rnd_mlufl(9)
    lat = [F(0)] * len(lat)
    inst, _ = reduce_mlufl(facs, clients, metric, lat)
    # UFL brute force: latency contributes nothing
    best = None
    from itertools import combinations
    names = sorted(facs)
    for r in range(1, len(names) + 1):
        for chosen in combinations(names, r):
            total = sum((facs[i] for i in chosen), F(0))
            for j, dj in sorted(clients.items()):
                total += dj * min(metric[(i, j)] for i in chosen)
            if best is None or total < best:
                best = total
    assert exact_solve(inst).total_cost == best
