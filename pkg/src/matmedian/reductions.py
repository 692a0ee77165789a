"""Encoders from applied facility-location problems into the median family.

Each reducer returns a (MedianInstance, ReductionMapping) pair; the
matching lift function converts a RoundedSolution on the instance back to
a source-problem solution of identical cost (plus the mapping's constant
offset, nonzero only when mobile facility location is re-rooted).

The hardness generator emits matroid-intersection fixtures from digraphs;
those carry the Intersection variant tag, which every approximation entry
point rejects, and are consumed only by the zero-cost decision oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from matmedian.instances import (
    Bounds,
    Intersection,
    MedianInstance,
    Plain,
    TwoMatroid,
)
from matmedian.matroids import GraphicMatroid, PartitionMatroid, UniformMatroid
from matmedian.rounding import RoundedSolution

ZERO = Fraction(0)

PRODUCT_CAP = 16


class ReductionError(ValueError):
    pass


@dataclass
class ReductionMapping:
    kind: str
    facility_of: dict[str, tuple]             # instance facility -> source entity
    client_of: dict[str, str]
    cost_offset: Fraction = ZERO
    notes: dict = field(default_factory=dict)


def _check_product_cap(n: int, what: str) -> None:
    if n > PRODUCT_CAP:
        raise ReductionError(
            f"{what} needs {n} facilities, above the cap {PRODUCT_CAP}")


# ------------------------------------------------------------ data placement

def reduce_data_placement(caches: Mapping[str, int], objects: Sequence[str],
                          clients: Mapping[str, tuple[str, Fraction]],
                          storage_cost: Mapping[tuple[str, str], Fraction],
                          metric: Mapping[tuple[str, str], Fraction],
                          ) -> tuple[MedianInstance, ReductionMapping]:
    """Caches with capacities, clients wanting one object each.

    `clients[j] = (object, demand)`; `storage_cost[(cache, obj)]`;
    `metric[(cache, client)]`.  A facility (cache, obj) may serve exactly
    the clients wanting obj; capacities become a partition matroid.
    """
    objs = sorted(objects)
    _check_product_cap(len(caches) * len(objs), "data placement")
    fac_of: dict[str, tuple] = {}
    open_cost = {}
    dist = {}
    classes = []
    for i in sorted(caches):
        members = []
        for o in objs:
            fid = f"{i}|{o}"
            fac_of[fid] = (i, o)
            open_cost[fid] = Fraction(storage_cost[(i, o)])
            members.append(fid)
        classes.append((frozenset(members), int(caches[i])))
    demand = {}
    for j in sorted(clients):
        o, dj = clients[j]
        demand[j] = Fraction(dj)
        for i in sorted(caches):
            dist[(f"{i}|{o}", j)] = Fraction(metric[(i, j)])
    inst = MedianInstance(facilities=tuple(fac_of), clients=tuple(sorted(clients)),
                          demand=demand, open_cost=open_cost, dist=dist,
                          matroid=PartitionMatroid(tuple(classes)),
                          variant=Plain())
    mapping = ReductionMapping(kind="data_placement", facility_of=fac_of,
                               client_of={j: j for j in clients})
    return inst, mapping


@dataclass
class DataPlacementSolution:
    placement: dict[str, frozenset[str]]      # cache -> objects stored
    assignment: dict[str, str]                # client -> cache
    cost: Fraction


def lift_data_placement(mapping: ReductionMapping, sol: RoundedSolution,
                        ) -> DataPlacementSolution:
    placement: dict[str, set[str]] = {}
    for fid in sol.open_facilities:
        i, o = mapping.facility_of[fid]
        placement.setdefault(i, set()).add(o)
    assignment = {j: mapping.facility_of[fid][0]
                  for j, fid in sol.assignment.items()}
    return DataPlacementSolution(
        placement={i: frozenset(v) for i, v in placement.items()},
        assignment=assignment, cost=sol.total_cost + mapping.cost_offset)


# ----------------------------------------------------- mobile facility location

def reduce_mobile_facility(locations: Sequence[str],
                           metric: Mapping[tuple[str, str], Fraction],
                           clients: Mapping[str, Fraction],
                           initial: Sequence[str],
                           move_cost: Mapping[tuple[str, str], Fraction],
                           ) -> tuple[MedianInstance, ReductionMapping]:
    """Facilities move from initial locations; clients connect to final spots.

    `move_cost[(i, s)]` is the cost of moving facility i to location s.
    When some w_ii is nonzero the facility is re-rooted at its cheapest
    location and the saved constant is carried in the mapping offset.
    """
    locs = sorted(locations)
    inits = sorted(initial)
    _check_product_cap(len(inits) * len(locs), "mobile facility location")
    offset = ZERO
    shift: dict[str, Fraction] = {}
    rest_at: dict[str, str] = {}
    for i in inits:
        w_ii = Fraction(move_cost[(i, i)])
        if w_ii != 0:
            base, spot = min((Fraction(move_cost[(i, s)]), s) for s in locs)
            shift[i] = base
            rest_at[i] = spot
            offset += base
        else:
            shift[i] = ZERO
            rest_at[i] = i
    fac_of: dict[str, tuple] = {}
    open_cost = {}
    dist = {}
    classes = []
    for i in inits:
        members = []
        for s in locs:
            fid = f"{i}@{s}"
            fac_of[fid] = (i, s)
            open_cost[fid] = Fraction(move_cost[(i, s)]) - shift[i]
            if open_cost[fid] < 0:
                raise ReductionError(f"movement cost ({i},{s}) below the minimum")
            members.append(fid)
            for j in sorted(clients):
                dist[(fid, j)] = Fraction(metric[(s, j)])
        classes.append((frozenset(members), 1))
    demand = {j: Fraction(dj) for j, dj in clients.items()}
    inst = MedianInstance(facilities=tuple(fac_of), clients=tuple(sorted(clients)),
                          demand=demand, open_cost=open_cost, dist=dist,
                          matroid=PartitionMatroid(tuple(classes)),
                          variant=Plain())
    mapping = ReductionMapping(kind="mobile_facility", facility_of=fac_of,
                               client_of={j: j for j in clients},
                               cost_offset=offset,
                               notes={"initial": tuple(inits),
                                      "rest_at": rest_at})
    return inst, mapping


@dataclass
class MobileFacilitySolution:
    destination: dict[str, str]               # initial facility -> final location
    assignment: dict[str, str]                # client -> final location
    cost: Fraction


def lift_mobile_facility(mapping: ReductionMapping, sol: RoundedSolution,
                         ) -> MobileFacilitySolution:
    # unopened facilities rest at their cheapest location (the shift the
    # mapping offset already paid for)
    destination = dict(mapping.notes["rest_at"])
    for fid in sol.open_facilities:
        i, s = mapping.facility_of[fid]
        destination[i] = s
    assignment = {j: mapping.facility_of[fid][1]
                  for j, fid in sol.assignment.items()}
    return MobileFacilitySolution(destination=destination, assignment=assignment,
                                  cost=sol.total_cost + mapping.cost_offset)


# ------------------------------------------------------------ k-median forest

def reduce_kmedian_forest(nodes: Sequence[str],
                          assign_metric: Mapping[tuple[str, str], Fraction],
                          tree_metric: Mapping[tuple[str, str], Fraction],
                          k: int,
                          open_cost: Optional[Mapping[str, Fraction]] = None,
                          ) -> tuple[MedianInstance, ReductionMapping]:
    """Choose at most k medians; non-median connectivity is bought as a
    spanning forest in a second metric.  Encodes to two-matroid median on
    the edges of the complete graph over the nodes plus a root."""
    vs = sorted(nodes)
    n = len(vs)
    edges = n + n * (n - 1) // 2
    _check_product_cap(edges, "k-median forest")
    fac_of: dict[str, tuple] = {}
    costs = {}
    dist = {}
    graph_edges = []
    idx = {v: t + 1 for t, v in enumerate(vs)}   # 0 is the root
    f1 = set()
    for v in vs:
        fid = f"r-{v}"
        fac_of[fid] = ("median", v)
        costs[fid] = Fraction(open_cost[v]) if open_cost else ZERO
        graph_edges.append((fid, 0, idx[v]))
        f1.add(fid)
        for j in vs:
            dist[(fid, f"n:{j}")] = Fraction(assign_metric[(v, j)])
    f2 = set()
    for a in range(n):
        for b in range(a + 1, n):
            u, v = vs[a], vs[b]
            fid = f"{u}-{v}"
            fac_of[fid] = ("edge", u, v)
            costs[fid] = Fraction(tree_metric[(u, v)])
            graph_edges.append((fid, idx[u], idx[v]))
            f2.add(fid)
    clients = tuple(f"n:{v}" for v in vs)
    variant = TwoMatroid(
        f1=frozenset(f1), f2=frozenset(f2),
        matroid2=UniformMatroid(frozenset(f2), len(f2)),
        bounds=Bounds(lb1=0, ub1=int(k), lb2=0, ub2=len(f2),
                      lb=n, ub=len(fac_of)))
    inst = MedianInstance(facilities=tuple(fac_of), clients=clients,
                          demand={c: Fraction(1) for c in clients},
                          open_cost=costs, dist=dist,
                          matroid=GraphicMatroid(n + 1, tuple(graph_edges)),
                          variant=variant)
    mapping = ReductionMapping(kind="kmedian_forest", facility_of=fac_of,
                               client_of={f"n:{v}": v for v in vs},
                               notes={"k": int(k)})
    return inst, mapping


@dataclass
class KMedianForestSolution:
    medians: frozenset[str]
    forest: frozenset[tuple[str, str]]
    assignment: dict[str, str]                # node -> median
    cost: Fraction


def lift_kmedian_forest(mapping: ReductionMapping, sol: RoundedSolution,
                        ) -> KMedianForestSolution:
    medians = set()
    forest = set()
    for fid in sol.open_facilities:
        tag = mapping.facility_of[fid]
        if tag[0] == "median":
            medians.add(tag[1])
        else:
            forest.add((tag[1], tag[2]))
    assignment = {mapping.client_of[c]: mapping.facility_of[fid][1]
                  for c, fid in sol.assignment.items()}
    return KMedianForestSolution(medians=frozenset(medians),
                                 forest=frozenset(forest),
                                 assignment=assignment,
                                 cost=sol.total_cost + mapping.cost_offset)


# ------------------------------------------------- minimum-latency facilities

def reduce_mlufl(open_cost: Mapping[str, Fraction],
                 clients: Mapping[str, Fraction],
                 metric: Mapping[tuple[str, str], Fraction],
                 latency: Sequence[Fraction],
                 slot_cost: Optional[Mapping[tuple[str, int], Fraction]] = None,
                 ) -> tuple[MedianInstance, ReductionMapping]:
    """Open facilities get distinct time slots; a client pays its distance
    plus the latency of its facility's slot.  Facilities become (i, t)
    pairs under a per-slot partition matroid."""
    facs = sorted(open_cost)
    slots = len(facs)
    lat = [Fraction(x) for x in latency]
    if len(lat) != slots:
        raise ReductionError("latency list must have one entry per facility")
    if any(lat[t + 1] < lat[t] for t in range(slots - 1)):
        raise ReductionError("latency must be nondecreasing")
    _check_product_cap(len(facs) * slots, "latency facility location")
    fac_of: dict[str, tuple] = {}
    costs = {}
    dist = {}
    classes = []
    for t in range(1, slots + 1):
        members = []
        for i in facs:
            fid = f"{i}@t{t}"
            fac_of[fid] = (i, t)
            extra = Fraction(slot_cost[(i, t)]) if slot_cost else ZERO
            costs[fid] = Fraction(open_cost[i]) + extra
            members.append(fid)
            for j in sorted(clients):
                dist[(fid, j)] = Fraction(metric[(i, j)]) + lat[t - 1]
        classes.append((frozenset(members), 1))
    inst = MedianInstance(facilities=tuple(fac_of),
                          clients=tuple(sorted(clients)),
                          demand={j: Fraction(dj) for j, dj in clients.items()},
                          open_cost=costs, dist=dist,
                          matroid=PartitionMatroid(tuple(classes)),
                          variant=Plain())
    mapping = ReductionMapping(kind="mlufl", facility_of=fac_of,
                               client_of={j: j for j in clients},
                               notes={"latency": tuple(lat)})
    return inst, mapping


@dataclass
class MlunflSolution:
    slot_of: dict[str, int]                    # open facility -> time slot
    assignment: dict[str, str]                 # client -> facility
    cost: Fraction


def lift_mlufl(inst: MedianInstance, mapping: ReductionMapping,
               sol: RoundedSolution) -> MlunflSolution:
    """Keep one slot per facility (the cheapest-latency open copy) and
    reassign its clients there; never costlier because latency is monotone."""
    lat = mapping.notes["latency"]
    best: dict[str, tuple] = {}
    for fid in sol.open_facilities:
        i, t = mapping.facility_of[fid]
        key = (lat[t - 1], inst.open_cost[fid], t)
        if i not in best or key < best[i][0]:
            best[i] = (key, fid, t)
    slot_of = {i: t for i, (_, _, t) in best.items()}
    kept_fid = {i: fid for i, (_, fid, _) in best.items()}
    assignment = {}
    cost = sum((inst.open_cost[fid] for fid in kept_fid.values()), ZERO)
    for j, fid in sol.assignment.items():
        i, _ = mapping.facility_of[fid]
        assignment[j] = i
        cost += inst.demand[j] * inst.dist[(kept_fid[i], j)]
    return MlunflSolution(slot_of=slot_of, assignment=assignment,
                          cost=cost + mapping.cost_offset)


# ------------------------------------------------------------------- hardness

def generate_hardness_instance(n_nodes: int, arcs: Sequence[tuple[int, int]],
                               source: int, target: int,
                               ) -> MedianInstance:
    """Digraph fixture: zero-cost feasibility equals a Hamiltonian path.

    Facilities are arcs; every node but the target is a client served at
    cost zero exactly by its outgoing arcs.  The first matroid is the
    graphic matroid of the undirected graph, the second a partition
    matroid capping in-arcs of every node except the source at one and
    in-arcs of the source at zero (otherwise an in-tree toward the target
    that is not rooted at the source would also have zero cost).
    """
    if source == target or not (0 <= source < n_nodes and 0 <= target < n_nodes):
        raise ReductionError("source and target must be distinct nodes")
    arcs = sorted(set((int(u), int(v)) for u, v in arcs))
    if any(u == v for u, v in arcs):
        raise ReductionError("self-loops are not allowed")
    fac_ids = {(u, v): f"a{u}>{v}" for u, v in arcs}
    clients = tuple(f"n{v}" for v in range(n_nodes) if v != target)
    dist = {}
    for (u, v), fid in fac_ids.items():
        dist[(fid, f"n{u}")] = ZERO
    by_head: dict[int, list[str]] = {}
    for (u, v), fid in fac_ids.items():
        by_head.setdefault(v, []).append(fid)
    classes = []
    placed = set()
    for v, members in sorted(by_head.items()):
        cap = 0 if v == source else 1
        classes.append((frozenset(members), cap))
        placed.update(members)
    orphan = [fid for fid in fac_ids.values() if fid not in placed]
    if orphan:
        classes.append((frozenset(orphan), len(orphan)))
    if not classes:
        classes.append((frozenset(), 0))
    matroid2 = PartitionMatroid(tuple(classes))
    graph = GraphicMatroid(n_nodes, tuple(
        (fid, u, v) for (u, v), fid in sorted(fac_ids.items(),
                                              key=lambda kv: kv[1])))
    return MedianInstance(
        facilities=tuple(sorted(fac_ids.values())), clients=clients,
        demand={c: Fraction(1) for c in clients},
        open_cost={fid: ZERO for fid in fac_ids.values()},
        dist=dist, matroid=graph, variant=Intersection(matroid2=matroid2))
