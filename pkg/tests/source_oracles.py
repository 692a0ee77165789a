"""Brute-force solvers and random generators for the source problems of
the reduction round-trip tests.  These are independent of the package's
reducers and lifts: each one enumerates the source problem's own solution
space directly."""

import random
from fractions import Fraction
from itertools import combinations, permutations

F = Fraction


def subsets_upto(items, cap):
    for r in range(min(cap, len(items)) + 1):
        yield from combinations(items, r)


def data_placement_opt(caches, objects, clients, storage_cost, metric):
    ids = sorted(caches)
    best = None

    def rec(k, placement, cost):
        nonlocal best
        if k == len(ids):
            total = cost
            for j, (o, dj) in sorted(clients.items()):
                served = [metric[(i, j)] for i in ids if o in placement[i]]
                if not served:
                    return
                total += dj * min(served)
            if best is None or total < best:
                best = total
            return
        i = ids[k]
        for chosen in subsets_upto(sorted(objects), caches[i]):
            extra = sum((storage_cost[(i, o)] for o in chosen), F(0))
            placement[i] = set(chosen)
            rec(k + 1, placement, cost + extra)
        placement[i] = set()

    rec(0, {i: set() for i in ids}, F(0))
    return best


def mobile_facility_opt(locations, metric, clients, initial, move_cost):
    best = None

    def rec(todo, dests, moved):
        nonlocal best
        if not todo:
            total = moved
            for j, dj in sorted(clients.items()):
                total += dj * min(metric[(s, j)] for s in dests)
            if best is None or total < best:
                best = total
            return
        i = todo[0]
        for s in sorted(locations):
            rec(todo[1:], dests + [s], moved + move_cost[(i, s)])

    rec(sorted(initial), [], F(0))
    return best


def kmedian_forest_opt(nodes, assign_metric, tree_metric, k, open_cost=None):
    vs = sorted(nodes)
    best = None
    for r in range(1, min(k, len(vs)) + 1):
        for s in combinations(vs, r):
            total = sum((open_cost[v] for v in s), F(0)) if open_cost else F(0)
            total += sum(min(assign_metric[(i, j)] for i in s) for j in vs)
            total += forest_cost(vs, tree_metric, s)
            if best is None or total < best:
                best = total
    return best


def forest_cost(vs, tree_metric, roots):
    """Minimum spanning forest with every component touching a root."""
    parent = {v: v for v in vs}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    roots = sorted(roots)
    for v in roots[1:]:
        parent[find(v)] = find(roots[0])
    total = F(0)
    for w, u, v in sorted((tree_metric[(u, v)], u, v)
                          for a, u in enumerate(vs) for v in vs[a + 1:]):
        if find(u) != find(v):
            parent[find(u)] = find(v)
            total += w
    return total


def mlufl_opt(open_cost, clients, metric, latency):
    facs = sorted(open_cost)
    best = None
    for r in range(1, len(facs) + 1):
        for chosen in combinations(facs, r):
            for slots in permutations(range(1, len(facs) + 1), r):
                total = sum((open_cost[i] for i in chosen), F(0))
                for j, dj in sorted(clients.items()):
                    total += dj * min(metric[(i, j)] + latency[t - 1]
                                      for i, t in zip(chosen, slots))
                if best is None or total < best:
                    best = total
    return best


# ----------------------------------------------------------- random sources

def rnd_metric(rng, rows, cols):
    pos = {x: rng.randint(0, 12) for x in set(rows) | set(cols)}
    return {(i, j): F(abs(pos[i] - pos[j])) for i in rows for j in cols}


def rnd_data_placement(seed):
    rng = random.Random(f"dp:{seed}")
    caches = {f"i{k}": rng.randint(1, 2) for k in range(rng.randint(2, 3))}
    objects = [f"o{k}" for k in range(rng.randint(1, 3))]
    clients = {f"j{k}": (rng.choice(objects), F(rng.randint(1, 3)))
               for k in range(rng.randint(1, 3))}
    storage = {(i, o): F(rng.randint(0, 4)) for i in caches for o in objects}
    metric = rnd_metric(rng, sorted(caches), sorted(clients))
    return caches, objects, clients, storage, metric


def rnd_mobile(seed, zero_self=True):
    rng = random.Random(f"mfl:{seed}")
    locations = [f"s{k}" for k in range(rng.randint(2, 3))]
    initial = [f"s{k}" for k in range(rng.randint(1, 2))]
    clients = {f"j{k}": F(rng.randint(1, 3)) for k in range(rng.randint(1, 3))}
    metric = rnd_metric(rng, locations, sorted(clients))
    move = {}
    for i in initial:
        for s in locations:
            move[(i, s)] = F(0) if (zero_self and s == i) else F(rng.randint(0, 5))
        if zero_self:
            move[(i, i)] = F(0)
    return locations, metric, clients, initial, move


def rnd_kmf(seed):
    rng = random.Random(f"kmf:{seed}")
    nodes = [f"v{k}" for k in range(rng.randint(2, 4))]
    pos_c = {v: rng.randint(0, 10) for v in nodes}
    pos_d = {v: rng.randint(0, 10) for v in nodes}
    cm = {(u, v): F(abs(pos_c[u] - pos_c[v])) for u in nodes for v in nodes}
    dm = {(u, v): F(abs(pos_d[u] - pos_d[v])) for u in nodes for v in nodes}
    return nodes, cm, dm, rng.randint(1, len(nodes))


def rnd_mlufl(seed):
    rng = random.Random(f"ml:{seed}")
    facs = {f"i{k}": F(rng.randint(0, 4)) for k in range(rng.randint(2, 3))}
    clients = {f"j{k}": F(rng.randint(1, 2)) for k in range(rng.randint(1, 3))}
    metric = rnd_metric(rng, sorted(facs), sorted(clients))
    lat = sorted(F(rng.randint(0, 4)) for _ in facs)
    return facs, clients, metric, lat
