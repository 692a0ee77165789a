"""Instance data model for the matroid median problem family.

An instance holds facilities, clients, demands, opening costs, a partial
facility-client distance matrix (absent entry = forbidden assignment), a
matroid on the facilities, and a variant payload (plain, penalties,
two-matroid, laminar bounds, knapsack, or the hardness-only intersection
tag).  Exact rationals throughout; the JSON file format writes every
rational as a "p/q" string.

Metric validation checks the bipartite chain inequality
c_ij <= c_ik' + c_i'k' + c_i'j over all finite legs, and additionally
that a finite 3-leg chain forces c_ij to be present.  Under that rule the
shortest-path completion of the distance matrix is a metric whose
client-client distances are min_i (c_ij + c_ik), which is what the
rounding pipelines consult.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from matmedian.matroids import (
    ExplicitMatroid,
    GraphicMatroid,
    LaminarMatroid,
    Matroid,
    MatroidError,
    PartitionMatroid,
    UniformMatroid,
)

MAX_FACILITIES = 16


class InstanceFormatError(ValueError):
    """Malformed instance document."""


@dataclass(frozen=True)
class Plain:
    kind: str = field(default="plain", init=False)


@dataclass(frozen=True)
class Penalty:
    penalty: dict[str, Fraction]
    kind: str = field(default="penalty", init=False)


@dataclass(frozen=True)
class Bounds:
    lb1: int = 0
    ub1: int = 10**9
    lb2: int = 0
    ub2: int = 10**9
    lb: int = 0
    ub: int = 10**9


@dataclass(frozen=True)
class TwoMatroid:
    f1: frozenset[str]
    f2: frozenset[str]
    matroid2: Matroid
    bounds: Bounds
    kind: str = field(default="two_matroid", init=False)


@dataclass(frozen=True)
class LaminarBounds:
    f1: frozenset[str]
    f2: frozenset[str]
    family: tuple[tuple[frozenset[str], int, int], ...]  # (set, lower, upper)
    bounds: Bounds
    kind: str = field(default="laminar", init=False)


@dataclass(frozen=True)
class Knapsack:
    weight: dict[str, Fraction]
    budget: Fraction
    kind: str = field(default="knapsack", init=False)


@dataclass(frozen=True)
class Intersection:
    """Hardness fixtures only; rejected by every approximation entry point."""

    matroid2: Matroid
    kind: str = field(default="intersection", init=False)


Variant = object


@dataclass(frozen=True, eq=False)
class MedianInstance:
    facilities: tuple[str, ...]
    clients: tuple[str, ...]
    demand: dict[str, Fraction]
    open_cost: dict[str, Fraction]
    dist: dict[tuple[str, str], Fraction]
    matroid: Matroid
    variant: Variant = field(default_factory=Plain)

    def __post_init__(self):
        object.__setattr__(self, "facilities", tuple(sorted(self.facilities)))
        object.__setattr__(self, "clients", tuple(sorted(self.clients)))
        object.__setattr__(self, "_ccache", {})

    def __eq__(self, other):
        if not isinstance(other, MedianInstance):
            return NotImplemented
        return (self.facilities, self.clients, self.demand, self.open_cost,
                self.dist, self.matroid, self.variant) == (
                    other.facilities, other.clients, other.demand,
                    other.open_cost, other.dist, other.matroid, other.variant)

    def d(self, i: str, j: str) -> Optional[Fraction]:
        return self.dist.get((i, j))

    def admissible(self, j: str) -> list[str]:
        """Facilities with a finite distance to client j, sorted by (dist, id)."""
        out = [(c, i) for i in self.facilities
               if (c := self.dist.get((i, j))) is not None]
        out.sort()
        return [i for _, i in out]

    def client_dist(self, j: str, k: str) -> Optional[Fraction]:
        """Induced client-client distance min_i c_ij + c_ik; None if disconnected."""
        if j == k:
            return Fraction(0)
        key = (j, k) if j < k else (k, j)
        cache = self._ccache
        if key in cache:
            return cache[key]
        best = None
        for i in self.facilities:
            a = self.dist.get((i, j))
            if a is None:
                continue
            b = self.dist.get((i, k))
            if b is None:
                continue
            if best is None or a + b < best:
                best = a + b
        cache[key] = best
        return best


# ----------------------------------------------------------------- validation

def validate(inst: MedianInstance) -> list[str]:
    """All violated invariants, each naming the offending entity."""
    out: list[str] = []
    fset, cset = set(inst.facilities), set(inst.clients)
    if len(fset) != len(inst.facilities):
        out.append("duplicate facility ids")
    if len(cset) != len(inst.clients):
        out.append("duplicate client ids")
    if fset & cset:
        out.append(f"ids used as both facility and client: {sorted(fset & cset)}")

    for j in inst.clients:
        dj = inst.demand.get(j)
        if dj is None:
            out.append(f"client {j!r} has no demand")
        elif dj < 0:
            out.append(f"client {j!r} has negative demand {dj}")
        elif dj == 0:
            out.append(f"client {j!r} has zero demand (drop it at load time)")
    for i in inst.facilities:
        fi = inst.open_cost.get(i)
        if fi is None:
            out.append(f"facility {i!r} has no opening cost")
        elif fi < 0:
            out.append(f"facility {i!r} has negative opening cost {fi}")
    for (i, j), c in sorted(inst.dist.items()):
        if i not in fset or j not in cset:
            out.append(f"distance entry ({i!r},{j!r}) references unknown ids")
        elif c < 0:
            out.append(f"distance ({i!r},{j!r}) is negative: {c}")

    if inst.matroid.ground != fset:
        out.append("matroid ground set differs from the facility set")

    out.extend(_metric_violations(inst))
    out.extend(_variant_violations(inst))
    return out


def _metric_violations(inst: MedianInstance) -> list[str]:
    out = []
    reported: set[tuple[str, str]] = set()
    by_client: dict[str, list[str]] = {}
    for i, j in inst.dist:
        by_client.setdefault(j, []).append(i)
    for j in sorted(by_client):
        for k in sorted(by_client):
            for i2 in by_client[k]:
                leg2 = inst.dist[(i2, k)]
                c2j = inst.dist.get((i2, j))
                if c2j is None:
                    continue
                for i in by_client[k]:
                    if (i, j) in reported:
                        continue
                    bound = inst.dist[(i, k)] + leg2 + c2j
                    cij = inst.dist.get((i, j))
                    if cij is None:
                        reported.add((i, j))
                        out.append(
                            f"distance ({i!r},{j!r}) absent but reachable via "
                            f"{k!r},{i2!r} at cost {bound}")
                    elif cij > bound:
                        reported.add((i, j))
                        out.append(
                            f"triangle violation: c[{i},{j}]={cij} > "
                            f"c[{i},{k}]+c[{i2},{k}]+c[{i2},{j}]={bound}")
    return out


def _variant_violations(inst: MedianInstance) -> list[str]:
    out = []
    v = inst.variant
    fset = set(inst.facilities)
    if isinstance(v, Penalty):
        for j in inst.clients:
            pj = v.penalty.get(j)
            if pj is None:
                out.append(f"client {j!r} has no penalty")
            elif pj < 0:
                out.append(f"client {j!r} has negative penalty {pj}")
    elif isinstance(v, (TwoMatroid, LaminarBounds)):
        if v.f1 & v.f2:
            out.append("F1 and F2 overlap")
        if v.f1 | v.f2 != fset:
            out.append("F1 and F2 do not partition the facilities")
        for (i, j) in inst.dist:
            if i in v.f2:
                out.append(f"client {j!r} has finite distance to F2 facility {i!r}")
        b = v.bounds
        for name, lo, hi in (("1", b.lb1, b.ub1), ("2", b.lb2, b.ub2), ("", b.lb, b.ub)):
            if lo > hi:
                out.append(f"bounds lb{name} > ub{name}")
            if lo < 0:
                out.append(f"bounds lb{name} negative")
        if isinstance(v, TwoMatroid) and v.matroid2.ground != v.f2:
            out.append("second matroid not defined exactly on F2")
        if isinstance(v, LaminarBounds):
            for s, lo, hi in v.family:
                if not s <= v.f2:
                    out.append(f"laminar set {sorted(s)} leaves F2")
                if not (0 <= lo <= hi):
                    out.append(f"laminar bounds on {sorted(s)} are not 0<=l<=u")
            sets = [s for s, _, _ in v.family]
            for a in sets:
                for b2 in sets:
                    if a & b2 and not (a <= b2 or b2 <= a):
                        out.append("laminar family has crossing sets")
    elif isinstance(v, Knapsack):
        if v.budget < 0:
            out.append("negative knapsack budget")
        for i in inst.facilities:
            wi = v.weight.get(i)
            if wi is None:
                out.append(f"facility {i!r} has no weight")
            elif wi < 0:
                out.append(f"facility {i!r} has negative weight {wi}")
            elif wi > v.budget:
                out.append(f"facility {i!r} has weight {wi} above the budget {v.budget}")
        free = (isinstance(inst.matroid, UniformMatroid)
                and inst.matroid.limit >= len(inst.facilities))
        if not free:
            out.append("knapsack instances require a free (uniform, full-rank) matroid")
    elif isinstance(v, Intersection):
        if v.matroid2.ground != fset:
            out.append("intersection matroid not defined on the facility set")
    elif not isinstance(v, Plain):
        out.append(f"unknown variant payload {type(v).__name__}")
    return out


def open_set_feasible(inst: MedianInstance, opened: Iterable[str]) -> bool:
    """Can `opened` be the open set: independence, variant bounds, coverage."""
    s = frozenset(opened)
    if not inst.matroid.is_independent(s):
        return False
    v = inst.variant
    if isinstance(v, (TwoMatroid, LaminarBounds)):
        n1, n2 = len(s & v.f1), len(s & v.f2)
        b = v.bounds
        if not (b.lb1 <= n1 <= b.ub1 and b.lb2 <= n2 <= b.ub2
                and b.lb <= len(s) <= b.ub):
            return False
        if isinstance(v, TwoMatroid):
            if not v.matroid2.is_independent(s & v.f2):
                return False
        else:
            for fam, lo, hi in v.family:
                if not lo <= len(s & fam) <= hi:
                    return False
    elif isinstance(v, Knapsack):
        if sum((v.weight[i] for i in s), Fraction(0)) > v.budget:
            return False
    elif isinstance(v, Intersection):
        if not v.matroid2.is_independent(s):
            return False
    if isinstance(v, Penalty):
        return True
    return all(any((i, j) in inst.dist for i in s) for j in inst.clients)


def _feasible_set_exists(inst: MedianInstance) -> bool:
    facs = inst.facilities
    for mask in range(1 << len(facs)):
        s = frozenset(facs[k] for k in range(len(facs)) if mask >> k & 1)
        if open_set_feasible(inst, s):
            return True
    return False


# ------------------------------------------------------------------- file I/O

_FRAC_RE = re.compile(r"^-?\d+/\d+$")


def frac_to_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def frac_from_str(s, where: str = "") -> Fraction:
    if not isinstance(s, str) or not _FRAC_RE.match(s):
        raise InstanceFormatError(f"non-rational number {s!r} at {where or 'document'}")
    p, q = s.split("/")
    if int(q) == 0:
        raise InstanceFormatError(f"zero denominator at {where or 'document'}")
    return Fraction(int(p), int(q))


def _matroid_to_obj(m: Matroid) -> dict:
    if isinstance(m, UniformMatroid):
        return {"kind": "uniform", "ground": sorted(m.ground), "rank": m.limit}
    if isinstance(m, PartitionMatroid):
        return {"kind": "partition",
                "classes": [{"members": sorted(c), "capacity": cap}
                            for c, cap in m.classes]}
    if isinstance(m, LaminarMatroid):
        return {"kind": "laminar", "ground": sorted(m.ground),
                "sets": [{"members": sorted(s), "upper": cap}
                         for s, cap in m.family]}
    if isinstance(m, GraphicMatroid):
        return {"kind": "graphic", "vertices": m.n_vertices,
                "edges": [{"id": e, "u": u, "v": v} for e, u, v in m.edges]}
    if isinstance(m, ExplicitMatroid):
        return {"kind": "explicit", "ground": sorted(m.ground),
                "max_independent": sorted(sorted(b) for b in m.bases)}
    raise InstanceFormatError(f"unserializable matroid {type(m).__name__}")


def _matroid_from_obj(obj, where: str = "matroid") -> Matroid:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InstanceFormatError(f"missing 'kind' in {where}")
    kind = obj["kind"]
    try:
        if kind == "uniform":
            return UniformMatroid(frozenset(obj["ground"]), int(obj["rank"]))
        if kind == "partition":
            return PartitionMatroid(tuple(
                (frozenset(c["members"]), int(c["capacity"]))
                for c in obj["classes"]))
        if kind == "laminar":
            return LaminarMatroid(frozenset(obj["ground"]), tuple(
                (frozenset(s["members"]), int(s["upper"])) for s in obj["sets"]))
        if kind == "graphic":
            return GraphicMatroid(int(obj["vertices"]), tuple(
                (e["id"], int(e["u"]), int(e["v"])) for e in obj["edges"]))
        if kind == "explicit":
            return ExplicitMatroid(frozenset(obj["ground"]), tuple(
                frozenset(b) for b in obj["max_independent"]))
    except KeyError as exc:
        raise InstanceFormatError(f"missing key {exc} in {where}") from exc
    except MatroidError as exc:
        raise InstanceFormatError(f"bad matroid in {where}: {exc}") from exc
    raise InstanceFormatError(f"unknown matroid kind {kind!r} in {where}")


def _bounds_to_obj(b: Bounds) -> dict:
    return {"lb1": b.lb1, "ub1": b.ub1, "lb2": b.lb2, "ub2": b.ub2,
            "lb": b.lb, "ub": b.ub}


def _variant_to_obj(v) -> dict:
    if isinstance(v, Plain):
        return {"kind": "plain"}
    if isinstance(v, Penalty):
        return {"kind": "penalty",
                "penalties": {j: frac_to_str(p) for j, p in sorted(v.penalty.items())}}
    if isinstance(v, TwoMatroid):
        return {"kind": "two_matroid", "f1": sorted(v.f1), "f2": sorted(v.f2),
                "matroid2": _matroid_to_obj(v.matroid2),
                **_bounds_to_obj(v.bounds)}
    if isinstance(v, LaminarBounds):
        return {"kind": "laminar", "f1": sorted(v.f1), "f2": sorted(v.f2),
                "sets": [{"members": sorted(s), "lower": lo, "upper": hi}
                         for s, lo, hi in v.family],
                **_bounds_to_obj(v.bounds)}
    if isinstance(v, Knapsack):
        return {"kind": "knapsack",
                "weights": {i: frac_to_str(w) for i, w in sorted(v.weight.items())},
                "budget": frac_to_str(v.budget)}
    if isinstance(v, Intersection):
        return {"kind": "intersection", "matroid2": _matroid_to_obj(v.matroid2)}
    raise InstanceFormatError(f"unserializable variant {type(v).__name__}")


def _bounds_from_obj(obj, n_f1: int, n_f2: int) -> Bounds:
    total = n_f1 + n_f2
    return Bounds(
        lb1=int(obj.get("lb1", 0)), ub1=int(obj.get("ub1", n_f1)),
        lb2=int(obj.get("lb2", 0)), ub2=int(obj.get("ub2", n_f2)),
        lb=int(obj.get("lb", 0)), ub=int(obj.get("ub", total)))


def _variant_from_obj(obj) -> Variant:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InstanceFormatError("missing 'kind' in variant")
    kind = obj["kind"]
    if kind == "plain":
        return Plain()
    if kind == "penalty":
        return Penalty(penalty={j: frac_from_str(p, f"penalty[{j}]")
                                for j, p in obj["penalties"].items()})
    if kind == "two_matroid":
        f1, f2 = frozenset(obj["f1"]), frozenset(obj["f2"])
        return TwoMatroid(f1=f1, f2=f2,
                          matroid2=_matroid_from_obj(obj["matroid2"], "matroid2"),
                          bounds=_bounds_from_obj(obj, len(f1), len(f2)))
    if kind == "laminar":
        f1, f2 = frozenset(obj["f1"]), frozenset(obj["f2"])
        fam = tuple(sorted(((frozenset(s["members"]), int(s["lower"]), int(s["upper"]))
                            for s in obj["sets"]),
                           key=lambda t: (-len(t[0]), sorted(t[0]))))
        return LaminarBounds(f1=f1, f2=f2, family=fam,
                             bounds=_bounds_from_obj(obj, len(f1), len(f2)))
    if kind == "knapsack":
        return Knapsack(weight={i: frac_from_str(w, f"weight[{i}]")
                                for i, w in obj["weights"].items()},
                        budget=frac_from_str(obj["budget"], "budget"))
    if kind == "intersection":
        return Intersection(matroid2=_matroid_from_obj(obj["matroid2"], "matroid2"))
    raise InstanceFormatError(f"unknown variant kind {kind!r}")


def serialize_instance(inst: MedianInstance) -> bytes:
    doc = {
        "facilities": list(inst.facilities),
        "clients": list(inst.clients),
        "demands": {j: frac_to_str(inst.demand[j]) for j in inst.clients},
        "open_costs": {i: frac_to_str(inst.open_cost[i]) for i in inst.facilities},
        "distances": [[i, j, frac_to_str(c)]
                      for (i, j), c in sorted(inst.dist.items())],
        "matroid": _matroid_to_obj(inst.matroid),
        "variant": _variant_to_obj(inst.variant),
    }
    return (json.dumps(doc, sort_keys=True, indent=1) + "\n").encode("utf-8")


def parse_instance(data) -> MedianInstance:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"not valid JSON: {exc}") from exc
    for key in ("facilities", "clients", "demands", "open_costs",
                "distances", "matroid", "variant"):
        if key not in doc:
            raise InstanceFormatError(f"missing top-level key {key!r}")
    demand = {j: frac_from_str(p, f"demands[{j}]") for j, p in doc["demands"].items()}
    # zero-demand clients are dropped at load time
    clients = tuple(j for j in doc["clients"] if demand.get(j, Fraction(1)) != 0)
    demand = {j: demand[j] for j in clients if j in demand}
    dropped = set(doc["clients"]) - set(clients)
    dist = {}
    for entry in doc["distances"]:
        if not (isinstance(entry, list) and len(entry) == 3):
            raise InstanceFormatError(f"bad distance entry {entry!r}")
        i, j, c = entry
        if j not in dropped:
            dist[(i, j)] = frac_from_str(c, f"distances[{i},{j}]")
    return MedianInstance(
        facilities=tuple(doc["facilities"]),
        clients=clients,
        demand=demand,
        open_cost={i: frac_from_str(p, f"open_costs[{i}]")
                   for i, p in doc["open_costs"].items()},
        dist=dist,
        matroid=_matroid_from_obj(doc["matroid"]),
        variant=_variant_from_obj(doc["variant"]),
    )


# ----------------------------------------------------------------- generation

@dataclass(frozen=True)
class GenParams:
    n_facilities: int = 6
    n_clients: int = 4
    matroid_kind: str = "uniform"      # uniform|partition|laminar|graphic|explicit
    variant: str = "plain"             # plain|penalty|two_matroid|laminar|knapsack
    metric: str = "line"               # line|grid


def generate_random(seed: int, params: GenParams) -> MedianInstance:
    """Deterministic random instance; retries sub-seeds until feasible."""
    if params.n_facilities > MAX_FACILITIES:
        raise ValueError(f"facility count above the desk-scale cap {MAX_FACILITIES}")
    if params.n_facilities < 1 or params.n_clients < 1:
        raise ValueError("need at least one facility and one client")
    for attempt in range(64):
        inst = _generate_once(random.Random(f"matmedian:{seed}:{attempt}"), params)
        if _feasible_set_exists(inst):
            return inst
    raise ValueError(f"no feasible instance found for seed {seed} and {params}")


def _coords(rng: random.Random, n: int, metric: str) -> list[tuple[Fraction, Fraction]]:
    pts = []
    for _ in range(n):
        if metric == "grid":
            pts.append((Fraction(rng.randint(0, 24), 2), Fraction(rng.randint(0, 24), 2)))
        else:
            pts.append((Fraction(rng.randint(0, 60), 2), Fraction(0)))
    return pts


def _l1(a, b) -> Fraction:
    return abs(a[0] - b[0]) + abs(a[1] - b[1])


def _random_matroid(rng: random.Random, kind: str, facs: list[str]) -> Matroid:
    ground = frozenset(facs)
    n = len(facs)
    if kind == "uniform":
        return UniformMatroid(ground, rng.randint(1, n))
    if kind == "partition":
        order = facs[:]
        rng.shuffle(order)
        classes, k = [], 0
        while k < n:
            size = min(rng.randint(1, 3), n - k)
            chunk = frozenset(order[k:k + size])
            classes.append((chunk, rng.randint(1, size)))
            k += size
        return PartitionMatroid(tuple(classes))
    if kind == "laminar":
        family = [(ground, rng.randint(max(1, n // 2), n))]
        order = sorted(facs)
        lo = 0
        while lo < n:
            hi = min(n, lo + rng.randint(1, 3))
            sub = frozenset(order[lo:hi])
            if len(sub) < n:
                family.append((sub, rng.randint(1, len(sub))))
            lo = hi
        return LaminarMatroid(ground, tuple(family))
    if kind == "graphic":
        nv = max(2, n // 2 + 1)
        edges = []
        for e in facs:
            u = rng.randrange(nv)
            v = rng.randrange(nv)
            while v == u:
                v = rng.randrange(nv)
            edges.append((e, u, v))
        return GraphicMatroid(nv, tuple(edges))
    if kind == "explicit":
        if n > 6:
            raise ValueError("explicit matroids are for tiny ground sets (<= 6)")
        source = _random_matroid(rng, rng.choice(["uniform", "partition"]), facs)
        bases = _maximal_independent_sets(source)
        return ExplicitMatroid(ground, tuple(bases))
    raise ValueError(f"unknown matroid kind {kind!r}")


def _maximal_independent_sets(m: Matroid) -> list[frozenset[str]]:
    items = sorted(m.ground)
    best: list[frozenset[str]] = []
    top = m.full_rank()
    for mask in range(1 << len(items)):
        s = frozenset(items[k] for k in range(len(items)) if mask >> k & 1)
        if len(s) == top and m.is_independent(s):
            best.append(s)
    return best


def _generate_once(rng: random.Random, params: GenParams) -> MedianInstance:
    nf, nc = params.n_facilities, params.n_clients
    facs = [f"f{k}" for k in range(nf)]
    clis = [f"c{k}" for k in range(nc)]
    fpts = _coords(rng, nf, params.metric)
    cpts = _coords(rng, nc, params.metric)
    demand = {j: Fraction(rng.randint(1, 4)) for j in clis}
    open_cost = {i: Fraction(rng.randint(0, 6)) for i in facs}

    variant: Variant
    f2: frozenset[str] = frozenset()
    if params.variant == "plain":
        variant = Plain()
    elif params.variant == "penalty":
        variant = Penalty({j: Fraction(rng.randint(0, 40), 2) for j in clis})
    elif params.variant in ("two_matroid", "laminar"):
        n2 = rng.randint(1, max(1, nf // 2))
        order = facs[:]
        rng.shuffle(order)
        f2 = frozenset(order[:n2])
        f1 = frozenset(order[n2:])
        if not f1:
            f1, f2 = f2, f1
        b = Bounds(lb1=rng.choice([0, 0, 1]), ub1=rng.randint(1, len(f1)),
                   lb2=rng.choice([0, 0, 1]) if f2 else 0, ub2=len(f2),
                   lb=rng.choice([0, 1]), ub=nf)
        if params.variant == "two_matroid":
            m2 = (_random_matroid(rng, rng.choice(["uniform", "partition"]),
                                  sorted(f2)) if f2
                  else UniformMatroid(frozenset(), 0))
            variant = TwoMatroid(f1=f1, f2=f2, matroid2=m2, bounds=b)
        else:
            fam = [(f2, 0, len(f2))]
            sub = sorted(f2)
            if len(sub) > 1:
                piece = frozenset(sub[:rng.randint(1, len(sub) - 1)])
                lo = rng.choice([0, 1])
                fam.append((piece, lo, rng.randint(max(1, lo), len(piece))))
            variant = LaminarBounds(f1=f1, f2=f2, family=tuple(fam), bounds=b)
    elif params.variant == "knapsack":
        weight = {i: Fraction(rng.randint(1, 6)) for i in facs}
        budget = Fraction(rng.randint(int(max(weight.values())),
                                      int(sum(weight.values()))))
        variant = Knapsack(weight=weight, budget=budget)
    else:
        raise ValueError(f"unknown variant {params.variant!r}")

    matroid_kind = params.matroid_kind
    if params.variant == "knapsack":
        matroid = UniformMatroid(frozenset(facs), nf)
    else:
        matroid = _random_matroid(rng, matroid_kind, facs)

    dist = {}
    for fi, i in enumerate(facs):
        if i in f2:
            continue
        for ci, j in enumerate(clis):
            dist[(i, j)] = _l1(fpts[fi], cpts[ci])
    return MedianInstance(facilities=tuple(facs), clients=tuple(clis),
                          demand=demand, open_cost=open_cost, dist=dist,
                          matroid=matroid, variant=variant)
