"""Penalty, two-matroid, and laminarity-constrained matroid median rounders.

The penalty pipeline (factor 24) pays up front for clients whose penalty
is at most twice their LP share, consolidates the rest with re-optimized
co-located assignments, crashes under a penalty-aware surrogate whose
per-client term is capped by min(2*penalty, 4*gamma), pays half-integral
penalties integrally, and finishes with the improved integral step.

The two-matroid / laminar pipelines (factor 8) first split every facility
partially used by its own center into two co-located clones so the
truncation step cannot violate the lower-bound rows, then run the
improved pipeline over polytopes carrying both rank families and all
cardinality bounds, whose extreme points remain half-integral (and
integral in the final step) because the tight rows come from two laminar
systems.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from matmedian.instances import (
    Bounds,
    LaminarBounds,
    MedianInstance,
    Penalty,
    TwoMatroid,
)
from matmedian.lp import FractionalSolution, solve_relaxation
from matmedian.matroids import (
    ExplicitMatroid,
    GraphicMatroid,
    LaminarMatroid,
    Matroid,
    PartitionMatroid,
    UniformMatroid,
)
from matmedian.polytope import (
    EQ,
    GE,
    LE,
    LinearSystem,
    Row,
    certify_denominators,
    crash_to_extreme,
    dot,
)
from matmedian.rounding import (
    ConsolidatedInstance,
    Neighborhoods,
    RoundedSolution,
    assemble_half,
    build_neighborhoods,
    check_solution,
    cluster_centers,
    cluster_key_improved,
    consolidate_demands,
    dist,
    empty_solution,
    integralize,
    matroid_box_and_cap_rows,
    matroid_separators,
    require,
)

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


# ----------------------------------------------------------------- penalties

def round_with_penalties(inst: MedianInstance) -> RoundedSolution:
    """Penalty-variant rounding; total cost <= 24 * LP value."""
    if not isinstance(inst.variant, Penalty):
        raise ValueError("round_with_penalties expects the penalty variant")
    pi = inst.variant.penalty
    frac = solve_relaxation(inst)
    if not inst.clients:
        return empty_solution(frac.objective)
    lp = frac.lp_client

    paid_upfront = [j for j in inst.clients if pi[j] <= 2 * lp[j]]
    survivors = [j for j in inst.clients if pi[j] > 2 * lp[j]]
    for j in survivors:
        require(frac.xsum[j] > HALF, "surviving clients are more than half-assigned")
    pen_upfront = sum((inst.demand[j] * pi[j] for j in paid_upfront), ZERO)
    fac_lp = sum((inst.open_cost[i] * frac.y[i] for i in inst.facilities), ZERO)
    opt_surviving = fac_lp + sum((inst.demand[j] * lp[j] for j in survivors), ZERO)

    if not survivors:
        sol = RoundedSolution(
            open_facilities=(), assignment={j: None for j in inst.clients},
            facility_cost=ZERO, connection_cost=ZERO, penalty_cost=pen_upfront,
            total_cost=pen_upfront,
            certificates={"lp_objective": frac.objective,
                          "opt_surviving": opt_surviving})
        require(sol.total_cost <= 24 * frac.objective, "24-approximation certificate")
        check_solution(inst, sol)
        return sol

    # Step I: consolidate around centers in increasing LP_j order, re-optimizing
    # each merged client's assignment at its center's location
    order = sorted(survivors, key=lambda j: (lp[j], j))
    nbr: dict[str, str] = {}
    centers: list[str] = []
    new_cost: dict[str, Fraction] = {}        # sum c' x' + pi z' per client
    remaining = list(order)
    while remaining:
        j = remaining.pop(0)
        centers.append(j)
        nbr[j] = j
        new_cost[j] = lp[j]
        keep = []
        for k in remaining:
            c = inst.client_dist(j, k)
            if c is not None and c <= 4 * lp[k]:
                nbr[k] = j
                new_cost[k] = _refill_at(inst, frac, j, pi[k])
                require(new_cost[k] <= 5 * lp[k],
                        "re-optimized merged assignment within 5x the client LP share")
            else:
                keep.append(k)
        remaining = keep
    for a in centers:
        for b in centers:
            if a < b:
                c = inst.client_dist(a, b)
                require(c is None or c >= 4 * max(lp[a], lp[b]),
                        "penalty center separation")
    opt_mod = fac_lp + sum((inst.demand[k] * new_cost[k] for k in survivors), ZERO)
    require(opt_mod <= 5 * opt_surviving,
            "consolidated cost within 5x the surviving LP cost")

    cons = ConsolidatedInstance(
        centers=tuple(sorted(centers)),
        demand={j: sum((inst.demand[k] for k in survivors if nbr[k] == j), ZERO)
                for j in centers},
        origin={j: tuple(sorted(k for k in survivors if nbr[k] == j))
                for j in centers},
        center_of={k: nbr[k] for k in survivors},
        radius={j: lp[j] for j in centers},
        opt_modified=opt_mod)
    nbhd = build_neighborhoods(inst, cons)

    # Step II: greedy-truncated opening vector and the penalty-aware surrogate
    variables: set[str] = set()
    for j in cons.centers:
        variables |= nbhd.G[j]
    variables = tuple(sorted(variables))
    y0 = {i: ZERO for i in variables}
    for j in cons.centers:
        room = ONE
        for c, i in sorted((dist(inst, i, j), i) for i in nbhd.G[j]):
            take = min(frac.y[i], room)
            y0[i] = take
            room -= take
    rows = matroid_box_and_cap_rows([(inst.matroid, frozenset(inst.facilities))],
                                    variables)
    for j in cons.centers:
        rows.append(Row({i: ONE for i in sorted(nbhd.Fp[j])}, GE, HALF,
                        tag=f"halfmass:{j}"))
        sense = EQ if nbhd.gamma[j] is None else LE
        rows.append(Row({i: ONE for i in sorted(nbhd.G[j])}, sense, ONE,
                        tag=f"cap:{j}"))
    system = LinearSystem(variables=variables, rows=rows)
    seps = matroid_separators([(inst.matroid, frozenset(inst.facilities))], variables)

    objective = {i: inst.open_cost[i] for i in variables}
    const = ZERO
    term_cap: dict[str, Fraction] = {}
    for k in survivors:
        j = nbr[k]
        cap = 2 * pi[k] if nbhd.gamma[j] is None else min(2 * pi[k],
                                                          4 * nbhd.gamma[j])
        term_cap[k] = cap
        const += inst.demand[k] * cap
        for i in nbhd.G[j]:
            cij = dist(inst, i, j)
            if cij <= pi[k]:
                objective[i] = (objective.get(i, ZERO)
                                + inst.demand[k] * (2 * cij - cap))

    def b_term(point, k):
        j = nbr[k]
        val = inst.demand[k] * term_cap[k]
        for i in nbhd.G[j]:
            cij = dist(inst, i, j)
            if cij <= pi[k]:
                val += inst.demand[k] * (2 * cij - term_cap[k]) * point.get(i, ZERO)
        return val

    for k in survivors:
        require(b_term(y0, k) <= 4 * inst.demand[k] * new_cost[k],
                "per-client surrogate start within 4x the modified LP share")
    vertex = crash_to_extreme(system, y0, objective, separators=seps)
    yhat = vertex.values
    require(certify_denominators(yhat, {1, 2}), "half-integral crash output")
    t_start = dot(objective, y0) + const
    t_half = dot(objective, yhat) + const
    require(t_half <= t_start <= 4 * opt_mod,
            "surrogate chain within 4x the consolidated bound")

    half = assemble_half(inst, cons, nbhd, yhat, "improved", t_start, t_half,
                         objective, const)

    # Step III: pay half-integral penalties integrally, round the rest
    pays: set[str] = set()
    for k in survivors:
        j = nbr[k]
        if yhat.get(half.i1[j], ZERO) == ONE:
            continue
        nk_mass = sum((yhat.get(i, ZERO) for i in nbhd.G[j]
                       if dist(inst, i, j) <= pi[k]), ZERO)
        if nk_mass == HALF and (nbhd.gamma[j] is None or pi[k] <= 2 * nbhd.gamma[j]):
            pays.add(k)
            require(b_term(yhat, k) >= pi[k], "penalty charged to the surrogate")
    demand_left = {j: sum((inst.demand[k] for k in survivors
                           if nbr[k] == j and k not in pays), ZERO)
                   for j in centers}
    live = tuple(sorted(j for j in centers if demand_left[j] > 0))
    pen_half = sum((inst.demand[k] * pi[k] for k in pays), ZERO)

    assignment: dict[str, Optional[str]] = {j: None for j in paid_upfront}
    assignment.update({k: None for k in pays})
    fac_cost = ZERO
    conn_real = ZERO
    conn_mod = ZERO
    open_set: tuple[str, ...] = ()
    if live:
        cons2 = ConsolidatedInstance(
            centers=live, demand={j: demand_left[j] for j in live},
            origin=cons.origin, center_of=cons.center_of,
            radius=cons.radius, opt_modified=opt_mod)
        Dp, ctr = cluster_centers(half, "improved", inst, centers=live)
        integ = integralize(inst, cons2, half, Dp, ctr, "improved")
        h_rest = integ.h_restricted
        surrogate_left = sum((b_term(yhat, k) for k in survivors if k not in pays),
                             ZERO)
        fac_half = sum((inst.open_cost[i] * v for i, v in yhat.items()), ZERO)
        require(h_rest <= fac_half + surrogate_left,
                "H(yhat') bounded by the surviving surrogate terms")
        open_set = integ.open_set
        fac_cost = integ.facility_cost
        conn_mod = integ.connection_cost
        for k in survivors:
            if k in pays:
                continue
            i = integ.assignment[nbr[k]]
            assignment[k] = i
            conn_real += inst.demand[k] * dist(inst, i, k)
        require(fac_cost + conn_mod + pen_half <= t_half,
                "modified-instance cost within T(yhat)")
        lift_extra = conn_real - conn_mod
        require(lift_extra <= 4 * sum((inst.demand[k] * lp[k] for k in survivors
                                       if nbr[k] != k), ZERO),
                "penalty lifting within 4 d_k LP_k")
    pen_total = pen_upfront + pen_half
    total = fac_cost + conn_real + pen_total
    require(total <= 24 * frac.objective, "24-approximation certificate")
    sol = RoundedSolution(
        open_facilities=open_set, assignment=assignment,
        facility_cost=fac_cost, connection_cost=conn_real,
        penalty_cost=pen_total, total_cost=total,
        certificates={"lp_objective": frac.objective,
                      "opt_surviving": opt_surviving,
                      "opt_consolidated": opt_mod,
                      "t_start": t_start, "t_half": t_half,
                      "penalty_upfront": pen_upfront,
                      "penalty_half": pen_half,
                      "lp_pivots": Fraction(frac.stats.pivots),
                      "lp_rounds": Fraction(frac.stats.lp_rounds),
                      "lp_rank_cuts": Fraction(len(frac.stats.rank_cuts))})
    check_solution(inst, sol)
    return sol


def _refill_at(inst: MedianInstance, frac: FractionalSolution, j: str,
               cap: Fraction) -> Fraction:
    """Cheapest unit assignment at location j from the opening vector y,
    using only facilities with c_ij <= cap and the penalty for the rest."""
    room = ONE
    cost = ZERO
    for c, i in sorted((inst.dist[(i2, j)], i2) for (i2, j2) in inst.dist
                       if j2 == j):
        if room == ZERO or c > cap:
            break
        take = min(frac.y[i], room)
        cost += take * c
        room -= take
    return cost + room * cap


# ------------------------------------------------- two-matroid and laminar

@dataclass
class CloneMap:
    """Facility cloning: h maps originals to one or two co-located ids."""

    h: dict[str, tuple[str, ...]]
    origin: dict[str, str]

    def expand(self, items) -> frozenset[str]:
        out = set()
        for i in items:
            out.update(self.h[i])
        return frozenset(out)


def lift_matroid(m: Matroid, cmap: CloneMap) -> Matroid:
    """The parallel-extension matroid on clone ids, same kind family."""
    pairs = [(frozenset(cmap.h[i]), m.rank(frozenset((i,))))
             for i in sorted(m.ground) if len(cmap.h[i]) > 1]
    ground = cmap.expand(m.ground)
    if isinstance(m, UniformMatroid):
        return LaminarMatroid(ground, tuple([(ground, m.limit)] + pairs))
    if isinstance(m, PartitionMatroid):
        fam = [(cmap.expand(c), cap) for c, cap in m.classes]
        return LaminarMatroid(ground, tuple(fam + pairs))
    if isinstance(m, LaminarMatroid):
        fam = [(cmap.expand(s), cap) for s, cap in m.family]
        return LaminarMatroid(ground, tuple(fam + pairs))
    if isinstance(m, GraphicMatroid):
        edges = []
        for e, u, v in m.edges:
            for c in cmap.h[e]:
                edges.append((c, u, v))
        return GraphicMatroid(m.n_vertices, tuple(edges))
    if isinstance(m, ExplicitMatroid):
        bases: set[frozenset[str]] = set()

        def grow(items, acc):
            if not items:
                bases.add(frozenset(acc))
                return
            for c in cmap.h[items[0]]:
                grow(items[1:], acc + [c])

        for b in m.bases:
            grow(sorted(b), [])
        return ExplicitMatroid(ground, tuple(bases))
    raise ValueError(f"cannot clone-lift {type(m).__name__}")


def clone_facilities(inst: MedianInstance, cons: ConsolidatedInstance,
                     nbhd: Neighborhoods, frac: FractionalSolution):
    """Split facilities partially used by their center into two clones.

    Returns (cloned instance, clone map, cloned y, cloned x, G' sets).
    The cloned instance carries the lifted first matroid; x mass of other
    clients is split proportionally to the clone openings.
    """
    h: dict[str, tuple[str, ...]] = {}
    origin: dict[str, str] = {}
    owner: dict[str, str] = {}
    for j in cons.centers:
        for i in nbhd.G[j]:
            owner[i] = j
    for i in inst.facilities:
        j = owner.get(i)
        xij = frac.x.get((i, j), ZERO) if j is not None else ZERO
        if j is not None and ZERO < xij < frac.y[i]:
            h[i] = (f"{i}~1", f"{i}~2")
        else:
            h[i] = (i,)
        for c in h[i]:
            origin[c] = i
    cmap = CloneMap(h=h, origin=origin)

    y2: dict[str, Fraction] = {}
    x2: dict[tuple[str, str], Fraction] = {}
    for i in inst.facilities:
        clones = h[i]
        if len(clones) == 1:
            y2[i] = frac.y[i]
            for j in inst.clients:
                v = frac.x.get((i, j), ZERO)
                if v > 0:
                    x2[(i, j)] = v
            continue
        j = owner[i]
        a, b = clones
        ya = frac.x[(i, j)]
        yb = frac.y[i] - ya
        y2[a], y2[b] = ya, yb
        x2[(a, j)] = ya
        for k in inst.clients:
            if k == j:
                continue
            v = frac.x.get((i, k), ZERO)
            if v > 0:
                x2[(a, k)] = v * ya / frac.y[i]
                x2[(b, k)] = v * yb / frac.y[i]

    gprime: dict[str, frozenset[str]] = {}
    for j in cons.centers:
        got = set()
        for i in nbhd.G[j]:
            if len(h[i]) > 1:
                got.add(h[i][0])
            elif frac.x.get((i, j), ZERO) == frac.y[i] > 0:
                got.add(i)
        gprime[j] = frozenset(got)

    v = inst.variant
    facs2 = tuple(sorted(origin))
    dist2 = {}
    for c in facs2:
        for j in inst.clients:
            val = inst.dist.get((origin[c], j))
            if val is not None:
                dist2[(c, j)] = val
    if isinstance(v, TwoMatroid):
        variant2 = TwoMatroid(f1=cmap.expand(v.f1), f2=v.f2,
                              matroid2=v.matroid2, bounds=v.bounds)
    else:
        variant2 = LaminarBounds(f1=cmap.expand(v.f1), f2=v.f2,
                                 family=v.family, bounds=v.bounds)
    inst2 = MedianInstance(
        facilities=facs2, clients=inst.clients,
        demand=dict(inst.demand),
        open_cost={c: inst.open_cost[origin[c]] for c in facs2},
        dist=dist2, matroid=lift_matroid(inst.matroid, cmap),
        variant=variant2)
    return inst2, cmap, y2, x2, gprime


def _bound_rows(variant, variables) -> list[Row]:
    vset = frozenset(variables)
    b: Bounds = variant.bounds
    groups = [(variant.f1 & vset, b.lb1, b.ub1, "bound:f1"),
              (variant.f2 & vset, b.lb2, b.ub2, "bound:f2"),
              (vset, b.lb, b.ub, "bound:all")]
    if isinstance(variant, LaminarBounds):
        for s, lo, hi in variant.family:
            groups.append((s & vset, lo, hi, "bound:laminar"))
    rows = []
    for scope, lo, hi, tag in groups:
        coeffs = {i: ONE for i in sorted(scope)}
        if lo > 0:
            rows.append(Row(dict(coeffs), GE, Fraction(lo), tag=tag))
        if hi < 10**9:
            rows.append(Row(dict(coeffs), LE, Fraction(hi), tag=tag))
    return rows


def round_two_matroid(inst: MedianInstance) -> RoundedSolution:
    """Two-matroid median; cost <= 8 * LP value."""
    if not isinstance(inst.variant, TwoMatroid):
        raise ValueError("round_two_matroid expects the two-matroid variant")
    return _round_partitioned(inst)


def round_laminar_constrained(inst: MedianInstance) -> RoundedSolution:
    """Laminarity-constrained matroid median; cost <= 8 * LP value."""
    if not isinstance(inst.variant, LaminarBounds):
        raise ValueError("round_laminar_constrained expects the laminar variant")
    return _round_partitioned(inst)


def _matroid_scopes(inst2: MedianInstance):
    scopes = [(inst2.matroid, frozenset(inst2.facilities))]
    if isinstance(inst2.variant, TwoMatroid) and inst2.variant.f2:
        scopes.append((inst2.variant.matroid2, inst2.variant.f2))
    return scopes


def build_partitioned_half_polytope(inst2: MedianInstance,
                                    cons: ConsolidatedInstance,
                                    nbhd2: Neighborhoods,
                                    variables: tuple[str, ...],
                                    ) -> tuple[LinearSystem, list, list[Row]]:
    """The half-integral polytope for the cloned two-matroid/laminar
    pipeline: both rank families, all cardinality bound rows, and the
    per-center half-mass and cap rows."""
    scopes = _matroid_scopes(inst2)
    rows = matroid_box_and_cap_rows(scopes, variables)
    bound_rows = _bound_rows(inst2.variant, variables)
    rows.extend(bound_rows)
    for j in cons.centers:
        rows.append(Row({i: ONE for i in sorted(nbhd2.Fp[j])}, GE, HALF,
                        tag=f"halfmass:{j}"))
        sense = EQ if nbhd2.gamma[j] is None else LE
        rows.append(Row({i: ONE for i in sorted(nbhd2.G[j])}, sense, ONE,
                        tag=f"cap:{j}"))
    system = LinearSystem(variables=variables, rows=rows)
    return system, matroid_separators(scopes, variables), bound_rows


def cloned_neighborhoods(inst2: MedianInstance, cons: ConsolidatedInstance,
                         nbhd: Neighborhoods, cmap: CloneMap,
                         gprime: dict[str, frozenset[str]]) -> Neighborhoods:
    return Neighborhoods(
        F={j: cmap.expand(nbhd.F[j]) for j in cons.centers},
        Fp={j: frozenset(i for i in gprime[j]
                         if dist(inst2, i, j) <= 2 * cons.radius[j])
            for j in cons.centers},
        gamma=dict(nbhd.gamma),
        G=gprime)


def _round_partitioned(inst: MedianInstance) -> RoundedSolution:
    frac = solve_relaxation(inst)
    if not inst.clients:
        return _no_client_bounded(inst, frac)
    cons = consolidate_demands(inst, frac)
    require(cons.opt_modified <= frac.objective,
            "consolidated bound within the LP objective")
    nbhd = build_neighborhoods(inst, cons)

    inst2, cmap, y2, x2, gprime = clone_facilities(inst, cons, nbhd, frac)
    nbhd2 = cloned_neighborhoods(inst2, cons, nbhd, cmap, gprime)
    for j in cons.centers:
        mass = sum((y2[i] for i in nbhd2.Fp[j]), ZERO)
        require(mass >= HALF, "cloned F'_j keeps half the assignment mass")

    scopes = _matroid_scopes(inst2)
    variables = tuple(sorted(i for i, v in y2.items() if v > 0))
    system, seps, bound_rows = build_partitioned_half_polytope(
        inst2, cons, nbhd2, variables)

    conn_coeffs = {}
    const = ZERO
    for j in cons.centers:
        dj = cons.demand[j]
        for i in sorted(nbhd2.G[j]):
            conn_coeffs[i] = (conn_coeffs.get(i, ZERO)
                              + dj * 2 * dist(inst2, i, j))
        if nbhd2.gamma[j] is not None:
            g = dj * 4 * nbhd2.gamma[j]
            const += g
            for i in sorted(nbhd2.G[j]):
                conn_coeffs[i] = conn_coeffs.get(i, ZERO) - g
    objective = dict(conn_coeffs)
    for i in variables:
        objective[i] = objective.get(i, ZERO) + inst2.open_cost[i]
    start = {i: y2.get(i, ZERO) for i in variables}
    vertex = crash_to_extreme(system, start, objective, separators=seps)
    yhat = vertex.values
    require(certify_denominators(yhat, {1, 2}), "half-integral crash output")
    t_start = dot(objective, start) + const
    t_half = dot(objective, yhat) + const
    require(t_half <= t_start <= 4 * cons.opt_modified,
            "surrogate chain within 4x the consolidated bound")

    half = assemble_half(inst2, cons, nbhd2, yhat, "improved", t_start, t_half,
                         objective, const)
    key = lambda j: (cluster_key_improved(inst2, half, j),
                     0 if len(half.S[j]) == 1 else 1, j)
    Dp, ctr = cluster_centers(half, "improved", inst2, key=key)
    for j in Dp:
        for i in half.S[j]:
            require(half.xhat[(i, j)] == yhat.get(i, ZERO),
                    "cluster centers fully own their serving facilities")
    integ = integralize(inst2, cons, half, Dp, ctr, "improved",
                        matroids=scopes, extra_rows=bound_rows)
    require(integ.h_restricted <= t_half, "H(yhat') <= T(yhat)")

    opened_orig = tuple(sorted(cmap.origin[c] for c in integ.open_set))
    require(len(set(opened_orig)) == len(integ.open_set),
            "no facility opened through both clones")
    assignment: dict[str, Optional[str]] = {}
    connection = ZERO
    for j in inst.clients:
        c = integ.assignment[cons.center_of[j]]
        assignment[j] = cmap.origin[c]
        connection += inst.demand[j] * dist(inst, cmap.origin[c], j)
    total = integ.facility_cost + connection
    require(total <= 8 * frac.objective, "8-approximation certificate")
    sol = RoundedSolution(
        open_facilities=opened_orig, assignment=assignment,
        facility_cost=integ.facility_cost, connection_cost=connection,
        penalty_cost=ZERO, total_cost=total,
        certificates={"lp_objective": frac.objective,
                      "opt_consolidated": cons.opt_modified,
                      "t_start": t_start, "t_half": t_half,
                      "h_restricted": integ.h_restricted,
                      "h_final": integ.h_final,
                      "cost_modified": integ.facility_cost + integ.connection_cost,
                      "lp_pivots": Fraction(frac.stats.pivots),
                      "lp_rounds": Fraction(frac.stats.lp_rounds),
                      "lp_rank_cuts": Fraction(len(frac.stats.rank_cuts))})
    check_solution(inst, sol)
    _check_partition_feasibility(inst, sol)
    return sol


def _no_client_bounded(inst: MedianInstance, frac) -> RoundedSolution:
    scopes = _matroid_scopes(inst)
    variables = tuple(sorted(i for i, v in frac.y.items() if v > 0))
    rows = matroid_box_and_cap_rows(scopes, variables)
    rows.extend(_bound_rows(inst.variant, variables))
    system = LinearSystem(variables=variables, rows=rows)
    vertex = crash_to_extreme(system, {i: frac.y[i] for i in variables},
                              {i: inst.open_cost[i] for i in variables},
                              separators=matroid_separators(scopes, variables))
    require(certify_denominators(vertex.values, {1}), "integral bounded vertex")
    open_set = tuple(sorted(i for i, v in vertex.values.items() if v == ONE))
    fac = sum((inst.open_cost[i] for i in open_set), ZERO)
    sol = RoundedSolution(open_facilities=open_set, assignment={},
                          facility_cost=fac, connection_cost=ZERO,
                          penalty_cost=ZERO, total_cost=fac,
                          certificates={"lp_objective": frac.objective})
    check_solution(inst, sol)
    _check_partition_feasibility(inst, sol)
    return sol


def _check_partition_feasibility(inst: MedianInstance, sol: RoundedSolution):
    v = inst.variant
    s = frozenset(sol.open_facilities)
    b = v.bounds
    require(b.lb1 <= len(s & v.f1) <= b.ub1, "F1 cardinality bounds")
    require(b.lb2 <= len(s & v.f2) <= b.ub2, "F2 cardinality bounds")
    require(b.lb <= len(s) <= b.ub, "total cardinality bounds")
    if isinstance(v, TwoMatroid):
        require(v.matroid2.is_independent(s & v.f2),
                "open F2 set independent in the second matroid")
    else:
        for fam, lo, hi in v.family:
            require(lo <= len(s & fam) <= hi, "laminar family bounds")
