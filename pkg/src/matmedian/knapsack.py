"""Knapsack median: radius caps, nearly half-integral rounding, guessing loop.

For a guessed connection cost the per-client radius U_j is the largest z
with sum_k d_k * max(0, z - c_jk) <= guess, computed exactly by a
breakpoint scan; assignments beyond the radius are deleted from the LP.
A single crash inside the knapsack polytope (coverage rows plus one
weight row) yields a vector with at most one "special" center whose
neighborhood keeps non-half-integral coordinates; a least-weight opening
per cluster then respects the budget.  The outer loop enumerates the
distinct opening costs and a (1+eps) grid of connection-cost guesses and
keeps the cheapest feasible rounding.  Identical deletion patterns are
solved once and reused across guesses.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from matmedian.instances import Knapsack, MedianInstance
from matmedian.lp import Infeasible, solve_relaxation
from matmedian.polytope import (
    EQ,
    GE,
    LE,
    LinearSystem,
    Row,
    crash_to_extreme,
    dot,
)
from matmedian.rounding import (
    HalfSolution,
    RoundedSolution,
    build_neighborhoods,
    cdist,
    check_solution,
    cluster_centers,
    cluster_key_improved,
    consolidate_demands,
    dist,
    empty_solution,
    require,
)

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


class BadGuess(Exception):
    """The guessed costs admit no feasible LP; not an error."""


@dataclass(frozen=True)
class KnapsackGuess:
    connection: Fraction                      # C^opt
    max_opening: Fraction                     # f^opt
    radii: dict[str, Fraction]                # U_j per client

    def __post_init__(self):
        if self.connection < 0 or self.max_opening < 0:
            raise ValueError("guessed costs must be nonnegative")


def compute_radii(inst: MedianInstance, connection: Fraction) -> dict[str, Fraction]:
    """U_j = max{z: sum_k d_k max(0, z - c_jk) <= connection}, exactly."""
    if connection < 0:
        raise ValueError("connection guess must be nonnegative")
    out: dict[str, Fraction] = {}
    for j in inst.clients:
        dists = sorted({cdist(inst, j, k) for k in inst.clients})
        total = ZERO       # sum d_k max(0, z - c_jk) at z = level
        mass = ZERO        # demand within the current breakpoint
        level = ZERO
        for b in dists:
            nxt = total + mass * (b - level)
            if nxt > connection:
                break
            total, level = nxt, b
            mass += sum((inst.demand[k] for k in inst.clients
                         if cdist(inst, j, k) == b), ZERO)
        require(mass > 0, "radius scan covers the client itself")
        out[j] = level + (connection - total) / mass
    return out


def make_guess(inst: MedianInstance, connection: Fraction,
               max_opening: Fraction) -> KnapsackGuess:
    return KnapsackGuess(connection=connection, max_opening=max_opening,
                         radii=compute_radii(inst, connection))


def round_knapsack_once(inst: MedianInstance, guess: KnapsackGuess,
                        ) -> RoundedSolution:
    """One rounding run for a fixed guess; raises BadGuess when infeasible."""
    if not isinstance(inst.variant, Knapsack):
        raise ValueError("round_knapsack_once expects the knapsack variant")
    weight, budget = inst.variant.weight, inst.variant.budget
    keep = frozenset(i for i in inst.facilities
                     if inst.open_cost[i] <= guess.max_opening
                     and weight[i] <= budget)
    if not keep:
        raise BadGuess("every facility is pruned by the guess")
    run = _rounding_run(inst, keep, guess.radii)
    return _certify(inst, run, guess)


@dataclass
class _Run:
    lp_objective: Fraction
    k_start: Fraction
    k_half: Fraction
    special: tuple[str, ...]
    centers: tuple[str, ...]
    demand: dict[str, Fraction]
    origin: dict[str, tuple[str, ...]]
    fac_cost: Fraction
    conn_modified: Fraction
    conn_real: Fraction
    open_set: tuple[str, ...]
    assignment: dict[str, str]
    lp_pivots: int = 0


def _rounding_run(inst: MedianInstance, keep: frozenset[str],
                  radii: dict[str, Fraction]) -> _Run:
    weight, budget = inst.variant.weight, inst.variant.budget
    try:
        frac = solve_relaxation(inst, radii=radii, keep=keep)
    except Infeasible as exc:
        raise BadGuess(str(exc)) from exc
    cons = consolidate_demands(inst, frac)
    nbhd = build_neighborhoods(inst, cons, facilities=sorted(keep))

    union: set[str] = set()
    for j in cons.centers:
        union |= nbhd.G[j]
    variables = tuple(sorted(union))
    rows = []
    for j in cons.centers:
        rows.append(Row({i: ONE for i in sorted(nbhd.Fp[j])}, GE, HALF,
                        tag=f"halfmass:{j}"))
        sense = EQ if nbhd.gamma[j] is None else LE
        rows.append(Row({i: ONE for i in sorted(nbhd.G[j])}, sense, ONE,
                        tag=f"cap:{j}"))
    rows.append(Row({i: weight[i] for i in variables}, LE, budget,
                    tag="knapsack"))
    system = LinearSystem(variables=variables, rows=rows)

    y0 = {i: ZERO for i in variables}
    for j in cons.centers:
        for i in nbhd.G[j]:
            y0[i] = frac.x.get((i, j), ZERO)
    objective = {i: 2 * inst.open_cost[i] for i in variables}
    const = ZERO
    for j in cons.centers:
        dj = cons.demand[j]
        for i in sorted(nbhd.G[j]):
            objective[i] += dj * 2 * dist(inst, i, j)
        if nbhd.gamma[j] is not None:
            g = dj * 8 * nbhd.gamma[j]
            const += g
            for i in sorted(nbhd.G[j]):
                objective[i] -= g
    vertex = crash_to_extreme(system, y0, objective)
    yhat = vertex.values
    k_start = dot(objective, y0) + const
    k_half = dot(objective, yhat) + const
    require(k_half <= k_start <= 8 * cons.opt_modified,
            "surrogate chain within 8x the consolidated bound")

    special = tuple(sorted(
        j for j in cons.centers
        if any(yhat.get(i, ZERO).denominator not in (1, 2) for i in nbhd.G[j])))
    require(len(special) <= 1, "at most one special center")
    s = special[0] if special else None
    if s is not None:
        mass_s = sum((yhat.get(i, ZERO) for i in nbhd.G[s]), ZERO)
        if HALF < mass_s < ONE:
            require(sum(1 for i in nbhd.Fp[s] if yhat.get(i, ZERO) > 0) == 1,
                    "fractional center keeps exactly one near facility open")

    i1: dict[str, str] = {}
    i2: dict[str, str] = {}
    sigma: dict[str, str] = {}
    chat: dict[str, Fraction] = {}
    S: dict[str, tuple[str, ...]] = {}
    for j in cons.centers:
        mass_g = sum((yhat.get(i, ZERO) for i in nbhd.G[j]), ZERO)
        if mass_g == ONE:
            sigma[j] = j
        else:
            require(nbhd.gamma[j] is not None, "underfilled center has a gamma")
            others = [(cdist(inst, j, k), k) for k in cons.centers if k != j]
            require(bool(others), "underfilled center needs another center")
            sigma[j] = min(others)[1]
            require(min(others)[0] <= 2 * nbhd.gamma[j],
                    "c(j, sigma(j)) <= 2 gamma_j")
        pool = [i for i in sorted(nbhd.Fp[j]) if yhat.get(i, ZERO) > 0]
        require(bool(pool), "some near facility is fractionally open")
        if j == s:
            i1[j] = min(pool, key=lambda i: (weight[i], i))
        else:
            i1[j] = min(pool, key=lambda i: (dist(inst, i, j), i))
    for j in cons.centers:
        mass_g = sum((yhat.get(i, ZERO) for i in nbhd.G[j]), ZERO)
        if yhat[i1[j]] == ONE:
            i2[j] = i1[j]
        elif mass_g < ONE:
            i2[j] = i1[sigma[j]]
        else:
            pool = [i for i in sorted(nbhd.G[j])
                    if i != i1[j] and yhat.get(i, ZERO) > 0]
            require(bool(pool), "secondary facility exists in G_j")
            if j == s:
                i2[j] = min(pool, key=lambda i: (weight[i], i))
            else:
                i2[j] = min(pool, key=lambda i: (dist(inst, i, j), i))
        cs = {i1[j], i2[j]}
        chat[j] = sum((dist(inst, i, j) for i in cs), ZERO) / len(cs)
        if len(cs) == 1:
            chat[j] = dist(inst, i1[j], j)
        S[j] = tuple(sorted(cs))

    half = HalfSolution(yhat=yhat, xhat={}, i1=i1, i2=i2, sigma=sigma,
                        chat=chat, S=S, t_start=k_start, t_half=k_half)

    def mass_of(j):
        return sum((yhat.get(i, ZERO) for i in nbhd.G[j]), ZERO)

    key = lambda j: (cluster_key_improved(inst, half, j),
                     0 if mass_of(j) == ONE else 1, j)
    Dp, ctr = cluster_centers(half, "improved", inst, key=key, centers=cons.centers)

    open_set = tuple(sorted(min(S[j], key=lambda i: (weight[i], i)) for j in Dp))
    require(sum((weight[i] for i in open_set), ZERO) <= budget,
            "opened weight within the budget")
    fac_cost = sum((inst.open_cost[i] for i in open_set), ZERO)
    assignment: dict[str, str] = {}
    conn_mod = ZERO
    for j in cons.centers:
        best = min((dist(inst, i, j), i) for i in open_set)
        assignment[j] = best[1]
        conn_mod += cons.demand[j] * best[0]
    conn_real = ZERO
    for k in inst.clients:
        best = min((dist(inst, i, k), i) for i in open_set)
        assignment[k] = best[1]
        conn_real += inst.demand[k] * best[0]
    return _Run(lp_objective=frac.objective, k_start=k_start, k_half=k_half,
                special=special, centers=cons.centers, demand=cons.demand,
                origin=cons.origin, fac_cost=fac_cost, conn_modified=conn_mod,
                conn_real=conn_real, open_set=open_set, assignment=assignment,
                lp_pivots=frac.stats.pivots)


def _certify(inst: MedianInstance, run: _Run, guess: KnapsackGuess,
             ) -> RoundedSolution:
    lp = run.lp_objective
    require(run.fac_cost + run.conn_modified
            <= run.k_half + guess.max_opening + 4 * guess.connection + 16 * lp,
            "rounded cost within the surrogate plus guess terms bound")
    for j in run.centers:
        require(run.demand[j] * guess.radii[j] <= guess.connection + 4 * lp,
                "consolidated demand times radius within the guess bound")
    merged_bound = 4 * lp
    require(run.conn_real - run.conn_modified <= merged_bound,
            "lifting overhead within 4 OPT")
    total = run.fac_cost + run.conn_real
    sol = RoundedSolution(
        open_facilities=run.open_set,
        assignment={j: run.assignment[j] for j in inst.clients},
        facility_cost=run.fac_cost, connection_cost=run.conn_real,
        penalty_cost=ZERO, total_cost=total,
        certificates={"lp_objective": lp, "k_half": run.k_half,
                      "c_opt": guess.connection, "f_opt": guess.max_opening,
                      "special_centers": Fraction(len(run.special)),
                      "lp_pivots": Fraction(run.lp_pivots)})
    check_solution(inst, sol)
    return sol


def knapsack_median(inst: MedianInstance, eps: Fraction = Fraction(1, 10),
                    guesses: Optional[list[KnapsackGuess]] = None,
                    ) -> RoundedSolution:
    """Best rounding over the guess grid; cost <= (32+eps') * optimum."""
    if not isinstance(inst.variant, Knapsack):
        raise ValueError("knapsack_median expects the knapsack variant")
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if not inst.clients:
        return empty_solution(ZERO)
    if guesses is None:
        guesses = _guess_grid(inst, eps)
    best: Optional[RoundedSolution] = None
    memo: dict[tuple, _Run] = {}
    for guess in guesses:
        keep = frozenset(i for i in inst.facilities
                         if inst.open_cost[i] <= guess.max_opening
                         and inst.variant.weight[i] <= inst.variant.budget)
        if not keep:
            continue
        pattern = frozenset(
            (i, j) for i in keep for j in inst.clients
            if (c := inst.dist.get((i, j))) is not None and c <= guess.radii[j])
        key = (keep, pattern)
        try:
            run = memo.get(key)
            if run is None:
                run = _rounding_run(inst, keep, guess.radii)
                memo[key] = run
            sol = _certify(inst, run, guess)
        except BadGuess:
            continue
        if best is None or sol.total_cost < best.total_cost:
            best = sol
    if best is None:
        raise Infeasible("no guess admits a feasible knapsack rounding")
    return best


def _guess_grid(inst: MedianInstance, eps: Fraction) -> list[KnapsackGuess]:
    openings = sorted({inst.open_cost[i] for i in inst.facilities})
    finite = [c for (_, _), c in inst.dist.items()]
    positive = sorted({inst.demand[j] * c for (i, j), c in inst.dist.items()
                       if c > 0})
    connections = [ZERO]
    if positive:
        lo = positive[0]
        hi = sum(inst.demand.values()) * max(finite)
        g = lo
        while g <= hi:
            connections.append(g)
            g *= (1 + eps)
        connections.append(g)
    out = []
    for c in connections:
        radii = compute_radii(inst, c)
        for f in openings:
            out.append(KnapsackGuess(connection=c, max_opening=f, radii=radii))
    return out
