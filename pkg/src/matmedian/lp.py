"""Exact rational LP solving for the relaxations.

`simplex_solve` is a two-phase primal simplex with Bland's rule over
``fractions.Fraction`` (no tolerances, no cycling).  `solve_relaxation`
wraps it in a cutting-plane loop that supplies two lazily-separated row
families: violated matroid rank constraints, and per-client assignment
cost cuts.

The assignment side is solved in a reduced variable space: instead of one
x_ij column per admissible pair, each client j gets a single cost
variable theta_j with lazily added rows

    theta_j >= t - sum_i max(0, t - c_ij) * y_i        (t a distance value)

which lower-bound the cheapest way to buy one unit of assignment from the
open mass y (for penalty variants the threshold t is capped at pi_j, with
the penalty absorbing the remainder).  At optimality theta_j equals that
cost exactly and an optimal assignment x is recovered by a greedy fill of
the nearest facilities, so the reported solution is an optimal solution
of the full relaxation with sum_i x_ij (+ z_j) = 1 per client.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from matmedian.instances import (
    Intersection,
    Knapsack,
    LaminarBounds,
    MedianInstance,
    Penalty,
    TwoMatroid,
)
from matmedian.polytope import EQ, GE, LE, LinearSystem, Row, VertexPoint

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)

MAX_CUT_ROUNDS = 10000


class LPError(Exception):
    pass


class Infeasible(LPError):
    pass


class Unbounded(LPError):
    pass


@dataclass
class SimplexResult:
    point: VertexPoint
    objective: Fraction
    pivots: int


def simplex_solve(system: LinearSystem, objective: dict[str, Fraction],
                  sense: str = "min") -> SimplexResult:
    """Optimal basic solution of the system (variables implicitly >= 0)."""
    if sense not in ("min", "max"):
        raise ValueError(f"bad sense {sense!r}")
    variables = list(system.variables)
    nv = len(variables)
    vidx = {v: k for k, v in enumerate(variables)}

    rows = []
    for row in system.rows:
        a = [ZERO] * nv
        for v, c in row.coeffs.items():
            a[vidx[v]] = c
        b = row.rhs
        s = row.sense
        if b < 0:
            a = [-x for x in a]
            b = -b
            s = {LE: GE, GE: LE, EQ: EQ}[s]
        rows.append((a, s, b))

    m = len(rows)
    slack_cols = sum(1 for _, s, _ in rows if s != EQ)
    width = nv + slack_cols
    art_cols: list[int] = []
    tab: list[list[Fraction]] = []
    basis: list[int] = []
    slack_at = 0
    for a, s, b in rows:
        line = a + [ZERO] * slack_cols + [b]
        if s == LE:
            line[nv + slack_at] = ONE
            basis.append(nv + slack_at)
            slack_at += 1
            tab.append(line)
        elif s == GE:
            line[nv + slack_at] = -ONE
            slack_at += 1
            basis.append(-1)  # placeholder, artificial added below
            tab.append(line)
        else:
            basis.append(-1)
            tab.append(line)
    for r in range(m):
        if basis[r] == -1:
            col = width + len(art_cols)
            art_cols.append(col)
            basis[r] = col
    total = width + len(art_cols)
    for r in range(m):
        line = tab[r]
        rhs = line.pop()
        line.extend([ZERO] * (total - width))
        if basis[r] >= width:
            line[basis[r]] = ONE
        line.append(rhs)
        tab[r] = line

    pivots = 0

    def eliminate(row: list[Fraction], pr: list[Fraction], nz: list[int], c: int):
        f = row[c]
        if f != 0:
            for j in nz:
                row[j] -= f * pr[j]

    def pivot(r: int, c: int):
        nonlocal pivots
        pivots += 1
        pr = tab[r]
        piv = pr[c]
        if piv != ONE:
            for j in range(len(pr)):
                if pr[j] != 0:
                    pr[j] /= piv
        nz = [j for j, x in enumerate(pr) if x != 0]
        for k in range(m):
            if k != r:
                eliminate(tab[k], pr, nz, c)
        basis[r] = c
        return pr, nz

    def run(cost: list[Fraction], allowed: int) -> Fraction:
        # maximizes cost . x; the z row carries reduced costs z_j - c_j and
        # the current objective value in its last entry
        z = [-x for x in cost] + [ZERO]
        for r, bc in enumerate(basis):
            if z[bc] != 0:
                pr = tab[r]
                eliminate(z, pr, [j for j, x in enumerate(pr) if x != 0], bc)
        while True:
            enter = next((c for c in range(allowed) if z[c] < 0), None)
            if enter is None:
                return z[-1]
            best: Optional[tuple[Fraction, int, int]] = None
            for r in range(m):
                a = tab[r][enter]
                if a > 0:
                    ratio = tab[r][-1] / a
                    key = (ratio, basis[r], r)
                    if best is None or key < best:
                        best = key
            if best is None:
                raise Unbounded("LP is unbounded")
            pr, nz = pivot(best[2], enter)
            eliminate(z, pr, nz, enter)

    if art_cols:
        phase1 = [ZERO] * total
        for c in art_cols:
            phase1[c] = -ONE  # maximize -(sum of artificials)
        value = run(phase1, total)
        if value != 0:
            raise Infeasible("no feasible point")
        for r in range(m):
            if basis[r] >= width:
                c = next((c for c in range(width) if tab[r][c] != 0), None)
                if c is not None:
                    pivot(r, c)
        # any row still basic in an artificial is all-zero on real columns
        # (redundant); phase 2 never pivots there, so the artificial stays 0

    obj = [ZERO] * total
    for v, c in objective.items():
        if v in vidx:
            obj[vidx[v]] = -c if sense == "min" else c
    value = run(obj, width)
    objective_value = -value if sense == "min" else value

    sol = {v: ZERO for v in variables}
    for r, bc in enumerate(basis):
        if bc < nv:
            sol[variables[bc]] = tab[r][-1]
    point = VertexPoint(values=sol, tight=tuple(system.tight_rows(sol)))
    return SimplexResult(point=point, objective=objective_value, pivots=pivots)


# --------------------------------------------------------------- relaxations

@dataclass
class SolveStats:
    pivots: int = 0
    lp_rounds: int = 0
    rank_cuts: list[Row] = field(default_factory=list)
    cost_cuts: int = 0


@dataclass
class FractionalSolution:
    x: dict[tuple[str, str], Fraction]
    y: dict[str, Fraction]
    z: dict[str, Fraction]
    objective: Fraction
    cbar: dict[str, Fraction]          # per-unit assignment cost sum c x / X
    xsum: dict[str, Fraction]          # X_j
    lp_client: dict[str, Fraction]     # LP_j = sum c x + pi z (penalty), else cbar
    stats: SolveStats = field(default_factory=SolveStats)


def _theta_row(j: str, t: Fraction, costs: list[tuple[str, Fraction]],
               penalty: bool) -> Row:
    # theta_j >= t * (1 - z_j) - sum_i max(0, t - c_ij) y_i
    coeffs = {f"theta:{j}": ONE}
    for i, c in costs:
        if c < t:
            coeffs[f"y:{i}"] = t - c
    if penalty:
        coeffs[f"z:{j}"] = t
    return Row(coeffs=coeffs, sense=GE, rhs=t, tag=f"theta:{j}:{t}")


def _fill(costs: list[tuple[str, Fraction]], y: dict[str, Fraction],
          need: Fraction) -> tuple[dict[str, Fraction], Fraction, Fraction]:
    """Greedy fill of `need` units from nearest facilities.

    Returns (x, cost, marginal threshold); the coverage rows guarantee the
    admissible open mass suffices."""
    x: dict[str, Fraction] = {}
    got = ZERO
    cost = ZERO
    threshold = ZERO
    for i, c in costs:
        if got >= need:
            break
        take = min(y.get(i, ZERO), need - got)
        if take > 0:
            x[i] = take
            got += take
            cost += take * c
            threshold = c
    if got < need:
        raise LPError("coverage row violated by the returned point")
    return x, cost, threshold


def _client_costs(inst: MedianInstance, j: str, radii, keep) -> list[tuple[str, Fraction]]:
    out = []
    cap = None if radii is None else radii[j]
    pi = inst.variant.penalty[j] if isinstance(inst.variant, Penalty) else None
    for i in inst.facilities:
        if keep is not None and i not in keep:
            continue
        c = inst.dist.get((i, j))
        if c is None:
            continue
        if cap is not None and c > cap:
            continue
        if pi is not None and c > pi:
            continue
        out.append((c, i))
    out.sort()
    return [(i, c) for c, i in out]


def solve_relaxation(inst: MedianInstance, radii: Optional[dict[str, Fraction]] = None,
                     keep: Optional[frozenset[str]] = None,
                     extra_rows: Optional[list[Row]] = None) -> FractionalSolution:
    """Optimal solution of the variant's LP relaxation.

    `radii` (knapsack U_j caps) and `keep` (surviving facilities) are the
    pre-applied variable deletions of the knapsack LP.  `extra_rows` seeds
    the cutting-plane loop with previously accumulated rank rows.
    """
    if isinstance(inst.variant, Intersection):
        raise LPError("matroid-intersection median is not solvable here")
    facilities = [i for i in inst.facilities if keep is None or i in keep]
    fset = frozenset(facilities)
    penalty = isinstance(inst.variant, Penalty)

    # z columns go last so Bland's rule walks the same pivots as the plain
    # relaxation whenever the penalties never bind
    variables = [f"y:{i}" for i in facilities] + [f"theta:{j}" for j in inst.clients]
    if penalty:
        variables += [f"z:{j}" for j in inst.clients]
    rows: list[Row] = []

    matroids = [(inst.matroid.restrict(fset) if keep is not None else inst.matroid,
                 facilities)]
    if isinstance(inst.variant, TwoMatroid):
        matroids.append((inst.variant.matroid2, sorted(inst.variant.f2 & fset)))
    for m, scope in matroids:
        for i in scope:
            rows.append(Row({f"y:{i}": ONE}, LE, Fraction(m.rank(frozenset((i,)))),
                            tag=f"box:{i}"))
        caps = m.structured_caps()
        if caps is not None:
            for s, cap in caps:
                live = sorted(s & fset)
                if live:
                    rows.append(Row({f"y:{i}": ONE for i in live}, LE, Fraction(cap),
                                    tag="rank:structured"))

    costs = {j: _client_costs(inst, j, radii, fset) for j in inst.clients}
    for j in inst.clients:
        if not penalty and not costs[j]:
            raise Infeasible(f"client {j!r} has no admissible facility")
        coeffs = {f"y:{i}": ONE for i, _ in costs[j]}
        if penalty:
            coeffs[f"z:{j}"] = ONE
        rows.append(Row(coeffs, GE, ONE, tag=f"coverage:{j}"))

    if isinstance(inst.variant, (TwoMatroid, LaminarBounds)):
        v = inst.variant
        b = v.bounds
        groups = [(sorted(v.f1 & fset), b.lb1, b.ub1, "bound:f1"),
                  (sorted(v.f2 & fset), b.lb2, b.ub2, "bound:f2"),
                  (facilities, b.lb, b.ub, "bound:all")]
        if isinstance(v, LaminarBounds):
            for s, lo, hi in v.family:
                groups.append((sorted(s & fset), lo, hi, "bound:laminar"))
        for scope, lo, hi, tag in groups:
            coeffs = {f"y:{i}": ONE for i in scope}
            if lo > 0:
                rows.append(Row(dict(coeffs), GE, Fraction(lo), tag=tag))
            if hi < 10**9:
                rows.append(Row(dict(coeffs), LE, Fraction(hi), tag=tag))
    if isinstance(inst.variant, Knapsack):
        rows.append(Row({f"y:{i}": inst.variant.weight[i] for i in facilities},
                        LE, inst.variant.budget, tag="knapsack"))
    if extra_rows:
        rows.extend(extra_rows)

    objective = {f"y:{i}": inst.open_cost[i] for i in facilities}
    for j in inst.clients:
        objective[f"theta:{j}"] = inst.demand[j]
        if penalty:
            objective[f"z:{j}"] = inst.demand[j] * inst.variant.penalty[j]

    system = LinearSystem(variables=tuple(variables), rows=rows)
    stats = SolveStats()
    for _ in range(MAX_CUT_ROUNDS):
        res = simplex_solve(system, objective, "min")
        stats.pivots += res.pivots
        stats.lp_rounds += 1
        yv = {i: res.point.values[f"y:{i}"] for i in facilities}
        zv = {j: (res.point.values[f"z:{j}"] if penalty else ZERO)
              for j in inst.clients}
        added = False
        for m, scope in matroids:
            sub = {i: yv[i] for i in scope}
            bad = m.separate(sub)
            if bad is not None:
                row = Row({f"y:{i}": ONE for i in sorted(bad)}, LE,
                          Fraction(m.rank(bad)), tag=f"rank:{','.join(sorted(bad))}")
                system.add_row(row)
                stats.rank_cuts.append(row)
                added = True
        for j in inst.clients:
            need = ONE - zv[j]
            if need <= 0:
                continue
            _, cost, threshold = _fill(costs[j], yv, need)
            if res.point.values[f"theta:{j}"] < cost:
                system.add_row(_theta_row(j, threshold, costs[j], penalty))
                stats.cost_cuts += 1
                added = True
        if not added:
            break
    else:
        raise LPError("cutting-plane loop failed to converge")

    x: dict[tuple[str, str], Fraction] = {}
    cbar: dict[str, Fraction] = {}
    xsum: dict[str, Fraction] = {}
    lpc: dict[str, Fraction] = {}
    check = sum((inst.open_cost[i] * yv[i] for i in facilities), ZERO)
    for j in inst.clients:
        xj, cost, _ = _fill(costs[j], yv, ONE - zv[j])
        for i, val in xj.items():
            x[(i, j)] = val
        xs = sum(xj.values(), ZERO)
        xsum[j] = xs
        conn = sum((inst.dist[(i, j)] * val for i, val in xj.items()), ZERO)
        cbar[j] = conn / xs if xs > 0 else ZERO
        if penalty:
            cost += zv[j] * inst.variant.penalty[j]
        lpc[j] = cost
        check += inst.demand[j] * cost
    if check != res.objective:
        raise LPError("assignment recovery does not match the LP objective")
    return FractionalSolution(x=x, y=yv, z=zv, objective=res.objective,
                              cbar=cbar, xsum=xsum, lp_client=lpc, stats=stats)
