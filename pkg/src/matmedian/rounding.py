"""LP-rounding pipeline for plain matroid median.

Step I consolidates demand at well-separated centers.  Step II places a
truncated opening vector in a polytope with half-integral extreme points
and crashes it to a vertex minimizing a linear surrogate T of the true
cost.  Step III clusters centers whose two serving facilities overlap.
Step IV crashes a restriction of the half-integral vector inside an
integral polytope (matroid polytope meets the base polytope of the
cluster partition matroid) under a second surrogate H, then reads off an
integer solution.

Three modes share the machinery: ``basic`` (factor 10, with the looser
surrogates), ``improved`` (factor 8, surrogates coupled through the
nearest-center map sigma), and ``lmp`` (improved surrogates with the
facility term scaled by 8, giving 8*facility + connection <= 8*LP).

Every run asserts its certificate chain exactly; a violated inequality
raises CertificateError rather than returning a bad solution.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from matmedian.instances import MedianInstance, Plain
from matmedian.lp import FractionalSolution, solve_relaxation
from matmedian.matroids import Matroid
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

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)

MODES = ("basic", "improved", "lmp")


class CertificateError(AssertionError):
    """An exact per-run inequality from the analysis failed."""


def require(cond: bool, label: str) -> None:
    if not cond:
        raise CertificateError(label)


def dist(inst: MedianInstance, i: str, j: str) -> Fraction:
    c = inst.dist.get((i, j))
    if c is None:
        raise CertificateError(f"needed distance ({i},{j}) is absent; "
                               "instance fails metric validation")
    return c


def cdist(inst: MedianInstance, j: str, k: str) -> Fraction:
    c = inst.client_dist(j, k)
    if c is None:
        raise CertificateError(f"clients {j} and {k} share no facility")
    return c


# ---------------------------------------------------------------- Step I

@dataclass
class ConsolidatedInstance:
    centers: tuple[str, ...]
    demand: dict[str, Fraction]               # d'_j
    origin: dict[str, tuple[str, ...]]        # M_j, includes the center
    center_of: dict[str, str]
    radius: dict[str, Fraction]               # per-center C-bar (or LP_j)
    opt_modified: Fraction                    # OPT'


def consolidate_demands(inst: MedianInstance, frac: FractionalSolution,
                        radius: Optional[dict[str, Fraction]] = None,
                        ) -> ConsolidatedInstance:
    """Greedy pass in increasing radius order; merge j into the earliest
    center k with c_jk <= 4*max(radius_j, radius_k), else j becomes a
    center.  Earliest-center choice keeps this pass aligned with the
    sweep used by the penalty variant."""
    rad = frac.cbar if radius is None else radius
    order = sorted(inst.clients, key=lambda j: (rad[j], j))
    demand: dict[str, Fraction] = {}
    origin: dict[str, list[str]] = {}
    center_of: dict[str, str] = {}
    created: list[str] = []
    for j in order:
        target = None
        for k in created:
            if demand[k] > 0:
                c = inst.client_dist(j, k)
                if c is not None and c <= 4 * max(rad[j], rad[k]):
                    target = k
                    break
        if target is not None:
            demand[target] += inst.demand[j]
            origin[target].append(j)
            center_of[j] = target
        else:
            demand[j] = inst.demand[j]
            origin[j] = [j]
            center_of[j] = j
            created.append(j)
    centers = tuple(sorted(demand))
    for a in centers:
        for b in centers:
            if a < b:
                c = inst.client_dist(a, b)
                require(c is None or c >= 4 * max(rad[a], rad[b]),
                        "consolidated centers stay 4-radius separated")
    opt_mod = sum((inst.open_cost[i] * frac.y.get(i, ZERO)
                   for i in inst.facilities), ZERO)
    opt_mod += sum((demand[j] * rad[j] for j in centers), ZERO)
    return ConsolidatedInstance(
        centers=centers, demand=demand,
        origin={j: tuple(sorted(v)) for j, v in origin.items()},
        center_of=center_of, radius={j: rad[j] for j in centers},
        opt_modified=opt_mod)


# --------------------------------------------------------------- Step II

@dataclass
class Neighborhoods:
    F: dict[str, frozenset[str]]
    Fp: dict[str, frozenset[str]]             # F'_j
    gamma: dict[str, Optional[Fraction]]      # None = unbounded
    G: dict[str, frozenset[str]]


def build_neighborhoods(inst: MedianInstance, cons: ConsolidatedInstance,
                        facilities: Optional[Sequence[str]] = None,
                        distf: Optional[Callable] = None) -> Neighborhoods:
    facs = inst.facilities if facilities is None else tuple(facilities)
    dget = (lambda i, j: inst.dist.get((i, j))) if distf is None else distf
    F: dict[str, set[str]] = {j: set() for j in cons.centers}
    for i in facs:
        best = None
        for j in cons.centers:
            c = dget(i, j)
            if c is not None and (best is None or (c, j) < best):
                best = (c, j)
        if best is not None:
            F[best[1]].add(i)
    Fp, gamma, G = {}, {}, {}
    for j in cons.centers:
        Fp[j] = frozenset(i for i in F[j] if dget(i, j) <= 2 * cons.radius[j])
        outside = [dget(i, j) for i in facs
                   if i not in F[j] and dget(i, j) is not None]
        gamma[j] = min(outside) if outside else None
        if gamma[j] is None:
            G[j] = frozenset(F[j])
        else:
            G[j] = frozenset(i for i in F[j] if dget(i, j) <= gamma[j])
        require(gamma[j] is None or gamma[j] >= 2 * cons.radius[j],
                "gamma_j >= 2 * radius_j")
        require(Fp[j] <= G[j], "F'_j inside G_j")
    return Neighborhoods(F={j: frozenset(s) for j, s in F.items()},
                         Fp=Fp, gamma=gamma, G=G)


def check_half_mass(nbhd: Neighborhoods, frac: FractionalSolution,
                    centers: Sequence[str]) -> None:
    for j in centers:
        mass = sum((frac.x.get((i, j), ZERO) for i in nbhd.Fp[j]), ZERO)
        require(mass >= HALF, f"x(F'_{j}) >= 1/2")


def matroid_box_and_cap_rows(matroids: Sequence[tuple[Matroid, frozenset[str]]],
                             variables: Sequence[str]) -> list[Row]:
    """Per-element rank caps plus the structured cap family, restricted to
    `variables`; complete for uniform/partition/laminar kinds."""
    vset = frozenset(variables)
    rows = []
    for m, scope in matroids:
        for i in sorted(scope & vset):
            rows.append(Row({i: ONE}, LE, Fraction(m.rank(frozenset((i,)))),
                            tag=f"box:{i}"))
        caps = m.structured_caps()
        if caps is not None:
            for s, cap in caps:
                inside = sorted(s & vset)
                if inside:
                    rows.append(Row({i: ONE for i in inside}, LE, Fraction(cap),
                                    tag="rank:structured"))
    return rows


def matroid_separators(matroids: Sequence[tuple[Matroid, frozenset[str]]],
                       variables: Sequence[str]) -> list:
    """Lazy rank-cut separators for the kinds without a structured family."""
    vset = frozenset(variables)
    seps = []
    for m, scope in matroids:
        if m.structured_caps() is not None:
            continue
        sub = m.restrict(scope & vset)

        def sep(point, sub=sub):
            bad = sub.separate({i: point.get(i, ZERO) for i in sub.ground})
            if bad is None:
                return None
            return Row({i: ONE for i in sorted(bad)}, LE,
                       Fraction(sub.rank(bad)), tag=f"rank:{','.join(sorted(bad))}")

        seps.append(sep)
    return seps


@dataclass
class HalfSolution:
    yhat: dict[str, Fraction]
    xhat: dict[tuple[str, str], Fraction]
    i1: dict[str, str]
    i2: dict[str, str]
    sigma: dict[str, str]
    chat: dict[str, Fraction]                 # C-hat_j
    S: dict[str, tuple[str, ...]]
    t_start: Fraction                         # T(y')
    t_half: Fraction                          # T(yhat)
    t_coeffs: dict[str, Fraction] = field(repr=False, default_factory=dict)
    t_const: Fraction = ZERO


def _surrogate_t(inst, cons, nbhd, mode):
    """Linear coefficients, constant, and facility scale of T for the mode."""
    fac_scale = Fraction(8) if mode == "lmp" else ONE
    conn_scale = ONE if mode == "basic" else Fraction(2)
    gamma_scale = Fraction(3) if mode == "basic" else Fraction(4)
    coeffs: dict[str, Fraction] = {}
    const = ZERO
    for j in cons.centers:
        dj = cons.demand[j]
        for i in sorted(nbhd.G[j]):
            coeffs[i] = coeffs.get(i, ZERO) + dj * conn_scale * dist(inst, i, j)
        if nbhd.gamma[j] is not None:
            g = dj * gamma_scale * nbhd.gamma[j]
            const += g
            for i in sorted(nbhd.G[j]):
                coeffs[i] = coeffs.get(i, ZERO) - g
    return coeffs, const, fac_scale


def build_half_polytope(cons: ConsolidatedInstance, nbhd: Neighborhoods,
                        matroids: Sequence[tuple[Matroid, frozenset[str]]],
                        ) -> tuple[LinearSystem, list]:
    union: set[str] = set()
    for j in cons.centers:
        union |= nbhd.G[j]
    variables = tuple(sorted(union))
    rows = matroid_box_and_cap_rows(matroids, variables)
    for j in cons.centers:
        rows.append(Row({i: ONE for i in sorted(nbhd.Fp[j])}, GE, HALF,
                        tag=f"halfmass:{j}"))
        sense = EQ if nbhd.gamma[j] is None else LE
        rows.append(Row({i: ONE for i in sorted(nbhd.G[j])}, sense, ONE,
                        tag=f"cap:{j}"))
    system = LinearSystem(variables=variables, rows=rows)
    return system, matroid_separators(matroids, variables)


def half_integralize(inst: MedianInstance, cons: ConsolidatedInstance,
                     nbhd: Neighborhoods, frac: FractionalSolution,
                     mode: str = "improved") -> HalfSolution:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    system, seps = build_half_polytope(cons, nbhd,
                                       [(inst.matroid, frozenset(inst.facilities))])
    y0 = {i: ZERO for i in system.variables}
    for j in cons.centers:
        for i in nbhd.G[j]:
            y0[i] = frac.x.get((i, j), ZERO)
    coeffs, const, fac_scale = _surrogate_t(inst, cons, nbhd, mode)
    objective = dict(coeffs)
    for i in system.variables:
        objective[i] = objective.get(i, ZERO) + fac_scale * inst.open_cost[i]
    vertex = crash_to_extreme(system, y0, objective, separators=seps)
    yhat = vertex.values
    require(certify_denominators(yhat, {1, 2}), "half-integral crash output")
    t_start = dot(objective, y0) + const
    t_half = dot(objective, yhat) + const
    require(t_half <= t_start, "T does not increase under the crash")
    return assemble_half(inst, cons, nbhd, yhat, mode, t_start, t_half,
                         objective, const)


def assemble_half(inst, cons, nbhd, yhat, mode, t_start, t_half,
                  t_coeffs, t_const) -> HalfSolution:
    """Primary/secondary facilities, sigma map and half assignment."""
    i1: dict[str, str] = {}
    i2: dict[str, str] = {}
    sigma: dict[str, str] = {}
    xhat: dict[tuple[str, str], Fraction] = {}
    chat: dict[str, Fraction] = {}
    S: dict[str, tuple[str, ...]] = {}
    positive = sorted(i for i, v in yhat.items() if v > 0)
    for j in cons.centers:
        mass_g = sum((yhat.get(i, ZERO) for i in nbhd.G[j]), ZERO)
        require(mass_g in (HALF, ONE), f"yhat(G_{j}) in {{1/2, 1}}")
        if mass_g == ONE:
            sigma[j] = j
        else:
            others = [(cdist(inst, j, k), k) for k in cons.centers if k != j]
            require(bool(others), "underfilled center needs another center")
            sigma[j] = min(others)[1]
            require(min(others)[0] <= 2 * nbhd.gamma[j],
                    "c(j, sigma(j)) <= 2 gamma_j")
        cands = [(dist(inst, i, j), i) for i in sorted(nbhd.Fp[j])
                 if yhat.get(i, ZERO) > 0]
        require(bool(cands), f"some facility of F'_{j} is fractionally open")
        i1[j] = min(cands)[1]
    require(len(set(i1.values())) == len(i1), "distinct primary facilities")
    for j in cons.centers:
        if yhat[i1[j]] == ONE:
            i2[j] = i1[j]
            xhat[(i1[j], j)] = ONE
            chat[j] = dist(inst, i1[j], j)
            S[j] = (i1[j],)
            continue
        mass_g = sum((yhat.get(i, ZERO) for i in nbhd.G[j]), ZERO)
        if mode == "basic":
            pool = [(dist(inst, i, j), i) for i in positive if i != i1[j]]
            require(bool(pool), "secondary facility exists (basic)")
            i2[j] = min(pool)[1]
        elif mass_g == ONE:
            pool = [(dist(inst, i, j), i) for i in sorted(nbhd.G[j])
                    if i != i1[j] and yhat.get(i, ZERO) > 0]
            require(bool(pool), "secondary facility exists in G_j")
            i2[j] = min(pool)[1]
        else:
            i2[j] = i1[sigma[j]]
        xhat[(i1[j], j)] = HALF
        xhat[(i2[j], j)] = HALF
        chat[j] = (dist(inst, i1[j], j) + dist(inst, i2[j], j)) / 2
        S[j] = tuple(sorted((i1[j], i2[j])))
        require(dist(inst, i1[j], j) <= chat[j] <= dist(inst, i2[j], j)
                <= 2 * chat[j], "primary/secondary distance sandwich")
    return HalfSolution(yhat=yhat, xhat=xhat, i1=i1, i2=i2, sigma=sigma,
                        chat=chat, S=S, t_start=t_start, t_half=t_half,
                        t_coeffs=t_coeffs, t_const=t_const)


# -------------------------------------------------------------- Step III

def cluster_key_improved(inst: MedianInstance, half: HalfSolution, j: str) -> Fraction:
    """C'_j = (c(i1(j),j) + c(j,sigma(j)) + c(i2(j),sigma(j))) / 2."""
    s = half.sigma[j]
    return (dist(inst, half.i1[j], j) + cdist(inst, j, s)
            + dist(inst, half.i2[j], s)) / 2


def cluster_centers(half: HalfSolution, mode: str = "improved",
                    inst: Optional[MedianInstance] = None,
                    key: Optional[Callable[[str], tuple]] = None,
                    centers: Optional[Sequence[str]] = None,
                    ) -> tuple[tuple[str, ...], dict[str, str]]:
    """Greedy clustering: repeatedly keep the center with the smallest key
    and absorb every remaining center whose S-set intersects its own."""
    pool = sorted(half.S if centers is None else centers)
    if key is None:
        if mode == "basic":
            key = lambda j: (half.chat[j], j)
        else:
            key = lambda j: (cluster_key_improved(inst, half, j), j)
    picked: list[str] = []
    ctr: dict[str, str] = {}
    remaining = set(pool)
    while remaining:
        j = min(remaining, key=key)
        picked.append(j)
        sj = set(half.S[j])
        for k in sorted(remaining):
            if set(half.S[k]) & sj:
                ctr[k] = j
                remaining.discard(k)
    return tuple(sorted(picked)), ctr


# --------------------------------------------------------------- Step IV

@dataclass
class IntegralStep:
    ytilde: dict[str, Fraction]
    open_set: tuple[str, ...]
    assignment: dict[str, str]                # center -> facility
    h_restricted: Fraction                    # H(yhat')
    h_final: Fraction                         # H(ytilde)
    facility_cost: Fraction
    connection_cost: Fraction                 # on the consolidated instance


def surrogate_h(inst, cons, half, ctr, mode,
                clients: Optional[Sequence[str]] = None):
    """Coefficients of H: per-client A_k (basic) or L_k terms."""
    fac_scale = Fraction(8) if mode == "lmp" else ONE
    coeffs: dict[str, Fraction] = {}

    def add(i, v):
        coeffs[i] = coeffs.get(i, ZERO) + v

    for k in (cons.centers if clients is None else clients):
        j = ctr[k]
        dk = cons.demand[k]
        sj = half.S[j]
        if half.i1[k] in sj or mode == "basic":
            for i in sj:
                add(i, dk * dist(inst, i, k))
            if half.i1[k] not in sj:
                add(half.i1[k], dk * (dist(inst, half.i1[k], k)
                                      - dist(inst, half.i2[k], k)))
        else:
            s = half.sigma[k]
            ck_s = cdist(inst, k, s)
            for i in sj:
                add(i, dk * (ck_s + dist(inst, i, s)))
            add(half.i1[k], dk * (dist(inst, half.i1[k], k) - ck_s
                                  - dist(inst, half.i1[s], s)))
    return coeffs, fac_scale


def build_integral_polytope(matroids: Sequence[tuple[Matroid, frozenset[str]]],
                            variables: tuple[str, ...],
                            cluster_sets: Sequence[Sequence[str]],
                            extra_rows: Optional[list[Row]] = None,
                            ) -> tuple[LinearSystem, list]:
    vset = frozenset(variables)
    rows = matroid_box_and_cap_rows(matroids, variables)
    for sj in cluster_sets:
        rows.append(Row({i: ONE for i in sj}, EQ, ONE,
                        tag=f"cluster:{','.join(sorted(sj))}"))
    if extra_rows:
        for row in extra_rows:
            rows.append(Row({v: c for v, c in row.coeffs.items() if v in vset},
                            row.sense, row.rhs, tag=row.tag))
    system = LinearSystem(variables=variables, rows=rows)
    return system, matroid_separators(matroids, variables)


def integralize(inst: MedianInstance, cons: ConsolidatedInstance,
                half: HalfSolution, Dp: tuple[str, ...], ctr: dict[str, str],
                mode: str = "improved",
                matroids: Optional[Sequence[tuple[Matroid, frozenset[str]]]] = None,
                extra_rows: Optional[list[Row]] = None,
                open_costs: Optional[dict[str, Fraction]] = None,
                ) -> IntegralStep:
    if matroids is None:
        matroids = [(inst.matroid, frozenset(inst.facilities))]
    costs = inst.open_cost if open_costs is None else open_costs
    yres = dict(half.yhat)
    for j in Dp:
        for i in half.S[j]:
            yres[i] = half.xhat[(i, j)]
    variables = tuple(sorted(i for i, v in yres.items() if v > 0))
    system, seps = build_integral_polytope(matroids, variables,
                                           [half.S[j] for j in Dp], extra_rows)

    coeffs, fac_scale = surrogate_h(inst, cons, half, ctr, mode)
    objective = dict(coeffs)
    for i in variables:
        objective[i] = objective.get(i, ZERO) + fac_scale * costs[i]
    start = {i: yres[i] for i in variables}
    vertex = crash_to_extreme(system, start, objective, separators=seps)
    ytilde = vertex.values
    require(certify_denominators(ytilde, {1}), "integral crash output")
    h_restricted = dot(objective, start)
    h_final = dot(objective, ytilde)
    require(h_final <= h_restricted, "H does not increase under the crash")

    open_set = tuple(sorted(i for i, v in ytilde.items() if v == ONE))
    opened = set(open_set)
    assignment: dict[str, str] = {}
    for j in Dp:
        hits = [i for i in half.S[j] if i in opened]
        require(len(hits) == 1, f"exactly one facility open in S_{j}")
        assignment[j] = hits[0]
    for k in cons.centers:
        if k in assignment:
            continue
        if half.i1[k] in opened:
            assignment[k] = half.i1[k]
        else:
            assignment[k] = assignment[ctr[k]]
    facility_cost = sum((costs[i] for i in open_set), ZERO)
    connection = sum((cons.demand[k] * dist(inst, assignment[k], k)
                      for k in cons.centers), ZERO)
    require(fac_scale * facility_cost + connection <= h_final,
            "rounded cost bounded by H(ytilde)")
    return IntegralStep(ytilde=ytilde, open_set=open_set, assignment=assignment,
                        h_restricted=h_restricted, h_final=h_final,
                        facility_cost=facility_cost, connection_cost=connection)


# ------------------------------------------------------------- full pipeline

@dataclass
class RoundedSolution:
    open_facilities: tuple[str, ...]
    assignment: dict[str, Optional[str]]      # client -> facility (None: penalty)
    facility_cost: Fraction
    connection_cost: Fraction
    penalty_cost: Fraction
    total_cost: Fraction
    certificates: dict[str, Fraction] = field(default_factory=dict)


def empty_solution(lp_objective: Fraction) -> RoundedSolution:
    return RoundedSolution(open_facilities=(), assignment={},
                           facility_cost=ZERO, connection_cost=ZERO,
                           penalty_cost=ZERO, total_cost=ZERO,
                           certificates={"lp_objective": lp_objective})


def check_solution(inst: MedianInstance, sol: RoundedSolution) -> None:
    require(inst.matroid.is_independent(frozenset(sol.open_facilities)),
            "open set independent in the matroid")
    opened = set(sol.open_facilities)
    for j, i in sol.assignment.items():
        if i is not None:
            require(i in opened, f"client {j} assigned to an open facility")


def round_matroid_median(inst: MedianInstance, mode: str = "improved",
                         ) -> RoundedSolution:
    """Full plain-variant pipeline; cost <= (10 basic / 8 improved) * LP."""
    if not isinstance(inst.variant, Plain):
        raise ValueError("round_matroid_median handles the plain variant only")
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    frac = solve_relaxation(inst)
    if not inst.clients:
        return empty_solution(frac.objective)
    cons = consolidate_demands(inst, frac)
    require(cons.opt_modified <= frac.objective,
            "consolidated bound within the LP objective")
    nbhd = build_neighborhoods(inst, cons)
    check_half_mass(nbhd, frac, cons.centers)
    half = half_integralize(inst, cons, nbhd, frac, mode)

    opt_mod = cons.opt_modified
    fac_lp = sum((inst.open_cost[i] * frac.y[i] for i in inst.facilities), ZERO)
    cost_half = ZERO
    if mode == "basic":
        require(half.t_start <= 3 * opt_mod,
                "starting surrogate within 3x the consolidated bound")
        cost_half = sum((inst.open_cost[i] * v for i, v in half.yhat.items()), ZERO)
        cost_half += sum((cons.demand[j] * half.chat[j] for j in cons.centers), ZERO)
        require(cost_half <= half.t_half, "half solution cost <= T(yhat)")
    elif mode == "improved":
        require(half.t_start <= 4 * opt_mod,
                "starting surrogate within 4x the consolidated bound")
    else:
        bound = 8 * fac_lp + 4 * sum((cons.demand[j] * cons.radius[j]
                                      for j in cons.centers), ZERO)
        require(half.t_start <= bound, "LMP bound on T(y')")

    Dp, ctr = cluster_centers(half, mode, inst)
    if mode != "basic":
        keyf = lambda j: (cluster_key_improved(inst, half, j), j)
        for k in cons.centers:
            require(keyf(ctr[k]) <= keyf(k), "cluster center has a smaller key")
    integ = integralize(inst, cons, half, Dp, ctr, mode)
    if mode == "basic":
        require(integ.h_restricted <= 2 * cost_half, "H(yhat') <= 2 * half cost")
    else:
        require(integ.h_restricted <= half.t_half, "H(yhat') <= T(yhat)")

    assignment: dict[str, Optional[str]] = {}
    connection = ZERO
    for j in inst.clients:
        i = integ.assignment[cons.center_of[j]]
        assignment[j] = i
        connection += inst.demand[j] * dist(inst, i, j)
    lift_extra = connection - integ.connection_cost
    merged_bound = sum((4 * inst.demand[j] * frac.cbar[j] for j in inst.clients
                        if cons.center_of[j] != j), ZERO)
    require(lift_extra <= merged_bound, "lifting cost within 4 d_j C-bar_j")
    require(merged_bound <= 4 * frac.objective, "lifting overhead within 4 OPT")

    total = integ.facility_cost + connection
    certificates = {
        "lp_objective": frac.objective,
        "opt_consolidated": opt_mod,
        "t_start": half.t_start,
        "t_half": half.t_half,
        "h_restricted": integ.h_restricted,
        "h_final": integ.h_final,
        "cost_modified": integ.facility_cost + integ.connection_cost,
        "lift_extra": lift_extra,
        "lp_pivots": Fraction(frac.stats.pivots),
        "lp_rounds": Fraction(frac.stats.lp_rounds),
        "lp_rank_cuts": Fraction(len(frac.stats.rank_cuts)),
    }
    if mode == "basic":
        certificates["cost_half"] = cost_half
        require(total <= 10 * frac.objective, "10-approximation certificate")
    elif mode == "improved":
        require(total <= 8 * frac.objective, "8-approximation certificate")
    else:
        require(8 * integ.facility_cost + connection <= 8 * frac.objective,
                "Lagrangian-multiplier-preserving certificate")
    sol = RoundedSolution(open_facilities=integ.open_set, assignment=assignment,
                          facility_cost=integ.facility_cost,
                          connection_cost=connection, penalty_cost=ZERO,
                          total_cost=total, certificates=certificates)
    check_solution(inst, sol)
    return sol
