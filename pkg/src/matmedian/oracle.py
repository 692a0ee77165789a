"""Brute-force exact solvers; the ground truth for every ratio assertion.

Enumeration is over facility subsets only: given an open set, assigning
each client to its nearest open admissible facility (or paying its
penalty, when cheaper) is optimal for every variant handled here.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from matmedian.instances import (
    Intersection,
    MedianInstance,
    Penalty,
    open_set_feasible,
)
from matmedian.rounding import RoundedSolution

ZERO = Fraction(0)

DEFAULT_CAP = 16


class OracleError(ValueError):
    pass


class InfeasibleInstance(OracleError):
    """No open set satisfies the instance constraints."""


def _evaluate(inst: MedianInstance, opened: tuple[str, ...]):
    penalty = inst.variant if isinstance(inst.variant, Penalty) else None
    fac = sum((inst.open_cost[i] for i in opened), ZERO)
    conn = ZERO
    pen = ZERO
    assignment: dict[str, str | None] = {}
    for j in inst.clients:
        best = None
        for i in opened:
            c = inst.dist.get((i, j))
            if c is not None and (best is None or (c, i) < best):
                best = (c, i)
        if penalty is not None:
            pj = penalty.penalty[j]
            if best is None or pj < best[0]:
                assignment[j] = None
                pen += inst.demand[j] * pj
                continue
        if best is None:
            return None
        assignment[j] = best[1]
        conn += inst.demand[j] * best[0]
    return fac + conn + pen, fac, conn, pen, assignment


def exact_solve(inst: MedianInstance, cap: int = DEFAULT_CAP) -> RoundedSolution:
    """Optimal solution by scanning all feasible open sets (<= cap facilities)."""
    if isinstance(inst.variant, Intersection):
        raise OracleError("intersection fixtures only support the zero-cost decision")
    facs = inst.facilities
    n = len(facs)
    if n > cap:
        raise OracleError(f"{n} facilities exceeds the oracle cap {cap}")
    best = None
    best_open: tuple[str, ...] | None = None
    best_parts = None
    for mask in range(1 << n):
        opened = tuple(facs[k] for k in range(n) if mask >> k & 1)
        if not open_set_feasible(inst, opened):
            continue
        got = _evaluate(inst, opened)
        if got is None:
            continue
        total = got[0]
        key = tuple(sorted(opened))
        if best is None or total < best or (total == best and key < best_open):
            best = total
            best_open = key
            best_parts = got
    if best is None:
        raise InfeasibleInstance("no feasible open set")
    _, fac, conn, pen, assignment = best_parts
    return RoundedSolution(open_facilities=best_open, assignment=assignment,
                           facility_cost=fac, connection_cost=conn,
                           penalty_cost=pen, total_cost=best,
                           certificates={"method": Fraction(0)})


def exact_zero_cost_decision(inst: MedianInstance, cap: int = 12) -> bool:
    """True iff some arc subset independent in both matroids serves every
    client at cost zero (hardness fixtures from the digraph reduction).

    Any zero-cost solution contains one zero-distance facility per client,
    so scanning the per-client choices covers all candidate subsets.
    """
    if not isinstance(inst.variant, Intersection):
        raise OracleError("zero-cost decision expects an intersection fixture")
    if len(inst.facilities) > cap:
        raise OracleError(f"{len(inst.facilities)} facilities exceeds the cap {cap}")
    choices = []
    for j in inst.clients:
        mine = [i for i in inst.facilities if inst.dist.get((i, j)) == 0]
        if not mine:
            return False
        choices.append(mine)

    m1, m2 = inst.matroid, inst.variant.matroid2

    def rec(k: int, chosen: frozenset[str]) -> bool:
        if k == len(choices):
            return True
        for i in choices[k]:
            if i in chosen:
                continue
            grown = chosen | {i}
            if m1.is_independent(grown) and m2.is_independent(grown):
                if rec(k + 1, grown):
                    return True
        return False

    return rec(0, frozenset())


def hamiltonian_path_exists(n: int, arcs: set[tuple[int, int]],
                            s: int, t: int) -> bool:
    """Independent check for the hardness equivalence tests."""
    middle = [v for v in range(n) if v not in (s, t)]
    if s == t:
        return False
    for perm in permutations(middle):
        path = (s, *perm, t)
        if all((path[k], path[k + 1]) in arcs for k in range(len(path) - 1)):
            return True
    return False
