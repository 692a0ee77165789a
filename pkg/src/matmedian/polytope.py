"""Explicit rational linear systems over facility variables.

Provides the vertex-crash procedure (move a feasible point along null
directions of its tight rows to an extreme point without increasing a
linear objective), denominator certification, and exhaustive vertex
enumeration for small systems.  Variables are implicitly nonnegative.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Sequence

LE = "<="
GE = ">="
EQ = "=="

ZERO = Fraction(0)


class PolytopeError(ValueError):
    pass


@dataclass
class Row:
    """One linear constraint sum(coeffs) <sense> rhs, with a provenance tag."""

    coeffs: dict[str, Fraction]
    sense: str
    rhs: Fraction
    tag: str = ""

    def __post_init__(self):
        if self.sense not in (LE, GE, EQ):
            raise PolytopeError(f"bad sense {self.sense!r}")
        self.coeffs = {v: Fraction(c) for v, c in self.coeffs.items() if c != 0}
        self.rhs = Fraction(self.rhs)

    def value(self, point: Mapping[str, Fraction]) -> Fraction:
        return sum((c * point.get(v, ZERO) for v, c in self.coeffs.items()), ZERO)

    def holds(self, point: Mapping[str, Fraction]) -> bool:
        lhs = self.value(point)
        if self.sense == LE:
            return lhs <= self.rhs
        if self.sense == GE:
            return lhs >= self.rhs
        return lhs == self.rhs

    def tight(self, point: Mapping[str, Fraction]) -> bool:
        return self.value(point) == self.rhs

    def key(self) -> tuple:
        return (tuple(sorted(self.coeffs.items())), self.sense, self.rhs)


@dataclass
class LinearSystem:
    variables: tuple[str, ...]
    rows: list[Row] = field(default_factory=list)

    def __post_init__(self):
        self.variables = tuple(self.variables)
        known = set(self.variables)
        for row in self.rows:
            bad = set(row.coeffs) - known
            if bad:
                raise PolytopeError(f"row {row.tag!r} uses undeclared vars {sorted(bad)}")

    def add_row(self, row: Row) -> None:
        bad = set(row.coeffs) - set(self.variables)
        if bad:
            raise PolytopeError(f"row {row.tag!r} uses undeclared vars {sorted(bad)}")
        self.rows.append(row)

    def has_row(self, row: Row) -> bool:
        k = row.key()
        return any(r.key() == k for r in self.rows)

    def is_feasible(self, point: Mapping[str, Fraction]) -> bool:
        if any(point.get(v, ZERO) < 0 for v in self.variables):
            return False
        return all(row.holds(point) for row in self.rows)

    def tight_rows(self, point: Mapping[str, Fraction]) -> list[int]:
        return [k for k, row in enumerate(self.rows) if row.tight(point)]


@dataclass
class VertexPoint:
    """A feasible point plus the indices of its tight rows."""

    values: dict[str, Fraction]
    tight: tuple[int, ...]

    def support(self) -> list[str]:
        return sorted(v for v, x in self.values.items() if x != 0)

    def as_tuple(self, variables: Sequence[str]) -> tuple[Fraction, ...]:
        return tuple(self.values.get(v, ZERO) for v in variables)


Separator = Callable[[Mapping[str, Fraction]], Optional[Row]]


def dot(a: Mapping[str, Fraction], b: Mapping[str, Fraction]) -> Fraction:
    if len(a) > len(b):
        a, b = b, a
    return sum((c * b.get(v, ZERO) for v, c in a.items()), ZERO)


def _rref(matrix: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """In-place reduced row echelon form; returns (matrix, pivot columns)."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if matrix[i][c] != 0), None)
        if pr is None:
            continue
        matrix[r], matrix[pr] = matrix[pr], matrix[r]
        piv = matrix[r][c]
        matrix[r] = [x / piv for x in matrix[r]]
        for i in range(rows):
            if i != r and matrix[i][c] != 0:
                f = matrix[i][c]
                matrix[i] = [x - f * y for x, y in zip(matrix[i], matrix[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return matrix, pivots


def _null_direction(rows: list[list[Fraction]], ncols: int) -> Optional[list[Fraction]]:
    """Null-space vector with the lowest-index free column, or None."""
    if not rows:
        if ncols == 0:
            return None
        d = [ZERO] * ncols
        d[0] = Fraction(1)
        return d
    mat, pivots = _rref([row[:] for row in rows])
    free = next((c for c in range(ncols) if c not in pivots), None)
    if free is None:
        return None
    d = [ZERO] * ncols
    d[free] = Fraction(1)
    for r, pc in enumerate(pivots):
        d[pc] = -mat[r][free]
    return d


def certify_denominators(values, allowed: Iterable[int]) -> bool:
    """True iff every coordinate's denominator lies in `allowed` (exact)."""
    allow = set(allowed)
    if isinstance(values, VertexPoint):
        values = values.values
    if isinstance(values, Mapping):
        values = values.values()
    return all(Fraction(v).denominator in allow for v in values)


def is_extreme(system: LinearSystem, point: Mapping[str, Fraction]) -> bool:
    if not system.is_feasible(point):
        return False
    support = [v for v in system.variables if point.get(v, ZERO) != 0]
    tight = [system.rows[k] for k in system.tight_rows(point)]
    rows = [[row.coeffs.get(v, ZERO) for v in support] for row in tight]
    return _null_direction(rows, len(support)) is None


def crash_to_extreme(
    system: LinearSystem,
    point: Mapping[str, Fraction],
    objective: Mapping[str, Fraction],
    separators: Sequence[Separator] = (),
) -> VertexPoint:
    """Move `point` to an extreme point without increasing `objective`.

    Guarantees: the support of the output is a subset of the support of the
    input, every row tight at the input stays tight, and the objective never
    increases.  `separators` supply violated rows of lazily-instantiated
    constraint families (matroid rank cuts); each candidate move is checked
    against them before being accepted.
    """
    current = {v: Fraction(point.get(v, ZERO)) for v in system.variables}
    if not system.is_feasible(current):
        raise PolytopeError("crash_to_extreme requires a feasible starting point")
    for sep in separators:
        row = sep(current)
        if row is not None:
            raise PolytopeError(f"starting point violates lazy row {row.tag!r}")

    while True:
        support = [v for v in system.variables if current[v] != 0]
        tight = [system.rows[k] for k in system.tight_rows(current)]
        rows = [[row.coeffs.get(v, ZERO) for v in support] for row in tight]
        dvec = _null_direction(rows, len(support))
        if dvec is None:
            return VertexPoint(values=current, tight=tuple(system.tight_rows(current)))
        direction = dict(zip(support, dvec))
        if dot(objective, direction) > 0:
            direction = {v: -c for v, c in direction.items()}

        while True:
            step = _max_step(system, current, direction)
            if step is None:
                if dot(objective, direction) < 0:
                    raise PolytopeError("objective unbounded below on this system")
                direction = {v: -c for v, c in direction.items()}
                step = _max_step(system, current, direction)
                if step is None:
                    raise PolytopeError("system is unbounded in both directions")
            candidate = {v: current[v] + step * direction.get(v, ZERO)
                         for v in system.variables}
            violated = None
            for sep in separators:
                violated = sep(candidate)
                if violated is not None:
                    break
            if violated is None:
                current = candidate
                break
            if system.has_row(violated):
                raise PolytopeError(
                    f"separator re-reported existing row {violated.tag!r}")
            system.add_row(violated)


def _max_step(system, point, direction) -> Optional[Fraction]:
    """Largest eps >= 0 with point + eps*direction feasible, None if unbounded."""
    best: Optional[Fraction] = None
    for row in system.rows:
        adv = dot(row.coeffs, direction)
        if adv == 0:
            continue
        slack = row.rhs - row.value(point)
        if row.sense == LE and adv > 0:
            bound = slack / adv
        elif row.sense == GE and adv < 0:
            bound = slack / adv
        elif row.sense == EQ:
            # equality rows are tight; any move must keep them tight
            raise PolytopeError("direction leaves an equality row")
        else:
            continue
        if best is None or bound < best:
            best = bound
    for v, dv in direction.items():
        if dv < 0:
            bound = point[v] / (-dv)
            if best is None or bound < best:
                best = bound
    return best


def enumerate_vertices(system: LinearSystem, max_vars: int = 12) -> list[VertexPoint]:
    """All vertices of the system via tight-row basis enumeration."""
    n = len(system.variables)
    if n > max_vars:
        raise PolytopeError(f"{n} variables exceeds the enumeration cap {max_vars}")
    vidx = {v: k for k, v in enumerate(system.variables)}

    pool: list[tuple[list[Fraction], Fraction]] = []
    eq_rows: list[tuple[list[Fraction], Fraction]] = []
    for row in system.rows:
        vec = [ZERO] * n
        for v, c in row.coeffs.items():
            vec[vidx[v]] = c
        (eq_rows if row.sense == EQ else pool).append((vec, row.rhs))
    for k in range(n):
        vec = [ZERO] * n
        vec[k] = Fraction(1)
        pool.append((vec, ZERO))

    found: dict[tuple, VertexPoint] = {}

    def emit(mat: list[list[Fraction]]):
        red, pivots = _rref([row[:] for row in mat])
        sol = [ZERO] * n
        for r, pc in enumerate(pivots):
            sol[pc] = red[r][n]
        point = {v: sol[vidx[v]] for v in system.variables}
        if any(x < 0 for x in sol) or not system.is_feasible(point):
            return
        key = tuple(sol)
        if key not in found:
            found[key] = VertexPoint(values=point,
                                     tight=tuple(system.tight_rows(point)))

    def rank_of(mat: list[list[Fraction]]) -> tuple[int, bool]:
        _, pivots = _rref([row[:] for row in mat])
        if n in pivots:  # pivot in the rhs column: inconsistent
            return len(pivots) - 1, False
        return len(pivots), True

    base = [vec + [rhs] for vec, rhs in eq_rows]
    base_rank, ok = rank_of(base) if base else (0, True)
    if not ok:
        return []

    def recurse(start: int, chosen: list[list[Fraction]], rank: int):
        if rank == n:
            emit(chosen)
            return
        if start == len(pool) or rank + (len(pool) - start) < n:
            return
        vec, rhs = pool[start]
        trial = chosen + [vec + [rhs]]
        new_rank, consistent = rank_of(trial)
        if consistent and new_rank == rank + 1:
            recurse(start + 1, trial, new_rank)
        recurse(start + 1, chosen, rank)

    recurse(0, base, base_rank)
    return sorted(found.values(),
                  key=lambda vp: vp.as_tuple(system.variables))
