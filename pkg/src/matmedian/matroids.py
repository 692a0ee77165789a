"""Matroids over facility ids: rank, independence, restriction, separation.

Five kinds are supported: uniform, partition, laminar, graphic and
explicit (given by its maximal independent sets; tiny ground sets only).
Uniform, partition and laminar matroids expose a complete polyhedral
description of their independent-set polytope (per-element caps plus a
laminar cap family), so violated rank constraints can be separated by
scanning finitely many rows.  Graphic and explicit matroids fall back to
a brute-force subset scan capped at BRUTE_FORCE_CAP ground elements.

All arithmetic is exact: rank values are ints and separation works on
``fractions.Fraction`` vectors with no tolerances.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional

BRUTE_FORCE_CAP = 16


class MatroidError(ValueError):
    """Structurally invalid matroid description or query."""


class SeparationCapError(MatroidError):
    """Ground set too large for brute-force rank separation."""


def _as_idset(items: Iterable[str]) -> frozenset[str]:
    return items if isinstance(items, frozenset) else frozenset(items)


class Matroid:
    """Common query surface; concrete kinds implement ``rank``."""

    ground: frozenset[str]
    kind: str = "abstract"

    def rank(self, items: Iterable[str]) -> int:
        raise NotImplementedError

    def full_rank(self) -> int:
        return self.rank(self.ground)

    def is_independent(self, items: Iterable[str]) -> bool:
        s = self._check_ids(items)
        return self.rank(s) == len(s)

    def restrict(self, items: Iterable[str]) -> "Matroid":
        raise NotImplementedError

    def structured_caps(self) -> Optional[list[tuple[frozenset[str], int]]]:
        """Cap family (S, u) such that {0 <= y, y_i <= r({i}), y(S) <= u}
        is exactly the matroid polytope, or None when no such compact
        description is available (graphic, explicit)."""
        return None

    def separate(
        self, y: Mapping[str, Fraction], cap: int = BRUTE_FORCE_CAP
    ) -> Optional[frozenset[str]]:
        """Some S with y(S) > r(S), or None if y is in the matroid polytope.

        y must be nonnegative; ids missing from y count as zero.
        """
        for i in sorted(self.ground):
            yi = y.get(i, Fraction(0))
            if yi < 0:
                raise MatroidError(f"negative y for {i!r}")
            if yi > self.rank(frozenset((i,))):
                return frozenset((i,))
        caps = self.structured_caps()
        if caps is not None:
            for s, u in caps:
                if sum(y.get(i, Fraction(0)) for i in s) > u:
                    return s
            return None
        return self._separate_brute(y, cap)

    def _separate_brute(
        self, y: Mapping[str, Fraction], cap: int
    ) -> Optional[frozenset[str]]:
        if len(self.ground) > cap:
            raise SeparationCapError(
                f"{self.kind} matroid with {len(self.ground)} elements exceeds "
                f"the brute-force separation cap of {cap}"
            )
        support = sorted(i for i in self.ground if y.get(i, Fraction(0)) > 0)
        best: Optional[frozenset[str]] = None
        best_gap = Fraction(0)
        n = len(support)
        for mask in range(1, 1 << n):
            s = frozenset(support[k] for k in range(n) if mask >> k & 1)
            gap = sum(y[i] for i in s) - self.rank(s)
            if gap > best_gap:
                best, best_gap = s, gap
        return best

    def _check_ids(self, items: Iterable[str]) -> frozenset[str]:
        s = _as_idset(items)
        bad = s - self.ground
        if bad:
            raise MatroidError(f"unknown facility ids: {sorted(bad)}")
        return s


@dataclass(frozen=True)
class UniformMatroid(Matroid):
    ground: frozenset[str]
    limit: int
    kind: str = field(default="uniform", init=False)

    def __post_init__(self):
        object.__setattr__(self, "ground", _as_idset(self.ground))
        if self.limit < 0:
            raise MatroidError("uniform matroid limit must be nonnegative")

    def rank(self, items):
        return min(len(self._check_ids(items)), self.limit)

    def restrict(self, items):
        return UniformMatroid(self._check_ids(items), self.limit)

    def structured_caps(self):
        return [(self.ground, self.limit)]


@dataclass(frozen=True)
class PartitionMatroid(Matroid):
    """Classes must be pairwise disjoint and cover the ground set."""

    classes: tuple[tuple[frozenset[str], int], ...]
    ground: frozenset[str] = field(init=False)
    kind: str = field(default="partition", init=False)

    def __post_init__(self):
        norm = tuple(sorted(((_as_idset(c), cap) for c, cap in self.classes),
                            key=lambda t: sorted(t[0])))
        object.__setattr__(self, "classes", norm)
        seen: set[str] = set()
        for c, cap in norm:
            if cap < 0:
                raise MatroidError("partition capacity must be nonnegative")
            if seen & c:
                raise MatroidError(f"partition classes overlap on {sorted(seen & c)}")
            seen |= c
        object.__setattr__(self, "ground", frozenset(seen))

    def rank(self, items):
        s = self._check_ids(items)
        return sum(min(len(s & c), cap) for c, cap in self.classes)

    def restrict(self, items):
        s = self._check_ids(items)
        kept = tuple((c & s, cap) for c, cap in self.classes if c & s)
        return PartitionMatroid(kept if kept else ((frozenset(), 0),))

    def structured_caps(self):
        return [(c, cap) for c, cap in self.classes]


@dataclass(frozen=True)
class LaminarMatroid(Matroid):
    """Independent sets obey |I ∩ S| <= cap for every family set S."""

    ground: frozenset[str]
    family: tuple[tuple[frozenset[str], int], ...]

    kind: str = field(default="laminar", init=False)

    def __post_init__(self):
        object.__setattr__(self, "ground", _as_idset(self.ground))
        norm = tuple(sorted(((_as_idset(s), cap) for s, cap in self.family),
                            key=lambda t: (-len(t[0]), sorted(t[0]))))
        object.__setattr__(self, "family", norm)
        for s, cap in norm:
            if cap < 0:
                raise MatroidError("laminar cap must be nonnegative")
            if not s <= self.ground:
                raise MatroidError("laminar set not within ground set")
        for a, _ in norm:
            for b, _ in norm:
                if a & b and not (a <= b or b <= a):
                    raise MatroidError("family is not laminar")

    def _fits(self, counts: dict[frozenset[str], int], e: str) -> bool:
        for s, cap in self.family:
            if e in s and counts.get(s, 0) + 1 > cap:
                return False
        return True

    def rank(self, items):
        s = self._check_ids(items)
        counts: dict[frozenset[str], int] = {}
        r = 0
        for e in sorted(s):
            if self._fits(counts, e):
                r += 1
                for fs, _ in self.family:
                    if e in fs:
                        counts[fs] = counts.get(fs, 0) + 1
        return r

    def restrict(self, items):
        s = self._check_ids(items)
        fam = tuple((fs & s, cap) for fs, cap in self.family if fs & s)
        return LaminarMatroid(s, fam)

    def structured_caps(self):
        return [(s, cap) for s, cap in self.family]


@dataclass(frozen=True)
class GraphicMatroid(Matroid):
    """Edges of a multigraph; independent sets are the acyclic edge sets."""

    n_vertices: int
    edges: tuple[tuple[str, int, int], ...]  # (facility id, u, v)
    ground: frozenset[str] = field(init=False)
    kind: str = field(default="graphic", init=False)
    _by_id: dict = field(init=False, repr=False, compare=False)
    _rank_cache: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        norm = tuple(sorted(self.edges))
        object.__setattr__(self, "edges", norm)
        by_id = {}
        for e, u, v in norm:
            if e in by_id:
                raise MatroidError(f"duplicate edge id {e!r}")
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise MatroidError(f"edge {e!r} has endpoint outside vertex range")
            by_id[e] = (u, v)
        object.__setattr__(self, "_by_id", by_id)
        object.__setattr__(self, "ground", frozenset(by_id))
        object.__setattr__(self, "_rank_cache", {})

    def rank(self, items):
        s = self._check_ids(items)
        cached = self._rank_cache.get(s)
        if cached is not None:
            return cached
        parent: dict[int, int] = {}

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        r = 0
        for e in s:
            u, v = self._by_id[e]
            parent.setdefault(u, u)
            parent.setdefault(v, v)
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                r += 1
        self._rank_cache[s] = r
        return r

    def restrict(self, items):
        s = self._check_ids(items)
        return GraphicMatroid(self.n_vertices,
                              tuple(e for e in self.edges if e[0] in s))


@dataclass(frozen=True)
class ExplicitMatroid(Matroid):
    """Listed by maximal independent sets; intended for tiny ground sets."""

    ground: frozenset[str]
    bases: tuple[frozenset[str], ...]
    kind: str = field(default="explicit", init=False)

    def __post_init__(self):
        object.__setattr__(self, "ground", _as_idset(self.ground))
        norm = tuple(sorted({_as_idset(b) for b in self.bases}, key=sorted))
        object.__setattr__(self, "bases", norm)
        if not norm:
            raise MatroidError("explicit matroid needs at least one maximal set")
        sizes = {len(b) for b in norm}
        if len(sizes) != 1:
            raise MatroidError("maximal independent sets must share one size")
        for b in norm:
            if not b <= self.ground:
                raise MatroidError("independent set not within ground set")

    def rank(self, items):
        s = self._check_ids(items)
        return max(len(s & b) for b in self.bases)

    def restrict(self, items):
        s = self._check_ids(items)
        traces = {b & s for b in self.bases}
        top = max(len(t) for t in traces)
        return ExplicitMatroid(s, tuple(t for t in traces if len(t) == top))

    def exchange_violations(self) -> list[str]:
        """Spot-check the exchange axiom on all listed independent sets."""
        independent: set[frozenset[str]] = set()
        for b in self.bases:
            items = sorted(b)
            for mask in range(1 << len(items)):
                independent.add(frozenset(items[k] for k in range(len(items))
                                          if mask >> k & 1))
        out = []
        for a in independent:
            for b in independent:
                if len(a) >= len(b):
                    continue
                if not any(a | {e} in independent for e in b - a):
                    out.append(f"no exchange from {sorted(a)} into {sorted(b)}")
        return out


def matroid_polytope_member_brute(m: Matroid, y: Mapping[str, Fraction]) -> bool:
    """Direct subset scan of y(S) <= r(S); test oracle for separate()."""
    items = sorted(m.ground)
    n = len(items)
    if n > 20:
        raise SeparationCapError("ground set too large for membership scan")
    for mask in range(1, 1 << n):
        s = frozenset(items[k] for k in range(n) if mask >> k & 1)
        if sum(y.get(i, Fraction(0)) for i in s) > m.rank(s):
            return False
    return True
