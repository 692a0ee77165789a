"""Exact-arithmetic solvers for the matroid median problem family.

The package rounds optimal LP relaxations to provably good integer
solutions for matroid median (plain, with penalties, with a second
matroid or a laminar bound family) and for knapsack median, and ships
reductions from several applied facility-location problems plus a
brute-force oracle that certifies the approximation ratios on small
instances.
"""

from matmedian.matroids import (
    ExplicitMatroid,
    GraphicMatroid,
    LaminarMatroid,
    Matroid,
    MatroidError,
    PartitionMatroid,
    SeparationCapError,
    UniformMatroid,
)
from matmedian.instances import (
    Bounds,
    GenParams,
    Intersection,
    Knapsack,
    LaminarBounds,
    MedianInstance,
    Penalty,
    Plain,
    TwoMatroid,
    generate_random,
    parse_instance,
    serialize_instance,
    validate,
)
from matmedian.lp import FractionalSolution, Infeasible, Unbounded, simplex_solve, solve_relaxation
from matmedian.polytope import (
    EQ,
    GE,
    LE,
    LinearSystem,
    Row,
    VertexPoint,
    certify_denominators,
    crash_to_extreme,
    enumerate_vertices,
)
from matmedian.rounding import RoundedSolution, round_matroid_median
from matmedian.extensions import round_laminar_constrained, round_two_matroid, round_with_penalties
from matmedian.knapsack import (
    KnapsackGuess,
    compute_radii,
    knapsack_median,
    make_guess,
    round_knapsack_once,
)
from matmedian.oracle import exact_solve, exact_zero_cost_decision

__all__ = [
    "Bounds",
    "EQ",
    "ExplicitMatroid",
    "FractionalSolution",
    "GE",
    "GenParams",
    "GraphicMatroid",
    "Infeasible",
    "Intersection",
    "Knapsack",
    "KnapsackGuess",
    "LE",
    "LaminarBounds",
    "LaminarMatroid",
    "LinearSystem",
    "Matroid",
    "MatroidError",
    "MedianInstance",
    "PartitionMatroid",
    "Penalty",
    "Plain",
    "RoundedSolution",
    "Row",
    "SeparationCapError",
    "TwoMatroid",
    "Unbounded",
    "UniformMatroid",
    "VertexPoint",
    "certify_denominators",
    "compute_radii",
    "crash_to_extreme",
    "enumerate_vertices",
    "exact_solve",
    "exact_zero_cost_decision",
    "generate_random",
    "knapsack_median",
    "make_guess",
    "parse_instance",
    "round_knapsack_once",
    "round_laminar_constrained",
    "round_matroid_median",
    "round_two_matroid",
    "round_with_penalties",
    "serialize_instance",
    "simplex_solve",
    "solve_relaxation",
    "validate",
]
