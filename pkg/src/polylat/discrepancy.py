"""Exact local, star and weighted star discrepancy of grid point sets.

All points lie on the grid k / G with G = p^m.  Between consecutive grid
values the local discrepancy is a polynomial in t with no count changes,
so its supremum is attained either at a grid vertex with the half-open
count (where the volume term is largest for that count), or as the
right-limit at a grid vertex, i.e. with the closed count.  Both are
evaluated on the full (G+1)^s grid in exact integer arithmetic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import CapacityError, ParameterError
from .pointset import PointSet

DEFAULT_MAX_WORK = 2**19


@dataclass(frozen=True)
class DiscrepancyResult:
    value: float
    witness_box: tuple  # anchored box corner t, as Fractions
    witness_limit: bool  # True if the value is approached as t -> witness from above
    projections: dict = field(default_factory=dict)


def local_discrepancy(ps: PointSet, t) -> float:
    """(1/N) #{x_n in [0, t)} - prod t_j."""
    t = [Fraction(x) for x in t]
    if len(t) != ps.s:
        raise ParameterError(f"t has {len(t)} coordinates, point set has {ps.s}")
    if any(not 0 < x <= 1 for x in t):
        raise ParameterError("t must lie in (0, 1]^s")
    G = ps.p**ps.m
    inside = np.ones(ps.N, dtype=bool)
    for j, tj in enumerate(t):
        # integer k: k / G < tj  <=>  k < ceil(tj G)
        inside &= ps.numerators[:, j] < math.ceil(tj * G)
    vol = Fraction(1)
    for x in t:
        vol *= x
    return float(Fraction(int(inside.sum()), ps.N) - vol)


def _check_work(s, G, max_work):
    if s * G**s > max_work:
        raise CapacityError(f"grid enumeration s*G^s = {s * G**s} exceeds {max_work}")


def star_discrepancy_exact(ps: PointSet, max_work: int = DEFAULT_MAX_WORK) -> DiscrepancyResult:
    """sup over t in (0,1]^s of |local discrepancy|, computed exactly."""
    s, N, G = ps.s, ps.N, ps.p**ps.m
    _check_work(s, G, max_work)
    hist = np.zeros((G,) * s, dtype=np.int64)
    np.add.at(hist, tuple(ps.numerators.T), 1)
    closed = hist
    for axis in range(s):
        closed = np.cumsum(closed, axis=axis)
    # closed[k] = #points with x <= k / G in every coordinate;
    # pad so that counts[k] = #points with x < k / G for k in 0..G
    counts = np.pad(closed, [(1, 0)] * s)
    grid = np.arange(G + 1, dtype=np.int64)
    vol = np.ones((1,) * s, dtype=np.int64)
    for axis in range(s):
        shape = [1] * s
        shape[axis] = G + 1
        vol = vol * grid.reshape(shape)
    scale = G**s
    # at t = k/G (half-open count): vol - count/N, scaled by N G^s
    below = vol * N - counts * scale
    # as t -> k/G from above, k < G (closed count): count/N - vol
    above = counts[(slice(1, None),) * s] * scale - vol[(slice(None, -1),) * s] * N
    below_pos = below[(slice(1, None),) * s]  # t must be > 0
    i_b = int(np.argmax(below_pos))
    i_a = int(np.argmax(above))
    best_b = int(below_pos.ravel()[i_b])
    best_a = int(above.ravel()[i_a])
    if best_b >= best_a:
        k = [x + 1 for x in np.unravel_index(i_b, below_pos.shape)]
        value, limit = best_b, False
    else:
        k = list(np.unravel_index(i_a, above.shape))
        value, limit = best_a, True
    witness = tuple(Fraction(int(x), G) for x in k)
    return DiscrepancyResult(float(Fraction(value, N * scale)), witness, limit)


def weighted_star_discrepancy_exact(ps: PointSet, gammas, max_work: int = DEFAULT_MAX_WORK) -> DiscrepancyResult:
    """max over nonempty u of gamma_u times the star discrepancy of the u-projection."""
    gammas = list(gammas)
    if len(gammas) < ps.s:
        raise ParameterError(f"need {ps.s} weights, got {len(gammas)}")
    G = ps.p**ps.m
    _check_work(ps.s, G, max_work)
    table = {}
    best = None
    for size in range(1, ps.s + 1):
        for u in itertools.combinations(range(ps.s), size):
            res = star_discrepancy_exact(ps.project(u), max_work=max_work)
            weight = float(np.prod([gammas[j] for j in u]))
            table[tuple(j + 1 for j in u)] = weight * res.value
            if best is None or weight * res.value > best[0]:
                box = [Fraction(1)] * ps.s
                for j, tj in zip(u, res.witness_box):
                    box[j] = tj
                best = (weight * res.value, tuple(box), res.witness_limit)
    return DiscrepancyResult(best[0], best[1], best[2], table)
