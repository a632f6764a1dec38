"""Closed-form bounds on R and on the weighted star discrepancy, plus tractability helpers."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import CapacityError, ParameterError

CASES = ("xm", "irreducible")


def _case_constants(case, p):
    # per-factor constant c * k in 1 + gamma + gamma * c * p^{min(w, m)} * m * k
    if case == "xm":
        return 2.0, (p * p - 1) / (3 * p)
    if case == "irreducible":
        return 1.0, (p + 1) / 3
    raise ParameterError(f"unknown modulus case {case!r}")


def _factors(gammas, ws, p, m, case):
    c, k = _case_constants(case, p)
    g = np.asarray(gammas, dtype=float)
    w = np.minimum(np.asarray(ws, dtype=np.int64), m)
    return 1.0 + g + g * c * float(p) ** w * m * k


def product_term(gammas, ws, p: int, m: int, case: str = "xm") -> float:
    """prod_i (1 + gamma_i + gamma_i c p^{min(w_i, m)} m k) for the given case."""
    out = 1.0
    for x in _factors(gammas, ws, p, m, case).tolist():
        out *= x
    return out


def theorem_bound(weights, p: int, m: int, d: int, case: str = "xm") -> float:
    """Upper bound on the attained R^d after d steps of the reduced CBC."""
    if not 1 <= d <= len(weights.gammas):
        raise ParameterError(f"d={d} outside [1, {len(weights.gammas)}]")
    return product_term(weights.gammas[:d], weights.ws[:d], p, m, case) / p**m


def joe_sum(gammas, N: int):
    """Return (exact, upper) for sum_{u != {}} gamma_u (1 - (1 - 1/N)^{|u|}).

    ``exact`` is the product-weight closed form; ``upper`` is
    max(1, Gamma) e^{sum gamma} / N with Gamma = sum gamma / (1 + gamma).
    """
    if N < 1:
        raise ParameterError("N must be >= 1")
    a = b = 1.0
    for g in gammas:
        a *= 1.0 + g
        b *= 1.0 + g * (1.0 - 1.0 / N)
    Gamma = sum(g / (1.0 + g) for g in gammas)
    upper = max(1.0, Gamma) * math.exp(sum(gammas)) / N
    return a - b, upper


@dataclass(frozen=True)
class BoundReport:
    joe_term: float
    product_term: float
    total: float
    case: str
    flags: tuple = field(default_factory=tuple)

    def as_dict(self):
        return {"joe_term": self.joe_term, "product_term": self.product_term, "total": self.total,
                "case": self.case, "flags": list(self.flags)}


def discrepancy_bound(p: int, m: int, s: int, weights, case: str = "xm") -> BoundReport:
    """Bound on the weighted star discrepancy of a CBC-constructed rule with N = p^m."""
    if not 1 <= s <= len(weights.gammas):
        raise ParameterError(f"s={s} outside [1, {len(weights.gammas)}]")
    N = p**m
    gammas, ws = weights.gammas[:s], weights.ws[:s]
    joe, _ = joe_sum(gammas, N)
    prod = product_term(gammas, ws, p, m, case) / N
    flags = ("w1_nonzero",) if ws[0] > 0 else ()
    return BoundReport(joe, prod, joe + prod, case, flags)


@dataclass(frozen=True)
class TractabilityReport:
    checkpoints: tuple  # (S, partial sum) pairs
    verdict: str
    decade_ratio: float
    tail_estimate: float
    note: str = "numerical evidence only, not a proof of convergence"


def tractability_check(gamma_rule, w_rule, p: int, S: int, tol: float = 1e-9,
                       ratio_threshold: float = 0.9) -> TractabilityReport:
    """Partial sums of sum_j gamma_j p^{w_j} up to S and a convergence verdict.

    The series looks convergent when its last-decade increment is below
    ``tol``, or when the increment over (S/10, S] shrank by at least
    ``ratio_threshold`` relative to the decade before.
    """
    if S < 1:
        raise ParameterError("horizon S must be >= 1")
    j = np.arange(1, S + 1)
    terms = np.array([gamma_rule(int(k)) * float(p) ** w_rule(int(k)) for k in j])
    partial = np.cumsum(terms)
    checkpoints = []
    k = 1
    while k <= S:
        checkpoints.append((k, float(partial[k - 1])))
        k *= 10
    if checkpoints[-1][0] != S:
        checkpoints.append((S, float(partial[-1])))
    last = float(partial[-1] - partial[S // 10 - 1]) if S >= 10 else float(partial[-1])
    prev = float(partial[S // 10 - 1] - partial[S // 100 - 1]) if S >= 100 else float("nan")
    ratio = last / prev if prev and prev > 0 else float("nan")
    if last < tol or (ratio == ratio and ratio < ratio_threshold):
        verdict = "convergent-looking"
        tail = last * ratio / (1.0 - ratio) if ratio == ratio and ratio < 1 else last
    else:
        verdict = "divergent-looking"
        tail = float("inf")
    return TractabilityReport(tuple(checkpoints), verdict, ratio, tail)


def _floor_scaled_log(c, j, p):
    # floor(c * log_p j), with exact integer correction when c is integral
    w = math.floor(c * math.log(j) / math.log(p) + 1e-12)
    if float(c).is_integer():
        c = int(c)
        while w > 0 and p**w > j**c:
            w -= 1
        while p ** (w + 1) <= j**c:
            w += 1
    return max(w, 0)


def suggest_ws(k: float, alpha: float, p: int, count: int):
    """Reduction indices w_j = floor((k - alpha) log_p j) for weights gamma_j = j^{-k}."""
    if not 1 < alpha < k:
        raise ParameterError(f"alpha={alpha} must satisfy 1 < alpha < k={k}")
    c = Fraction(k) - Fraction(alpha)
    c = float(c) if c.denominator != 1 else int(c)
    return [_floor_scaled_log(c, j, p) for j in range(1, count + 1)]


def n_star_bound(weights, p: int, s: int, epsilon: float, case: str = "xm", m_cap: int = 60):
    """Smallest m with discrepancy_bound <= epsilon; returns (m, p^m).

    This inverts the bound, so p^m is an upper estimate of N*(s, epsilon).
    Raises CapacityError if no m <= m_cap works.
    """
    if not 0 < epsilon < 1:
        raise ParameterError("epsilon must lie in (0, 1)")
    for m in range(1, m_cap + 1):
        if discrepancy_bound(p, m, s, weights, case).total <= epsilon:
            return m, p**m
    raise CapacityError(f"bound stays above {epsilon} up to m={m_cap}")
