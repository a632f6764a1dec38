"""Reduced component-by-component constructions.

``cbc_reduced_naive`` re-evaluates the full figure of merit for every
candidate.  ``cbc_reduced_fast`` (f = x^m only) keeps the running product
eta_d(n) = prod_i (1 + gamma_i + gamma_i psi(n x^{w_i} g_i / x^m)), folds it
down to length p^{m - w_d} and obtains all candidate scores from a single
multiplication with the matrix Omega.  Omega is applied either by walking
its rows (``omega="direct"``) or as a correlation over the unit group of
F_p[x]/(x^l), diagonalised by a multidimensional FFT
(``omega="structured"``).

Both constructions break ties towards the smallest polynomial index and
produce bit-identical R values for the chosen components.
"""

from __future__ import annotations

import functools
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError, ParameterError, UnsupportedCaseError
from .fieldpoly import Modulus, Poly, mul_all
from .pointset import column_numerators
from .quality import _R_from_columns, _eta_factor, psi_table
from .weights import GeneratingVector, WeightSystem, search_set

__all__ = [
    "ConstructionTrace",
    "search_set",
    "cbc_reduced_naive",
    "cbc_reduced_fast",
    "omega_multiply",
    "fold",
]

TIE_RTOL = 1e-13
DEFAULT_MAX_SIZE = 2**22


@dataclass
class ConstructionTrace:
    """Per-dimension record of a construction run."""

    algorithm: str
    chosen: list = field(default_factory=list)
    r_values: list = field(default_factory=list)
    search_sizes: list = field(default_factory=list)
    candidate_evals: list = field(default_factory=list)
    psi_applications: list = field(default_factory=list)
    omega: str | None = None

    @property
    def total_psi_applications(self) -> int:
        return int(sum(self.psi_applications))


def _argmin(values) -> int:
    """First index whose value is within TIE_RTOL of the minimum."""
    values = np.asarray(values, dtype=float)
    best = values.min()
    tol = TIE_RTOL * max(1.0, abs(best))
    return int(np.flatnonzero(values <= best + tol)[0])


def _check_setup(p, m, modulus, weights, s):
    if modulus.p != p or modulus.m != m:
        raise ParameterError("p and m disagree with the modulus")
    if weights.m != m:
        raise ParameterError("weight system was built for a different m")
    if s < 1:
        raise ParameterError("s must be >= 1")
    if s > len(weights):
        raise ParameterError(f"s={s} but only {len(weights)} weights given")
    if weights.ws[0] > 0:
        warnings.warn("w_1 > 0: the R bounds are stated for w_1 = 0 and are reported outside their hypothesis",
                      stacklevel=3)


def _shift(p, w, g):
    return Poly.monomial(p, w) * g


def cbc_reduced_naive(p: int, m: int, modulus: Modulus, weights: WeightSystem, s: int,
                      max_size: int = DEFAULT_MAX_SIZE):
    """Greedy construction scoring each candidate by a full evaluation of R.

    Scores use the Walsh form for f = x^m and the character form (with the
    inner frequency sum evaluated through psi) for irreducible f.
    """
    _check_setup(p, m, modulus, weights, s)
    if p**m * s > max_size:
        raise CapacityError(f"p^m * s = {p**m * s} exceeds {max_size}")
    f = modulus.f
    N = p**m
    psi = psi_table(p, m)
    trace = ConstructionTrace("naive")
    chosen, cols = [], []
    for d in range(1, s + 1):
        w, gammas = weights.ws[d - 1], weights.gammas[:d]
        cands = search_set(p, m, w, modulus)
        scores = np.empty(len(cands))
        for c, g in enumerate(cands):
            scores[c] = _R_from_columns(cols + [column_numerators(_shift(p, w, g), f)], gammas, psi, N)
        k = 0 if d == 1 else _argmin(scores)  # g_1 = 1 by construction
        chosen.append(cands[k])
        cols.append(column_numerators(_shift(p, w, cands[k]), f))
        trace.chosen.append(cands[k])
        trace.r_values.append(float(scores[k]))
        trace.search_sizes.append(len(cands))
        trace.candidate_evals.append(len(cands))
        trace.psi_applications.append(len(cands) * d * N)
    return GeneratingVector(modulus, weights, tuple(chosen)), trace


# ---------------------------------------------------------------------------
# Omega machinery


def fold(eta: np.ndarray, p: int, w: int) -> np.ndarray:
    """Sum the p^w blocks of eta; entry n' collects all n = n' mod p^{m-w}."""
    l = round(math.log(len(eta), p)) - w
    return eta.reshape(p**w, p**l).sum(axis=0)


@functools.lru_cache(maxsize=64)
def _unit_candidates(p, l):
    return tuple(search_set(p, l, 0, Modulus.monomial(p, l)))


@functools.lru_cache(maxsize=64)
def _product_rows(p, l):
    xl = Poly.monomial(p, l)
    return np.stack([mul_all(g, xl) for g in _unit_candidates(p, l)])


def _omega_direct(l, w, folded, p):
    psi = psi_table(p, l + w)
    rows = _product_rows(p, l)  # rows[c, n'] = index of n' g_c mod x^l
    out = psi[rows * p**w] @ folded
    return out, rows.size


@functools.lru_cache(maxsize=64)
def unit_group(p: int, L: int):
    """Decomposition of the unit group of F_p[x]/(x^L) into cyclic factors.

    Returns ``(shape, elements, position)``: ``elements`` lists unit
    indices in C order over the exponent grid of the generators (a
    primitive root of F_p, then 1 - x^j for p not dividing j < L, of order
    p^e with e minimal such that j p^e >= L); ``position`` inverts it.
    """
    xL = Poly.monomial(p, L)
    gens = []
    if p > 2:
        root = next(c for c in range(2, p) if all(pow(c, (p - 1) // q, p) != 1 for q in _prime_factors(p - 1)))
        gens.append((Poly(p, (root,)), p - 1))
    for j in range(1, L):
        if j % p:
            e = 0
            while j * p**e < L:
                e += 1
            gens.append((Poly(p, (1,) + (0,) * (j - 1) + (p - 1,)), p**e))
    elements = np.array([1], dtype=np.int64)
    shape = []
    for g, order in gens:
        pw, acc = [], Poly.one(p)
        for _ in range(order):
            pw.append(mul_all(acc, xL))
            acc = (acc * g) % xL
        elements = np.stack([row[elements] for row in pw], axis=1).ravel()
        shape.append(order)
    position = np.full(p**L, -1, dtype=np.int64)
    position[elements] = np.arange(len(elements))
    if len(elements) != (p - 1) * p ** (L - 1) or (position[elements] != np.arange(len(elements))).any():
        raise AssertionError("unit group generators are not independent")
    return tuple(shape) or (1,), elements, position


def _prime_factors(n):
    out, k = [], 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def _fft_cost(n):
    return n * max(1, math.ceil(math.log2(n))) if n > 1 else 1


@functools.lru_cache(maxsize=256)
def _kernel_transform(p, m, w, l, k):
    # psi(x^{w+k} z / x^m) over units z mod x^{l-k}, in group coordinates
    shape, elements, _ = unit_group(p, l - k)
    a = psi_table(p, m)[elements * p ** (w + k)]
    return np.fft.fftn(a.reshape(shape)), _fft_cost(a.size) + a.size


def _omega_structured(l, w, folded, p):
    m = l + w
    psi = psi_table(p, m)
    cands = np.array([g.index for g in _unit_candidates(p, l)], dtype=np.int64)
    out = np.full(len(cands), psi[0] * folded[0])  # n' = 0
    work = len(cands)
    for k in range(l):
        L = l - k
        shape, elements, position = unit_group(p, L)
        before = _kernel_transform.cache_info().hits
        A_hat, a_cost = _kernel_transform(p, m, w, l, k)
        if _kernel_transform.cache_info().hits == before:
            work += a_cost
        b = folded[elements * p**k].reshape(shape)
        corr = np.fft.ifftn(A_hat * np.conj(np.fft.fftn(b))).real.ravel()
        out += corr[position[cands % p**L]]
        n = elements.size
        work += 2 * _fft_cost(n) + 3 * n + len(cands)
    return out, work


def omega_multiply(l: int, w: int, folded, p: int, method: str = "direct", return_work: bool = False):
    """Apply Omega^{(l)} to a folded vector of length p^l.

    Entry c of the result is sum_{n'} psi(x^w (n' g_c mod x^l) / x^m) folded[n']
    with m = l + w and g_c running over the units of degree < l in index order.
    """
    folded = np.asarray(folded, dtype=float)
    if l < 1:
        raise ParameterError("Omega needs l >= 1")
    if folded.shape != (p**l,):
        raise ParameterError(f"folded vector must have length {p**l}")
    if method == "direct":
        out, work = _omega_direct(l, w, folded, p)
    elif method == "structured":
        out, work = _omega_structured(l, w, folded, p)
    else:
        raise ParameterError(f"unknown Omega method {method!r}")
    return (out, work) if return_work else out


def cbc_reduced_fast(p: int, m: int, modulus: Modulus, weights: WeightSystem, s: int, omega: str = "direct"):
    """Reduced fast CBC for f = x^m.

    The psi-application counter records the operations of the algorithm
    proper (psi table, folds, Omega products, eta updates for d <= t); the
    R values written to the trace are extra bookkeeping.
    """
    if not modulus.is_monomial:
        raise UnsupportedCaseError("the fast construction is only available for f = x^m")
    _check_setup(p, m, modulus, weights, s)
    N = p**m
    f = modulus.f
    psi = psi_table(p, m)
    trace = ConstructionTrace("fast", omega=omega)
    chosen = []
    eta = np.ones(N)
    prod = 1.0
    setup = N  # psi table
    for d in range(1, s + 1):
        w, gamma = weights.ws[d - 1], weights.gammas[d - 1]
        work = setup if d == 1 else 0
        if w >= m:
            g = Poly.one(p)
            size = 1
        else:
            l = m - w
            folded = fold(eta, p, w)
            T, omega_work = omega_multiply(l, w, folded, p, method=omega, return_work=True)
            cands = _unit_candidates(p, l)
            size = len(cands)
            scores = -(prod * (1.0 + gamma)) + ((1.0 + gamma) * eta.sum() + gamma * T) / N
            g = cands[0 if d == 1 else _argmin(scores)]
            work += N + omega_work + N
        col = column_numerators(_shift(p, w, g), f)
        eta = eta * _eta_factor(gamma, psi[col])
        prod *= 1.0 + gamma
        chosen.append(g)
        trace.chosen.append(g)
        trace.r_values.append(float(-prod + eta.sum() / N))
        trace.search_sizes.append(size)
        trace.candidate_evals.append(size)
        trace.psi_applications.append(work)
    return GeneratingVector(modulus, weights, tuple(chosen)), trace


def operation_count(p: int, m: int, weights: WeightSystem, s: int) -> int:
    """p^m + min(s, t) p^m + sum_{d <= min(s, t)} (m - w_d) p^{m - w_d}."""
    top = min(s, weights.t)
    return p**m + top * p**m + sum((m - w) * p ** (m - w) for w in weights.ws[:top])
