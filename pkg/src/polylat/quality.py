"""The figure of merit R_gamma^d and the character-sum identities behind it.

R is available in three independently computed forms:

* ``R_direct`` enumerates the dual lattice {h : h . g = 0 mod f} literally;
* ``R_character`` sums additive characters over v in G_{p,m};
* ``R_walsh`` uses the Walsh kernel psi on the point set (f = x^m only).

They serve as oracles for each other.  ``R_character`` can also evaluate
its inner frequency sum with the psi kernel (``inner="psi"``) instead of by
enumeration; that variant is what the construction uses for irreducible
moduli, since it costs O(m p^m) per candidate.
"""

from __future__ import annotations

import functools
import math

import numpy as np

from .errors import CapacityError, ParameterError, UnsupportedCaseError
from .fieldpoly import Modulus, Poly, add_indices, digit_matrix, laurent_digits, mul_all, mul_table, poly_divmod, poly_from_index
from .pointset import column_numerators, roots_of_unity
from .weights import GeneratingVector, search_set

DEFAULT_MAX_DUAL_TERMS = 2**22
DEFAULT_MAX_CHAR_TABLE = 2**22
IMAG_TOL = 1e-9


def r_plain(h: Poly) -> float:
    """1 / (p^{a+1} sin^2(pi h_a / p)) for h of degree a with leading digit h_a."""
    if h.is_zero():
        raise ParameterError("r_p(h) is only defined for nonzero h")
    p = h.p
    return 1.0 / (p ** (h.degree + 1) * math.sin(math.pi * h.lead / p) ** 2)


def r_weight(h: Poly, gamma: float) -> float:
    if h.is_zero():
        return 1.0 + gamma
    return gamma * r_plain(h)


@functools.lru_cache(maxsize=None)
def r_table(p: int, m: int) -> np.ndarray:
    """r_p(h) for every index h < p^m; entry 0 is set to 0."""
    out = np.zeros(p**m)
    for a in range(m):
        lo = p**a
        h = np.arange(lo, p * lo)
        lead = h // lo
        out[lo : p * lo] = 1.0 / (p ** (a + 1) * np.sin(np.pi * lead / p) ** 2)
    out.setflags(write=False)
    return out


def _r_weighted(p, m, gamma):
    out = gamma * r_table(p, m)
    out[0] = 1.0 + gamma
    return out


def multiples_sum_closed(a: Poly, m: int) -> float:
    """Closed form (m - deg a) (p^2 - 1)/(3p) p^{-deg a} for the multiples sum."""
    p = a.p
    if a.degree >= m:
        return 0.0
    return (m - a.degree) * (p * p - 1) / (3 * p) * p ** (-a.degree)


def r_sum_multiples(a: Poly, m: int, method: str = "enumerate") -> float:
    """Sum of r_p(h) over nonzero h of degree < m divisible by the monic a."""
    if a.is_zero() or not a.is_monic():
        raise ParameterError(f"{a} is not monic")
    if method == "closed":
        return multiples_sum_closed(a, m)
    if method != "enumerate":
        raise ParameterError(f"unknown method {method!r}")
    p = a.p
    terms = []
    for k in range(1, p**m):
        h = poly_from_index(k, p)
        if poly_divmod(h, a)[1].is_zero():
            terms.append(r_plain(h))
    return math.fsum(terms)


# ---------------------------------------------------------------------------
# the psi kernel


@functools.lru_cache(maxsize=None)
def _digit_class_sums(p: int) -> np.ndarray:
    # S[k] = p^{-1} sum_{c=1}^{p-1} omega^{ck} / sin^2(pi c / p); real by symmetry c <-> p-c
    c = np.arange(1, p)
    k = np.arange(p)[:, None]
    return (np.cos(2 * np.pi * c * k / p) / np.sin(np.pi * c / p) ** 2).sum(axis=1) / p


def psi_value(numerator: int, p: int, m: int) -> float:
    """psi at the point numerator / p^m, from its leading nonzero digit."""
    if not 0 <= numerator < p**m:
        raise ParameterError("numerator outside [0, p^m)")
    S = _digit_class_sums(p)
    total = 0.0
    for a in range(m):
        digit = (numerator // p ** (m - 1 - a)) % p
        total += S[digit]
        if digit:
            break
    return float(total)


@functools.lru_cache(maxsize=None)
def psi_table(p: int, m: int) -> np.ndarray:
    """psi at every grid point k / p^m, vectorised over k."""
    S = _digit_class_sums(p)
    k = np.arange(p**m, dtype=np.int64)
    out = np.full(p**m, m * S[0])
    for a in range(m):
        # a leading zero digits followed by a nonzero digit: a * S[0] + S[digit]
        lo, hi = p ** (m - 1 - a), p ** (m - a)
        sel = (k >= lo) & (k < hi)
        out[sel] = a * S[0] + S[k[sel] // lo]
    out.setflags(write=False)
    return out


def psi_bruteforce(numerator: int, p: int, m: int) -> float:
    """sum_{h=1}^{p^m-1} r_p(h) wal_h(numerator / p^m), summed term by term."""
    from .pointset import walsh_exponents

    h = np.arange(1, p**m)
    e = walsh_exponents(h, numerator, p, m)
    val = (r_table(p, m)[1:] * roots_of_unity(p)[e]).sum()
    return float(val.real)


# ---------------------------------------------------------------------------
# R in three forms


def _check_d(gvec, d):
    d = gvec.s if d is None else d
    if not 1 <= d <= gvec.s:
        raise ParameterError(f"d={d} outside [1, {gvec.s}]")
    return d


def _reduced_components(gvec, d):
    f = gvec.modulus.f
    return [poly_divmod(u, f)[1] for u in gvec.shifted[:d]]


def R_direct(gvec: GeneratingVector, d: int | None = None, max_terms: int = DEFAULT_MAX_DUAL_TERMS) -> float:
    """Sum over nonzero dual vectors h of prod_i r_p(h_i, gamma_i)."""
    d = _check_d(gvec, d)
    p, m, f = gvec.p, gvec.m, gvec.modulus.f
    if p ** (m * d) > max_terms:
        raise CapacityError(f"dual enumeration of {p}^{m * d} vectors exceeds {max_terms}")
    residue = np.zeros(1, dtype=np.int64)
    weight = np.ones(1)
    for u, gamma in zip(_reduced_components(gvec, d), gvec.gammas):
        residue = add_indices(residue[:, None], mul_all(u, f)[None, :], p, m).ravel()
        weight = (weight[:, None] * _r_weighted(p, m, gamma)[None, :]).ravel()
    dual = residue == 0
    dual[0] = False  # h = 0
    return float(weight[dual].sum())


def _eta_factor(gamma, psi_col):
    return 1.0 + gamma + gamma * psi_col


def _R_from_columns(columns, gammas, psi, N):
    eta = np.ones(N)
    prod = 1.0
    for col, gamma in zip(columns, gammas):
        eta = eta * _eta_factor(gamma, psi[col])
        prod *= 1.0 + gamma
    return -prod + eta.sum() / N


def R_character_complex(gvec: GeneratingVector, d: int | None = None, inner: str = "enumerate",
                        max_table: int = DEFAULT_MAX_CHAR_TABLE) -> complex:
    """Character form of R with the imaginary residue kept."""
    d = _check_d(gvec, d)
    p, m, f = gvec.p, gvec.m, gvec.modulus.f
    N = p**m
    if inner == "psi":
        cols = [column_numerators(u, f) for u in gvec.shifted[:d]]
        return complex(_R_from_columns(cols, gvec.gammas[:d], psi_table(p, m), N))
    if inner != "enumerate":
        raise ParameterError(f"unknown inner evaluation {inner!r}")
    if N * N > max_table:
        raise CapacityError(f"character table of size {N}^2 exceeds {max_table}")
    table = mul_table(f)
    roots = roots_of_unity(p)
    r = r_table(p, m)[1:]
    top = p ** (m - 1)
    total = np.ones(N, dtype=complex)
    prod = 1.0
    for u, gamma in zip(_reduced_components(gvec, d), gvec.gammas):
        z = table[1:, u.index]  # h * u mod f for h != 0
        # X_p(v h u / f) = chi(coefficient of x^{m-1} in v h u mod f), f monic
        first_digit = table[:, z] // top
        inner_sum = roots[first_digit] @ r
        total = total * (1.0 + gamma + gamma * inner_sum)
        prod *= 1.0 + gamma
    return -prod + total.sum() / N


def R_character(gvec: GeneratingVector, d: int | None = None, inner: str = "enumerate",
                max_table: int = DEFAULT_MAX_CHAR_TABLE) -> float:
    val = R_character_complex(gvec, d, inner=inner, max_table=max_table)
    if abs(val.imag) > IMAG_TOL * max(1.0, abs(val.real)):
        raise ArithmeticError(f"character sum has imaginary residue {val.imag:.3e}")
    return float(val.real)


def R_walsh(gvec: GeneratingVector, d: int | None = None) -> float:
    """-prod(1 + gamma_i) + p^{-m} sum_n eta_d(n), valid for f = x^m."""
    if not gvec.modulus.is_monomial:
        raise UnsupportedCaseError("the Walsh/psi form of R is only derived for f = x^m")
    d = _check_d(gvec, d)
    p, m = gvec.p, gvec.m
    cols = [column_numerators(u, gvec.modulus.f) for u in gvec.shifted[:d]]
    return float(_R_from_columns(cols, gvec.gammas[:d], psi_table(p, m), p**m))


# ---------------------------------------------------------------------------
# character identities


def char_orthogonality_complex(g: Poly, f: Poly) -> complex:
    p, m = f.p, f.degree
    roots = roots_of_unity(p)
    total = 0j
    for k in range(p**m):
        t1 = laurent_digits(poly_from_index(k, p) * g, f, 1)[0]
        total += roots[t1]
    return complex(total)


def char_orthogonality(g: Poly, f: Poly) -> float:
    """sum over v in G_{p,m} of X_p(v g / f): p^m if f | g, else 0."""
    if f.degree < 1:
        raise ParameterError("modulus must have degree >= 1")
    val = char_orthogonality_complex(g, f)
    if abs(val.imag) > IMAG_TOL:
        raise ArithmeticError(f"character sum has imaginary residue {val.imag:.3e}")
    return float(val.real)


@functools.lru_cache(maxsize=None)
def _y_vector(w: int, p: int, m: int) -> np.ndarray:
    xm = Modulus.monomial(p, m)
    digits = digit_matrix(p, m)
    r = r_table(p, m)[1:]
    roots = roots_of_unity(p)
    y = np.zeros(p**m, dtype=complex)
    for g in search_set(p, m, w, xm):
        u = Poly.monomial(p, w) * g
        z = mul_all(u, xm.f)[1:]  # h x^w g mod x^m, h != 0
        # residue of v h x^w g / x^m is the x^{m-1} coefficient of v * (h x^w g)
        e = (digits @ digits[z][:, ::-1].T) % p
        y += roots[e] @ r
    if np.abs(y.imag).max() > IMAG_TOL:
        raise ArithmeticError("Y sum has an imaginary residue")
    out = y.real.copy()
    out.setflags(write=False)
    return out


def y_sum(v: Poly, w: int, p: int, m: int) -> float:
    """Y_{p^m,w}(v, x^m) by the defining double sum over g and h."""
    if v.p != p or v.degree >= m:
        raise ParameterError("v must lie in G_{p,m}")
    return float(_y_vector(w, p, m)[v.index])


def y_average(w: int, p: int, m: int) -> float:
    """(1 / #search set) * sum over v of |Y_{p^m,w}(v, x^m)|."""
    size = len(search_set(p, m, w, Modulus.monomial(p, m)))
    return float(np.abs(_y_vector(w, p, m)).sum() / size)


def y_average_bound(w: int, p: int, m: int) -> float:
    return 2 * p ** min(w, m) * m * (p * p - 1) / (3 * p)
