"""Polynomials over the prime field F_p.

A polynomial a_0 + a_1 x + ... + a_n x^n is stored as the tuple
(a_0, ..., a_n) of integers in {0, ..., p-1} with a_n != 0; the empty
tuple is the zero polynomial.  Polynomials of degree < m are identified
with the integers 0 <= k < p^m through k = sum a_i p^i, which is the
"index" used for ordering and for all table lookups downstream.

Besides the scalar operations on :class:`Poly` this module provides a few
vectorised helpers working directly on indices (``digit_matrix``,
``mul_all``, ``mul_table``, ``add_indices``); the heavy loops in the
quality and construction modules are written against those.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ParameterError, UndefinedInputError


@functools.lru_cache(maxsize=None)
def is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class Poly:
    """Polynomial over F_p with ascending-degree coefficients.

    Coefficients are reduced mod p and trailing zeros are dropped on
    construction, so equal polynomials compare equal.
    """

    p: int
    coeffs: tuple = ()

    def __post_init__(self):
        if self.p < 2:
            raise ParameterError(f"characteristic must be >= 2, got {self.p}")
        object.__setattr__(self, "coeffs", _trim(int(c) % self.p for c in self.coeffs))

    @classmethod
    def zero(cls, p):
        return cls(p, ())

    @classmethod
    def one(cls, p):
        return cls(p, (1,))

    @classmethod
    def monomial(cls, p, k, c=1):
        """c * x^k."""
        return cls(p, (0,) * k + (c,))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def index(self) -> int:
        return poly_index(self)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lead == 1

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __add__(self, other):
        return poly_add(self, other)

    def __sub__(self, other):
        return poly_sub(self, other)

    def __neg__(self):
        return Poly(self.p, tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        return poly_mul(self, other)

    def __divmod__(self, other):
        return poly_divmod(self, other)

    def __mod__(self, other):
        return poly_divmod(self, other)[1]

    def __floordiv__(self, other):
        return poly_divmod(self, other)[0]

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
                continue
            mono = "x" if k == 1 else f"x^{k}"
            terms.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(terms)


class ModulusKind(str, Enum):
    MONOMIAL = "xm"
    IRREDUCIBLE = "irreducible"


@dataclass(frozen=True)
class Modulus:
    """Degree-m monic modulus f, tagged as x^m or irreducible."""

    f: Poly
    kind: ModulusKind

    def __post_init__(self):
        if not is_prime(self.f.p):
            raise ParameterError(f"p={self.f.p} is not prime")
        if self.f.degree < 1 or not self.f.is_monic():
            raise ParameterError("modulus must be monic of degree >= 1")
        kind = ModulusKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is ModulusKind.MONOMIAL and self.f != Poly.monomial(self.f.p, self.f.degree):
            raise ParameterError(f"{self.f} is not of the form x^m")
        if kind is ModulusKind.IRREDUCIBLE and not is_irreducible(self.f):
            raise ParameterError(f"{self.f} is not irreducible over F_{self.f.p}")

    @classmethod
    def monomial(cls, p, m):
        return cls(Poly.monomial(p, m), ModulusKind.MONOMIAL)

    @classmethod
    def irreducible(cls, p, m, f=None):
        """Irreducible modulus; the smallest-index one of degree m if ``f`` is omitted."""
        return cls(f if f is not None else smallest_irreducible(p, m), ModulusKind.IRREDUCIBLE)

    @property
    def p(self) -> int:
        return self.f.p

    @property
    def m(self) -> int:
        return self.f.degree

    @property
    def is_monomial(self) -> bool:
        return self.kind is ModulusKind.MONOMIAL


# ---------------------------------------------------------------------------
# scalar arithmetic


def poly_from_index(k: int, p: int) -> Poly:
    if k < 0:
        raise ParameterError("index must be nonnegative")
    digits = []
    while k:
        k, r = divmod(k, p)
        digits.append(r)
    return Poly(p, tuple(digits))


def poly_index(a: Poly) -> int:
    k = 0
    for c in reversed(a.coeffs):
        k = k * a.p + c
    return k


def _check_same_field(*polys):
    p = polys[0].p
    for a in polys[1:]:
        if a.p != p:
            raise ParameterError(f"mixed characteristics {p} and {a.p}")
    return p


def poly_add(a: Poly, b: Poly) -> Poly:
    p = _check_same_field(a, b)
    n = max(len(a.coeffs), len(b.coeffs))
    return Poly(p, tuple(a.coeff(i) + b.coeff(i) for i in range(n)))


def poly_sub(a: Poly, b: Poly) -> Poly:
    p = _check_same_field(a, b)
    n = max(len(a.coeffs), len(b.coeffs))
    return Poly(p, tuple(a.coeff(i) - b.coeff(i) for i in range(n)))


def poly_mul(a: Poly, b: Poly) -> Poly:
    p = _check_same_field(a, b)
    if a.is_zero() or b.is_zero():
        return Poly.zero(p)
    out = [0] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, ai in enumerate(a.coeffs):
        if ai:
            for j, bj in enumerate(b.coeffs):
                out[i + j] += ai * bj
    return Poly(p, tuple(out))


def poly_divmod(a: Poly, b: Poly):
    p = _check_same_field(a, b)
    if b.is_zero():
        raise ParameterError("division by the zero polynomial")
    rem = list(a.coeffs)
    db = b.degree
    inv = pow(b.lead, p - 2, p)
    quot = [0] * max(len(rem) - db, 0)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k] % p
        if c == 0:
            continue
        q = c * inv % p
        quot[k - db] = q
        for j, bj in enumerate(b.coeffs):
            rem[k - db + j] -= q * bj
    return Poly(p, tuple(quot)), Poly(p, tuple(rem[:db]))


def poly_mul_mod(a: Poly, b: Poly, f: Poly) -> Poly:
    """Remainder of a*b on division by f."""
    _check_same_field(a, b, f)
    return poly_divmod(poly_mul(a, b), f)[1]


def monic(a: Poly) -> Poly:
    if a.is_zero():
        return a
    inv = pow(a.lead, a.p - 2, a.p)
    return Poly(a.p, tuple(c * inv for c in a.coeffs))


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by Euclid's algorithm."""
    _check_same_field(a, b)
    if a.is_zero() and b.is_zero():
        raise UndefinedInputError("gcd(0, 0) is undefined")
    while not b.is_zero():
        a, b = b, poly_divmod(a, b)[1]
    return monic(a)


def is_irreducible(f: Poly) -> bool:
    """Trial division by every monic polynomial of degree <= deg(f)/2."""
    if f.degree < 1:
        raise ParameterError("irreducibility is only defined for degree >= 1")
    p = f.p
    for d in range(1, f.degree // 2 + 1):
        for k in range(p**d, 2 * p**d):  # monic of degree d
            if poly_divmod(f, poly_from_index(k, p))[1].is_zero():
                return False
    return True


@functools.lru_cache(maxsize=None)
def smallest_irreducible(p: int, m: int) -> Poly:
    """Monic irreducible of degree m with the smallest index."""
    if m < 1:
        raise ParameterError("degree must be >= 1")
    for k in range(p**m, 2 * p**m):
        f = poly_from_index(k, p)
        if is_irreducible(f):
            return f
    raise AssertionError("unreachable: irreducibles exist in every degree")


def laurent_digits(g: Poly, f: Poly, m: int):
    """First m digits (t_1, ..., t_m) of the Laurent expansion of g/f in x^{-1}.

    Only negative powers are returned, so any polynomial part of g/f is
    discarded; phi_m(g/f) = sum_l t_l p^{-l}.
    """
    _check_same_field(g, f)
    if f.is_zero():
        raise ParameterError("Laurent expansion with zero denominator")
    q, _ = poly_divmod(poly_mul(g, Poly.monomial(g.p, m)), f)
    return tuple(q.coeff(m - l) for l in range(1, m + 1))


# ---------------------------------------------------------------------------
# vectorised index arithmetic


@functools.lru_cache(maxsize=None)
def digit_matrix(p: int, m: int) -> np.ndarray:
    """(p^m, m) array whose row k holds the base-p digits of k, least significant first."""
    k = np.arange(p**m, dtype=np.int64)
    out = np.empty((p**m, m), dtype=np.int64)
    for r in range(m):
        out[:, r] = k % p
        k = k // p
    out.setflags(write=False)
    return out


def powers(p: int, m: int) -> np.ndarray:
    return p ** np.arange(m, dtype=np.int64)


def add_indices(a, b, p: int, m: int):
    """Index of the sum of the polynomials with indices a and b (broadcasting)."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if p == 2:
        return a ^ b
    out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
    scale = 1
    for _ in range(m):
        out += ((a % p + b % p) % p) * scale
        a = a // p
        b = b // p
        scale *= p
    return out


def reduction_matrix(u: Poly, f: Poly) -> np.ndarray:
    """(m, m) matrix whose row r holds the digits of x^r * u mod f."""
    p, m = f.p, f.degree
    rows = np.zeros((m, m), dtype=np.int64)
    for r in range(m):
        res = poly_mul_mod(Poly.monomial(p, r), u, f)
        for k, c in enumerate(res.coeffs):
            rows[r, k] = c
    return rows


@functools.lru_cache(maxsize=4096)
def _mul_all_cached(u: Poly, f: Poly) -> np.ndarray:
    p, m = f.p, f.degree
    out = (digit_matrix(p, m) @ reduction_matrix(u, f)) % p @ powers(p, m)
    out.setflags(write=False)
    return out


def mul_all(u: Poly, f: Poly) -> np.ndarray:
    """Array whose entry n is the index of n(x) * u mod f, for 0 <= n < p^m."""
    _check_same_field(u, f)
    return _mul_all_cached(u, f)


@functools.lru_cache(maxsize=16)
def mul_table(f: Poly) -> np.ndarray:
    """Full (p^m, p^m) multiplication table of G_{p,m} modulo f, as indices."""
    p, m = f.p, f.degree
    table = np.empty((p**m, p**m), dtype=np.int64)
    for a in range(p**m):
        table[a] = _mul_all_cached(poly_from_index(a, p), f)
    table.setflags(write=False)
    return table
