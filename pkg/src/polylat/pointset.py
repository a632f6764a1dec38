"""Polynomial lattice point sets and Walsh functions on them.

Coordinates are kept as exact integer numerators over N = p^m.  A column
of the point set is a linear map over F_p from the digits of n to the
digits of the numerator, so every column is produced by one small integer
matrix product instead of N Laurent expansions.
"""

from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .fieldpoly import Modulus, Poly, digit_matrix, laurent_digits, poly_from_index, poly_mul, powers
from .weights import GeneratingVector


@dataclass(frozen=True)
class PointSet:
    """N = p^m points; point n, coordinate j is ``numerators[n, j] / p**m``."""

    p: int
    m: int
    numerators: np.ndarray

    def __post_init__(self):
        num = np.asarray(self.numerators, dtype=np.int64)
        if num.ndim != 2:
            raise ParameterError("numerators must be an (N, s) array")
        if num.size and (num.min() < 0 or num.max() >= self.p**self.m):
            raise ParameterError("numerators outside [0, p^m)")
        num.setflags(write=False)
        object.__setattr__(self, "numerators", num)

    @property
    def N(self) -> int:
        return self.numerators.shape[0]

    @property
    def s(self) -> int:
        return self.numerators.shape[1]

    def as_float(self) -> np.ndarray:
        return self.numerators / float(self.p**self.m)

    def project(self, coords) -> "PointSet":
        """Projection onto the given coordinates; repeated points are kept."""
        return PointSet(self.p, self.m, self.numerators[:, list(coords)])


def _modulus_poly(f):
    return f.f if isinstance(f, Modulus) else f


def phi_m_numerator(n: int, g: Poly, f) -> int:
    """p^m * phi_m(n(x) g(x) / f(x)) for 0 <= n < p^m."""
    f = _modulus_poly(f)
    p, m = f.p, f.degree
    if not 0 <= n < p**m:
        raise ParameterError(f"n={n} outside [0, {p**m})")
    t = laurent_digits(poly_mul(poly_from_index(n, p), g), f, m)
    return sum(tl * p ** (m - l) for l, tl in enumerate(t, start=1))


def generator_matrix(u: Poly, f: Poly) -> np.ndarray:
    """(m, m) matrix over F_p sending digits of n to digits of the column numerator.

    Row r holds the numerator digits (least significant first) of
    phi_m(x^r u / f).
    """
    p, m = f.p, f.degree
    rows = np.zeros((m, m), dtype=np.int64)
    for r in range(m):
        t = laurent_digits(Poly.monomial(p, r) * u, f, m)
        for l, tl in enumerate(t, start=1):
            rows[r, m - l] = tl
    return rows


@functools.lru_cache(maxsize=4096)
def _column(u: Poly, f: Poly) -> np.ndarray:
    p, m = f.p, f.degree
    col = (digit_matrix(p, m) @ generator_matrix(u, f)) % p @ powers(p, m)
    col.setflags(write=False)
    return col


def column_numerators(u: Poly, f) -> np.ndarray:
    """Numerators p^m phi_m(n u / f) for all n, as a read-only int array."""
    return _column(u, _modulus_poly(f))


def generate_point_set(gvec: GeneratingVector) -> PointSet:
    f = gvec.modulus.f
    cols = [column_numerators(u, f) for u in gvec.shifted]
    return PointSet(gvec.p, gvec.m, np.stack(cols, axis=1))


@functools.lru_cache(maxsize=None)
def roots_of_unity(p: int) -> np.ndarray:
    table = np.exp(2j * np.pi * np.arange(p) / p)
    if p == 2:
        table = np.array([1.0 + 0j, -1.0 + 0j])
    table.setflags(write=False)
    return table


def walsh_exponents(h, numerators, p: int, m: int):
    """Exponent sum_r h_r x_{r+1} mod p of wal_h at numerator / p^m (broadcasting)."""
    h = np.asarray(h, dtype=np.int64)
    x = np.asarray(numerators, dtype=np.int64)
    e = np.zeros(np.broadcast(h, x).shape, dtype=np.int64)
    for r in range(m):
        hr = (h // p**r) % p
        xr = (x // p ** (m - 1 - r)) % p
        e += hr * xr
    return e % p


def walsh_value(h: int, numerator: int, p: int, m: int) -> complex:
    if not (0 <= h < p**m and 0 <= numerator < p**m):
        raise ParameterError("h and numerator must lie in [0, p^m)")
    e = 0
    for r in range(m):
        e += ((h // p**r) % p) * ((numerator // p ** (m - 1 - r)) % p)
    e %= p
    if p == 2:
        return complex((-1) ** e)
    return cmath.exp(2j * math.pi * e / p)


def walsh_dual_average(gvec: GeneratingVector, h) -> complex:
    """(1/N) sum_n prod_j wal_{h_j}(x_n^{(j)}); 1 on the dual lattice, 0 off it."""
    p, m = gvec.p, gvec.m
    h = list(h)
    if len(h) != gvec.s:
        raise ParameterError(f"need {gvec.s} frequencies, got {len(h)}")
    if any(not 0 <= hj < p**m for hj in h):
        raise ParameterError("frequencies must lie in [0, p^m)")
    ps = generate_point_set(gvec)
    e = np.zeros(ps.N, dtype=np.int64)
    for j, hj in enumerate(h):
        e += walsh_exponents(hj, ps.numerators[:, j], p, m)
    return complex(roots_of_unity(p)[e % p].sum() / ps.N)


def format_points(ps: PointSet, fmt: str = "fraction") -> str:
    """One point per line, coordinates separated by single spaces."""
    denom = ps.p**ps.m
    if fmt == "fraction":
        rows = (" ".join(f"{k}/{denom}" for k in row) for row in ps.numerators.tolist())
    elif fmt == "decimal":
        digits = int(ps.m * math.log10(ps.p) + 2)
        rows = (" ".join(f"{k / denom:.{digits}f}" for k in row) for row in ps.numerators.tolist())
    else:
        raise ParameterError(f"unknown point format {fmt!r}")
    return "\n".join(rows) + "\n"
