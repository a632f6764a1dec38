"""Weight systems and generating vectors."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import ParameterError
from .fieldpoly import Modulus, Poly, poly_from_index, poly_gcd, poly_mul


@dataclass(frozen=True)
class WeightSystem:
    """Product weights gamma_j together with reduction indices w_j.

    ``m`` is the degree the reduction indices are interpreted against; it
    fixes t = max{j : w_j < m}.
    """

    gammas: tuple
    ws: tuple
    m: int

    def __post_init__(self):
        gammas = tuple(float(g) for g in self.gammas)
        ws = tuple(int(w) for w in self.ws)
        object.__setattr__(self, "gammas", gammas)
        object.__setattr__(self, "ws", ws)
        if len(gammas) != len(ws):
            raise ParameterError(f"{len(gammas)} weights but {len(ws)} reduction indices")
        if not gammas:
            raise ParameterError("empty weight system")
        if self.m < 1:
            raise ParameterError("m must be >= 1")
        for g in gammas:
            if not (0.0 < g <= 1.0) or not math.isfinite(g):
                raise ParameterError(f"weight {g} outside (0, 1]")
        if any(b > a for a, b in zip(gammas, gammas[1:])):
            raise ParameterError("weights must be non-increasing")
        if any(w < 0 for w in ws):
            raise ParameterError("reduction indices must be nonnegative")
        if any(b < a for a, b in zip(ws, ws[1:])):
            raise ParameterError("reduction indices must be non-decreasing")

    @classmethod
    def unreduced(cls, gammas, m):
        return cls(tuple(gammas), (0,) * len(gammas), m)

    def __len__(self):
        return len(self.gammas)

    @property
    def t(self) -> int:
        """Last (1-based) index j with w_j < m, 0 if there is none."""
        return sum(1 for w in self.ws if w < self.m)

    @property
    def Gamma(self) -> float:
        return sum(g / (1.0 + g) for g in self.gammas)

    def truncate(self, s):
        return WeightSystem(self.gammas[:s], self.ws[:s], self.m)


def in_search_set(g: Poly, w: int, modulus: Modulus) -> bool:
    """Membership of g in the reduced search set for reduction index w."""
    m = modulus.m
    if w >= m:
        return g == Poly.one(modulus.p)
    if g.is_zero() or g.degree >= m - w:
        return False
    return poly_gcd(g, modulus.f).degree == 0


def search_set(p: int, m: int, w: int, modulus: Modulus):
    """Reduced search set for reduction index w, in ascending index order.

    Polynomials of degree < m - w coprime to the modulus, or just {1} once
    w >= m.
    """
    if modulus.p != p or modulus.m != m:
        raise ParameterError("search set parameters disagree with the modulus")
    if w < 0:
        raise ParameterError("reduction index must be nonnegative")
    if w >= m:
        return [Poly.one(p)]
    f = modulus.f
    out = []
    for k in range(1, p ** (m - w)):
        g = poly_from_index(k, p)
        if modulus.is_monomial:
            if g.coeff(0) != 0:
                out.append(g)
        elif poly_gcd(g, f).degree == 0:
            out.append(g)
    return out


@dataclass(frozen=True)
class GeneratingVector:
    """Components x^{w_j} g_j of a polynomial lattice rule modulo ``modulus``.

    ``reduced`` holds the g_j; ``shifted`` (derived) holds the unreduced
    products x^{w_j} g_j that actually define the coordinates.
    """

    modulus: Modulus
    weights: WeightSystem
    reduced: tuple
    shifted: tuple = field(init=False)

    def __post_init__(self):
        reduced = tuple(self.reduced)
        object.__setattr__(self, "reduced", reduced)
        if not reduced:
            raise ParameterError("generating vector needs at least one component")
        if len(reduced) > len(self.weights):
            raise ParameterError(f"{len(reduced)} components but only {len(self.weights)} weights")
        if self.weights.m != self.modulus.m:
            raise ParameterError("weight system and modulus disagree on m")
        p = self.modulus.p
        shifted = []
        for j, (g, w) in enumerate(zip(reduced, self.weights.ws)):
            if g.p != p:
                raise ParameterError(f"component {j + 1} lives over F_{g.p}, expected F_{p}")
            if not in_search_set(g, w, self.modulus):
                raise ParameterError(f"component {j + 1} = {g} not in the search set for w={w}")
            shifted.append(poly_mul(Poly.monomial(p, w), g))
        object.__setattr__(self, "shifted", tuple(shifted))

    @property
    def p(self) -> int:
        return self.modulus.p

    @property
    def m(self) -> int:
        return self.modulus.m

    @property
    def s(self) -> int:
        return len(self.reduced)

    @property
    def gammas(self):
        return self.weights.gammas[: self.s]

    @property
    def ws(self):
        return self.weights.ws[: self.s]

    def prefix(self, d):
        return GeneratingVector(self.modulus, self.weights, self.reduced[:d])
