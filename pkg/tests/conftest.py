import random

import pytest

from polylat.fieldpoly import Modulus, Poly
from polylat.weights import GeneratingVector, WeightSystem, search_set


def random_gvec(p, m, s, modulus=None, gammas=None, ws=None, rng=None):
    """A uniformly drawn valid generating vector for the given setup."""
    rng = rng or random.Random(0)
    modulus = modulus or Modulus.monomial(p, m)
    gammas = gammas or [1.0 / (j + 1) ** 2 for j in range(s)]
    ws = ws or [0] * s
    weights = WeightSystem(tuple(gammas), tuple(ws), m)
    comps = [rng.choice(search_set(p, m, w, modulus)) for w in ws]
    return GeneratingVector(modulus, weights, tuple(comps))


@pytest.fixture
def tiny_gvec():
    """p=2, m=2, f=x^2, gamma=(1,1), g=(1, x+1)."""
    mod = Modulus.monomial(2, 2)
    weights = WeightSystem((1.0, 1.0), (0, 0), 2)
    return GeneratingVector(mod, weights, (Poly(2, (1,)), Poly(2, (1, 1))))


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
