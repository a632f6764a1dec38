"""The figure of merit R and the identities used to evaluate it."""

import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polylat.errors import CapacityError, ParameterError, UnsupportedCaseError
from polylat.fieldpoly import Modulus, Poly, poly_from_index, smallest_irreducible
from polylat.quality import (
    R_character, R_direct, R_walsh, char_orthogonality, multiples_sum_closed, psi_bruteforce, psi_table, psi_value,
    r_plain, r_sum_multiples, r_weight, y_average, y_average_bound, y_sum,
)
from polylat.weights import GeneratingVector, WeightSystem

from conftest import random_gvec


def test_r_weight_examples():
    assert r_weight(Poly.zero(2), 0.5) == 1.5
    assert r_weight(Poly(2, (0, 1)), 1.0) == pytest.approx(0.25, abs=1e-15)
    assert r_plain(Poly(3, (0, 2))) == pytest.approx(4 / 27, rel=1e-14)
    with pytest.raises(ParameterError):
        r_plain(Poly.zero(2))


def test_multiples_sum_examples():
    assert r_sum_multiples(Poly.one(2), 2) == pytest.approx(1.0, abs=1e-12)
    assert r_sum_multiples(Poly(2, (0, 1)), 3) == pytest.approx(0.5, abs=1e-12)
    assert r_sum_multiples(Poly.monomial(2, 3), 3) == 0.0
    with pytest.raises(ParameterError):
        r_sum_multiples(Poly(3, (0, 2)), 2)


@pytest.mark.parametrize("p", [2, 3])
def test_multiples_sum_general_monic(p):
    """The closed form only depends on deg a, including non-monomial a."""
    for a in (Poly(p, (1, 1)), Poly(p, (1, 0, 1)), smallest_irreducible(p, 2)):
        for m in range(1, 5):
            assert r_sum_multiples(a, m) == pytest.approx(multiples_sum_closed(a, m), abs=1e-12)


def test_psi_examples():
    assert psi_table(2, 1).tolist() == pytest.approx([0.5, -0.5], abs=1e-15)
    assert psi_value(0, 2, 2) == pytest.approx(1.0, abs=1e-15)
    assert psi_value(3, 2, 2) == pytest.approx(-0.5, abs=1e-15)


@pytest.mark.parametrize("p,m", [(2, 1), (2, 4), (3, 3), (5, 2), (7, 2)])
def test_psi_closed_form_against_double_sum(p, m):
    table = psi_table(p, m)
    for k in range(p**m):
        assert table[k] == pytest.approx(psi_bruteforce(k, p, m), abs=1e-12)
        assert table[k] == pytest.approx(psi_value(k, p, m), abs=1e-14)


def test_R_regression_values(tiny_gvec):
    diag = GeneratingVector(tiny_gvec.modulus, tiny_gvec.weights, (Poly.one(2), Poly.one(2)))
    for form in (R_direct, R_character, R_walsh):
        assert form(diag) == pytest.approx(0.375, abs=1e-12)
        assert form(tiny_gvec) == pytest.approx(0.3125, abs=1e-12)


def test_R_single_unit_component_is_zero():
    gvec = GeneratingVector(Modulus.monomial(2, 1), WeightSystem((1.0,), (0,), 1), (Poly.one(2),))
    assert R_walsh(gvec) == 0.0
    assert R_character(gvec) == pytest.approx(0.0, abs=1e-15)
    assert R_direct(gvec) == 0.0


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([2, 3]), st.integers(1, 3), st.integers(1, 3), st.booleans(), st.integers(0, 10**6))
def test_three_forms_agree(p, m, d, irreducible, seed):
    modulus = Modulus.irreducible(p, m) if irreducible else Modulus.monomial(p, m)
    rng = random.Random(seed)
    ws = sorted(rng.randint(0, m + 1) for _ in range(d))
    ws[0] = 0
    gvec = random_gvec(p, m, d, modulus=modulus, ws=ws, rng=rng)
    ref = R_direct(gvec)
    tol = 1e-9 * max(1.0, ref)
    assert abs(R_character(gvec) - ref) <= tol
    assert abs(R_character(gvec, inner="psi") - ref) <= tol
    if irreducible:
        with pytest.raises(UnsupportedCaseError):
            R_walsh(gvec)
    else:
        assert abs(R_walsh(gvec) - ref) <= tol


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([2, 3]), st.integers(1, 3), st.integers(0, 10**6), st.floats(0.05, 0.95))
def test_R_monotone_in_weight_scaling(p, m, seed, scale):
    """Shrinking every gamma can only shrink R (all dual terms are positive)."""
    gvec = random_gvec(p, m, 3, rng=random.Random(seed))
    smaller = GeneratingVector(gvec.modulus, WeightSystem(tuple(g * scale for g in gvec.gammas), gvec.ws, m),
                               gvec.reduced)
    assert R_walsh(smaller) <= R_walsh(gvec) + 1e-15


def test_R_vanishes_as_gamma_tends_to_zero():
    gvec = random_gvec(3, 2, 3, rng=random.Random(4))
    tiny = GeneratingVector(gvec.modulus, WeightSystem((1e-12,) * 3, gvec.ws, 2), gvec.reduced)
    assert abs(R_walsh(tiny)) < 1e-10


def test_direct_capacity_guard():
    gvec = random_gvec(3, 3, 3)
    with pytest.raises(CapacityError):
        R_direct(gvec, max_terms=100)


def test_orthogonality_examples():
    f = Poly.monomial(2, 2)
    assert char_orthogonality(Poly(2, (0, 1)), f) == pytest.approx(0.0, abs=1e-12)
    assert char_orthogonality(Poly.zero(2), f) == pytest.approx(4.0, abs=1e-12)
    assert char_orthogonality(f, f) == pytest.approx(4.0, abs=1e-12)


def test_y_examples():
    assert y_sum(Poly.one(2), 1, 2, 2) == pytest.approx(-0.5, abs=1e-12)
    assert y_sum(Poly.zero(2), 1, 2, 2) == pytest.approx(1.0, abs=1e-12)
    assert y_average(1, 2, 2) == pytest.approx(3.0, abs=1e-12)
    assert y_average_bound(1, 2, 2) == pytest.approx(4.0, abs=1e-15)
