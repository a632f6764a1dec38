"""Naive and fast reduced CBC constructions."""

import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polylat.bounds import suggest_ws
from polylat.cbc import (
    _argmin, cbc_reduced_fast, cbc_reduced_naive, fold, omega_multiply, operation_count, unit_group,
)
from polylat.errors import CapacityError, ParameterError, UnsupportedCaseError
from polylat.fieldpoly import Modulus, Poly, poly_mul_mod
from polylat.quality import R_direct, R_walsh, psi_table
from polylat.weights import GeneratingVector, WeightSystem, search_set


def _weights(gammas, ws, m):
    return WeightSystem(tuple(gammas), tuple(ws), m)


def test_search_set_examples():
    assert search_set(2, 2, 0, Modulus.monomial(2, 2)) == [Poly(2, (1,)), Poly(2, (1, 1))]
    assert [g.index for g in search_set(2, 2, 0, Modulus.irreducible(2, 2))] == [1, 2, 3]
    assert search_set(2, 2, 5, Modulus.monomial(2, 2)) == [Poly.one(2)]


@pytest.mark.parametrize("p,m", [(2, 4), (3, 3), (5, 2)])
def test_search_set_sizes(p, m):
    for w in range(m + 2):
        xm = len(search_set(p, m, w, Modulus.monomial(p, m)))
        irr = len(search_set(p, m, w, Modulus.irreducible(p, m)))
        if w < m:
            assert xm == p ** (m - w - 1) * (p - 1)
            assert irr == p ** (m - w) - 1
        else:
            assert xm == irr == 1


def test_regression_construction():
    mod = Modulus.monomial(2, 2)
    w = _weights((1.0, 1.0), (0, 0), 2)
    for algo in (cbc_reduced_naive, cbc_reduced_fast):
        gvec, trace = algo(2, 2, mod, w, 2)
        assert gvec.reduced == (Poly.one(2), Poly(2, (1, 1)))
        assert trace.r_values == pytest.approx([0.0, 0.3125], abs=1e-15)


def test_singleton_search_set():
    gvec, _ = cbc_reduced_naive(2, 1, Modulus.monomial(2, 1), _weights((1.0, 1.0), (0, 0), 1), 2)
    assert gvec.reduced == (Poly.one(2), Poly.one(2))


def test_component_forced_when_reduction_reaches_m():
    w = _weights([2.0**-j for j in range(1, 4)], (0, 1, 3), 3)
    gvec, trace = cbc_reduced_fast(2, 3, Modulus.monomial(2, 3), w, 3)
    assert gvec.reduced[2] == Poly.one(2)
    assert trace.search_sizes[2] == 1


def test_fold_example():
    assert fold(np.array([1.0, 2.0, 3.0, 4.0]), 2, 1).tolist() == [4.0, 6.0]


@pytest.mark.parametrize("method", ["direct", "structured"])
def test_omega_examples(method):
    assert omega_multiply(1, 0, [1.0, 0.0], 2, method=method).tolist() == pytest.approx([0.5])
    assert omega_multiply(3, 1, np.zeros(8), 2, method=method).tolist() == [0.0] * 4
    ones = omega_multiply(3, 1, np.ones(8), 2, method=method)
    assert np.allclose(ones, ones[0], atol=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(1, 4), st.integers(0, 2), st.integers(0, 10**6))
def test_omega_against_definition(p, l, w, seed):
    if p**l > 700:
        return
    rng = np.random.default_rng(seed)
    folded = rng.random(p**l)
    psi = psi_table(p, l + w)
    xl = Poly.monomial(p, l)
    expect = []
    for g in search_set(p, l, 0, Modulus.monomial(p, l)):
        row = [psi[poly_mul_mod(Poly.monomial(p, 0) * g, _idx(n, p), xl).index * p**w] for n in range(p**l)]
        expect.append(np.dot(row, folded))
    for method in ("direct", "structured"):
        assert np.allclose(omega_multiply(l, w, folded, p, method=method), expect, rtol=1e-9, atol=1e-12)


def _idx(n, p):
    from polylat.fieldpoly import poly_from_index
    return poly_from_index(n, p)


@pytest.mark.parametrize("p,L", [(2, 1), (2, 5), (3, 4), (5, 3), (7, 2)])
def test_unit_group_covers_units(p, L):
    shape, elements, position = unit_group(p, L)
    assert int(np.prod(shape)) == (p - 1) * p ** (L - 1)
    assert sorted(elements.tolist()) == [g.index for g in search_set(p, L, 0, Modulus.monomial(p, L))]


CONFIGS = [
    (2, 5, [j**-2.0 for j in range(1, 7)], "none"),
    (2, 6, [j**-3.0 for j in range(1, 7)], "auto:2"),
    (3, 4, [0.9**j for j in range(1, 7)], "none"),
    (3, 3, [j**-3.0 for j in range(1, 7)], "auto:1.5"),
]


def _ws(rule, p, s):
    if rule == "none":
        return [0] * s
    return suggest_ws(3, float(rule.split(":")[1]), p, s)


@pytest.mark.parametrize("p,m,gammas,rule", CONFIGS)
def test_fast_equals_naive(p, m, gammas, rule):
    s = len(gammas)
    w = _weights(gammas, _ws(rule, p, s), m)
    mod = Modulus.monomial(p, m)
    naive_vec, naive = cbc_reduced_naive(p, m, mod, w, s)
    for omega in ("direct", "structured"):
        fast_vec, fast = cbc_reduced_fast(p, m, mod, w, s, omega=omega)
        assert fast_vec.reduced == naive_vec.reduced
        assert fast.r_values == naive.r_values


@pytest.mark.parametrize("p,m,gammas,rule", CONFIGS)
def test_recorded_R_matches_oracle(p, m, gammas, rule):
    s = len(gammas)
    gvec, trace = cbc_reduced_fast(p, m, Modulus.monomial(p, m), _weights(gammas, _ws(rule, p, s), m), s)
    for d in range(1, s + 1):
        assert trace.r_values[d - 1] == pytest.approx(R_walsh(gvec, d), rel=1e-12, abs=1e-15)
        if p ** (m * d) <= 2**16:
            assert trace.r_values[d - 1] == pytest.approx(R_direct(gvec, d), rel=1e-9, abs=1e-13)


def test_greedy_choice_is_minimal():
    p, m, s = 3, 3, 4
    for mod in (Modulus.monomial(p, m), Modulus.irreducible(p, m)):
        w = _weights([j**-2.0 for j in range(1, s + 1)], (0, 0, 1, 1), m)
        gvec, trace = cbc_reduced_naive(p, m, mod, w, s)
        for d in range(2, s + 1):
            for g in search_set(p, m, w.ws[d - 1], mod):
                cand = GeneratingVector(mod, w, gvec.reduced[: d - 1] + (g,))
                assert trace.r_values[d - 1] <= R_direct(cand) + 1e-12


def test_argmin_ties_go_to_first():
    assert _argmin([0.3, 0.1, 0.1 * (1 + 1e-15), 0.2]) == 1
    assert _argmin([0.1 + 1e-16, 0.1]) == 0


def test_fast_rejects_irreducible_modulus():
    mod = Modulus.irreducible(2, 3)
    with pytest.raises(UnsupportedCaseError):
        cbc_reduced_fast(2, 3, mod, _weights((1.0,), (0,), 3), 1)


def test_guards_and_warning():
    mod = Modulus.monomial(2, 4)
    with pytest.raises(CapacityError):
        cbc_reduced_naive(2, 4, mod, _weights((1.0, 1.0), (0, 0), 4), 2, max_size=16)
    with pytest.raises(ParameterError):
        cbc_reduced_naive(2, 4, mod, _weights((1.0,), (0,), 4), 2)
    with pytest.warns(UserWarning):
        cbc_reduced_fast(2, 4, mod, _weights((1.0,), (1,), 4), 1)


def test_structured_work_within_count():
    p, m, s = 2, 10, 10
    w = _weights([j**-3.0 for j in range(1, s + 1)], suggest_ws(3, 2, p, s), m)
    _, trace = cbc_reduced_fast(p, m, Modulus.monomial(p, m), w, s, omega="structured")
    assert trace.total_psi_applications <= 8 * operation_count(p, m, w, s)
