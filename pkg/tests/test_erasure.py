from fractions import Fraction as F
from math import asin, pi, sqrt

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boolnicd.boolfn import BooleanFunction, apply_sign_flip, make_dictator, make_majority
from boolnicd.erasure import (
    ErasurePattern,
    conditional_sum,
    conditional_sums,
    nicd_correlation,
    optimal_partner,
    partner_bias,
    partner_from_callable,
    phi_direct,
    phi_eval,
    phi_json,
    phi_poly,
)
from boolnicd.exactnum import UniPoly
from boolnicd.families import gopi_g, unbiased_functions

from .test_boolfn import functions

unit = st.fractions(min_value=0, max_value=1, max_denominator=40)


def test_pattern_packing():
    pat = ErasurePattern.from_symbols([1, None, -1])
    assert pat == ErasurePattern(0b101, 0b100)
    assert pat.index(3) == 1 + 2 * 9
    for n in range(1, 6):
        for idx in range(3**n):
            assert ErasurePattern.from_index(idx, n).index(n) == idx
    with pytest.raises(ValueError):
        ErasurePattern(0b01, 0b10)


def test_conditional_sum_examples():
    f = gopi_g(5)
    for m in range(32):
        assert conditional_sum(f, ErasurePattern(31, m)) == f.table[m]
    assert conditional_sum(make_majority(5), ErasurePattern(0, 0)) == 0
    maj3 = make_majority(3)
    assert conditional_sum(maj3, ErasurePattern.from_symbols([1, 1, None])) == 1


@settings(max_examples=50, deadline=None)
@given(functions(n_max=5))
def test_dense_sums_match_scalar(f):
    dense = conditional_sums(f)
    for idx in range(3**f.n):
        pat = ErasurePattern.from_index(idx, f.n)
        erased = f.n - bin(pat.revealed).count("1")
        assert F(int(dense[idx]), 1 << erased) == conditional_sum(f, pat)


def test_partner_examples():
    n = 4
    g = optimal_partner(make_dictator(n, 1))
    for idx in range(3**n):
        pat = ErasurePattern.from_index(idx, n)
        if pat.revealed & 1:
            assert g(pat) == (-1 if pat.values & 1 else 1) and not g.ties[idx]
        else:
            assert g.ties[idx] and g(pat) == 1
    maj = optimal_partner(make_majority(3))
    for i in range(3):
        assert maj(ErasurePattern(1 << i, 0)) == 1 and maj(ErasurePattern(1 << i, 1 << i)) == -1


def test_partner_on_monotone_pairs():
    f = gopi_g(5)
    g = optimal_partner(f)
    for i in range(5):
        for j in range(i + 1, 5):
            s = (1 << i) | (1 << j)
            assert g(ErasurePattern(s, 0)) == 1 and g(ErasurePattern(s, s)) == -1


def test_phi_examples():
    assert phi_poly(make_dictator(4, 2)) == UniPoly([0, 1], "p")
    assert phi_eval(make_majority(3), F(1, 2)) == F(1, 2)
    assert phi_direct(make_majority(3), F(1, 2)) == F(1, 2)
    assert phi_eval(make_dictator(3, 1), F(2, 5)) == F(2, 5)
    assert phi_eval(gopi_g(5), F(2, 5)) - phi_eval(make_majority(5), F(2, 5)) == F(3, 2500)
    assert phi_poly(make_majority(3)) == UniPoly([0, F(3, 2), F(-3, 2), 1], "p")
    with pytest.raises(ValueError):
        phi_poly(make_dictator(14, 1))


@settings(max_examples=40, deadline=None)
@given(functions(n_max=6))
def test_phi_endpoints(f):
    assert phi_eval(f, 0) == abs(F(f.total, 1 << f.n))
    assert phi_eval(f, 1) == 1


def test_phi_poly_matches_direct_n3_exhaustive():
    rng = np.random.default_rng(7)
    points = [F(int(a), int(a) + int(b)) for a, b in rng.integers(1, 50, size=(20, 2))]
    for t in range(256):
        f = BooleanFunction(3, [1 if (t >> m) & 1 else -1 for m in range(8)])
        poly = phi_poly(f)
        for p in points[:5]:
            assert poly(p) == phi_direct(f, p)


@settings(max_examples=40, deadline=None)
@given(functions(n_min=5, n_max=5), st.lists(unit, min_size=3, max_size=3))
def test_phi_poly_matches_direct_n5(f, ps):
    poly = phi_poly(f)
    for p in ps:
        assert poly(p) == phi_direct(f, p)


@given(functions(n_max=7), st.data())
def test_phi_flip_invariance(f, data):
    a = data.draw(st.integers(0, (1 << f.n) - 1))
    assert phi_poly(apply_sign_flip(f, a)) == phi_poly(f)


@settings(max_examples=40, deadline=None)
@given(functions(n_max=5), unit)
def test_tie_rule_independence(f, p):
    g = optimal_partner(f)
    value = phi_eval(f, p)
    assert nicd_correlation(f, g, p) == value
    assert nicd_correlation(f, g.resolved(-1), p) == value
    assert nicd_correlation(f, optimal_partner(f, "revealed"), p) == value


@settings(max_examples=100, deadline=None)
@given(functions(n_max=6))
def test_phi_monotone_in_p(f):
    poly = phi_poly(f)
    values = [poly(F(k, 20)) for k in range(21)]
    assert all(a <= b for a, b in zip(values, values[1:]))


def test_nicd_examples():
    n = 3
    d = make_dictator(n, 1)

    def partner(pat):
        if pat.revealed & 1:
            return -1 if pat.values & 1 else 1
        return 1

    g = partner_from_callable(n, partner)
    assert nicd_correlation(d, g, F(2, 7)) == F(2, 7)
    with pytest.raises(ValueError):
        nicd_correlation(make_dictator(4, 1), g, F(1, 2))


@settings(max_examples=100, deadline=None)
@given(functions(n_min=4, n_max=4), st.data(), unit)
def test_partner_cannot_beat_phi(f, data, p):
    vals = data.draw(st.lists(st.sampled_from([-1, 1]), min_size=81, max_size=81))
    g = partner_from_callable(4, lambda pat: vals[pat.index(4)])
    assert nicd_correlation(f, g, p) <= phi_eval(f, p)


def test_partner_bias():
    p = F(1, 3)
    ones = partner_from_callable(3, lambda pat: 1)
    assert partner_bias(ones, p) == 1
    # odd f: the partner is odd on untied patterns, so they average to zero
    for f in (make_majority(5), gopi_g(5), make_dictator(3, 2)):
        assert partner_bias(optimal_partner(f), p, ties="ignore") == 0
    # at n = 3 the untied part of g* is always balanced and any bias comes
    # from the tie rule; the stored +1 resolution is biased for every f
    for f in unbiased_functions(3):
        g = optimal_partner(f)
        assert partner_bias(g, p, "ignore") == 0
        assert partner_bias(g, p) == partner_bias(g, p, "plus") > 0
        assert partner_bias(g, p, "minus") == -partner_bias(g, p, "plus")
    # at n = 4 some unbiased f has a biased partner even without ties
    f = BooleanFunction.from_hex(4, "1b1e")
    assert f.total == 0
    assert partner_bias(optimal_partner(f), p, "ignore") != 0


def test_phi_json():
    out = phi_json(make_majority(3))
    assert out["coeffs"] == ["0/1", "3/2", "-3/2", "1/1"] and out["variable"] == "p"
    assert phi_json(make_majority(3), F(1, 2))["value"] == "1/2"


def test_majority_below_arcsin_curve():
    for n in range(1, 14, 2):
        poly = phi_poly(make_majority(n))
        for k in range(1, 100):
            p = F(k, 200)
            assert float(poly(p)) <= 2 / pi * asin(sqrt(k / 200)) + 1e-12
