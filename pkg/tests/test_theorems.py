from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boolnicd.boolfn import (
    BooleanFunction,
    coordinate_signs,
    first_level_coefficients,
    flip_orbit,
    is_monotone,
    make_majority,
)
from boolnicd.erasure import phi_eval, phi_poly
from boolnicd.exactnum import binom_eq_lb_expr, rho_to_q
from boolnicd.families import gopi_g, unbiased_functions
from boolnicd.spectral import stab_poly
from boolnicd.theorems import drivers
from boolnicd.theorems.gaps import (
    check_lem_gap_hypotheses,
    gap_terms_phi,
    gap_terms_stab,
    n3_normalize,
    n3_properties,
    normalize_first_level,
    verify_nonmonotone_phi_bound,
    verify_qvalue,
)
from boolnicd.theorems.drivers import (
    locate_sign_change,
    rhs_poly,
    sweep_csv,
    verify_gap_formula,
    verify_theorem,
)
from boolnicd.theorems.thresholds import (
    gamma_grid,
    gap_formula_rhs,
    qvalue_expr,
    threshold_eps,
    threshold_eps_lemma,
    threshold_gamma,
    threshold_gamma_prime,
)

from .test_boolfn import functions


@st.composite
def unbiased(draw, n):
    perm = draw(st.permutations([1] * (1 << (n - 1)) + [-1] * (1 << (n - 1))))
    return BooleanFunction(n, perm)


def test_threshold_examples():
    assert threshold_eps(5) == F(2, 5)
    assert threshold_eps_lemma(5) == F(1, 3)
    assert threshold_gamma(5) == F(1, 12)
    assert threshold_gamma_prime(5) == F(1, 14)
    for n in range(5, 27, 2):
        assert threshold_eps(n) > threshold_eps_lemma(n)
        # (n+2)(n-1) = n^2 + n - 2 sits strictly between n^2 and n^2 + n
        assert F(2, n * n + n) < threshold_gamma_prime(n) < F(2, n * n)
    for fn in (threshold_eps, threshold_eps_lemma, threshold_gamma, threshold_gamma_prime):
        with pytest.raises(ValueError):
            fn(3)


@pytest.mark.xfail(strict=True, reason="2/((n+2)(n-1)) < 2/n^2 for every n >= 3")
def test_gamma_prime_at_least_two_over_n_squared():
    assert all(threshold_gamma_prime(n) >= F(2, n * n) for n in range(5, 27, 2))


def test_gap_formula_rhs_examples():
    for n in range(3, 17, 2):
        assert gap_formula_rhs(n, F(1, 2)) == 0
        assert gap_formula_rhs(n, 0) == 0
    assert gap_formula_rhs(5, F(2, 5)) == F(6, 625) == binom_eq_lb_expr(2, F(2, 5))
    with pytest.raises(ValueError):
        gap_formula_rhs(4, F(1, 3))


def test_rhs_poly_matches_pointwise():
    for n in range(3, 16, 2):
        poly = rhs_poly(n)
        for q in (F(1, 7), F(2, 5), F(9, 10)):
            assert poly(q) == gap_formula_rhs(n, q)


def test_verify_gap_formula_examples():
    r = verify_gap_formula(3, F(1, 3))
    assert r.passed and r.lhs == F(-2, 27)
    assert F(1, 3) * (F(1, 9) + F(4, 9)) + F(1, 27) - F(8, 27) == F(-2, 27)
    r = verify_gap_formula(5, F(2, 5))
    assert r.passed and r.lhs == F(6, 625)
    for n in (3, 5, 7):
        r = verify_gap_formula(n, F(1, 2))
        assert r.passed and r.lhs == 0
    with pytest.raises(ValueError):
        verify_gap_formula(13, F(1, 3))
    with pytest.raises(ValueError):
        verify_gap_formula(5, F(1))


def test_gap_terms_stab_examples():
    maj = make_majority(5)
    assert all(v == 0 for v in gap_terms_stab(maj).terms.values())
    g = gopi_g(5)
    exp = gap_terms_stab(g)
    assert len(exp.terms) == 31
    d = maj.table.astype(np.int64) - g.table
    X = coordinate_signs(5)
    for i in range(5):
        assert exp.terms[1 << i] == F(int(2 * X[i] @ d), 32)
    rng = np.random.default_rng(3)
    for q in rng.integers(1, 99, size=10):
        q = F(int(q), 100)
        assert exp.value(q) == -verify_gap_formula(5, q).lhs / 4


@settings(max_examples=100, deadline=None)
@given(functions(n_min=5, n_max=7).filter(lambda f: f.n % 2 == 1))
def test_gap_terms_stab_reassembly(f):
    exp = gap_terms_stab(f)
    assert exp.poly() == rho_to_q(stab_poly(f) - stab_poly(make_majority(f.n)))


def test_gap_terms_phi_examples():
    maj = make_majority(5)
    assert all(v == 0 for v in gap_terms_phi(maj).terms.values())
    for f in (gopi_g(5), gopi_g(7)):
        exp = gap_terms_phi(f)
        g = exp.function
        d = make_majority(f.n).table.astype(np.int64) - g.table
        X = coordinate_signs(f.n)
        for i in range(f.n):
            assert exp.terms[1 << i] == F(int(X[i] @ d), 1 << f.n)
    with pytest.raises(ValueError):
        gap_terms_phi(BooleanFunction(3, [1] * 8))


@settings(max_examples=60, deadline=None)
@given(unbiased(5), st.lists(st.fractions(min_value=0, max_value=1, max_denominator=30), min_size=5, max_size=5))
def test_gap_terms_phi_is_lower_bound(f, ps):
    exp = gap_terms_phi(f)
    maj = make_majority(5)
    assert all(c >= 0 for c in first_level_coefficients(exp.function))
    for p in ps:
        assert exp.value(p) <= phi_eval(maj, p) - phi_eval(f, p)


def test_lem_gap_examples():
    g = gopi_g(5)
    r = check_lem_gap_hypotheses(g, gap_terms_stab(g), 2)
    assert r.passed, r.notes
    r = check_lem_gap_hypotheses(g, gap_terms_phi(g), 1)
    assert r.passed, r.notes
    assert verify_qvalue(5, F(1, 13)).passed
    assert qvalue_expr(5, F(1, 13)) > 0
    with pytest.raises(ValueError):
        verify_qvalue(5, F(1, 12))


def test_lem_gap_detects_broken_hypothesis():
    g = gopi_g(5)
    exp = gap_terms_stab(g)
    # a wrong constant breaks the singleton identity
    assert not check_lem_gap_hypotheses(g, exp, 3).passed


def test_nonmonotone_phi_bound():
    rng = np.random.default_rng(11)
    base = np.array([1] * 16 + [-1] * 16)
    checked = 0
    while checked < 20:
        f = BooleanFunction(5, rng.permutation(base))
        if is_monotone(normalize_first_level(f)):
            continue
        assert verify_nonmonotone_phi_bound(f, F(1, 15)).passed
        checked += 1
    r = verify_nonmonotone_phi_bound(make_majority(5), F(1, 15))
    assert r.passed and r.lhs == 0 and r.rhs == 0
    with pytest.raises(ValueError):
        verify_nonmonotone_phi_bound(f, F(1, 14))


def test_n3_normalize_examples():
    maj = make_majority(3)
    assert n3_normalize(maj) == maj
    out = n3_normalize(-maj)
    assert out in flip_orbit(maj) and n3_properties(out) == (True, True)
    X = coordinate_signs(3)
    minus = BooleanFunction(3, -(X[0] * X[1]))
    assert n3_normalize(minus) == BooleanFunction(3, X[0] * X[1])
    with pytest.raises(ValueError):
        n3_normalize(make_majority(5))


def test_n3_normalize_over_all_unbiased():
    """Property (i) and Phi preservation hold everywhere; property (ii)
    fails exactly on the +-x_i x_j functions, where no unbiased function
    with the same Phi satisfies it."""
    X = coordinate_signs(3)
    products = {BooleanFunction(3, s * X[i] * X[j]) for s in (1, -1) for i in range(3) for j in range(i + 1, 3)}
    failing = set()
    for f in unbiased_functions(3):
        g = n3_normalize(f)
        first, second = n3_properties(g)
        assert first and g.total == 0
        assert phi_poly(g) == phi_poly(f)
        if not second:
            failing.add(f)
    assert failing == products
    target = phi_poly(BooleanFunction(3, X[0] * X[1]))
    same_phi = [f for f in unbiased_functions(3) if phi_poly(f) == target]
    assert not any(n3_properties(f)[1] for f in same_phi)


def test_thm1_sign_pattern_n5():
    assert gap_formula_rhs(5, F(34, 100)) > 0
    assert gap_formula_rhs(5, F(1, 4)) < 0


def test_single_sign_change_dense_grid():
    for n in range(5, 17, 2):
        values = [gap_formula_rhs(n, F(k, 20000)) for k in range(1, 10000)]
        changes = sum(1 for a, b in zip(values, values[1:]) if (a > 0) != (b > 0))
        assert changes == 1
        first_positive = next(k for k, v in enumerate(values, 1) if v > 0)
        q = F(first_positive, 20000)
        assert threshold_gamma(n) < q <= threshold_eps_lemma(n) + F(1, 20000)
        roots, lo, hi = locate_sign_change(n)
        assert roots == 1 and lo <= q and hi >= F(first_positive - 1, 20000)


def test_gamma_grid():
    g = F(1, 12)
    grid = gamma_grid(g)
    assert len(grid) == 8 and max(grid) == g * F(15, 16) and all(0 < q < g for q in grid)


def test_verify_theorem_dispatch():
    reports = verify_theorem("thm4", [3, 5, 7, 9], [F(k, 10) for k in range(1, 10)])
    assert len(reports) == 36 and all(r.passed for r in reports)
    with pytest.raises(ValueError):
        verify_theorem("thm9")
    keys = [r.sort_key() for r in reports]
    assert keys == sorted(keys)


def test_verify_theorem_parallel_is_identical():
    qs = [F(k, 7) for k in range(1, 7)]
    serial = [r.to_json() for r in verify_theorem("thm4", [3, 5, 7], qs, jobs=1)]
    parallel = [r.to_json() for r in verify_theorem("thm4", [3, 5, 7], qs, jobs=3)]
    assert serial == parallel


def test_thm3_reports():
    reports = verify_theorem("thm3")
    assert all(r.passed for r in reports)
    assert "identically_zero': 8" in reports[0].notes


def test_sweep_csv_format():
    text = sweep_csv([3, 5], [F(1, 3), F(2, 5)])
    lines = text.splitlines()
    assert lines[0] == "# schema=boolnicd-sweep-v1"
    assert lines[1] == "n,q_num,q_den,gap_phi,gap_stab,rhs"
    assert lines[-1] == "5,2,5,6/625,6/625,6/625"
    assert text == sweep_csv([3, 5], [F(1, 3), F(2, 5)])


def test_batched_level_sums_match_scalar():
    tables = drivers.random_unbiased_tables(5, 30, 9)
    levels = drivers._level_abs_sums(tables, 5)
    p = F(1, 17)
    scaled = drivers._scaled_binomial(levels, 5, p)
    for t, v in zip(tables, scaled):
        assert F(int(v), 32 * 17**5) == phi_eval(BooleanFunction(5, t), p)
    norm = drivers._normalize_batch(tables, 5)
    for t, u in zip(tables, norm):
        assert BooleanFunction(5, u) == normalize_first_level(BooleanFunction(5, t))
    mono = drivers._monotone_mask(norm, 5)
    for u, m in zip(norm, mono):
        assert bool(m) == is_monotone(BooleanFunction(5, u))
