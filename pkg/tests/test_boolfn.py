from fractions import Fraction as F
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boolnicd.boolfn import (
    BooleanFunction,
    apply_permutation,
    apply_sign_flip,
    canonical_table,
    first_level_gap,
    flip_orbit,
    is_monotone,
    make_dictator,
    make_majority,
    make_parity,
    mask_to_point,
    mu_and_disagreements,
    point_to_mask,
    structural_predicates,
    unate_orientation,
)
from boolnicd.families import gopi_g


@st.composite
def functions(draw, n_min=1, n_max=6):
    n = draw(st.integers(n_min, n_max))
    bits = draw(st.lists(st.sampled_from([-1, 1]), min_size=1 << n, max_size=1 << n))
    return BooleanFunction(n, bits)


def brute_monotone(f):
    for x in product([-1, 1], repeat=f.n):
        for i in range(f.n):
            if x[i] == -1:
                y = list(x)
                y[i] = 1
                if f(y) < f(x):
                    return False
    return True


def test_index_convention_round_trip():
    for n in range(1, 11):
        for m in range(1 << n):
            assert point_to_mask(mask_to_point(m, n)) == m
    assert mask_to_point(0b101, 3) == (-1, 1, -1)


def test_table_validation():
    with pytest.raises(ValueError):
        BooleanFunction(2, [1, -1, 1])
    with pytest.raises(ValueError):
        BooleanFunction(1, [1, 0])


def test_majority_examples():
    assert make_majority(1) == make_dictator(1, 1)
    maj = make_majority(3)
    assert maj((1, 1, -1)) == 1
    assert int((maj.table == 1).sum()) == 4
    with pytest.raises(ValueError):
        make_majority(4)


def test_dictator_examples():
    assert make_dictator(3, 1)((-1, 1, 1)) == -1
    for n in range(1, 6):
        for i in range(1, n + 1):
            p = structural_predicates(make_dictator(n, i))
            assert p.unbiased and p.odd and p.monotone
    with pytest.raises(ValueError):
        make_dictator(3, 4)


def test_hex_round_trip_and_format():
    maj = make_majority(3)
    assert maj.to_hex() == "e8"
    assert BooleanFunction.from_hex(3, "e8") == maj
    assert make_dictator(1, 1).to_hex() == "2"


@given(functions())
def test_hex_round_trip_property(f):
    assert BooleanFunction.from_hex(f.n, f.to_hex()) == f


def test_predicate_examples():
    for n in range(1, 16, 2):
        maj = make_majority(n)
        # x -> -x complements the mask, which reverses the table
        assert maj.total == 0 and is_monotone(maj)
        assert np.array_equal(maj.table[::-1], -maj.table)
    p = structural_predicates(make_majority(5))
    assert p.unbiased and p.odd and p.monotone and p.unate and p.unate_orientation == 0
    par = structural_predicates(make_parity(2))
    assert par.unbiased and not par.odd and not par.monotone and not par.unate
    g5 = structural_predicates(gopi_g(5))
    assert g5.unbiased and g5.odd and g5.monotone and g5.unate
    assert g5.monotone == brute_monotone(gopi_g(5))


@settings(max_examples=200)
@given(functions(n_max=4))
def test_monotone_matches_definition(f):
    assert is_monotone(f) == brute_monotone(f)
    a = unate_orientation(f)
    expected = [b for b in range(1 << f.n) if brute_monotone(apply_sign_flip(f, b))]
    assert a == (expected[0] if expected else None)


def test_mu_examples():
    assert mu_and_disagreements(make_majority(5)) == (0, [])
    mu, dis = mu_and_disagreements(gopi_g(5))
    e = point_to_mask((1, 1, 1, -1, -1))
    assert mu == F(2, 32) and dis == sorted([e, e ^ 31])
    assert mu_and_disagreements(-make_majority(3)) == (1, list(range(8)))
    with pytest.raises(ValueError):
        mu_and_disagreements(make_dictator(2, 1))


def test_sign_flip_examples():
    maj = make_majority(3)
    assert apply_sign_flip(maj, 0) == maj
    assert apply_sign_flip(maj, 7) == -maj
    assert len(flip_orbit(maj)) == 8


@given(functions(), st.data())
def test_sign_flip_properties(f, data):
    a = data.draw(st.integers(0, (1 << f.n) - 1))
    g = apply_sign_flip(f, a)
    assert apply_sign_flip(g, a) == f
    assert g.total == f.total
    assert canonical_table(g) == canonical_table(f)


@given(functions(n_max=5), st.data())
def test_permutation_canonical(f, data):
    perm = data.draw(st.permutations(range(f.n)))
    assert canonical_table(apply_permutation(f, perm), permute=True) == canonical_table(f, permute=True)


@st.composite
def odd_functions(draw):
    n = draw(st.sampled_from([3, 5]))
    half = draw(st.lists(st.sampled_from([-1, 1]), min_size=1 << (n - 1), max_size=1 << (n - 1)))
    # mask m and its complement are antipodal; the lower half fixes the rest
    table = half + [-v for v in reversed(half)]
    return BooleanFunction(n, table)


@given(odd_functions())
def test_odd_flip_negation_preserves_disagreements(f):
    assert structural_predicates(f).odd
    g = -apply_sign_flip(f, (1 << f.n) - 1)
    assert len(mu_and_disagreements(g)[1]) == len(mu_and_disagreements(f)[1])


def test_first_level_gap_examples():
    assert first_level_gap(make_majority(5)) == 0
    assert first_level_gap(-make_majority(3)) == 3
    g5 = gopi_g(5)
    assert first_level_gap(g5) >= 2 * mu_and_disagreements(g5)[0]


def test_first_level_gap_exhaustive_n3():
    for t in range(256):
        f = BooleanFunction(3, [1 if (t >> m) & 1 else -1 for m in range(8)])
        assert first_level_gap(f) >= 2 * mu_and_disagreements(f)[0]


@settings(max_examples=300)
@given(functions(n_min=5, n_max=5))
def test_first_level_gap_random_n5(f):
    assert first_level_gap(f) >= 2 * mu_and_disagreements(f)[0]
