"""Parameter thresholds and closed-form gap expressions."""

from __future__ import annotations

from fractions import Fraction
from math import comb

from ..exactnum import RationalLike, as_rational, binom_equal_prob


def _require_odd_at_least(n: int, low: int) -> None:
    if n % 2 == 0 or n < low:
        raise ValueError(f"need odd n >= {low}, got {n}")


def threshold_eps(n: int) -> Fraction:
    """4 / ((n-3)^2 + 6): start of the counterexample region in q."""
    _require_odd_at_least(n, 5)
    return Fraction(4, (n - 3) ** 2 + 6)


def threshold_eps_lemma(n: int) -> Fraction:
    """1 / ((h-1)^2 + 2) with h = (n-1)/2, i.e. 4 / ((n-3)^2 + 8)."""
    _require_odd_at_least(n, 5)
    return Fraction(4, (n - 3) ** 2 + 8)


def threshold_gamma(n: int) -> Fraction:
    """4 / ((n+7)(n-1)): Majority is optimal among unate functions below it."""
    _require_odd_at_least(n, 5)
    return Fraction(4, (n + 7) * (n - 1))


def threshold_gamma_prime(n: int) -> Fraction:
    """2 / ((n+2)(n-1)): Majority maximises Phi among all unbiased f below it."""
    _require_odd_at_least(n, 5)
    return Fraction(2, (n + 2) * (n - 1))


def gap_formula_rhs(n: int, q: RationalLike) -> Fraction:
    """(1-2q) Pr[z = z'] + q^n - (1-q)^n with z, z' ~ Bin((n-1)/2, q)."""
    _require_odd_at_least(n, 3)
    q = as_rational(q)
    if not 0 <= q <= 1:
        raise ValueError(f"q={q} outside [0, 1]")
    return (1 - 2 * q) * binom_equal_prob((n - 1) // 2, q) + q**n - (1 - q) ** n


def qvalue_expr(n: int, q: RationalLike) -> Fraction:
    """2(1-q)^(n-1) - q(1-q)^(n-2) (n-1)^2/2 - 2 C(n,3) q^2."""
    q = as_rational(q)
    return (
        2 * (1 - q) ** (n - 1)
        - q * (1 - q) ** (n - 2) * Fraction((n - 1) ** 2, 2)
        - 2 * comb(n, 3) * q**2
    )


def interior_grid(lo: RationalLike, hi: RationalLike, points: int) -> list[Fraction]:
    """``points`` equally spaced rationals strictly inside (lo, hi)."""
    lo, hi = as_rational(lo), as_rational(hi)
    step = (hi - lo) / (points + 1)
    return [lo + k * step for k in range(1, points + 1)]


def gamma_grid(gamma: Fraction) -> list[Fraction]:
    """gamma * k/8 for k = 1..7, plus gamma * 15/16."""
    return [gamma * Fraction(k, 8) for k in range(1, 8)] + [gamma * Fraction(15, 16)]
