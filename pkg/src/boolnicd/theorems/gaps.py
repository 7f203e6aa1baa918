"""Subset expansions of Stab/Phi differences against Majority and the
hypothesis checks that turn them into sign certificates."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..boolfn import (
    BooleanFunction,
    apply_sign_flip,
    coordinate_signs,
    first_level_coefficients,
    make_majority,
    mu_and_disagreements,
    popcounts,
)
from ..erasure import ErasurePattern, conditional_sum, optimal_partner, phi_eval
from ..exactnum import RationalLike, UniPoly, as_rational, binomial_basis_to_monomial
from .report import VerificationReport
from .thresholds import gamma_grid, qvalue_expr, threshold_gamma, threshold_gamma_prime

GAP_CAP = 11


@dataclass(frozen=True)
class GapExpansion:
    """``G_q = sum_k q^k (1-q)^(n-k) sum_{|S|=k} terms[S]``.

    ``function`` is the function the terms were computed for; for the Phi
    flavor it is the first-level-normalized sign flip of the input.
    """

    n: int
    terms: dict[int, Fraction]
    flavor: str
    function: BooleanFunction

    def level_sums(self) -> list[Fraction]:
        sums = [Fraction(0)] * (self.n + 1)
        for s, g in self.terms.items():
            sums[bin(s).count("1")] += g
        return sums

    def poly(self) -> UniPoly:
        return binomial_basis_to_monomial(self.level_sums(), self.n, "q")

    def value(self, q: RationalLike) -> Fraction:
        return self.poly()(as_rational(q))


def _check_arity(f: BooleanFunction) -> None:
    if f.n % 2 == 0 or f.n > GAP_CAP:
        raise ValueError(f"gap expansions need odd n <= {GAP_CAP}, got {f.n}")


def _autocorr(t: np.ndarray) -> np.ndarray:
    idx = np.arange(t.size)
    return np.array([int(t @ t[idx ^ s]) for s in range(t.size)], dtype=np.int64)


def gap_terms_stab(f: BooleanFunction) -> GapExpansion:
    """G_S = E[f(x) f(x^S) - Maj(x) Maj(x^S)], so G_q = Stab[f] - Stab[Maj]
    at rho = 1 - 2q."""
    _check_arity(f)
    diff = _autocorr(f.table.astype(np.int64)) - _autocorr(make_majority(f.n).table.astype(np.int64))
    terms = {s: Fraction(int(diff[s]), 1 << f.n) for s in range(1, 1 << f.n)}
    return GapExpansion(f.n, terms, "stab", f)


def normalize_first_level(f: BooleanFunction) -> BooleanFunction:
    """Flip every coordinate whose first-level coefficient is negative."""
    coeffs = first_level_coefficients(f)
    a = sum(1 << i for i, c in enumerate(coeffs) if c < 0)
    return apply_sign_flip(f, a)


def _pattern_indices(n: int) -> np.ndarray:
    """``idx[S, m]``: packed pattern revealing S from the input at mask m."""
    m = np.arange(1 << n)
    digit = [((1 + ((m >> i) & 1)) * 3**i).astype(np.int64) for i in range(n)]
    idx = np.zeros((1 << n, 1 << n), dtype=np.int64)
    for s in range(1, 1 << n):
        low = (s & -s).bit_length() - 1
        idx[s] = idx[s & (s - 1)] + digit[low]
    return idx


def gap_terms_phi(f: BooleanFunction) -> GapExpansion:
    """G_S = E[(Maj(x) - f(x)) g*(x_S)] with g* the optimal partner of f.

    ``f`` is first flipped so that every E[x_i f] >= 0.  Zero conditional
    means are resolved toward the sign of the revealed values, which makes
    g* = x_i on singletons and g* = (x_i + x_j)/2 on agreeing pairs whenever
    the data allow it.  Any resolution gives a valid lower bound on
    Phi[Maj] - Phi[f].
    """
    _check_arity(f)
    if f.total:
        raise ValueError("Phi gap expansion needs an unbiased function")
    f = normalize_first_level(f)
    n = f.n
    g = optimal_partner(f, tie_break="revealed").values.astype(np.int64)
    d = make_majority(n).table.astype(np.int64) - f.table
    prod = g[_pattern_indices(n)] @ d
    terms = {s: Fraction(int(prod[s]), 1 << n) for s in range(1, 1 << n)}
    return GapExpansion(n, terms, "phi_lower", f)


# ---------------------------------------------------------------------------


def _pair_bound(f: BooleanFunction, i: int, j: int, disagree: np.ndarray) -> Fraction:
    """1/4 E[(x_i + x_j)(Maj - f) | x_i = x_j] - Pr[x in E_f | x_i != x_j]."""
    n = f.n
    X = coordinate_signs(n)
    d = make_majority(n).table.astype(np.int64) - f.table
    same = X[i] == X[j]
    half = 1 << (n - 1)
    first = Fraction(int(((X[i] + X[j]) * d)[same].sum()), 4 * half)
    second = Fraction(int(disagree[~same].sum()), half)
    return first - second


def check_lem_gap_hypotheses(
    f: BooleanFunction,
    expansion: GapExpansion,
    c: RationalLike,
    grid: list[Fraction] | None = None,
) -> VerificationReport:
    """Check hypotheses (i)-(iii) of the generic gap lemma and its conclusion.

    The conclusion G_q > 0 is checked on ``grid`` (default: interior points
    below 4/((n+7)(n-1))) whenever f disagrees with Majority somewhere; the
    auxiliary polynomial 2(1-q)^(n-1) - ... is checked on the same grid.
    """
    c = as_rational(c)
    g = expansion.function
    n = g.n
    mu, _ = mu_and_disagreements(g)
    disagree = (g.table != make_majority(n).table).astype(np.int64)
    X = coordinate_signs(n)
    d = make_majority(n).table.astype(np.int64) - g.table
    failures = []

    for i in range(n):
        want = c * Fraction(int(X[i] @ d), 1 << n)
        if expansion.terms[1 << i] != want:
            failures.append(f"(i) S={{{i + 1}}}: {expansion.terms[1 << i]} != {want}")
    for i in range(n):
        for j in range(i + 1, n):
            bound = c * _pair_bound(g, i, j, disagree)
            if expansion.terms[(1 << i) | (1 << j)] < bound:
                failures.append(f"(ii) S={{{i + 1},{j + 1}}}")
    pc = popcounts(n)
    for s, val in expansion.terms.items():
        if pc[s] >= 3 and val < -2 * c * mu:
            failures.append(f"(iii) S={s:b}")

    gamma = threshold_gamma(n) if n >= 5 else None
    if grid is None:
        grid = gamma_grid(gamma) if gamma is not None else []
    poly = expansion.poly()
    conclusion_bad = [q for q in grid if mu > 0 and poly(q) <= 0]
    qvalue_bad = [q for q in grid if qvalue_expr(n, q) <= 0] if n >= 5 else []
    if conclusion_bad:
        failures.append(f"G_q <= 0 at q in {[str(q) for q in conclusion_bad]}")
    if qvalue_bad:
        failures.append(f"auxiliary polynomial <= 0 at {[str(q) for q in qvalue_bad]}")
    notes = "; ".join(failures) if failures else f"{expansion.flavor}, c={c}, mu={mu}, {len(grid)} q points"
    if mu == 0:
        notes += "; mu_f = 0 so the conclusion is vacuous"
    return VerificationReport(
        claim="lem:gap",
        n=n,
        param=c,
        lhs=min((poly(q) for q in grid), default=None),
        rhs=Fraction(0),
        passed=not failures,
        notes=notes,
    )


def verify_qvalue(n: int, q: RationalLike) -> VerificationReport:
    q = as_rational(q)
    if not 0 < q < threshold_gamma(n):
        raise ValueError(f"q={q} outside (0, {threshold_gamma(n)})")
    val = qvalue_expr(n, q)
    return VerificationReport("lem:qvalue", n, q, val, Fraction(0), val > 0)


def verify_nonmonotone_phi_bound(f: BooleanFunction, p: RationalLike) -> VerificationReport:
    """Phi_p[Maj] - Phi_p[f] >= mu_f p (2(1-p)^(n-1) - p n (n-1)) > 0.

    ``f`` is first-level-normalized before mu_f is taken.  The bound is
    required to be positive only when mu_f > 0.
    """
    p = as_rational(p)
    n = f.n
    gp = threshold_gamma_prime(n)
    if not 0 < p < gp:
        raise ValueError(f"p={p} outside the open interval (0, {gp})")
    if f.total:
        raise ValueError("needs an unbiased function")
    g = normalize_first_level(f)
    mu, _ = mu_and_disagreements(g)
    lhs = phi_eval(make_majority(n), p) - phi_eval(g, p)
    bound = mu * p * (2 * (1 - p) ** (n - 1) - p * n * (n - 1))
    bernoulli = mu * p * (2 * (1 - (n - 1) * p) - p * n * (n - 1))
    ok = lhs >= bound and bound >= bernoulli and (mu == 0 or bernoulli > 0)
    return VerificationReport("thm2(iii)", n, p, lhs, bound, ok, f"mu={mu}")


# ---------------------------------------------------------------------------
# n = 3 reduction


def n3_properties(f: BooleanFunction) -> tuple[bool, bool]:
    """Whether some optimal partner of f satisfies the two n = 3 properties.

    (i) g*(x_i) = x_i on every singleton, (ii) g*(x_i, x_j) = (x_i + x_j)/2
    whenever x_i = x_j.  A zero conditional mean can be resolved either
    way, so each property only fails on a strictly wrong sign.
    """
    n = f.n
    first = True
    for i in range(n):
        for s, vals in ((1, 0), (-1, 1 << i)):
            if conditional_sum(f, ErasurePattern(1 << i, vals)) * s < 0:
                first = False
    second = True
    for i in range(n):
        for j in range(i + 1, n):
            pair = (1 << i) | (1 << j)
            for s, vals in ((1, 0), (-1, pair)):
                if conditional_sum(f, ErasurePattern(pair, vals)) * s < 0:
                    second = False
    return first, second


def n3_normalize(f: BooleanFunction) -> BooleanFunction:
    """Sign flip of an unbiased 3-variable f meant to satisfy the two
    properties, following the reduction argument.

    The flip makes every first-level coefficient non-negative (smallest
    mask on ties).  If the pair property then fails, the argument says the
    result is -x_i x_j and substitutes x_i x_j, reached by one more flip.
    Nothing further is attempted: x_i x_j itself violates the pair property
    at x_i = x_j = -1, so callers must check the properties on the output.
    """
    if f.n != 3:
        raise ValueError(f"n3_normalize needs n = 3, got {f.n}")
    if f.total:
        raise ValueError("n3_normalize needs an unbiased function")
    g = normalize_first_level(f)
    if n3_properties(g)[1]:
        return g
    X = coordinate_signs(3)
    for i in range(3):
        for j in range(i + 1, 3):
            if np.array_equal(g.table, -(X[i] * X[j])):
                return apply_sign_flip(g, 1 << i)
    return g
