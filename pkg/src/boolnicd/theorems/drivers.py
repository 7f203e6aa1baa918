"""Drivers that reproduce each theorem and lemma as a list of reports."""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, Iterable, Sequence

import numpy as np

from ..boolfn import (
    BooleanFunction,
    coordinate_signs,
    first_level_gap,
    flip_orbit,
    make_majority,
    mu_and_disagreements,
    popcounts,
)
from ..erasure import phi_poly, revealed_counts
from ..exactnum import (
    IDENTICALLY_ZERO,
    STRICTLY_POSITIVE,
    UniPoly,
    as_rational,
    binom_comp_value,
    binom_eq_lb_expr,
    binom_equal_prob,
    count_roots_open,
    format_rational,
    rho_to_q,
    sturm_sign_on_interval,
)
from ..families import (
    enumerate_monotone,
    enumerate_unate_unbiased,
    enumerate_unbiased_ltfs,
    gopi_g,
    unbiased_functions,
)
from ..spectral import stab_poly
from . import numeric
from .gaps import (
    check_lem_gap_hypotheses,
    gap_terms_phi,
    gap_terms_stab,
    n3_normalize,
    n3_properties,
    verify_nonmonotone_phi_bound,
    verify_qvalue,
)
from .report import VerificationReport, sort_reports
from .thresholds import (
    gamma_grid,
    gap_formula_rhs,
    interior_grid,
    threshold_eps,
    threshold_eps_lemma,
    threshold_gamma,
    threshold_gamma_prime,
)

CLAIMS = (
    "thm1",
    "thm2",
    "thm3",
    "thm4",
    "conj1_sweep",
    "conj2_sweep",
    "lem:binom-comp",
    "lem:binom-eq-lb",
    "lem:maj-diff",
    "lem:qvalue",
    "lem:gap",
    "lem:three-case-reduction",
)

DEFAULT_SEED = 20240601


def fan_out(fn: Callable, items: Sequence, jobs: int = 1) -> list:
    """Order-preserving map, optionally across processes."""
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def default_q_grid(count: int = 20) -> list[Fraction]:
    """``count`` rationals in (0, 1) with distinct denominators."""
    return [Fraction(k, count + 1) for k in range(1, count + 1)]


# ---------------------------------------------------------------------------
# Theorem 4


@lru_cache(maxsize=None)
def _counterexample_polys(n: int) -> tuple[UniPoly, UniPoly]:
    """(Phi[g_n] - Phi[Maj_n] in p, Stab[Maj_n] - Stab[g_n] in q)."""
    g, maj = gopi_g(n), make_majority(n)
    phi_gap = phi_poly(g) - phi_poly(maj)
    stab_gap = rho_to_q(stab_poly(maj) - stab_poly(g))
    return phi_gap, stab_gap


def verify_gap_formula(n: int, q) -> VerificationReport:
    """Three-way exact equality of the scaled Phi gap, scaled Stab gap and
    the binomial closed form."""
    q = as_rational(q)
    if n % 2 == 0 or not 3 <= n <= 11:
        raise ValueError(f"gap formula check supports odd 3 <= n <= 11, got {n}")
    if not 0 < q < 1:
        raise ValueError(f"q={q} outside (0, 1)")
    phi_gap, stab_gap = _counterexample_polys(n)
    a = 2 ** (n - 2) * phi_gap(q)
    b = 2 ** (n - 3) * stab_gap(q) if n >= 3 else None
    c = gap_formula_rhs(n, q)
    return VerificationReport(
        "thm4",
        n,
        q,
        a,
        c,
        a == b == c,
        f"stab side {b}",
        extra={"phi_gap": phi_gap(q), "stab_gap": stab_gap(q), "rhs": c},
    )


def _thm4_for_n(args) -> list[VerificationReport]:
    n, qs = args
    return [verify_gap_formula(n, q) for q in qs]


def verify_thm4(n_list=(3, 5, 7, 9, 11), q_list=None, jobs: int = 1) -> list[VerificationReport]:
    qs = default_q_grid() if q_list is None else list(q_list)
    return [r for rs in fan_out(_thm4_for_n, [(n, qs) for n in n_list], jobs) for r in rs]


# ---------------------------------------------------------------------------
# Theorem 1


def rhs_poly(n: int) -> UniPoly:
    """gap_formula_rhs(n, q) as a polynomial in q."""
    h = (n - 1) // 2
    q = UniPoly([0, 1], "q")
    one_minus = UniPoly([1, -1], "q")
    eq = UniPoly((), "q")
    for k in range(h + 1):
        term = q**k * one_minus ** (h - k) * comb(h, k)
        eq = eq + term * term
    return UniPoly([1, -2], "q") * eq + q**n - one_minus**n


def locate_sign_change(n: int, tol: Fraction = Fraction(1, 10**6)) -> tuple[int, Fraction, Fraction]:
    """Exact root count of the closed form on (0, 1/2) and, when there is a
    single root, a bracketing interval of width <= tol."""
    poly = rhs_poly(n)
    roots = count_roots_open(poly, 0, Fraction(1, 2))
    lo, hi = Fraction(0), Fraction(1, 2)
    if roots == 1:
        while hi - lo > tol:
            mid = (lo + hi) / 2
            if count_roots_open(poly, lo, mid) or poly(mid) == 0:
                hi = mid
            else:
                lo = mid
    return roots, lo, hi


def verify_thm1(n_list=range(5, 17, 2), points: int = 20) -> list[VerificationReport]:
    reports = []
    for n in n_list:
        gamma, eps, eps_lemma = threshold_gamma(n), threshold_eps(n), threshold_eps_lemma(n)
        neg = [gap_formula_rhs(n, q) for q in gamma_grid(gamma)]
        reports.append(
            VerificationReport(
                "thm1:negative-below-gamma", n, gamma, max(neg), Fraction(0), all(v < 0 for v in neg),
                f"{len(neg)} q points in (0, {gamma})",
            )
        )
        for tag, lo in (("thm1:positive-lemma-interval", eps_lemma), ("thm1:positive-eps-interval", eps)):
            vals = [gap_formula_rhs(n, q) for q in interior_grid(lo, Fraction(1, 2), points)]
            reports.append(
                VerificationReport(tag, n, lo, min(vals), Fraction(0), all(v > 0 for v in vals),
                                   f"{points} q points in ({lo}, 1/2)")
            )
        roots, lo, hi = locate_sign_change(n)
        at_eps = gap_formula_rhs(n, eps)
        reports.append(
            VerificationReport(
                "thm1:sign-change", n, eps_lemma, lo, hi,
                roots == 1 and gamma <= lo and hi <= eps_lemma,
                f"{roots} root(s) in (0, 1/2), bracket [{lo}, {hi}]; gamma={gamma}, "
                f"lemma endpoint={eps_lemma}, eps={eps}; value at eps is "
                f"{'positive' if at_eps > 0 else 'non-positive'}",
            )
        )
    return reports


# ---------------------------------------------------------------------------
# Theorem 3


def _orbit_status(diff: UniPoly, lo, hi, in_orbit: bool) -> tuple[str, bool]:
    sign = sturm_sign_on_interval(diff, lo, hi)
    if in_orbit:
        return sign, sign == IDENTICALLY_ZERO
    return sign, sign == STRICTLY_POSITIVE


def verify_thm3() -> list[VerificationReport]:
    maj = make_majority(3)
    orbit = flip_orbit(maj)
    reports = []
    phi_maj = phi_poly(maj)
    fs = unbiased_functions(3)
    signs = {}
    ok = True
    for f in fs:
        sign, good = _orbit_status(phi_maj - phi_poly(f), 0, Fraction(1, 2), f in orbit)
        signs[sign] = signs.get(sign, 0) + 1
        ok &= good
    reports.append(
        VerificationReport("thm3:phi", 3, Fraction(1, 2), None, None, ok,
                           f"{len(fs)} unbiased functions, Sturm signs {dict(sorted(signs.items()))}")
    )
    stab_maj = stab_poly(maj)
    ltf_set = set(unbiased_ltf_members(3))
    ltfs = [f for f in fs if f in ltf_set]
    signs, ok = {}, True
    for f in ltfs:
        sign, good = _orbit_status(stab_poly(f) - stab_maj, 0, 1, f in orbit)
        signs[sign] = signs.get(sign, 0) + 1
        ok &= good
    reports.append(
        VerificationReport("thm3:stab", 3, Fraction(1), None, None, ok,
                           f"{len(ltfs)} unbiased LTFs, Sturm signs {dict(sorted(signs.items()))}")
    )
    # not a claim of the theorem: does the Stab statement extend to unate f?
    unate_set = set(unate_unbiased_members(3))
    unate = [f for f in fs if f in unate_set]
    ext = all(_orbit_status(stab_poly(f) - stab_maj, 0, 1, f in orbit)[1] for f in unate)
    reports.append(
        VerificationReport("thm3:stab-unate-extension", 3, Fraction(1), None, None, True,
                           f"report only: {len(unate)} unate unbiased functions, "
                           f"{'all' if ext else 'not all'} certified")
    )
    return reports


def unbiased_ltf_members(n: int) -> list[BooleanFunction]:
    """Every unbiased LTF (not just orbit representatives)."""
    cat = enumerate_unbiased_ltfs(n, "flips")
    return sorted({g for f in cat.functions() for g in flip_orbit(f)}, key=lambda f: f.table.tolist())


def unate_unbiased_members(n: int) -> list[BooleanFunction]:
    cat = enumerate_unate_unbiased(n, "flips")
    return sorted({g for f in cat.functions() for g in flip_orbit(f)}, key=lambda f: f.table.tolist())


# ---------------------------------------------------------------------------
# Theorem 2


def _level_abs_sums(tables: np.ndarray, n: int) -> np.ndarray:
    """Batch version of the Phi binomial weights, scaled by 2^n: (B, n+1)."""
    b = tables.shape[0]
    t = tables.astype(np.int64).reshape((b,) + (2,) * n)
    for axis in range(1, n + 1):
        t = np.concatenate([t.sum(axis=axis, keepdims=True), t], axis=axis)
    sums = np.abs(t.reshape(b, -1))
    cnt = revealed_counts(n)
    return np.stack([sums[:, cnt == k].sum(axis=1) for k in range(n + 1)], axis=1)


def _scaled_binomial(levels: np.ndarray, n: int, p: Fraction) -> np.ndarray:
    """sum_k levels[:, k] a^k (b-a)^(n-k) for p = a/b, as exact Python ints."""
    a, b = p.numerator, p.denominator
    basis = np.array([a**k * (b - a) ** (n - k) for k in range(n + 1)], dtype=object)
    return levels.astype(object).dot(basis)


def random_unbiased_tables(n: int, count: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    base = np.array([1] * (1 << (n - 1)) + [-1] * (1 << (n - 1)), dtype=np.int8)
    return np.stack([rng.permutation(base) for _ in range(count)])


def _monotone_mask(tables: np.ndarray, n: int) -> np.ndarray:
    idx = np.arange(1 << n)
    ok = np.ones(tables.shape[0], dtype=bool)
    for i in range(n):
        plus = idx[(idx >> i) & 1 == 0]
        ok &= np.all(tables[:, plus] >= tables[:, plus | (1 << i)], axis=1)
    return ok


def _normalize_batch(tables: np.ndarray, n: int) -> np.ndarray:
    X = coordinate_signs(n)
    coeff = tables.astype(np.int64) @ X.T
    flips = ((coeff < 0) * (1 << np.arange(n))).sum(axis=1)
    idx = np.arange(1 << n)[None, :] ^ flips[:, None]
    return np.take_along_axis(tables, idx, axis=1)


def verify_thm2(n: int = 5, samples: int = 100_000, seed: int = DEFAULT_SEED) -> list[VerificationReport]:
    maj = make_majority(n)
    orbit = flip_orbit(maj)
    gamma, gamma_p = threshold_gamma(n), threshold_gamma_prime(n)
    qs = gamma_grid(gamma)
    cat = enumerate_unate_unbiased(n, "flips")
    stab_maj, phi_maj = stab_poly(maj), phi_poly(maj)
    stab_bad, phi_bad = [], []
    for f in cat.functions():
        in_orbit = f in orbit
        sd = rho_to_q(stab_poly(f) - stab_maj)
        pd = phi_maj - phi_poly(f)
        for q in qs:
            for diff, bad in ((sd(q), stab_bad), (pd(q), phi_bad)):
                if (in_orbit and diff != 0) or (not in_orbit and diff <= 0):
                    bad.append((f.to_hex(), q))
    mono_count = cat.notes["monotone_count"]
    reports = [
        VerificationReport("thm2(i)", n, gamma, None, None, not stab_bad and mono_count == 7581,
                           f"{len(cat)} unate unbiased flip-orbits from {mono_count} monotone functions; "
                           f"rho = 1-2q at {len(qs)} q in (0, {gamma}); failures {stab_bad[:5]}"),
        VerificationReport("thm2(ii)", n, gamma, None, None, not phi_bad and mono_count == 7581,
                           f"{len(cat)} flip-orbits, {len(qs)} p in (0, {gamma}); failures {phi_bad[:5]}"),
    ]

    tables = random_unbiased_tables(n, samples, seed)
    tables = tables[~_monotone_mask(_normalize_batch(tables, n), n)]
    levels = _level_abs_sums(tables, n)
    maj_levels = _level_abs_sums(maj.table[None, :], n)[0]
    disagreements = (_normalize_batch(tables, n) != maj.table[None, :]).sum(axis=1)
    bad, bound_bad = 0, 0
    worst = None
    for p in gamma_grid(gamma_p):
        a, b = p.numerator, p.denominator
        diff = _scaled_binomial(maj_levels[None, :] - levels, n, p)
        bad += int(sum(1 for v in diff if v <= 0))
        bound = disagreements.astype(object) * a * (2 * (b - a) ** (n - 1) - a * n * (n - 1) * b ** (n - 2))
        bound_bad += int(sum(1 for v, w in zip(diff, bound) if v < w or w <= 0))
        m = min(diff)
        worst = m if worst is None else min(worst, m)
    reports.append(
        VerificationReport(
            "thm2(iii)", n, gamma_p, None, None, bad == 0 and bound_bad == 0,
            f"{tables.shape[0]} seeded non-monotone unbiased functions (seed {seed}), "
            f"{len(gamma_grid(gamma_p))} p in (0, {gamma_p}); strict failures {bad}, "
            f"disagreement-bound failures {bound_bad}",
        )
    )
    # exact per-function reports for a slice of the sample, via the scalar path
    for t in tables[:20]:
        f = BooleanFunction(n, t)
        reports.append(verify_nonmonotone_phi_bound(f, gamma_p * Fraction(15, 16)))
    return reports


# ---------------------------------------------------------------------------
# Lemmas


def lemma_grid(count: int = 20) -> list[Fraction]:
    return [Fraction(k, count + 1) for k in range(1, count + 1)]


def verify_binom_comp(h_max: int = 20, qs=None) -> list[VerificationReport]:
    qs = lemma_grid() if qs is None else qs
    reports = []
    for h in range(h_max + 1):
        bad = []
        for q in qs:
            a = binom_comp_value(h, q)
            b = (1 - 2 * q) * binom_equal_prob(h, q)
            c = (1 - 2 * q) * binom_equal_prob(h, 1 - q)
            if not a == b == c:
                bad.append(q)
        reports.append(VerificationReport("lem:binom-comp", h, None, None, None, not bad,
                                          f"{len(qs)} rationals; failures {bad}"))
    return reports


def verify_binom_eq_lb(h_range=range(2, 51), points: int = 25) -> list[VerificationReport]:
    reports = []
    for h in h_range:
        lo = Fraction(1, (h - 1) ** 2 + 2)
        vals = [binom_eq_lb_expr(h, q) for q in interior_grid(lo, Fraction(1, 2), points)]
        reports.append(VerificationReport("lem:binom-eq-lb", h, lo, min(vals), Fraction(0),
                                          all(v > 0 for v in vals), f"{points} q in ({lo}, 1/2)"))
    return reports


def _maj_diff_batch(tables: np.ndarray, n: int) -> tuple[int, int]:
    """Count of sampled tables violating / meeting the bound with equality."""
    weight = n - 2 * popcounts(n)
    d = make_majority(n).table.astype(np.int64)[None, :] - tables
    lhs = d @ weight  # 2^n * first-level gap
    rhs = 2 * (d != 0).sum(axis=1)  # 2^n * 2 mu
    return int((lhs < rhs).sum()), int((lhs == rhs).sum())


def verify_maj_diff(samples: int = 100_000, seed: int = DEFAULT_SEED) -> list[VerificationReport]:
    reports = []
    fs = [BooleanFunction(3, [1 if (t >> m) & 1 else -1 for m in range(8)]) for t in range(256)]
    bad = [f.to_hex() for f in fs if first_level_gap(f) < 2 * mu_and_disagreements(f)[0]]
    reports.append(VerificationReport("lem:maj-diff", 3, None, None, None, not bad,
                                      f"exhaustive over 256 tables; failures {bad}"))
    rng = np.random.default_rng(seed)
    for n in (5, 7):
        tables = rng.choice(np.array([-1, 1], dtype=np.int64), size=(samples, 1 << n))
        viol, tight = _maj_diff_batch(tables, n)
        reports.append(VerificationReport("lem:maj-diff", n, None, None, None, viol == 0,
                                          f"{samples} seeded random tables (seed {seed}); "
                                          f"violations {viol}, equality cases {tight}"))
    return reports


def verify_qvalue_grid(n_list=range(5, 27, 2)) -> list[VerificationReport]:
    out = []
    for n in n_list:
        for q in gamma_grid(threshold_gamma(n)):
            out.append(verify_qvalue(n, q))
    return out


def monotone_unbiased(n: int) -> list[BooleanFunction]:
    return [e.function for e in enumerate_monotone(n) if e.function.total == 0]


def verify_lem_gap(samples: int = 200, seed: int = DEFAULT_SEED) -> list[VerificationReport]:
    reports = []
    g5 = gopi_g(5)
    reports.append(check_lem_gap_hypotheses(g5, gap_terms_stab(g5), 2))
    reports.append(check_lem_gap_hypotheses(g5, gap_terms_phi(g5), 1))
    pool = monotone_unbiased(5)
    rng = np.random.default_rng(seed)
    pick = rng.choice(len(pool), size=min(samples, len(pool)), replace=False)
    stab_fail, phi_fail = [], []
    for i in sorted(int(k) for k in pick):
        f = pool[i]
        if not check_lem_gap_hypotheses(f, gap_terms_stab(f), 2).passed:
            stab_fail.append(f.to_hex())
        if not check_lem_gap_hypotheses(f, gap_terms_phi(f), 1).passed:
            phi_fail.append(f.to_hex())
    reports.append(VerificationReport("lem:gap", 5, Fraction(2), None, None, not stab_fail,
                                      f"stab flavor on {len(pick)} seeded monotone unbiased f; failures {stab_fail}"))
    reports.append(VerificationReport("lem:gap", 5, Fraction(1), None, None, not phi_fail,
                                      f"phi flavor on {len(pick)} seeded monotone unbiased f; failures {phi_fail}"))
    return reports


def verify_three_case_reduction() -> list[VerificationReport]:
    reports = []
    for f in unbiased_functions(3):
        g = n3_normalize(f)
        first, second = n3_properties(g)
        same_phi = phi_poly(g) == phi_poly(f)
        reports.append(
            VerificationReport(
                "lem:three-case-reduction", 3, None, None, None, first and second and same_phi and g.total == 0,
                f"f={f.to_hex()} -> {g.to_hex()}: property (i) {first}, (ii) {second}, Phi preserved {same_phi}",
            )
        )
    return reports


# ---------------------------------------------------------------------------
# Numeric conjecture sweeps


def verify_conj1_sweep(n_list=range(1, 16, 2)) -> list[VerificationReport]:
    reports = []
    for n in n_list:
        poly = stab_poly(make_majority(n))
        worst = min(numeric.to_float(poly(r)) - numeric.arcsin_stab_limit(numeric.to_float(r))
                    for r in numeric.percent_grid())
        reports.append(VerificationReport("conj1_sweep", n, None, worst, -numeric.NUMERIC_TOL,
                                          worst >= -numeric.NUMERIC_TOL,
                                          "min over 99 rho of Stab[Maj_n] - (2/pi) arcsin(rho)", numeric=True))
    return reports


def scan_ltf_catalog_conj1(n: int = 5) -> VerificationReport:
    """Byproduct scan: unbiased-LTF representatives below the arcsin curve."""
    viol = []
    for f in enumerate_unbiased_ltfs(n).functions():
        poly = stab_poly(f)
        for r in numeric.percent_grid():
            if numeric.to_float(poly(r)) < numeric.arcsin_stab_limit(numeric.to_float(r)) - numeric.NUMERIC_TOL:
                viol.append((f.to_hex(), str(r)))
                break
    return VerificationReport("conj1_sweep:ltf-scan", n, None, None, None, True,
                              f"report only: {len(viol)} representatives dip below; {viol[:5]}", numeric=True)


def verify_conj2_sweep(n_list=range(1, 14, 2)) -> list[VerificationReport]:
    reports = []
    low = [Fraction(k, 200) for k in range(1, 100)]
    high = [Fraction(1, 2) + p for p in low]
    for n in n_list:
        poly = phi_poly(make_majority(n))
        gaps = [numeric.arcsin_phi_limit(numeric.to_float(p)) - numeric.to_float(poly(p)) for p in low]
        worst = min(gaps)
        reports.append(VerificationReport("conj2_sweep", n, None, worst, -numeric.NUMERIC_TOL,
                                          worst >= -numeric.NUMERIC_TOL,
                                          "min over 99 p in (0, 1/2) of (2/pi) arcsin(sqrt p) - Phi[Maj_n]",
                                          numeric=True))
        above = sum(1 for p in high if numeric.to_float(poly(p)) >= numeric.arcsin_phi_limit(numeric.to_float(p)))
        reports.append(VerificationReport("conj2_sweep:reversal", n, None, None, None, True,
                                          f"report only: Phi[Maj_n] >= limit at {above}/99 p in (1/2, 1)",
                                          numeric=True))
    return reports


# ---------------------------------------------------------------------------


def verify_theorem(claim: str, n_list: Iterable[int] | None = None, q_list=None,
                   seed: int = DEFAULT_SEED, jobs: int = 1, samples: int | None = None) -> list[VerificationReport]:
    """Run one claim (or ``"all"``) and return sorted reports."""
    if claim == "all":
        reports = []
        for c in CLAIMS:
            reports.extend(verify_theorem(c, n_list, q_list, seed, jobs, samples))
        return sort_reports(reports)
    ns = None if n_list is None else list(n_list)
    if claim == "thm4":
        ns = [n for n in (ns or [3, 5, 7, 9, 11]) if n % 2 and 3 <= n <= 11]
        out = verify_thm4(ns, q_list, jobs)
    elif claim == "thm1":
        ns = [n for n in (ns or range(5, 17, 2)) if n % 2 and n >= 5]
        out = verify_thm1(ns)
    elif claim == "thm2":
        out = verify_thm2(5, samples or 100_000, seed)
    elif claim == "thm3":
        out = verify_thm3()
    elif claim == "conj1_sweep":
        out = verify_conj1_sweep([n for n in (ns or range(1, 16, 2)) if n % 2 and n <= 15])
        out.append(scan_ltf_catalog_conj1(5))
    elif claim == "conj2_sweep":
        out = verify_conj2_sweep([n for n in (ns or range(1, 14, 2)) if n % 2 and n <= 13])
    elif claim == "lem:binom-comp":
        out = verify_binom_comp()
    elif claim == "lem:binom-eq-lb":
        out = verify_binom_eq_lb()
    elif claim == "lem:maj-diff":
        out = verify_maj_diff(samples or 100_000, seed)
    elif claim == "lem:qvalue":
        out = verify_qvalue_grid()
    elif claim == "lem:gap":
        out = verify_lem_gap(200, seed)
    elif claim == "lem:three-case-reduction":
        out = verify_three_case_reduction()
    else:
        raise ValueError(f"unknown claim {claim!r}; choose from {', '.join(CLAIMS)} or all")
    return sort_reports(out)


# ---------------------------------------------------------------------------
# CSV sweep

SWEEP_SCHEMA = "boolnicd-sweep-v1"
SWEEP_COLUMNS = ["n", "q_num", "q_den", "gap_phi", "gap_stab", "rhs"]


def sweep_rows(n_list: Iterable[int], qs: Iterable[Fraction]) -> list[list[str]]:
    """Per (n, q): 2^(n-2) Phi gap, 2^(n-3) Stab gap and the closed form."""
    rows = []
    qs = list(qs)
    for n in n_list:
        phi_gap, stab_gap = _counterexample_polys(n)
        for q in qs:
            rows.append([
                str(n), str(q.numerator), str(q.denominator),
                format_rational(2 ** (n - 2) * phi_gap(q)),
                format_rational(2 ** (n - 3) * stab_gap(q)),
                format_rational(gap_formula_rhs(n, q)),
            ])
    return rows


def sweep_csv(n_list: Iterable[int], qs: Iterable[Fraction]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([f"# schema={SWEEP_SCHEMA}"])
    writer.writerow(SWEEP_COLUMNS)
    writer.writerows(sweep_rows(n_list, qs))
    return buf.getvalue()
