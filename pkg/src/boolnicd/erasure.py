"""The erasure functional Phi_p, optimal partners and NICD correlations.

An erasure pattern reveals the coordinates in a subset ``S`` and erases the
rest.  Patterns are packed into a dense index with one base-3 digit per
coordinate (coordinate 1 least significant): 0 = erased, 1 = +1, 2 = -1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .boolfn import BooleanFunction
from .exactnum import RationalLike, UniPoly, as_rational, binomial_basis_to_monomial, format_rational

PHI_CAP = 13


@dataclass(frozen=True)
class ErasurePattern:
    """Revealed subset ``revealed`` with the revealed values in ``values``.

    ``values`` uses the table convention (bit set <=> -1) and must be zero
    outside ``revealed``.
    """

    revealed: int
    values: int

    def __post_init__(self):
        if self.values & ~self.revealed:
            raise ValueError("pattern has values on erased coordinates")

    def index(self, n: int) -> int:
        idx = 0
        for i in reversed(range(n)):
            d = 0
            if (self.revealed >> i) & 1:
                d = 2 if (self.values >> i) & 1 else 1
            idx = idx * 3 + d
        return idx

    @classmethod
    def from_index(cls, idx: int, n: int) -> "ErasurePattern":
        revealed = values = 0
        for i in range(n):
            idx, d = divmod(idx, 3)
            if d:
                revealed |= 1 << i
                if d == 2:
                    values |= 1 << i
        return cls(revealed, values)

    @classmethod
    def from_symbols(cls, ys) -> "ErasurePattern":
        """Build from a sequence over {1, -1, None}; None is an erasure."""
        revealed = values = 0
        for i, y in enumerate(ys):
            if y is None:
                continue
            revealed |= 1 << i
            if y == -1:
                values |= 1 << i
            elif y != 1:
                raise ValueError(f"symbol {y!r} at coordinate {i + 1}")
        return cls(revealed, values)


@lru_cache(maxsize=None)
def revealed_counts(n: int) -> np.ndarray:
    """Number of revealed coordinates for every packed pattern index."""
    cnt = np.zeros(1, dtype=np.int64)
    for _ in range(n):
        cnt = np.concatenate([cnt, cnt + 1, cnt + 1])
    cnt.flags.writeable = False
    return cnt


@lru_cache(maxsize=None)
def revealed_sums(n: int) -> np.ndarray:
    """Sum of revealed coordinate values (+1/-1) for every pattern index."""
    s = np.zeros(1, dtype=np.int64)
    for _ in range(n):
        s = np.concatenate([s, s + 1, s - 1])
    s.flags.writeable = False
    return s


def conditional_sums(f: BooleanFunction) -> np.ndarray:
    """For every pattern, the sum of ``f`` over all completions of the
    erased coordinates (an integer; divide by 2^{#erased} for the mean)."""
    n = f.n
    if n > PHI_CAP:
        raise ValueError(f"pattern enumeration capped at n={PHI_CAP}")
    # C-order reshape puts coordinate n-j on axis j, matching base-3 packing
    t = f.table.astype(np.int64).reshape((2,) * n)
    for axis in range(n):
        erased = t.sum(axis=axis, keepdims=True)
        t = np.concatenate([erased, t], axis=axis)
    return t.reshape(-1)


def conditional_sum(f: BooleanFunction, pat: ErasurePattern) -> Fraction:
    """E[f(x) | x agrees with the pattern on its revealed coordinates]."""
    n = f.n
    if pat.revealed >> n:
        raise ValueError(f"pattern wider than n={n}")
    free = [i for i in range(n) if not (pat.revealed >> i) & 1]
    total = 0
    for c in range(1 << len(free)):
        m = pat.values
        for k, i in enumerate(free):
            if (c >> k) & 1:
                m |= 1 << i
        total += int(f.table[m])
    return Fraction(total, 1 << len(free))


@dataclass(frozen=True)
class PartnerFunction:
    """A +-1 value for every packed erasure pattern, plus tie flags."""

    n: int
    values: np.ndarray
    ties: np.ndarray

    def __call__(self, pat: ErasurePattern) -> int:
        return int(self.values[pat.index(self.n)])

    def resolved(self, tie_value: int) -> "PartnerFunction":
        vals = np.where(self.ties, np.int8(tie_value), self.values).astype(np.int8)
        return PartnerFunction(self.n, vals, self.ties)


def optimal_partner(f: BooleanFunction, tie_break: str = "plus") -> PartnerFunction:
    """``g*(y) = sign(E[f(x) | y])``.

    Zero conditional means are flagged; they resolve to +1 (``"plus"``) or
    to the sign of the sum of revealed values, then +1 (``"revealed"``).
    """
    sums = conditional_sums(f)
    ties = sums == 0
    vals = np.sign(sums)
    if tie_break == "plus":
        fill = np.ones_like(vals)
    elif tie_break == "revealed":
        fill = np.sign(revealed_sums(f.n))
        fill[fill == 0] = 1
    else:
        raise ValueError(f"unknown tie_break {tie_break!r}")
    vals = np.where(ties, fill, vals).astype(np.int8)
    return PartnerFunction(f.n, vals, ties)


def partner_from_callable(n: int, fn) -> PartnerFunction:
    """Partner defined by a Python callable on :class:`ErasurePattern`."""
    vals = np.array([fn(ErasurePattern.from_index(i, n)) for i in range(3**n)], dtype=np.int8)
    if not np.all((vals == 1) | (vals == -1)):
        raise ValueError("partner values must be +-1")
    return PartnerFunction(n, vals, np.zeros(vals.size, dtype=bool))


def _by_level(values: np.ndarray, n: int) -> list[int]:
    cnt = revealed_counts(n)
    return [int(values[cnt == k].sum()) for k in range(n + 1)]


def _binomial_mix(level_sums: list[int], n: int, scale: int, p: Fraction) -> Fraction:
    return sum(
        (Fraction(s, scale) * p**k * (1 - p) ** (n - k) for k, s in enumerate(level_sums)),
        Fraction(0),
    )


def phi_binomial_weights(f: BooleanFunction) -> list[Fraction]:
    """Weights of Phi_p[f] in the basis p^k (1-p)^(n-k)."""
    levels = _by_level(np.abs(conditional_sums(f)), f.n)
    return [Fraction(s, 1 << f.n) for s in levels]


def phi_poly(f: BooleanFunction) -> UniPoly:
    """Phi_p[f] = E_y |E[f(x) | y]| as an exact polynomial in p."""
    return binomial_basis_to_monomial(phi_binomial_weights(f), f.n, "p")


def phi_eval(f: BooleanFunction, p: RationalLike) -> Fraction:
    return phi_poly(f)(as_rational(p))


def phi_direct(f: BooleanFunction, p: RationalLike) -> Fraction:
    """Per-pattern weighted sum, written from the definition.

    Independent of :func:`conditional_sums`; meant for cross-checks at
    small n.
    """
    p = as_rational(p)
    n = f.n
    total = Fraction(0)
    for revealed in range(1 << n):
        k = bin(revealed).count("1")
        weight = p**k * (1 - p) ** (n - k)
        if not weight:
            continue
        inner = Fraction(0)
        sub = revealed
        while True:
            inner += abs(conditional_sum(f, ErasurePattern(revealed, sub)))
            if sub == 0:
                break
            sub = (sub - 1) & revealed
        total += weight * inner / (1 << k)
    return total


def nicd_correlation(f: BooleanFunction, g: PartnerFunction, p: RationalLike) -> Fraction:
    """E[f(x) g(y)] for (x, y) ~ SBES_p^n."""
    if g.n != f.n:
        raise ValueError(f"arity mismatch: f has n={f.n}, g has n={g.n}")
    p = as_rational(p)
    prod = conditional_sums(f) * g.values.astype(np.int64)
    return _binomial_mix(_by_level(prod, f.n), f.n, 1 << f.n, p)


def partner_bias(g: PartnerFunction, p: RationalLike, ties: str = "stored") -> Fraction:
    """E[g(y)] over y ~ SBES_p^n.

    ``ties`` controls flagged patterns: ``"stored"`` uses the stored value,
    ``"plus"``/``"minus"`` force +1/-1, ``"ignore"`` drops their mass.
    """
    p = as_rational(p)
    n = g.n
    vals = g.values.astype(np.int64)
    if ties == "plus":
        vals = np.where(g.ties, 1, vals)
    elif ties == "minus":
        vals = np.where(g.ties, -1, vals)
    elif ties == "ignore":
        vals = np.where(g.ties, 0, vals)
    elif ties != "stored":
        raise ValueError(f"unknown ties mode {ties!r}")
    # a pattern with k revealed coordinates has mass p^k (1-p)^(n-k) / 2^k;
    # rescale to the common denominator 2^n
    cnt = revealed_counts(n)
    scaled = vals << (n - cnt)
    return _binomial_mix(_by_level(scaled, n), n, 1 << n, p)


def phi_json(f: BooleanFunction, at: Fraction | None = None) -> dict:
    out = {"n": f.n, "table_hex": f.to_hex()}
    if at is None:
        poly = phi_poly(f)
        out["coeffs"] = [format_rational(poly.coeff(k)) for k in range(f.n + 1)]
        out["variable"] = "p"
    else:
        out["at"] = format_rational(at)
        out["value"] = format_rational(phi_eval(f, at))
        out["variable"] = "p"
    return out
