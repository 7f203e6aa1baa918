"""The counterexample family g_n, exact LTF detection, and catalogs of
unbiased LTFs, monotone and unate functions at small arity."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

from .boolfn import (
    BooleanFunction,
    apply_permutation,
    apply_sign_flip,
    canonical_table,
    coordinate_signs,
    make_majority,
    mask_to_point,
    structural_predicates,
)
from .lp import phase_one

# Dedekind numbers M(n): monotone Boolean functions of n variables
DEDEKIND = {0: 2, 1: 3, 2: 6, 3: 20, 4: 168, 5: 7581}

DEFAULT_WEIGHT_BOUND = {3: 3, 5: 5}

GROUPS = ("none", "flips", "flips+permutations")


@dataclass(frozen=True)
class LTFWeights:
    """``sign(sum_i w_i x_i - threshold)``."""

    weights: tuple[int, ...]
    threshold: int = 0

    def margins(self) -> np.ndarray:
        n = len(self.weights)
        X = coordinate_signs(n)
        return np.array(self.weights, dtype=np.int64) @ X - self.threshold

    def to_json(self) -> dict:
        return {"weights": list(self.weights), "threshold": self.threshold}


class TieError(ValueError):
    """A weight vector leaves the sign undefined at some input."""

    def __init__(self, witness: tuple[int, ...]):
        super().__init__(f"weighted sum equals the threshold at x = {witness}")
        self.witness = witness


def gopi_g(n: int) -> BooleanFunction:
    """Majority with its value negated at e and -e.

    ``e`` is +1 on the first h+1 coordinates and -1 on the last h,
    ``h = (n-1)/2``.  Built from the truth table, not from weights.
    """
    if n % 2 == 0 or n < 3:
        raise ValueError(f"g_n needs odd n >= 3, got {n}")
    h = (n - 1) // 2
    e = ((1 << n) - 1) ^ ((1 << (h + 1)) - 1)  # -1 on coordinates h+2..n
    table = make_majority(n).table.copy()
    for m in (e, e ^ ((1 << n) - 1)):
        table[m] = -table[m]
    return BooleanFunction(n, table)


def ltf_to_function(w: LTFWeights | Sequence[int], n: int | None = None, threshold: int = 0) -> BooleanFunction:
    if not isinstance(w, LTFWeights):
        w = LTFWeights(tuple(int(v) for v in w), threshold)
    if n is not None and n != len(w.weights):
        raise ValueError(f"{len(w.weights)} weights for arity {n}")
    n = len(w.weights)
    margins = w.margins()
    zero = np.nonzero(margins == 0)[0]
    if zero.size:
        # first tie in reading order: x_1 most significant, +1 before -1
        points = [mask_to_point(int(m), n) for m in zero]
        raise TieError(max(points))
    return BooleanFunction(n, np.where(margins > 0, 1, -1))


def is_ltf(f: BooleanFunction, homogeneous: bool = False) -> LTFWeights | None:
    """Exact linear-separability test.

    Looks for ``z = (w, theta)`` with ``f(x) (w.x - theta) >= 1`` for every
    input.  By Farkas' lemma that system is infeasible iff some ``y >= 0``
    with ``sum y = 1`` has ``sum_x y_x f(x) (x, -1) = 0``; phase one of the
    simplex method on the latter decides it, and when it is infeasible the
    optimal multipliers ``(u, v)`` give ``z = -u / v``.
    """
    n = f.n
    if not homogeneous and structural_predicates(f).odd:
        # an odd LTF is separated by its own homogeneous part
        homogeneous = True
    X = coordinate_signs(n).T  # (2^n, n)
    rows = X if homogeneous else np.hstack([X, -np.ones((1 << n, 1), dtype=np.int64)])
    rows = rows * f.table.astype(np.int64)[:, None]
    cols = np.hstack([rows, np.ones((1 << n, 1), dtype=np.int64)])
    d = rows.shape[1]
    value, pi = phase_one(cols, [0] * d + [1])
    if value == 0:
        return None
    z = [-pi[r] / pi[d] for r in range(d)]
    den = lcm(*(c.denominator for c in z))
    ints = [int(c * den) for c in z]
    g = 0
    for v in ints:
        g = gcd(g, v)
    ints = [v // g for v in ints]
    w = LTFWeights(tuple(ints[:n]), 0 if homogeneous else ints[n])
    if ltf_to_function(w) != f:
        raise AssertionError("separating weights failed verification")
    return w


def two_block_ratio(w: LTFWeights, n: int) -> Fraction:
    """Average B-block weight over average A-block weight for g_n witnesses.

    g_n is symmetric within each block, so averaging a separating vector
    over block permutations gives another separating vector of the form
    (a, ..., a, b, ..., b).
    """
    h = (n - 1) // 2
    a = Fraction(sum(w.weights[: h + 1]), h + 1)
    b = Fraction(sum(w.weights[h + 1 :]), h)
    return b / a


# ---------------------------------------------------------------------------
# Catalogs


@dataclass(frozen=True)
class CatalogEntry:
    function: BooleanFunction
    orbit_size: int
    weights: LTFWeights | None = None

    def to_json(self) -> dict:
        out = {"table_hex": self.function.to_hex(), "n": self.function.n}
        if self.weights is not None:
            out["weights"] = self.weights.to_json()
        out["orbit_size"] = self.orbit_size
        return out


@dataclass
class FunctionCatalog:
    n: int
    cls: str
    group: str
    entries: list[CatalogEntry]
    weight_bound: int | None = None
    notes: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __contains__(self, f: BooleanFunction) -> bool:
        rep = canonical_form(f, self.group)
        return any(e.function == rep for e in self.entries)

    def functions(self) -> list[BooleanFunction]:
        return [e.function for e in self.entries]

    def to_jsonl(self) -> str:
        return "".join(json.dumps(e.to_json(), sort_keys=True) + "\n" for e in self.entries)


def canonical_form(f: BooleanFunction, group: str) -> BooleanFunction:
    if group == "none":
        return f
    if group not in GROUPS:
        raise ValueError(f"unknown group {group!r}")
    return canonical_table(f, permute=group == "flips+permutations")


def orbit_size(f: BooleanFunction, group: str) -> int:
    if group == "none":
        return 1
    bases = [f]
    if group == "flips+permutations":
        bases = list({apply_permutation(f, p) for p in permutations(range(f.n))})
    return len({apply_sign_flip(g, a) for g in bases for a in range(1 << f.n)})


def _sort_key(f: BooleanFunction) -> tuple:
    return tuple(f.table.tolist())


def build_catalog(
    functions: Iterable[BooleanFunction],
    n: int,
    cls: str,
    group: str,
    weights: dict | None = None,
    weight_bound: int | None = None,
) -> FunctionCatalog:
    """Deduplicate by canonical form and sort representatives."""
    reps: dict[BooleanFunction, BooleanFunction] = {}
    for f in functions:
        rep = canonical_form(f, group)
        reps.setdefault(rep, f)
    entries = []
    for rep in sorted(reps, key=_sort_key):
        w = None
        if weights is not None:
            w = weights.get(rep)
        entries.append(CatalogEntry(rep, orbit_size(rep, group), w))
    return FunctionCatalog(n, cls, group, entries, weight_bound)


def all_functions(n: int) -> list[BooleanFunction]:
    """Every Boolean function of arity n (n <= 4)."""
    if n > 4:
        raise ValueError("exhaustive listing only for n <= 4")
    size = 1 << n
    return [BooleanFunction(n, [1 if (t >> m) & 1 else -1 for m in range(size)]) for t in range(1 << size)]


def unbiased_functions(n: int) -> list[BooleanFunction]:
    return [f for f in all_functions(n) if f.total == 0]


def bounded_weight_ltfs(n: int, bound: int, homogeneous: bool = True) -> dict[BooleanFunction, LTFWeights]:
    """Unbiased LTFs reachable with integer weights in [-bound, bound].

    Homogeneous mode keeps only weight vectors with odd sum, so the linear
    form never vanishes.  Otherwise the weights are doubled and every odd
    threshold is tried, which covers each gap between attainable sums.
    """
    X = coordinate_signs(n)
    found: dict[BooleanFunction, LTFWeights] = {}
    grid = np.array(list(product(range(-bound, bound + 1), repeat=n)), dtype=np.int64)
    if homogeneous:
        grid = grid[grid.sum(axis=1) % 2 == 1]
        cands = [(w, 0) for w in grid]
    else:
        cands = []
        for w in 2 * grid:
            top = int(np.abs(w).sum())
            cands.extend((w, t) for t in range(-top - 1, top + 2, 2))
    weights = np.array([w for w, _ in cands], dtype=np.int64).reshape(-1, n)
    thresholds = np.array([t for _, t in cands], dtype=np.int64)
    margins = weights @ X - thresholds[:, None]
    balanced = np.nonzero((margins > 0).sum(axis=1) * 2 == margins.shape[1])[0]
    signs = np.where(margins[balanced] > 0, 1, -1)
    # np.unique returns the first occurrence of each table
    _, first = np.unique(signs, axis=0, return_index=True)
    for r in balanced[np.sort(first)]:
        f = BooleanFunction(n, np.where(margins[r] > 0, 1, -1))
        found[f] = LTFWeights(tuple(int(v) for v in weights[r]), int(thresholds[r]))
    return found


def _with_weights(cat: FunctionCatalog) -> FunctionCatalog:
    cat.entries = [CatalogEntry(e.function, e.orbit_size, is_ltf(e.function)) for e in cat.entries]
    return cat


def enumerate_unbiased_ltfs(n: int, group: str = "flips", bound: int | None = None) -> FunctionCatalog:
    """Unbiased LTFs: exhaustive LP filter at n = 3, bounded weights at n = 5."""
    if n == 3:
        fs = [f for f in unbiased_functions(3) if is_ltf(f) is not None]
        cat = build_catalog(fs, 3, "unbiased_ltf", group)
    elif n == 5:
        bound = DEFAULT_WEIGHT_BOUND[5] if bound is None else bound
        cat = build_catalog(bounded_weight_ltfs(5, bound), 5, "unbiased_ltf", group, weight_bound=bound)
    else:
        raise ValueError(f"unbiased LTF catalog supports n in {{3, 5}}, got {n}")
    return _with_weights(cat)


def monotone_tables(n: int) -> list[int]:
    """All monotone functions as +1-set bitmaps (bit m set iff f(m) = +1).

    Splitting on the last coordinate, a monotone f is a pair of monotone
    functions (x_n = +1 half, x_n = -1 half) with the -1 half contained in
    the +1 half.
    """
    if n == 0:
        return [0, 1]
    half = 1 << (n - 1)
    lower = monotone_tables(n - 1)
    return sorted(hi | (lo << half) for hi in lower for lo in lower if lo & ~hi == 0)


def _bitmap_to_function(n: int, bits: int) -> BooleanFunction:
    return BooleanFunction(n, [1 if (bits >> m) & 1 else -1 for m in range(1 << n)])


def enumerate_monotone(n: int, group: str = "none") -> FunctionCatalog:
    if not 1 <= n <= 5:
        raise ValueError(f"monotone enumeration supports 1 <= n <= 5, got {n}")
    fs = [_bitmap_to_function(n, t) for t in monotone_tables(n)]
    if len(fs) != DEDEKIND[n]:
        raise AssertionError(f"found {len(fs)} monotone functions, expected {DEDEKIND[n]}")
    cat = build_catalog(fs, n, "monotone", group)
    cat.notes["monotone_count"] = len(fs)
    return cat


def enumerate_unate_unbiased(n: int, group: str = "flips") -> FunctionCatalog:
    """Sign-flip closure of the monotone functions, kept if unbiased."""
    if not 1 <= n <= 5:
        raise ValueError(f"unate enumeration supports 1 <= n <= 5, got {n}")
    mono = enumerate_monotone(n)
    unbiased_mono = [e.function for e in mono if e.function.total == 0]
    closure = {apply_sign_flip(f, a) for f in unbiased_mono for a in range(1 << n)}
    cat = build_catalog(closure, n, "unate_unbiased", group)
    cat.notes["monotone_count"] = len(mono)
    cat.notes["closure_size"] = len(closure)
    return cat


def validate_weight_bound(n: int = 5, bound: int | None = None) -> list[BooleanFunction]:
    """Unate unbiased LTFs (found by LP) missing from the bounded catalog."""
    ltfs = enumerate_unbiased_ltfs(n, "flips", bound)
    missing = []
    for e in enumerate_unate_unbiased(n, "flips"):
        if is_ltf(e.function) is not None and e.function not in ltfs:
            missing.append(e.function)
    return missing
