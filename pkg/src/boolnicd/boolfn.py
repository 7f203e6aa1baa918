"""Truth-table Boolean functions on {-1, 1}^n.

Index convention (used everywhere in the package): input ``x`` is stored
at bitmask ``m`` where bit ``i`` of ``m`` is set iff ``x_{i+1} = -1``.
``popcount(m)`` is therefore the number of -1 coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import permutations
from typing import Iterable, Sequence

import numpy as np

MAX_ARITY = 24


def popcounts(n: int) -> np.ndarray:
    """popcount of every mask in ``range(2**n)``."""
    pc = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        pc[1 << i : 1 << (i + 1)] = pc[: 1 << i] + 1
    return pc


def mask_to_point(m: int, n: int) -> tuple[int, ...]:
    return tuple(-1 if (m >> i) & 1 else 1 for i in range(n))


def point_to_mask(x: Sequence[int]) -> int:
    m = 0
    for i, v in enumerate(x):
        if v == -1:
            m |= 1 << i
        elif v != 1:
            raise ValueError(f"coordinate {i + 1} is {v}, expected +-1")
    return m


def coordinate_signs(n: int) -> np.ndarray:
    """Array ``X`` of shape (n, 2**n) with ``X[i, m] = x_{i+1}`` at mask m."""
    m = np.arange(1 << n)
    return np.stack([1 - 2 * ((m >> i) & 1) for i in range(n)]).astype(np.int64)


class BooleanFunction:
    """Immutable +-1 valued truth table of arity ``n``."""

    __slots__ = ("n", "table", "__dict__")

    def __init__(self, n: int, table: Iterable[int] | np.ndarray):
        if not 1 <= n <= MAX_ARITY:
            raise ValueError(f"arity {n} outside 1..{MAX_ARITY}")
        arr = np.array(table, dtype=np.int8).reshape(-1)
        if arr.size != 1 << n:
            raise ValueError(f"table has {arr.size} entries, expected {1 << n}")
        if not np.all((arr == 1) | (arr == -1)):
            raise ValueError("table entries must be +1 or -1")
        arr.flags.writeable = False
        self.n = n
        self.table = arr

    def __call__(self, x: Sequence[int]) -> int:
        return int(self.table[point_to_mask(x)])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BooleanFunction):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.table, other.table))

    def __hash__(self) -> int:
        return hash((self.n, self.table.tobytes()))

    def __neg__(self) -> "BooleanFunction":
        return BooleanFunction(self.n, -self.table)

    def __repr__(self) -> str:
        return f"BooleanFunction(n={self.n}, hex={self.to_hex()})"

    @cached_property
    def total(self) -> int:
        return int(self.table.sum(dtype=np.int64))

    def to_hex(self) -> str:
        """Table bitmap (+1 -> 1), mask 0 as the most significant bit."""
        size = 1 << self.n
        bits = (self.table == 1).astype(np.uint8)
        value = int.from_bytes(np.packbits(bits).tobytes(), "big") >> ((-size) % 8)
        return format(value, f"0{max(1, size // 4)}x")

    @classmethod
    def from_hex(cls, n: int, text: str) -> "BooleanFunction":
        size = 1 << n
        value = int(text, 16)
        if value >> size:
            raise ValueError(f"hex table {text!r} is wider than 2^{n} bits")
        table = [1 if (value >> (size - 1 - m)) & 1 else -1 for m in range(size)]
        return cls(n, table)

    @classmethod
    def from_callable(cls, n: int, fn) -> "BooleanFunction":
        return cls(n, [fn(mask_to_point(m, n)) for m in range(1 << n)])


# ---------------------------------------------------------------------------
# Constructors


def make_majority(n: int) -> BooleanFunction:
    if n % 2 == 0:
        raise ValueError(f"majority needs odd arity, got {n}")
    return BooleanFunction(n, np.where(2 * popcounts(n) < n, 1, -1))


def make_dictator(n: int, i: int = 1) -> BooleanFunction:
    if not 1 <= i <= n:
        raise ValueError(f"coordinate {i} outside 1..{n}")
    return BooleanFunction(n, coordinate_signs(n)[i - 1])


def make_parity(n: int, coords: Iterable[int] | None = None) -> BooleanFunction:
    """Product of the listed (1-based) coordinates; all of them by default."""
    coords = range(1, n + 1) if coords is None else coords
    X = coordinate_signs(n)
    out = np.ones(1 << n, dtype=np.int64)
    for i in coords:
        out *= X[i - 1]
    return BooleanFunction(n, out)


# ---------------------------------------------------------------------------
# Symmetries


def apply_sign_flip(f: BooleanFunction, a: int) -> BooleanFunction:
    """``g(x) = f(x xor a)``: negate every coordinate whose bit is set in ``a``."""
    if not 0 <= a < 1 << f.n:
        raise ValueError(f"flip mask {a} too wide for n={f.n}")
    return BooleanFunction(f.n, f.table[np.arange(1 << f.n) ^ a])


def apply_permutation(f: BooleanFunction, perm: Sequence[int]) -> BooleanFunction:
    """``g(x) = f(y)`` with ``y_{perm[i]} = x_i`` (0-based permutation)."""
    n = f.n
    m = np.arange(1 << n)
    src = np.zeros_like(m)
    for i, j in enumerate(perm):
        src |= ((m >> i) & 1) << j
    return BooleanFunction(n, f.table[src])


@lru_cache(maxsize=None)
def _group_sources(n: int, permute: bool) -> np.ndarray:
    """Row g lists, for every mask m, the input read by group element g.

    Rows cover every sign flip ``a``, and every (permutation, flip) pair when
    ``permute`` is set: the transformed table is ``table[src[perm][m ^ a]]``.
    """
    idx = np.arange(1 << n)
    flips = idx[:, None] ^ idx[None, :]
    if not permute:
        return flips
    rows = []
    for perm in permutations(range(n)):
        src = np.zeros_like(idx)
        for i, j in enumerate(perm):
            src |= ((idx >> i) & 1) << j
        rows.append(src[flips])
    return np.concatenate(rows)


def canonical_table(f: BooleanFunction, permute: bool = False) -> BooleanFunction:
    """Lexicographically least table in the orbit of ``f``.

    The group is all coordinate sign flips, extended by coordinate
    permutations when ``permute`` is set.  Tables compare as sequences of
    +-1 over masks 0, 1, 2, ...
    """
    cands = f.table[_group_sources(f.n, permute)]
    order = np.lexsort(cands.T[::-1])
    return BooleanFunction(f.n, cands[order[0]])


def flip_orbit(f: BooleanFunction) -> set[BooleanFunction]:
    return {apply_sign_flip(f, a) for a in range(1 << f.n)}


# ---------------------------------------------------------------------------
# Predicates


@dataclass(frozen=True)
class StructuralPredicates:
    unbiased: bool
    odd: bool
    monotone: bool
    unate: bool
    unate_orientation: int | None


def is_monotone(f: BooleanFunction) -> bool:
    """Nondecreasing in every coordinate (from -1 to +1)."""
    n, t = f.n, f.table
    idx = np.arange(1 << n)
    for i in range(n):
        plus = idx[(idx >> i) & 1 == 0]
        if np.any(t[plus] < t[plus | (1 << i)]):
            return False
    return True


def unate_orientation(f: BooleanFunction) -> int | None:
    """Smallest flip mask ``a`` with ``f(x xor a)`` monotone, if any."""
    n, t = f.n, f.table
    idx = np.arange(1 << n)
    a = 0
    for i in range(n):
        plus = idx[(idx >> i) & 1 == 0]
        diff = t[plus].astype(np.int64) - t[plus | (1 << i)]
        if np.any(diff > 0) and np.any(diff < 0):
            return None
        if np.any(diff < 0):
            a |= 1 << i
    return a


def structural_predicates(f: BooleanFunction) -> StructuralPredicates:
    t = f.table
    full = (1 << f.n) - 1
    orient = unate_orientation(f)
    return StructuralPredicates(
        unbiased=f.total == 0,
        odd=bool(np.all(t[np.arange(1 << f.n) ^ full] == -t)),
        monotone=orient == 0,
        unate=orient is not None,
        unate_orientation=orient,
    )


# ---------------------------------------------------------------------------
# Majority disagreement


def _require_odd(f: BooleanFunction) -> None:
    if f.n % 2 == 0:
        raise ValueError(f"majority comparison needs odd n, got {f.n}")


def mu_and_disagreements(f: BooleanFunction) -> tuple[Fraction, list[int]]:
    """Fraction of inputs where ``f`` differs from Maj_n, and those masks."""
    _require_odd(f)
    diff = np.nonzero(f.table != make_majority(f.n).table)[0]
    return Fraction(len(diff), 1 << f.n), [int(m) for m in diff]


def first_level_coefficients(f: BooleanFunction) -> list[Fraction]:
    """``E[x_i f(x)]`` for i = 1..n."""
    X = coordinate_signs(f.n)
    sums = X @ f.table.astype(np.int64)
    return [Fraction(int(s), 1 << f.n) for s in sums]


def first_level_gap(f: BooleanFunction) -> Fraction:
    """sum_i E[x_i (Maj_n(x) - f(x))]."""
    _require_odd(f)
    n = f.n
    weight = n - 2 * popcounts(n)  # sum_i x_i at each mask
    d = make_majority(n).table.astype(np.int64) - f.table
    return Fraction(int(weight @ d), 1 << n)
