"""Exact rationals, univariate polynomials with Sturm sign certification,
and binomial-distribution helpers.

Scalars are :class:`fractions.Fraction`, which is always stored in lowest
terms with a positive denominator.  Nothing in this module touches floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from typing import Iterable, Sequence, Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]

LABELS = ("rho", "p", "q")

STRICTLY_POSITIVE = "strictly_positive"
STRICTLY_NEGATIVE = "strictly_negative"
HAS_ZERO = "has_zero"
IDENTICALLY_ZERO = "identically_zero"


def as_rational(value: RationalLike) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to a Fraction.

    Floats are rejected: every parameter entering the exact core must be
    given as an integer ratio.
    """
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        try:
            n, d = int(num), int(den)
        except ValueError:
            raise ValueError(f"malformed rational {text!r}") from None
        if d <= 0:
            raise ValueError(f"rational {text!r} needs a positive denominator")
        return Fraction(n, d)
    try:
        return Fraction(int(text))
    except ValueError:
        raise ValueError(f"malformed rational {text!r}") from None


def format_rational(x: Fraction) -> str:
    """JSON wire form: always ``"num/den"``, even for integers."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# Polynomials


@dataclass(frozen=True)
class UniPoly:
    """Polynomial in one labelled variable with exact coefficients.

    ``coeffs[k]`` multiplies ``t**k``.  Trailing zeros are trimmed on
    construction, so the zero polynomial has ``coeffs == ()``.
    The label is metadata: arithmetic ignores it and keeps the left label.
    """

    coeffs: tuple[Fraction, ...]
    label: str = "rho"

    def __init__(self, coeffs: Iterable[RationalLike] = (), label: str = "rho"):
        if label not in LABELS:
            raise ValueError(f"unknown variable label {label!r}")
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "label", label)

    @classmethod
    def monomial(cls, k: int, c: RationalLike = 1, label: str = "rho") -> "UniPoly":
        return cls([0] * k + [c], label)

    @property
    def degree(self) -> float | int:
        """Index of the top coefficient; ``-inf`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def relabel(self, label: str) -> "UniPoly":
        return UniPoly(self.coeffs, label)

    def __call__(self, x: RationalLike) -> Fraction:
        return poly_eval(self, x)

    def __add__(self, other: "UniPoly") -> "UniPoly":
        m = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self.coeff(k) + other.coeff(k) for k in range(m)], self.label)

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs], self.label)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other: "UniPoly | RationalLike") -> "UniPoly":
        if not isinstance(other, UniPoly):
            c = as_rational(other)
            return UniPoly([a * c for a in self.coeffs], self.label)
        if self.is_zero() or other.is_zero():
            return UniPoly((), self.label)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out, self.label)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UniPoly":
        out = UniPoly([1], self.label)
        for _ in range(k):
            out = out * self
        return out

    def derivative(self) -> "UniPoly":
        return UniPoly([k * c for k, c in enumerate(self.coeffs)][1:], self.label)

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = len(other.coeffs) - 1
        lead = other.coeffs[-1]
        quot = [Fraction(0)] * max(len(rem) - dd, 0)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k] / lead
            if c:
                quot[k - dd] = c
                for j, b in enumerate(other.coeffs):
                    rem[k - dd + j] -= c * b
        return UniPoly(quot, self.label), UniPoly(rem[:dd], self.label)

    def to_json(self) -> dict:
        return {"coeffs": [format_rational(c) for c in self.coeffs], "variable": self.label}

    @classmethod
    def from_json(cls, obj: dict) -> "UniPoly":
        return cls([parse_rational(c) for c in obj["coeffs"]], obj["variable"])

    def __repr__(self) -> str:
        if not self.coeffs:
            return f"UniPoly(0; {self.label})"
        terms = [f"{c}*{self.label}^{k}" for k, c in enumerate(self.coeffs) if c]
        return f"UniPoly({' + '.join(terms)})"


def poly_eval(poly: UniPoly, x: RationalLike) -> Fraction:
    """Horner evaluation."""
    x = as_rational(x)
    acc = Fraction(0)
    for c in reversed(poly.coeffs):
        acc = acc * x + c
    return acc


def poly_substitute_affine(poly: UniPoly, a: RationalLike, b: RationalLike, new_label: str) -> UniPoly:
    """Return ``P(a*t + b)`` expanded in the monomial basis of ``t``."""
    a, b = as_rational(a), as_rational(b)
    lin = UniPoly([b, a], new_label)
    acc = UniPoly((), new_label)
    for c in reversed(poly.coeffs):
        acc = acc * lin + UniPoly([c], new_label)
    return acc


def rho_to_q(poly: UniPoly) -> UniPoly:
    """Rewrite a polynomial in rho as one in q, with rho = 1 - 2q."""
    return poly_substitute_affine(poly, -2, 1, "q")


def q_to_rho(poly: UniPoly) -> UniPoly:
    return poly_substitute_affine(poly, Fraction(-1, 2), Fraction(1, 2), "rho")


def binomial_basis_to_monomial(weights: Sequence[RationalLike], n: int, label: str) -> UniPoly:
    """Expand ``sum_k weights[k] * t^k (1-t)^(n-k)`` into monomials.

    Uses ``t^k (1-t)^(n-k) = sum_j C(n-k, j-k) (-1)^(j-k) t^j``.
    """
    if len(weights) != n + 1:
        raise ValueError(f"need {n + 1} weights, got {len(weights)}")
    out = [Fraction(0)] * (n + 1)
    for k, w in enumerate(weights):
        w = as_rational(w)
        if not w:
            continue
        for j in range(k, n + 1):
            c = comb(n - k, j - k)
            out[j] += w * (c if (j - k) % 2 == 0 else -c)
    return UniPoly(out, label)


# ---------------------------------------------------------------------------
# Sturm certification


def _primitive_positive(poly: UniPoly) -> UniPoly:
    """Scale by a positive rational so coefficients are coprime integers."""
    if poly.is_zero():
        return poly
    den = 1
    for c in poly.coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in poly.coeffs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return UniPoly([Fraction(v, g) for v in ints], poly.label)


def _poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    while not b.is_zero():
        a, b = b, _primitive_positive(a.divmod(b)[1])
    return _primitive_positive(a)


def sturm_sequence(poly: UniPoly) -> list[UniPoly]:
    seq = [_primitive_positive(poly), _primitive_positive(poly.derivative())]
    while not seq[-1].is_zero():
        seq.append(_primitive_positive(-(seq[-2].divmod(seq[-1])[1])))
    return seq[:-1]


def _sign_changes(seq: Sequence[UniPoly], x: Fraction) -> int:
    changes, prev = 0, 0
    for p in seq:
        v = poly_eval(p, x)
        if v:
            s = 1 if v > 0 else -1
            if prev and s != prev:
                changes += 1
            prev = s
    return changes


def count_roots_open(poly: UniPoly, lo: RationalLike, hi: RationalLike) -> int:
    """Number of distinct real roots in the open interval (lo, hi)."""
    lo, hi = as_rational(lo), as_rational(hi)
    if poly.is_zero():
        raise ValueError("zero polynomial has infinitely many roots")
    sqfree = poly.divmod(_poly_gcd(poly, poly.derivative()))[0]
    # endpoints must not be roots for the sign-change count to be exact
    for end in (lo, hi):
        lin = UniPoly([-end, 1], poly.label)
        while sqfree.degree > 0 and poly_eval(sqfree, end) == 0:
            sqfree = sqfree.divmod(lin)[0]
    if sqfree.degree <= 0:
        return 0
    seq = sturm_sequence(sqfree)
    return _sign_changes(seq, lo) - _sign_changes(seq, hi)


def sturm_sign_on_interval(poly: UniPoly, lo: RationalLike, hi: RationalLike) -> str:
    """Classify the sign of ``poly`` on the open interval (lo, hi)."""
    lo, hi = as_rational(lo), as_rational(hi)
    if not lo < hi:
        raise ValueError(f"empty interval ({lo}, {hi})")
    if poly.is_zero():
        return IDENTICALLY_ZERO
    if count_roots_open(poly, lo, hi):
        return HAS_ZERO
    mid = poly_eval(poly, (lo + hi) / 2)
    return STRICTLY_POSITIVE if mid > 0 else STRICTLY_NEGATIVE


# ---------------------------------------------------------------------------
# Binomials


def binom_pmf(h: int, k: int, q: RationalLike) -> Fraction:
    if not 0 <= k <= h:
        raise ValueError(f"k={k} outside 0..{h}")
    q = as_rational(q)
    return comb(h, k) * q**k * (1 - q) ** (h - k)


def binom_equal_prob(h: int, q: RationalLike) -> Fraction:
    """Pr[w = w'] for independent w, w' ~ Bin(h, q)."""
    if h < 0:
        raise ValueError("h must be non-negative")
    q = as_rational(q)
    return sum((binom_pmf(h, k, q) ** 2 for k in range(h + 1)), Fraction(0))


def binom_comp_value(h: int, p: RationalLike) -> Fraction:
    """E[(-1)^[u > u']] for u ~ Bin(h+1, p), u' ~ Bin(h, p), by double sum.

    Deliberately evaluated from the definition so that the closed form
    ``(1-2p) Pr[v = v']`` can be tested against it.
    """
    if h < 0:
        raise ValueError("h must be non-negative")
    p = as_rational(p)
    pu = [binom_pmf(h + 1, u, p) for u in range(h + 2)]
    pv = [binom_pmf(h, v, p) for v in range(h + 1)]
    total = Fraction(0)
    for u, a in enumerate(pu):
        for v, b in enumerate(pv):
            total += -a * b if u > v else a * b
    return total


def binom_eq_lb_expr(h: int, q: RationalLike) -> Fraction:
    """(1-2q) Pr[w = w'] + q^(2h+1) - (1-q)^(2h+1), w, w' ~ Bin(h, q)."""
    q = as_rational(q)
    return (1 - 2 * q) * binom_equal_prob(h, q) + q ** (2 * h + 1) - (1 - q) ** (2 * h + 1)
