"""Walsh-Hadamard spectra and exact noise-stability polynomials."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .boolfn import BooleanFunction, popcounts
from .exactnum import UniPoly, binomial_basis_to_monomial, format_rational

DIRECT_FLIP_CAP = 13


@dataclass(frozen=True)
class FourierSpectrum:
    """``scaled_coeffs[S] = 2^n * fhat(S)``, S a subset bitmask."""

    n: int
    scaled_coeffs: np.ndarray

    def coefficient(self, subset: int) -> Fraction:
        return Fraction(int(self.scaled_coeffs[subset]), 1 << self.n)

    def level_weights(self) -> list[Fraction]:
        sq = self.scaled_coeffs.astype(object) ** 2
        pc = popcounts(self.n)
        scale = 1 << (2 * self.n)
        return [Fraction(int(sq[pc == k].sum()), scale) for k in range(self.n + 1)]


def _butterfly(values: np.ndarray) -> np.ndarray:
    a = values.astype(np.int64).copy()
    h = 1
    while h < a.size:
        a = a.reshape(-1, 2, h)
        a = np.stack([a[:, 0] + a[:, 1], a[:, 0] - a[:, 1]], axis=1).reshape(-1)
        h *= 2
    return a


def walsh_hadamard(f: BooleanFunction) -> FourierSpectrum:
    """Unnormalized transform: ``sum_x f(x) chi_S(x)`` for every S."""
    # with bit set <=> x_i = -1, chi_S(x) = (-1)^popcount(m & S), which is
    # exactly the Sylvester-ordered Hadamard matrix
    return FourierSpectrum(f.n, _butterfly(f.table))


def stab_poly(f: BooleanFunction) -> UniPoly:
    """Stab_rho[f] = sum_k W_k rho^k with W_k the level-k Fourier weight."""
    return UniPoly(walsh_hadamard(f).level_weights(), "rho")


def _autocorrelation_direct(f: BooleanFunction) -> np.ndarray:
    t = f.table.astype(np.int64)
    idx = np.arange(t.size)
    return np.array([int(t @ t[idx ^ s]) for s in range(t.size)], dtype=np.int64)


def _autocorrelation_transform(f: BooleanFunction) -> np.ndarray:
    # convolution theorem over Z_2^n; H H = 2^n I
    spec = _butterfly(f.table)
    return _butterfly(spec * spec) >> f.n


def stab_flip_expansion(f: BooleanFunction, method: str = "direct") -> list[Fraction]:
    """``entry[k] = sum_{|S|=k} E_x[f(x) f(x xor S)]``.

    ``Stab_{1-2q}[f] = sum_k q^k (1-q)^(n-k) entry[k]``.  The direct method
    enumerates all (x, S) pairs and shares no code with :func:`stab_poly`.
    """
    if method == "direct":
        if f.n > DIRECT_FLIP_CAP:
            raise ValueError(
                f"direct flip expansion capped at n={DIRECT_FLIP_CAP}; use method='transform'"
            )
        corr = _autocorrelation_direct(f)
    elif method == "transform":
        corr = _autocorrelation_transform(f)
    else:
        raise ValueError(f"unknown method {method!r}")
    pc = popcounts(f.n)
    return [Fraction(int(corr[pc == k].sum()), 1 << f.n) for k in range(f.n + 1)]


def stab_q_poly_from_flips(f: BooleanFunction, method: str = "direct") -> UniPoly:
    return binomial_basis_to_monomial(stab_flip_expansion(f, method), f.n, "q")


def stab_json(f: BooleanFunction) -> dict:
    poly = stab_poly(f)
    coeffs = [poly.coeff(k) for k in range(f.n + 1)]
    return {
        "n": f.n,
        "table_hex": f.to_hex(),
        "coeffs": [format_rational(c) for c in coeffs],
        "variable": "rho",
    }
