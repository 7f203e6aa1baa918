"""Floating-point boundary: the arcsin comparisons are the only checks in
the package that are not exact.  Every value crossing into this module is
converted with ``float()`` here and nowhere else."""

from __future__ import annotations

import math
from fractions import Fraction

NUMERIC_TOL = 1e-12


def arcsin_stab_limit(rho: float) -> float:
    """(2/pi) arcsin(rho): the large-n noise stability of Majority."""
    return 2.0 / math.pi * math.asin(rho)


def arcsin_phi_limit(p: float) -> float:
    """(2/pi) arcsin(sqrt(p)): the large-n value of Phi_p for Majority."""
    return 2.0 / math.pi * math.asin(math.sqrt(p))


def to_float(x: Fraction) -> float:
    return float(x)


def percent_grid(points: int = 99) -> list[Fraction]:
    """k / (points + 1) for k = 1..points, i.e. 0.01..0.99 by default."""
    return [Fraction(k, points + 1) for k in range(1, points + 1)]
