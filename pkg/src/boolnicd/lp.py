"""Exact-rational revised simplex, used for linear separability.

Only what LTF detection needs: phase-one minimisation over a standard-form
system ``M y = b, y >= 0`` with ``b >= 0``, Bland's rule for anti-cycling,
and the optimal simplex multipliers.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

import numpy as np


class SimplexError(RuntimeError):
    pass


def phase_one(columns: np.ndarray, b: list[int], max_iter: int = 100_000):
    """Minimise the sum of artificials for ``columns.T @ y + art = b``.

    ``columns`` has shape (m, R): one integer column of the constraint
    matrix per structural variable.  Returns ``(value, multipliers)`` where
    ``multipliers`` is the optimal dual vector ``pi`` (length R).

    Artificial variable ``r`` has index ``m + r``; Bland's rule picks the
    lowest eligible index for both the entering and leaving variable, which
    rules out cycling on the degenerate vertices this system is full of.
    """
    m, R = columns.shape
    if any(v < 0 for v in b):
        raise SimplexError("phase one needs b >= 0")
    cols = columns.astype(object)
    basis = [m + r for r in range(R)]
    binv = [[Fraction(int(i == j)) for j in range(R)] for i in range(R)]
    xb = [Fraction(v) for v in b]

    def column(j: int) -> list[Fraction]:
        if j >= m:
            return [Fraction(int(r == j - m)) for r in range(R)]
        return [Fraction(int(v)) for v in columns[j]]

    for _ in range(max_iter):
        # pi = c_B B^-1, cost 1 on artificials and 0 elsewhere
        pi = [Fraction(0)] * R
        for i, var in enumerate(basis):
            if var >= m:
                row = binv[i]
                for r in range(R):
                    pi[r] += row[r]
        den = lcm(*(p.denominator for p in pi))
        pi_int = np.array([int(p * den) for p in pi], dtype=object)
        # reduced cost of y_j is -(pi . col_j); negative iff pi . col_j > 0
        scores = cols.dot(pi_int)
        entering = None
        positive = np.nonzero(scores > 0)[0]
        if positive.size:
            entering = int(positive[0])
        else:
            for r in range(R):
                if 1 - pi[r] < 0:
                    entering = m + r
                    break
        if entering is None:
            value = sum((xb[i] for i, var in enumerate(basis) if var >= m), Fraction(0))
            return value, pi
        a = column(entering)
        u = [sum((binv[i][r] * a[r] for r in range(R) if a[r]), Fraction(0)) for i in range(R)]
        leave, best = None, None
        for i in range(R):
            if u[i] > 0:
                ratio = xb[i] / u[i]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:
            raise SimplexError("phase one is bounded below; an unbounded ray means a bug")
        piv = u[leave]
        binv[leave] = [v / piv for v in binv[leave]]
        xb[leave] = xb[leave] / piv
        for i in range(R):
            if i != leave and u[i]:
                factor = u[i]
                binv[i] = [v - factor * w for v, w in zip(binv[i], binv[leave])]
                xb[i] -= factor * xb[leave]
        basis[leave] = entering
    raise SimplexError(f"no convergence in {max_iter} pivots")
