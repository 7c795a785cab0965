"""Closed-form expectations for the syndrome weight and the Phi votes.

A weight-w check and a uniformly random weight-tau error give parity 1
exactly when their supports meet in an odd number of positions.  Counting
those errors gives the expected syndrome weight.  Splitting the ones of the
w shifted syndromes between error and non-error positions then gives the
expected votes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "ExpectationTable",
    "binary_johnson_radius",
    "count_W",
    "expected_phi_correct",
    "expected_phi_error",
    "expected_weight",
    "johnson_radius",
]


def count_W(n: int, d_perp: int, tau: int) -> int:
    """Number of weight-tau words meeting a fixed weight-d_perp support oddly."""
    if not (0 <= tau <= n and 0 < d_perp <= n):
        raise ValueError(f"out of range: n={n}, d_perp={d_perp}, tau={tau}")
    return sum(
        math.comb(d_perp, s) * math.comb(n - d_perp, tau - s)
        for s in range(1, min(d_perp, tau) + 1, 2)
    )


def expected_weight(n: int, d_perp: int, tau: int) -> float:
    """E[wt w(x)] = n W / C(n, tau) for a weight-tau error."""
    if tau == 0:
        return 0.0
    return float(Fraction(n * count_W(n, d_perp, tau), math.comb(n, tau)))


def expected_phi_error(E_omega: float, tau: int, L: int) -> float:
    """Expected Phi at an error position: (E[omega] / tau) L."""
    return E_omega / tau * L


def expected_phi_correct(E_omega: float, d_perp: int, n: int, tau: int, L: int) -> float:
    """Expected Phi at a correct position: d (E[omega] - E[omega]/d) / (n - tau) L."""
    return d_perp * (E_omega - E_omega / d_perp) / (n - tau) * L


def johnson_radius(n: int, k: int) -> int:
    """Interpolation list-decoding radius of an MDS code: n - 1 - floor(sqrt(n (k-1)))."""
    return n - 1 - math.isqrt(n * (k - 1))


def binary_johnson_radius(n: int, d: int) -> int:
    """Largest tau strictly below the binary Johnson bound n/2 (1 - sqrt(1 - 2d/n))."""
    J = n / 2 * (1 - math.sqrt(max(0.0, 1 - 2 * d / n)))
    t = math.ceil(J) - 1
    return max(t, 0)


@dataclass
class ExpectationTable:
    """One column of the predicted-vs-measured table, for a single tau."""

    tau: int
    E_omega: float
    E_phi_err: float
    E_phi_ok: float
    AV_omega: float = math.nan
    AV_phi_err: float = math.nan
    AV_phi_ok: float = math.nan
    AV_phi_max: float = math.nan

    @classmethod
    def predict(cls, n: int, d_perp: int, tau: int, L: int) -> "ExpectationTable":
        Ew = expected_weight(n, d_perp, tau)
        return cls(tau, Ew, expected_phi_error(Ew, tau, L),
                   expected_phi_correct(Ew, d_perp, n, tau, L))
