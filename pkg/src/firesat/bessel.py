"""Bessel functions of the first kind, orders 1 and 3.

Ascending power series below the cancellation limit of float64, Hankel
asymptotic expansion (optimally truncated) above it, with J3 obtained from
the stable upward recurrence when the asymptotic branch is active.
"""

from __future__ import annotations

import math

from .errors import NumericError

_SERIES_LIMIT = 15.0
_MAX_TERMS = 200


def _jn_series(n: int, x: float) -> float:
    """Ascending series sum_k (-1)^k (x/2)^(n+2k) / (k! (n+k)!)."""
    half = x / 2.0
    term = half**n / math.factorial(n)
    total = term
    quarter_sq = half * half
    for k in range(1, _MAX_TERMS):
        term *= -quarter_sq / (k * (n + k))
        total += term
        if abs(term) <= 1e-17 * abs(total):
            return total
    raise NumericError(f"Bessel series for J{n}({x}) did not converge")


def _j01_asymptotic(n: int, x: float) -> float:
    """Hankel expansion truncated at its smallest term; valid for n in {0, 1}."""
    mu = 4.0 * n * n
    # P accumulates even terms, Q odd terms of the a_k(n)/x^k sequence.
    p_sum = 1.0
    q_sum = (mu - 1.0) / (8.0 * x)
    term = q_sum
    prev = abs(term)
    sign = -1.0
    k = 1
    while k < 40:
        k += 1
        term *= (mu - (2 * k - 1) ** 2) / (8.0 * k * x)
        if abs(term) >= prev:
            break  # divergent tail reached; stop at the smallest term
        prev = abs(term)
        if k % 2 == 0:
            p_sum += sign * term
        else:
            q_sum += sign * term
            sign = -sign
    chi = x - (0.5 * n + 0.25) * math.pi
    return math.sqrt(2.0 / (math.pi * x)) * (
        p_sum * math.cos(chi) - q_sum * math.sin(chi)
    )


def j1(x: float) -> float:
    """Bessel function of the first kind, order 1."""
    ax = abs(x)
    if ax <= _SERIES_LIMIT:
        val = _jn_series(1, ax)
    else:
        val = _j01_asymptotic(1, ax)
    return -val if x < 0 else val


def j3(x: float) -> float:
    """Bessel function of the first kind, order 3."""
    ax = abs(x)
    if ax <= _SERIES_LIMIT:
        val = _jn_series(3, ax)
    else:
        # Upward recurrence J_{n+1} = (2n/x) J_n - J_{n-1}, stable for n < x.
        j_0 = _j01_asymptotic(0, ax)
        j_1 = _j01_asymptotic(1, ax)
        j_2 = (2.0 / ax) * j_1 - j_0
        val = (4.0 / ax) * j_2 - j_1
    return -val if x < 0 else val
