"""Brute-force sweeps for base-p digit-sum inequalities.

Each sweep checks one inequality over a full rectangular box of parameters
and returns the violating tuples; an empty list certifies the inequality on
that box.  The boxes run to millions of tuples, so the sweeps are vectorized
with numpy; all quantities are small nonnegative integers, hence int64 exact.
"""

from __future__ import annotations

import numpy as np

from .padic import as_prime

__all__ = [
    "digit_sum_table",
    "valuation_table",
    "valuation_lower_bound_violations",
    "additive_violations",
    "multiplicative_violations",
    "corollary_violations",
]


def digit_sum_table(limit: int, p: int) -> np.ndarray:
    """Array t with t[n] = sum of base-p digits of n, for n in 0..limit."""
    p = as_prime(p)
    n = np.arange(limit + 1, dtype=np.int64)
    s = np.zeros_like(n)
    while n.any():
        s += n % p
        n = n // p
    return s


def valuation_table(limit: int, p: int) -> np.ndarray:
    """Array t with t[n] = ord_p(n) for n in 1..limit (index 0 unused)."""
    p = as_prime(p)
    v = np.zeros(limit + 1, dtype=np.int64)
    q = p
    while q <= limit:
        v[q::q] += 1
        q *= p
    return v


def valuation_lower_bound_violations(n_max: int, p: int) -> list[int]:
    """n with n - S_p(n) < (p - 1) * ord_p(n), for 1 <= n <= n_max."""
    p = as_prime(p)
    s = digit_sum_table(n_max, p)
    v = valuation_table(n_max, p)
    n = np.arange(n_max + 1, dtype=np.int64)
    bad = np.nonzero(n - s < (p - 1) * v)[0]
    return [int(x) for x in bad if x >= 1]


def additive_violations(parts: int, a_max: int, p: int) -> list[tuple[int, ...]]:
    """Tuples (a_1..a_parts) in [1, a_max]^parts violating the digit-sum
    superadditivity bound

        sum S_p(a_i) >= S_p(sum a_i) + (p-1)*(ord_p(sum a_i) - min_i ord_p(a_i)).

    Supports parts in {2, 3}; the 3-part box is evaluated in 2-d blocks.
    """
    p = as_prime(p)
    if parts not in (2, 3):
        raise ValueError("additive_violations supports parts in {2, 3}")
    s = digit_sum_table(parts * a_max, p)
    v = valuation_table(parts * a_max, p)
    a = np.arange(1, a_max + 1, dtype=np.int64)

    s2 = s[a][:, None] + s[a][None, :]
    v2 = np.minimum(v[a][:, None], v[a][None, :])
    t2 = a[:, None] + a[None, :]

    out: list[tuple[int, ...]] = []
    if parts == 2:
        rhs = s[t2] + (p - 1) * (v[t2] - v2)
        for i, j in np.argwhere(s2 < rhs):
            out.append((int(i) + 1, int(j) + 1))
        return out

    for a1 in range(1, a_max + 1):
        tot = a1 + t2
        lhs = s[a1] + s2
        rhs = s[tot] + (p - 1) * (v[tot] - np.minimum(v[a1], v2))
        for i, j in np.argwhere(lhs < rhs):
            out.append((a1, int(i) + 1, int(j) + 1))
    return out


def multiplicative_violations(m_max: int, n_max: int, p: int) -> list[tuple[int, int]]:
    """Pairs (m, n) with S_p(m * n) > S_p(m) * S_p(n)."""
    p = as_prime(p)
    s = digit_sum_table(m_max * n_max, p)
    m = np.arange(1, m_max + 1, dtype=np.int64)
    n = np.arange(1, n_max + 1, dtype=np.int64)
    prod = m[:, None] * n[None, :]
    bad = np.argwhere(s[prod] > s[m][:, None] * s[n][None, :])
    return [(int(i) + 1, int(j) + 1) for i, j in bad]


def corollary_violations(m_max: int, n_max: int, p: int) -> list[tuple[int, int]]:
    """Pairs (m, n) violating

        m*S_p(n) - S_p(mn) + S_p(m) - m >= (m - S_p(m)) * (S_p(n) - 1),

    or its strengthening to >= m - S_p(m) on the pairs with S_p(n) > 1.
    """
    p = as_prime(p)
    s = digit_sum_table(m_max * n_max, p)
    m = np.arange(1, m_max + 1, dtype=np.int64)
    n = np.arange(1, n_max + 1, dtype=np.int64)
    sm = s[m][:, None]
    sn = s[n][None, :]
    lhs = m[:, None] * sn - s[m[:, None] * n[None, :]] + sm - m[:, None]
    bad = lhs < (m[:, None] - sm) * (sn - 1)
    bad |= (sn > 1) & (lhs < m[:, None] - sm)
    return [(int(i) + 1, int(j) + 1) for i, j in np.argwhere(bad)]
