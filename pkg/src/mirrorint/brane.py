"""Brane-extended charge systems: open-closed mirror maps, superpotentials,
and mirror-curve series.

A base system of N vectors of width w is extended by one brane row to N + 1
vectors of width w + 2:

* outer: row 0 is (1, -1, 0, ..., 0, -1, 1), base rows padded with two zeros;
* inner: row 0 is the negated outer row, row 1 is base row 1 plus the outer
  row, other rows unchanged (row 1 is fixed as the modified row);
* phase(A): row 0 negated as for inner, rows in the nonempty subset A get the
  outer row added.

The extended system is itself a valid charge system for a geometry of one
dimension higher, so the closed-string condition checks and unit-log sums
apply to it verbatim; variable 0 is the brane modulus.

The superpotential sums run over multi-indices constrained only on the first
w columns; the two extra columns carry pairings -m0 and +m0 (outer, and
m0 - m1 / m1 - m0 inner), whose excluded factorials are what the printed
1/m0 and 1/(m0 - m1) weights account for.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .geometry import (
    ChargeSystem,
    pairings,
    require_condition_a,
    unit_log_series,
    validate_charges,
)
from .series import TruncatedSeries, iter_exponents, series_exp, theta

__all__ = [
    "BraneSystem",
    "SuperpotentialSeries",
    "BRANE_KINDS",
    "SIGN_CONVENTIONS",
    "extend",
    "open_closed_log",
    "open_closed_map",
    "superpotential",
    "curve_series",
]

BRANE_KINDS = ("outer", "inner", "phase")
SIGN_CONVENTIONS = ("printed", "k0")


@dataclass(frozen=True)
class BraneSystem:
    base: ChargeSystem
    kind: str
    phase: tuple[int, ...] | None
    extended: tuple[tuple[int, ...], ...]

    @property
    def nvars(self) -> int:
        return self.base.N + 1

    @property
    def width(self) -> int:
        return self.base.width + 2

    def as_charge_system(self) -> ChargeSystem:
        label = self.kind if self.phase is None else f"phase:{','.join(map(str, self.phase))}"
        return validate_charges(self.extended, f"{self.base.name}/{label}")


def _brane_row(width: int) -> tuple[int, ...]:
    return (1, -1) + (0,) * (width - 2) + (-1, 1)


def extend(cs: ChargeSystem, kind: str, phase: Sequence[int] | None = None) -> BraneSystem:
    """Extend a charge system by a brane row of the given kind."""
    if kind not in BRANE_KINDS:
        raise ValueError(f"brane kind must be one of {BRANE_KINDS}, got {kind!r}")
    row0 = _brane_row(cs.width)
    padded = [row + (0, 0) for row in cs.vectors]
    if kind == "outer":
        if phase is not None:
            raise ValueError("phase subset applies only to kind='phase'")
        rows = [row0] + padded
        subset = None
    else:
        if kind == "inner":
            if phase is not None:
                raise ValueError("phase subset applies only to kind='phase'")
            subset = (1,)
        else:
            if not phase:
                raise ValueError("phase brane requires a nonempty subset of rows")
            subset = tuple(sorted(set(int(i) for i in phase)))
            if subset[0] < 1 or subset[-1] > cs.N:
                raise ValueError(f"phase subset must lie in 1..{cs.N}, got {subset}")
        rows = [tuple(-x for x in row0)]
        for i, row in enumerate(padded, start=1):
            if i in subset:
                rows.append(tuple(a + b for a, b in zip(row, row0)))
            else:
                rows.append(row)
    matrix = tuple(rows)
    for i, row in enumerate(matrix):
        if sum(row) != 0:
            raise AssertionError(f"extended row {i} does not sum to zero: {row}")
    return BraneSystem(cs, kind, None if kind != "phase" else subset, matrix)


def open_closed_log(bs: BraneSystem, i: int, degree: int) -> TruncatedSeries:
    """Power-series part of the log of Q_i / z_i, i in 0..N (0 is the brane
    row).  Condition (A) for the extended system is verified first."""
    if not 0 <= i <= bs.base.N:
        raise IndexError(f"index {i} out of range 0..{bs.base.N}")
    if degree == 0:
        return TruncatedSeries.zero(bs.nvars, 0)
    require_condition_a(bs.as_charge_system(), degree)
    return unit_log_series(bs.extended, i, degree)


def open_closed_map(bs: BraneSystem, i: int, degree: int) -> TruncatedSeries:
    """Unit part Q_i / z_i of the open-closed mirror map, constant term 1."""
    return series_exp(open_closed_log(bs, i, degree))


@dataclass(frozen=True)
class SuperpotentialSeries:
    """Superpotential in the N+1 brane coordinates.

    Outer supports only monomials with m0 > 0; inner only m0 != m1.
    """

    w: TruncatedSeries
    kind: str


def _outer_superpotential(bs: BraneSystem, degree: int) -> TruncatedSeries:
    rows = bs.extended
    base_width = bs.base.width
    terms: dict[tuple[int, ...], Fraction] = {}
    for m in iter_exponents(bs.nvars, degree, min_total=1):
        m0 = m[0]
        if m0 == 0:
            continue
        k = pairings(rows, m)
        if k[1] >= 0:
            continue
        if k[0] < 0 or any(k[j] < 0 for j in range(2, base_width)):
            continue
        num = math.factorial(-k[1] - 1)
        den = m0
        for j in range(base_width):
            if j != 1:
                den *= math.factorial(k[j])
        sign = -1 if (k[1] + m0) & 1 else 1
        terms[m] = Fraction(sign * num, den)
    return TruncatedSeries(bs.nvars, degree, terms)


def _inner_superpotential(
    bs: BraneSystem, degree: int, sign_convention: str
) -> TruncatedSeries:
    rows = bs.extended
    base_width = bs.base.width
    terms: dict[tuple[int, ...], Fraction] = {}
    for m in iter_exponents(bs.nvars, degree, min_total=1):
        m0, m1 = m[0], m[1]
        if m0 == m1:
            continue
        k = pairings(rows, m)
        if k[0] >= 0:
            continue
        if any(k[j] < 0 for j in range(1, base_width)):
            continue
        num = math.factorial(-k[0] - 1)
        den = m0 - m1
        for j in range(1, base_width):
            den *= math.factorial(k[j])
        sig = k[1] if sign_convention == "printed" else k[0]
        sign = -1 if (sig + m0 - m1) & 1 else 1
        terms[m] = Fraction(sign * num, den)
    return TruncatedSeries(bs.nvars, degree, terms)


def superpotential(
    bs: BraneSystem, degree: int, sign_convention: str = "printed"
) -> SuperpotentialSeries:
    """Disc-level superpotential of the brane system, exact to the degree.

    Outer branes: the sum over multi-indices with m0 > 0, pairing 1 negative
    and all other base-column pairings nonnegative, weighted by
    (-1)^(k_1 + m0) (-k_1 - 1)! / (m0 * prod_{j != 1} k_j!).

    Inner branes: the sum over m0 != m1 with pairing 0 negative and pairings
    1..w-1 nonnegative, weighted by
    (-1)^(k_1 + m0 - m1) (-k_0 - 1)! / ((m0 - m1) * prod_{j >= 1} k_j!).
    The sign exponent uses k_1 as printed; sign_convention='k0' switches it
    to k_0 for comparison.
    """
    if degree < 1:
        raise ValueError("degree must be >= 1")
    if sign_convention not in SIGN_CONVENTIONS:
        raise ValueError(f"sign_convention must be one of {SIGN_CONVENTIONS}")
    if bs.kind == "outer":
        return SuperpotentialSeries(_outer_superpotential(bs, degree), "outer")
    return SuperpotentialSeries(
        _inner_superpotential(bs, degree, sign_convention), "inner"
    )


def curve_series(
    bs: BraneSystem, degree: int, sign_convention: str = "printed"
) -> TruncatedSeries:
    """Mirror-curve series: exp(-theta_0 W) for outer branes, and
    exp(-(theta_0 - theta_1) W) for inner/phase branes.

    The theta operators cancel the 1/m0 (resp. 1/(m0 - m1)) weights of the
    superpotential, so the exponent is a plain factorial-ratio sum.
    """
    sp = superpotential(bs, degree, sign_convention)
    if sp.kind == "outer":
        exponent = theta(sp.w, 0)
    else:
        exponent = theta(sp.w, 0) - theta(sp.w, 1)
    return series_exp(-exponent)
