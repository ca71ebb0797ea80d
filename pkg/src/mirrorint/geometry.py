"""Charge systems of toric Calabi-Yau geometries and their local mirror maps.

A charge system is a list of N integer vectors of common width N + n, each
summing to zero.  For a nonnegative multi-index m of length N, the column
pairings k_j(m) = sum_i vectors[i][j] * m[i] drive everything here:

* Condition (A): no nonzero m has all k_j >= 0;
* Condition (B): whenever exactly one k_j is negative and gcd(m) = 1, the
  k_j have gcd 1;
* the log of the mirror-map unit q_i / z_i is a sum over the multi-indices
  with exactly one negative pairing.

Both conditions quantify over infinitely many m, so every report carries the
degree through which it enumerated.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from pathlib import Path
from typing import Sequence

from .series import TruncatedSeries, iter_exponents, series_exp

__all__ = [
    "ChargeSystem",
    "CYViolation",
    "ConditionAUnverified",
    "IndexClassification",
    "ConditionReport",
    "validate_charges",
    "charge_system_from_json",
    "load_charge_system",
    "preset",
    "PRESETS",
    "classify",
    "check_condition_a",
    "check_condition_b",
    "g1_series",
    "g1_series_grouped",
    "mirror_map",
]


class CYViolation(ValueError):
    """A charge vector fails the zero-sum (Calabi-Yau) condition."""


class ConditionAUnverified(RuntimeError):
    """Condition (A) could not be verified through the requested degree."""


@dataclass(frozen=True)
class ChargeSystem:
    """N validated charge vectors of width N + n, rows summing to zero."""

    name: str
    vectors: tuple[tuple[int, ...], ...]

    @property
    def N(self) -> int:
        return len(self.vectors)

    @property
    def width(self) -> int:
        return len(self.vectors[0])

    @property
    def n(self) -> int:
        return self.width - self.N


def validate_charges(matrix: Sequence[Sequence[int]], name: str = "custom") -> ChargeSystem:
    rows = tuple(tuple(int(x) for x in row) for row in matrix)
    if not rows:
        raise CYViolation("a charge system needs at least one vector")
    width = len(rows[0])
    if any(len(row) != width for row in rows):
        raise CYViolation("charge vectors must all have the same width")
    if width < len(rows) + 1:
        raise CYViolation(
            f"width {width} must exceed the number of vectors {len(rows)}"
        )
    for i, row in enumerate(rows):
        if sum(row) != 0:
            raise CYViolation(f"vector {i} sums to {sum(row)}, not 0: {row}")
        if not any(row):
            raise CYViolation(f"vector {i} is identically zero")
    return ChargeSystem(name, rows)


PRESETS: dict[str, ChargeSystem] = {
    "local-p2": validate_charges([[-3, 1, 1, 1]], "local-p2"),
    "conifold": validate_charges([[1, -1, -1, 1]], "conifold"),
}


def preset(name: str) -> ChargeSystem:
    try:
        return PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; have {sorted(PRESETS)}") from None


def charge_system_from_json(obj: dict) -> ChargeSystem:
    if not isinstance(obj, dict) or "vectors" not in obj:
        raise ValueError('geometry JSON must be {"name": str, "vectors": [[int, ...], ...]}')
    return validate_charges(obj["vectors"], str(obj.get("name", "custom")))


def load_charge_system(path: str | Path) -> ChargeSystem:
    with open(path, encoding="utf-8") as fh:
        return charge_system_from_json(json.load(fh))


@dataclass(frozen=True)
class IndexClassification:
    """Column pairings of one multi-index: the k vector, how many of its
    entries are negative, and the unique negative column when there is one."""

    m: tuple[int, ...]
    k: tuple[int, ...]
    negatives: int
    jstar: int | None


def pairings(vectors: Sequence[Sequence[int]], m: Sequence[int]) -> tuple[int, ...]:
    width = len(vectors[0])
    return tuple(
        sum(vec[j] * mi for vec, mi in zip(vectors, m)) for j in range(width)
    )


def classify(cs: ChargeSystem, m: Sequence[int]) -> IndexClassification:
    m = tuple(int(x) for x in m)
    if len(m) != cs.N:
        raise ValueError(f"multi-index must have {cs.N} entries, got {len(m)}")
    k = pairings(cs.vectors, m)
    negatives = [j for j, kj in enumerate(k) if kj < 0]
    jstar = negatives[0] if len(negatives) == 1 else None
    return IndexClassification(m, k, len(negatives), jstar)


@dataclass(frozen=True)
class ConditionReport:
    condition: str
    degree_checked: int
    holds: bool
    counterexample: tuple[int, ...] | None

    def to_json_obj(self) -> dict:
        return {
            "condition": self.condition,
            "degree_checked": self.degree_checked,
            "holds": self.holds,
            "counterexample": (
                None if self.counterexample is None else list(self.counterexample)
            ),
        }


def check_condition_a(cs: ChargeSystem, degree: int) -> ConditionReport:
    """No nonzero multi-index of total degree <= degree has all pairings >= 0."""
    if degree < 1:
        raise ValueError("degree must be >= 1")
    for m in iter_exponents(cs.N, degree, min_total=1):
        k = pairings(cs.vectors, m)
        if all(kj >= 0 for kj in k):
            return ConditionReport("A", degree, False, m)
    return ConditionReport("A", degree, True, None)


def check_condition_b(cs: ChargeSystem, degree: int) -> ConditionReport:
    """Every primitive multi-index with exactly one negative pairing has
    coprime pairings, through the given degree."""
    if degree < 1:
        raise ValueError("degree must be >= 1")
    for m in iter_exponents(cs.N, degree, min_total=1):
        if reduce(math.gcd, m) != 1:
            continue
        k = pairings(cs.vectors, m)
        if sum(1 for kj in k if kj < 0) != 1:
            continue
        if reduce(math.gcd, (abs(kj) for kj in k)) != 1:
            return ConditionReport("B", degree, False, m)
    return ConditionReport("B", degree, True, None)


def require_condition_a(cs: ChargeSystem, degree: int) -> None:
    report = check_condition_a(cs, degree)
    if not report.holds:
        raise ConditionAUnverified(
            f"condition (A) fails for {cs.name} at multi-index "
            f"{report.counterexample} (degree {degree})"
        )


def unit_log_series(
    vectors: Sequence[Sequence[int]], row: int, degree: int
) -> TruncatedSeries:
    """Power-series part of the log of the row-th mirror-map unit: the sum,
    over multi-indices with exactly one negative pairing k_{j*}, of

        vectors[row][j*] * (-1)^{k_{j*}} * (-k_{j*} - 1)! / prod_{j != j*} k_j!

    times the monomial of the multi-index.  The implicit log z term of the
    full solution is never stored; callers exponentiate this to get the unit.
    """
    nv = len(vectors)
    terms: dict[tuple[int, ...], Fraction] = {}
    for m in iter_exponents(nv, degree, min_total=1):
        k = pairings(vectors, m)
        negs = [j for j, kj in enumerate(k) if kj < 0]
        if len(negs) != 1:
            continue
        js = negs[0]
        num = math.factorial(-k[js] - 1)
        den = 1
        for j, kj in enumerate(k):
            if j != js:
                den *= math.factorial(kj)
        sign = -1 if k[js] & 1 else 1
        coeff = Fraction(sign * vectors[row][js] * num, den)
        if coeff:
            terms[m] = coeff
    return TruncatedSeries(nv, degree, terms)


def unit_log_series_grouped(
    vectors: Sequence[Sequence[int]], row: int, degree: int
) -> TruncatedSeries:
    """Same series as unit_log_series, summed instead over primitive
    multi-indices and their positive multiples; the pairings scale linearly
    along a ray, so only the primitive classification is computed."""
    nv = len(vectors)
    terms: dict[tuple[int, ...], Fraction] = {}
    for m in iter_exponents(nv, degree, min_total=1):
        if reduce(math.gcd, m) != 1:
            continue
        k = pairings(vectors, m)
        negs = [j for j, kj in enumerate(k) if kj < 0]
        if len(negs) != 1:
            continue
        js = negs[0]
        others = [k[j] for j in range(len(k)) if j != js]
        s = -k[js]
        weight = vectors[row][js]
        total = sum(m)
        for a in range(1, degree // total + 1):
            num = math.factorial(s * a - 1)
            den = math.prod(math.factorial(kj * a) for kj in others)
            sign = -1 if (k[js] * a) & 1 else 1
            scaled = tuple(a * x for x in m)
            coeff = Fraction(sign * weight * num, den)
            if coeff:
                terms[scaled] = terms.get(scaled, Fraction(0)) + coeff
    return TruncatedSeries(nv, degree, {e: c for e, c in terms.items() if c})


def g1_series(cs: ChargeSystem, i: int, degree: int) -> TruncatedSeries:
    """Power-series part of the i-th logarithmic solution, i in 1..N.

    Condition (A) is verified through the same degree first (the constant
    solution underpinning the construction needs it); ConditionAUnverified is
    raised when it fails.
    """
    if not 1 <= i <= cs.N:
        raise IndexError(f"solution index {i} out of range 1..{cs.N}")
    if degree == 0:
        return TruncatedSeries.zero(cs.N, 0)
    require_condition_a(cs, degree)
    return unit_log_series(cs.vectors, i - 1, degree)


def g1_series_grouped(cs: ChargeSystem, i: int, degree: int) -> TruncatedSeries:
    """g1_series computed along primitive rays; cross-check route."""
    if not 1 <= i <= cs.N:
        raise IndexError(f"solution index {i} out of range 1..{cs.N}")
    if degree == 0:
        return TruncatedSeries.zero(cs.N, 0)
    require_condition_a(cs, degree)
    return unit_log_series_grouped(cs.vectors, i - 1, degree)


def mirror_map(cs: ChargeSystem, i: int, degree: int) -> TruncatedSeries:
    """Unit part q_i / z_i of the local mirror map, i in 1..N: the
    exponential of g1_series, constant term 1.  The prefactor z_i itself is
    implicit, so integrality of this unit is exactly integrality of q_i."""
    return series_exp(g1_series(cs, i, degree))
