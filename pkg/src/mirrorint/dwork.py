"""Integrality certification of exp(f) via the Dwork congruence, plus a
generator for the multinomial exponent series whose exponentials are integral.

The congruence direction used here: exp(f) has p-integral coefficients iff
f(X^p) - p*f(X) has all coefficients of p-adic valuation >= 1.  Both sides
are only examined through the truncation-reliable degree bound // p, and the
report states that degree explicitly; nothing is claimed about the
untruncated series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .padic import as_prime, ordp_rational
from .series import (
    IntegralityCertificate,
    TruncatedSeries,
    is_integral,
    iter_exponents,
    series_exp,
    substitute_powers,
)

__all__ = [
    "THEOREM_IDS",
    "PrimeCongruence",
    "DworkReport",
    "p_integral",
    "congruence_check",
    "dwork_certify",
    "generate",
]

# Families of exponent series; each is the f with exp(f) claimed integral.
#   T41  one variable:   (1/m!) sum_k (mk)!/(k!)^m x^k / k
#   T42  two variables:  (1/m!) sum (m(k1+k2))!/(k1!k2!)^m x1^k1 x2^k2 / (k1+k2)
#   T43  n variables:    sum (m*sum k)!/prod(k_i!)^m x^k / sum k   (no 1/m!)
#   T44a one variable, fixed parts ks:  sum_m (sum k_i m)!/prod(k_i m)! x^m / m
#   T44b same with denominator sum(k_i)*m; requires gcd(ks) = 1
#   T45  n variables:    (1/m!) sum (m*sum k)!/prod(k_i!)^m x^k / sum k
THEOREM_IDS = ("T41", "T42", "T43", "T44a", "T44b", "T45")


@dataclass(frozen=True)
class PrimeCongruence:
    congruence_holds: bool
    reliable_degree: int


@dataclass(frozen=True)
class DworkReport:
    direct: IntegralityCertificate
    per_prime: dict[int, PrimeCongruence]

    @property
    def all_pass(self) -> bool:
        return self.direct.integral and all(
            pc.congruence_holds for pc in self.per_prime.values()
        )

    def to_json_obj(self) -> dict:
        return {
            "direct": self.direct.to_json_obj(),
            "per_prime": {
                str(p): {
                    "congruence_holds": pc.congruence_holds,
                    "reliable_degree": pc.reliable_degree,
                }
                for p, pc in sorted(self.per_prime.items())
            },
        }


def p_integral(f: TruncatedSeries, p: int, degree: int | None = None) -> bool:
    """True when every coefficient of total degree <= degree (default: the
    reliable degree) is a p-adic integer, i.e. has valuation >= 0 at p.

    Weaker than is_integral, which demands plain integers (all primes at
    once); the per-prime congruence can only ever certify this local form.
    """
    p = as_prime(p)
    if degree is None:
        degree = f.reliable_degree
    return all(
        ordp_rational(c, p) >= 0
        for e, c in f.sorted_terms()
        if sum(e) <= degree
    )


def congruence_check(f: TruncatedSeries, p: int) -> PrimeCongruence:
    """Check that f(X^p) - p*f(X) has coefficients of valuation >= 1, through
    the reliable degree bound // p."""
    p = as_prime(p)
    g = substitute_powers(f, p) - p * f
    holds = True
    for e, c in g.sorted_terms():
        if sum(e) > g.reliable_degree:
            continue
        if ordp_rational(c, p) < 1:
            holds = False
            break
    return PrimeCongruence(holds, g.reliable_degree)


def dwork_certify(f: TruncatedSeries, primes: list[int]) -> DworkReport:
    """Directly certify integrality of exp(f) and run the per-prime congruence
    checks; f must have zero constant term."""
    direct = is_integral(series_exp(f))
    per_prime = {int(as_prime(p)): congruence_check(f, p) for p in primes}
    return DworkReport(direct, per_prime)


def _series_T41(m: int, bound: int) -> TruncatedSeries:
    fm = math.factorial(m)
    terms = {
        (k,): Fraction(math.factorial(m * k), math.factorial(k) ** m * fm * k)
        for k in range(1, bound + 1)
    }
    return TruncatedSeries(1, bound, terms)


def _series_T42(m: int, bound: int) -> TruncatedSeries:
    fm = math.factorial(m)
    terms = {}
    for k1, k2 in iter_exponents(2, bound, min_total=1):
        s = k1 + k2
        terms[(k1, k2)] = Fraction(
            math.factorial(m * s),
            (math.factorial(k1) * math.factorial(k2)) ** m * fm * s,
        )
    return TruncatedSeries(2, bound, terms)


def _series_T43(m: int, n: int, bound: int) -> TruncatedSeries:
    terms = {}
    for ks in iter_exponents(n, bound, min_total=1):
        s = sum(ks)
        den = math.prod(math.factorial(k) ** m for k in ks) * s
        terms[ks] = Fraction(math.factorial(m * s), den)
    return TruncatedSeries(n, bound, terms)


def _series_T44(ks: tuple[int, ...], bound: int, per_total: bool) -> TruncatedSeries:
    s = sum(ks)
    terms = {}
    for m in range(1, bound + 1):
        num = math.factorial(s * m)
        den = math.prod(math.factorial(k * m) for k in ks)
        den *= s * m if per_total else m
        terms[(m,)] = Fraction(num, den)
    return TruncatedSeries(1, bound, terms)


def _series_T45(m: int, n: int, bound: int) -> TruncatedSeries:
    fm = math.factorial(m)
    terms = {}
    for ks in iter_exponents(n, bound, min_total=1):
        s = sum(ks)
        den = math.prod(math.factorial(k) ** m for k in ks) * fm * s
        terms[ks] = Fraction(math.factorial(m * s), den)
    return TruncatedSeries(n, bound, terms)


def generate(
    theorem: str,
    *,
    bound: int,
    m: int | None = None,
    n: int | None = None,
    ks: tuple[int, ...] | None = None,
) -> TruncatedSeries:
    """The exponent series f of one of the integral-exponential families.

    T41/T42 take m; T43/T45 take m and n; T44a/T44b take the fixed parts ks
    (T44b additionally requires gcd(ks) = 1).
    """
    if theorem not in THEOREM_IDS:
        raise ValueError(f"unknown series family {theorem!r}")
    if bound < 1:
        raise ValueError("bound must be >= 1")
    if theorem in ("T41", "T42", "T43", "T45"):
        if m is None or m < 1:
            raise ValueError(f"{theorem} requires m >= 1")
    if theorem in ("T43", "T45"):
        if n is None or n < 1:
            raise ValueError(f"{theorem} requires n >= 1")
    if theorem in ("T44a", "T44b"):
        if not ks or any(k < 1 for k in ks):
            raise ValueError(f"{theorem} requires fixed parts ks >= 1")
        ks = tuple(int(k) for k in ks)
        if theorem == "T44b" and math.gcd(*ks) != 1:
            raise ValueError("T44b requires gcd(ks) = 1")
    if theorem == "T41":
        return _series_T41(m, bound)
    if theorem == "T42":
        return _series_T42(m, bound)
    if theorem == "T43":
        return _series_T43(m, n, bound)
    if theorem == "T44a":
        return _series_T44(ks, bound, per_total=False)
    if theorem == "T44b":
        return _series_T44(ks, bound, per_total=True)
    return _series_T45(m, n, bound)
