"""Exact p-adic primitives: digit sums, valuations, and factorial-ratio units.

Everything here is integer/rational exact; no floats anywhere.  The valuation
of 0 is a distinct infinite value (`INFINITY`), never a large-integer
sentinel, and it compares greater than every finite valuation.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering

__all__ = [
    "Prime",
    "Valuation",
    "INFINITY",
    "digit_sum",
    "ordp_int",
    "ordp_rational",
    "ordp_factorial",
    "factorial_ratio_unit",
    "rp_product",
    "coprime_residue_product",
]


def _is_prime(n: int) -> bool:
    """Deterministic trial-division primality check (desk-scale inputs)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Prime(int):
    """An int that has passed a deterministic primality check at construction."""

    def __new__(cls, p: int) -> "Prime":
        p = int(p)
        if not _is_prime(p):
            raise ValueError(f"{p} is not a prime")
        return super().__new__(cls, p)


def as_prime(p: int) -> Prime:
    return p if isinstance(p, Prime) else Prime(p)


@total_ordering
class Valuation:
    """A p-adic valuation: a rational integer, or infinity (the valuation of 0).

    Compares against ints and other valuations; the infinite value is greater
    than every finite one.  Supports + and - with ints and valuations, where
    infinity absorbs any finite summand; infinity minus infinity is an error.
    """

    __slots__ = ("_value",)

    def __init__(self, value: int | None) -> None:
        if value is not None and not isinstance(value, int):
            raise TypeError("valuation value must be an int or None (infinite)")
        self._value = value

    @property
    def is_finite(self) -> bool:
        return self._value is not None

    @property
    def value(self) -> int:
        if self._value is None:
            raise ValueError("the infinite valuation has no integer value")
        return self._value

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Valuation):
            return self._value == other._value
        if isinstance(other, int):
            return self._value == other
        return NotImplemented

    def __lt__(self, other: object) -> bool:
        if isinstance(other, Valuation):
            other = other._value
        elif not isinstance(other, int):
            return NotImplemented
        if self._value is None:
            return False
        if other is None:
            return True
        return self._value < other

    def __hash__(self) -> int:
        return hash(self._value)

    def __add__(self, other: "Valuation | int") -> "Valuation":
        if isinstance(other, int):
            other = Valuation(other)
        if not isinstance(other, Valuation):
            return NotImplemented
        if self._value is None or other._value is None:
            return INFINITY
        return Valuation(self._value + other._value)

    __radd__ = __add__

    def __sub__(self, other: "Valuation | int") -> "Valuation":
        if isinstance(other, int):
            other = Valuation(other)
        if not isinstance(other, Valuation):
            return NotImplemented
        if other._value is None:
            raise ValueError("cannot subtract an infinite valuation")
        if self._value is None:
            return INFINITY
        return Valuation(self._value - other._value)

    def __repr__(self) -> str:
        return f"Valuation({'oo' if self._value is None else self._value})"

    def __str__(self) -> str:
        return "oo" if self._value is None else str(self._value)


INFINITY = Valuation(None)


def digit_sum(n: int, p: int) -> int:
    """Sum of the base-p digits of n (n >= 1).

    Digits are extracted by repeated division, which stays exact for
    arbitrary-precision inputs.  Satisfies digit_sum(p**r * n, p) ==
    digit_sum(n, p).
    """
    p = as_prime(p)
    if n <= 0:
        raise ValueError("digit_sum requires n >= 1")
    s = 0
    while n:
        n, d = divmod(n, p)
        s += d
    return s


def ordp_int(n: int, p: int) -> Valuation:
    """Largest e with p**e dividing n; INFINITY for n == 0."""
    p = as_prime(p)
    if n == 0:
        return INFINITY
    n = abs(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return Valuation(e)


def ordp_rational(q: Fraction | int, p: int) -> Valuation:
    """Valuation of a rational: ord of the numerator minus ord of the denominator.

    q lies in the p-adic integers Z_p exactly when the result is >= 0.
    """
    q = Fraction(q)
    if q == 0:
        return INFINITY
    return ordp_int(q.numerator, p) - ordp_int(q.denominator, p)


def ordp_factorial(n: int, p: int) -> int:
    """Valuation of n!, via the closed form (n - digit_sum(n, p)) / (p - 1).

    Equivalent to the Legendre sum of floor(n / p**i); the closed form is
    O(log n) instead of O(n) trial division.
    """
    p = as_prime(p)
    if n < 0:
        raise ValueError("ordp_factorial requires n >= 0")
    if n <= 1:
        return 0
    return (n - digit_sum(n, p)) // (p - 1)


def factorial_ratio_unit(a: int, r: int, p: int) -> int:
    """Unit part of (p**r * a)! / (p**(r-1) * a)!, reduced modulo p**r.

    The ratio has valuation exactly p**(r-1) * a; that is checked here, the
    p power is stripped, and the remaining unit is returned mod p**r.  Unit
    parts multiply mod p**r, so the reduction is taken factor by factor.
    """
    p = as_prime(p)
    if a <= 0 or r <= 0:
        raise ValueError("factorial_ratio_unit requires a >= 1 and r >= 1")
    lo = p ** (r - 1) * a
    hi = p**r * a
    modulus = p**r
    unit = 1
    valuation = 0
    for j in range(lo + 1, hi + 1):
        while j % p == 0:
            j //= p
            valuation += 1
        unit = unit * j % modulus
    if valuation != lo:
        raise ArithmeticError(
            f"factorial ratio valuation {valuation} differs from expected {lo}"
        )
    return unit


def rp_product(a: int, p: int) -> int:
    """Exact product of the p-1 integers strictly between (a-1)*p and a*p."""
    p = as_prime(p)
    if a <= 0:
        raise ValueError("rp_product requires a >= 1")
    base = (a - 1) * p
    out = 1
    for j in range(1, p):
        out *= base + j
    return out


def coprime_residue_product(p: int, r: int) -> int:
    """Product of all j in [1, p**r) coprime to p, reduced modulo p**r."""
    p = as_prime(p)
    if r <= 0:
        raise ValueError("coprime_residue_product requires r >= 1")
    modulus = p**r
    out = 1
    for j in range(1, modulus):
        if j % p:
            out = out * j % modulus
    return out
