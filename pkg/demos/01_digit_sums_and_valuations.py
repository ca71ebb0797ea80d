#!/usr/bin/env python3
"""Base-p digit sums and p-adic valuations, the bedrock of everything else.

The factorial valuation has the closed form (n - S_p(n)) / (p - 1); the ratio
(p^r a)! / (p^(r-1) a)! carries valuation exactly p^(r-1) a, and its unit part
mod p^r is a fixed power of the product of units below p^r.
"""

from fractions import Fraction

from mirrorint import (
    coprime_residue_product,
    digit_sum,
    factorial_ratio_unit,
    ordp_factorial,
    ordp_int,
    ordp_rational,
)
from mirrorint.inequalities import additive_violations, multiplicative_violations

p = 3
print(f"base-{p} digit sums: ", [digit_sum(n, p) for n in range(1, 16)])
print("ord_3(162)         = ", ordp_int(162, p))
print("ord_3(9/2)         = ", ordp_rational(Fraction(9, 2), p))
print("ord_3(100!)        = ", ordp_factorial(100, p))

print()
print("factorial-ratio units mod p^r, against the unit-product power:")
for (a, r, q) in [(1, 1, 3), (1, 2, 2), (2, 1, 5), (4, 2, 7)]:
    unit = factorial_ratio_unit(a, r, q)
    base = coprime_residue_product(q, r)
    print(
        f"  a={a} r={r} p={q}:  unit={unit}"
        f"  (product of units)^a mod p^r = {pow(base, a, q**r)}"
    )

print()
print("digit-sum inequalities, brute-forced on boxes (empty = verified):")
print("  superadditivity violations, 2 parts <= 150, p=2:",
      additive_violations(2, 150, 2))
print("  submultiplicativity violations, m,n <= 200, p=5:",
      multiplicative_violations(200, 200, 5))
