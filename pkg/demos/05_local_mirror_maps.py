#!/usr/bin/env python3
"""Charge systems and local mirror maps.

A charge system's column pairings k_j classify every multi-index; under
Condition (A) the mirror-map unit q/z = exp(sum over single-negative
indices), and under Condition (B) its coefficients are integers.
"""

from mirrorint import (
    check_condition_a,
    check_condition_b,
    classify,
    g1_series,
    is_integral,
    mirror_map,
    preset,
    validate_charges,
)
from mirrorint.series import series_to_text

p2 = preset("local-p2")
print("local P^2 charge vector:", p2.vectors[0])
c = classify(p2, (2,))
print(f"pairings at m=(2): k={c.k}, negatives={c.negatives}, jstar={c.jstar}")

print("condition A:", check_condition_a(p2, 12).holds)
print("condition B:", check_condition_b(p2, 12).holds)

g = g1_series(p2, 1, 6)
print("log of the unit:", str(g))
q = mirror_map(p2, 1, 6)
print("unit q/z:\n" + series_to_text(q), end="")
print("integral:", is_integral(q).integral)

print()
conifold = preset("conifold")
print("conifold unit q/z =", str(mirror_map(conifold, 1, 12)), "(exactly)")

print()
bad = validate_charges([[-4, 2, 2, 0]], "coarse")
rep = check_condition_b(bad, 4)
print(f"system {bad.vectors[0]}: condition B holds={rep.holds},"
      f" counterexample m={rep.counterexample}")
print("its unit map:", str(mirror_map(bad, 1, 4)))
print("integral anyway:", is_integral(mirror_map(bad, 1, 12)).integral)
print("conditions (A)+(B) are sufficient for integrality, not necessary;")
print("the certificate reports what the coefficients actually are.")
