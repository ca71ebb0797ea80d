#!/usr/bin/env python3
"""Congruence margins of multinomial expressions.

Every statement is normalized to "margin >= 0" where margin is a p-adic
valuation; sweeps evaluate a statement on a whole parameter box and skip the
tuples that break its hypotheses.
"""

from mirrorint import PropositionId, margin, multinomial, sweep
from mirrorint.congruence import sweep_csv_text

print("multinomial(2,2,2) =", multinomial([2, 2, 2]))

r = margin(PropositionId.P4, (3, 2), 5)
print(f"P4 at (m,n)=(3,2), p=5: margin {r.margin}, holds={r.holds}")
r = margin(PropositionId.P8, (1, 2, 2), 2)
print(f"P8 at (m,k,l)=(1,2,2), p=2: margin {r.margin}, branch {r.branch}")

print()
result = sweep(
    PropositionId.P7,
    {"m": range(1, 4), "k": range(1, 6), "l": range(1, 6)},
    [2, 3, 5],
)
print(
    f"P7 sweep: {len(result.reports)} admissible tuples,"
    f" {result.skipped} skipped, all hold: {result.all_hold}"
)
print()
print("first rows of the CSV rendering:")
print("\n".join(sweep_csv_text(result).splitlines()[:6]))
