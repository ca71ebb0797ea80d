from __future__ import annotations

import random
from fractions import Fraction

from mirrorint.series import TruncatedSeries


def random_series(
    rng: random.Random,
    nvars: int,
    bound: int,
    *,
    max_terms: int = 8,
    denominators: tuple[int, ...] = (1, 1, 2, 3),
    zero_constant: bool = True,
    min_total: int | None = None,
) -> TruncatedSeries:
    """Sparse random series with small rational coefficients."""
    if min_total is None:
        min_total = 1 if zero_constant else 0
    terms: dict[tuple[int, ...], Fraction] = {}
    for _ in range(rng.randint(1, max_terms)):
        total = rng.randint(min_total, bound)
        exps = [0] * nvars
        for _ in range(total):
            exps[rng.randrange(nvars)] += 1
        num = rng.randint(-9, 9)
        if num == 0:
            num = 1
        terms[tuple(exps)] = Fraction(num, rng.choice(denominators))
    return TruncatedSeries(nvars, bound, terms)


def audit(f: TruncatedSeries) -> None:
    """Structural invariants every series must satisfy after any operation."""
    for exps, coeff in f.sorted_terms():
        assert len(exps) == f.nvars
        assert all(isinstance(e, int) and e >= 0 for e in exps)
        assert sum(exps) <= f.degree_bound
        assert isinstance(coeff, Fraction)
        assert coeff != 0
        assert coeff.denominator > 0  # lowest terms with positive denominator
    assert 0 <= f.reliable_degree <= f.degree_bound
