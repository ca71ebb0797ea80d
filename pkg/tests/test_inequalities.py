from __future__ import annotations

import numpy as np

from mirrorint.inequalities import (
    additive_violations,
    corollary_violations,
    digit_sum_table,
    multiplicative_violations,
    valuation_lower_bound_violations,
    valuation_table,
)
from mirrorint.padic import digit_sum, ordp_int


def test_tables_match_scalar_functions():
    for p in (2, 3, 7):
        s = digit_sum_table(300, p)
        v = valuation_table(300, p)
        for n in range(1, 301):
            assert s[n] == digit_sum(n, p)
            assert v[n] == ordp_int(n, p)


def test_tables_dtype_is_exact():
    assert digit_sum_table(10, 2).dtype == np.int64
    assert valuation_table(10, 2).dtype == np.int64


def test_valuation_lower_bound_small():
    for p in (2, 3, 5):
        assert valuation_lower_bound_violations(500, p) == []


def test_additive_two_parts_small():
    for p in (2, 3, 5, 7):
        assert additive_violations(2, 60, p) == []


def test_additive_three_parts_small():
    for p in (2, 3):
        assert additive_violations(3, 25, p) == []


def test_additive_detects_planted_violation():
    # sanity check that the sweep can see a failure at all: flip the
    # inequality by checking an impossible strengthened bound via a tiny
    # hand check instead of trusting an always-empty sweep
    s = digit_sum_table(10, 2)
    v = valuation_table(10, 2)
    # a = b = 1: S(1)+S(1) = 2, S(2) + 1*(ord(2) - 0) = 1 + 1 = 2: tight
    assert s[1] + s[1] == s[2] + (2 - 1) * (v[2] - min(v[1], v[1]))


def test_multiplicative_small():
    for p in (2, 3, 5):
        assert multiplicative_violations(80, 80, p) == []


def test_corollary_small():
    for p in (2, 3, 5):
        assert corollary_violations(80, 80, p) == []
