"""Margin reports for a registry of multinomial congruence statements.

Every statement in the registry normalizes to the single verdict
"margin >= 0", where margin is a p-adic valuation:

* membership statements (an explicit rational lies in Z_p): margin is the
  exact valuation of the expression;
* valuation lower bounds for factorial-ratio differences: margin is the
  observed valuation minus the stated bound.

Statement parameters are flat integer tuples; ``PARAM_SHAPES`` records how
each id reads its tuple.  Parameters that violate a statement's hypotheses
raise ``HypothesisViolation``, which ``sweep`` counts and skips rather than
treating as a failure.

Valuations of pure factorial products are computed through the closed-form
factorial valuation (cheap even for huge factorials); differences of
factorial ratios are computed as exact integers and their valuation taken by
trial division.  No modular shortcuts are used anywhere a full value is the
deliverable.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping, Sequence

from .padic import INFINITY, Valuation, as_prime, digit_sum, ordp_factorial, ordp_int

__all__ = [
    "PropositionId",
    "HypothesisViolation",
    "MarginReport",
    "SweepResult",
    "ConjectureProbeRow",
    "multinomial",
    "margin",
    "conjecture_probe",
    "sweep",
    "sweep_csv_text",
    "sweep_json_obj",
    "SYMMETRIC_PROPS",
]


class HypothesisViolation(ValueError):
    """Parameters break a statement's hypotheses; sweeps skip such tuples."""


class PropositionId(Enum):
    # Membership statements; ks are the multinomial parts, m a scaling factor.
    P1 = "P1"  # gcd(p, ks) = 1       =>  C(sum ks; ks) / sum(ks) in Z_p
    P1_1 = "P1_1"  # p !| m           =>  C(sum ks*m; ks*m) / m in Z_p
    P1_2 = "P1_2"  # p !| m, gcd(p, ks) = 1 => C(sum ks*m; ks*m) / (m*sum ks) in Z_p
    P1_3 = "P1_3"  # gcd(ks) = 1      =>  C(sum ks*m; ks*m) / sum(ks) in Z
    P3 = "P3"  # p | all ks  =>  (C(sum ks; ks) - C(sum ks/p; ks/p)) / sum(ks) in Z_p
    P3_1 = "P3_1"  # p | m  =>  (C(sum ks*m; ks*m) - C(sum ks*m/p; ks*m/p)) / (m sum ks) in Z_p
    P4 = "P4"  # (mn)! / (m! (n!)^m) in Z_p for all m, n
    P4_STRONG = "P4_strong"  # S_p(n) > 1  =>  (mn)! / (m m! (n!)^m) in Z_p
    P6 = "P6"  # p | n  =>  ((mn)!/(n!)^m - (mn/p)!/((n/p)!)^m) / (m! n) in Z_p
    P7 = "P7"  # gcd(p,k,l)=1 => (m(k+l))! / (m! (k+l)^m (k!)^m (l!)^m) in Z_p
    P9 = "P9"  # p|k, p|l => ((m(k+l))!/(k!l!)^m - (m(k+l)/p)!/((k/p)!(l/p)!)^m)/(m!(k+l)) in Z_p
    PC2 = "PC2"  # gcd(ks)^m (m sum ks)! / (m! (sum ks)^m prod (k_i!)^m) in Z
    PC3 = "PC3"  # ((m p sum ks)!/prod((k_i p)!)^m - (m sum ks)!/prod(k_i!)^m) / (p m! (sum ks)^m) in Z_p
    # Valuation lower bounds for factorial-ratio differences.
    P_RATIO_DIFF = "P_ratio_diff"  # p | all ks:
    #   ord((sum ks)!/((sum ks)/p)! - prod k_i!/(k_i/p)!) >= sum(ks)/p + min ord(k_i)
    P_RATIO_POWER = "P_ratio_power"  # p !| a, n = p^r a:
    #   ord((m p^r a)!/(m p^(r-1) a)! - ((p^r a)!/(p^(r-1) a)!)^m) >= m p^(r-1) a + r
    P8 = "P8"  # p | k, p | l, s = k + l:
    #   ord((ms)!/(ms/p)! - (k!l!/((k/p)!(l/p)!))^m) >= ms/p + ord(s),
    #   except for p = 2 with m and l/2 both odd, where the bound is ms/2 + 1.


# Margin is invariant under permutation of the parts for these ids.
SYMMETRIC_PROPS = frozenset(
    {
        PropositionId.P1,
        PropositionId.P1_1,
        PropositionId.P1_2,
        PropositionId.P1_3,
        PropositionId.P3,
        PropositionId.PC2,
        PropositionId.PC3,
    }
)

# How each id reads its flat parameter tuple.
PARAM_SHAPES: dict[PropositionId, str] = {
    PropositionId.P1: "ks",
    PropositionId.P1_1: "m_ks",
    PropositionId.P1_2: "m_ks",
    PropositionId.P1_3: "m_ks",
    PropositionId.P_RATIO_DIFF: "ks",
    PropositionId.P3: "ks",
    PropositionId.P3_1: "m_ks",
    PropositionId.P4: "m_n",
    PropositionId.P4_STRONG: "m_n",
    PropositionId.P_RATIO_POWER: "m_r_a",
    PropositionId.P6: "m_n",
    PropositionId.P7: "m_k_l",
    PropositionId.P8: "m_k_l",
    PropositionId.P9: "m_k_l",
    PropositionId.PC2: "m_ks",
    PropositionId.PC3: "m_ks",
}


@dataclass(frozen=True)
class MarginReport:
    prop: PropositionId
    params: tuple[int, ...]
    p: int
    margin: Valuation
    holds: bool
    branch: str | None = None


@dataclass(frozen=True)
class SweepResult:
    prop: PropositionId
    reports: tuple[MarginReport, ...]
    skipped: int

    @property
    def examined(self) -> int:
        return len(self.reports) + self.skipped

    @property
    def all_hold(self) -> bool:
        return all(r.holds for r in self.reports)


@dataclass(frozen=True)
class ConjectureProbeRow:
    p: int
    r: int
    a: int
    m: int
    observed: Valuation
    predicted: int
    degenerate: bool

    @property
    def proven_bound(self) -> int:
        return self.m * self.p ** (self.r - 1) * self.a + self.r

    @property
    def matches(self) -> bool:
        return not self.degenerate and self.observed == self.predicted


@lru_cache(maxsize=None)
def _fact(n: int) -> int:
    return math.factorial(n)


def multinomial(ks: Sequence[int]) -> int:
    """Exact (k_1 + ... + k_n)! / (k_1! ... k_n!), as a product of binomials.

    The binomial chain keeps intermediates no larger than the result.
    """
    ks = tuple(ks)
    if any(k < 0 for k in ks):
        raise ValueError("multinomial parts must be >= 0")
    if not any(ks):
        raise ValueError("multinomial requires at least one positive part")
    total = 0
    out = 1
    for k in ks:
        total += k
        out *= math.comb(total, k)
    return out


def _falling_ratio(hi: int, lo: int) -> int:
    """Exact hi! / lo! for hi >= lo >= 0."""
    return _fact(hi) // _fact(lo)


def _ord(n: int, p: int) -> int:
    return ordp_int(n, p).value


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise HypothesisViolation(message)


def _unpack(prop: PropositionId, params: tuple[int, ...]):
    shape = PARAM_SHAPES[prop]
    if shape == "ks":
        _require(len(params) >= 1, "need at least one part")
        return (tuple(params),)
    if shape == "m_ks":
        _require(len(params) >= 2, "need m and at least one part")
        return params[0], tuple(params[1:])
    if shape == "m_n":
        _require(len(params) == 2, "need (m, n)")
        return params
    if shape == "m_k_l":
        _require(len(params) == 3, "need (m, k, l)")
        return params
    if shape == "m_r_a":
        _require(len(params) == 3, "need (m, r, a)")
        return params
    raise AssertionError(shape)


def _eval_P1(params, p):
    (ks,) = _unpack(PropositionId.P1, params)
    _require(all(k >= 0 for k in ks), "parts must be >= 0")
    total = sum(ks)
    _require(total > 0, "parts must not all vanish")
    _require(any(k % p for k in ks), "some part must be coprime to p")
    v = ordp_factorial(total, p) - sum(ordp_factorial(k, p) for k in ks) - _ord(total, p)
    return Valuation(v), None


def _eval_P1_1(params, p):
    m, ks = _unpack(PropositionId.P1_1, params)
    _require(m >= 1 and all(k >= 1 for k in ks), "m and all parts must be >= 1")
    _require(m % p != 0, "m must be coprime to p")
    total = sum(k * m for k in ks)
    v = ordp_factorial(total, p) - sum(ordp_factorial(k * m, p) for k in ks) - _ord(m, p)
    return Valuation(v), None


def _eval_P1_2(params, p):
    m, ks = _unpack(PropositionId.P1_2, params)
    _require(m >= 1 and all(k >= 1 for k in ks), "m and all parts must be >= 1")
    _require(m % p != 0, "m must be coprime to p")
    _require(any(k % p for k in ks), "some part must be coprime to p")
    total = sum(k * m for k in ks)
    v = ordp_factorial(total, p) - sum(ordp_factorial(k * m, p) for k in ks) - _ord(total, p)
    return Valuation(v), None


def _eval_P1_3(params, p):
    m, ks = _unpack(PropositionId.P1_3, params)
    _require(m >= 1 and all(k >= 1 for k in ks), "m and all parts must be >= 1")
    _require(math.gcd(*ks) == 1, "parts must be globally coprime")
    total = sum(k * m for k in ks)
    v = (
        ordp_factorial(total, p)
        - sum(ordp_factorial(k * m, p) for k in ks)
        - _ord(sum(ks), p)
    )
    return Valuation(v), None


def _eval_P_ratio_diff(params, p):
    (ks,) = _unpack(PropositionId.P_RATIO_DIFF, params)
    _require(all(k >= 0 for k in ks), "parts must be >= 0")
    total = sum(ks)
    _require(total > 0, "parts must not all vanish")
    _require(all(k % p == 0 for k in ks), "all parts must be divisible by p")
    lhs = _falling_ratio(total, total // p)
    rhs = math.prod(_falling_ratio(k, k // p) for k in ks)
    observed = ordp_int(lhs - rhs, p)
    bound = Valuation(total // p) + min(ordp_int(k, p) for k in ks)
    return observed - bound, None


def _eval_P3(params, p):
    (ks,) = _unpack(PropositionId.P3, params)
    _require(all(k >= 0 for k in ks), "parts must be >= 0")
    total = sum(ks)
    _require(total > 0, "parts must not all vanish")
    _require(all(k % p == 0 for k in ks), "all parts must be divisible by p")
    diff = multinomial(ks) - multinomial([k // p for k in ks])
    return ordp_int(diff, p) - _ord(total, p), None


def _eval_P3_1(params, p):
    m, ks = _unpack(PropositionId.P3_1, params)
    _require(m >= 1 and all(k >= 1 for k in ks), "m and all parts must be >= 1")
    _require(m % p == 0, "m must be divisible by p")
    scaled = [k * m for k in ks]
    diff = multinomial(scaled) - multinomial([k // p for k in scaled])
    return ordp_int(diff, p) - _ord(sum(scaled), p), None


def _eval_P4(params, p):
    m, n = _unpack(PropositionId.P4, params)
    _require(m >= 1 and n >= 1, "m and n must be >= 1")
    v = ordp_factorial(m * n, p) - ordp_factorial(m, p) - m * ordp_factorial(n, p)
    return Valuation(v), None


def _eval_P4_strong(params, p):
    m, n = _unpack(PropositionId.P4_STRONG, params)
    _require(m >= 1 and n >= 1, "m and n must be >= 1")
    _require(digit_sum(n, p) > 1, "n must not be a power of p")
    v = (
        ordp_factorial(m * n, p)
        - ordp_factorial(m, p)
        - m * ordp_factorial(n, p)
        - _ord(m, p)
    )
    return Valuation(v), None


def _eval_P_ratio_power(params, p):
    m, r, a = _unpack(PropositionId.P_RATIO_POWER, params)
    _require(m >= 1 and r >= 1 and a >= 1, "m, r, a must be >= 1")
    _require(a % p != 0, "a must be coprime to p")
    hi = p**r * a
    lo = p ** (r - 1) * a
    diff = _falling_ratio(m * hi, m * lo) - _falling_ratio(hi, lo) ** m
    return ordp_int(diff, p) - (m * lo + r), None


def _eval_P6(params, p):
    m, n = _unpack(PropositionId.P6, params)
    _require(m >= 1 and n >= 1, "m and n must be >= 1")
    _require(n % p == 0, "n must be divisible by p")
    diff = _fact(m * n) // _fact(n) ** m - _fact(m * n // p) // _fact(n // p) ** m
    return ordp_int(diff, p) - ordp_factorial(m, p) - _ord(n, p), None


def _eval_P7(params, p):
    m, k, l = _unpack(PropositionId.P7, params)
    _require(m >= 1 and k >= 1 and l >= 1, "m, k, l must be >= 1")
    _require(k % p != 0 or l % p != 0, "k and l must not both be divisible by p")
    v = (
        ordp_factorial(m * (k + l), p)
        - ordp_factorial(m, p)
        - m * (ordp_factorial(k, p) + ordp_factorial(l, p))
        - m * _ord(k + l, p)
    )
    return Valuation(v), None


def _eval_P8(params, p):
    m, k, l = _unpack(PropositionId.P8, params)
    _require(m >= 1 and k >= 1 and l >= 1, "m, k, l must be >= 1")
    _require(k % p == 0 and l % p == 0, "k and l must be divisible by p")
    s = k + l
    lhs = _falling_ratio(m * s, m * s // p)
    rhs = (_falling_ratio(k, k // p) * _falling_ratio(l, l // p)) ** m
    observed = ordp_int(lhs - rhs, p)
    if p == 2 and m % 2 == 1 and (l // 2) % 2 == 1:
        branch = "p2-odd-odd"
        bound = m * s // 2 + 1
    else:
        branch = "general"
        bound = m * s // p + _ord(s, p)
    return observed - bound, branch


def _eval_P9(params, p):
    m, k, l = _unpack(PropositionId.P9, params)
    _require(m >= 1 and k >= 1 and l >= 1, "m, k, l must be >= 1")
    _require(k % p == 0 and l % p == 0, "k and l must be divisible by p")
    s = k + l
    diff = (
        _fact(m * s) // (_fact(k) * _fact(l)) ** m
        - _fact(m * s // p) // (_fact(k // p) * _fact(l // p)) ** m
    )
    return ordp_int(diff, p) - ordp_factorial(m, p) - _ord(s, p), None


def _eval_PC2(params, p):
    m, ks = _unpack(PropositionId.PC2, params)
    _require(m >= 1 and all(k >= 1 for k in ks), "m and all parts must be >= 1")
    total = sum(ks)
    v = (
        m * _ord(math.gcd(*ks), p)
        + ordp_factorial(m * total, p)
        - m * sum(ordp_factorial(k, p) for k in ks)
        - ordp_factorial(m, p)
        - m * _ord(total, p)
    )
    return Valuation(v), None


def _eval_PC3(params, p):
    m, ks = _unpack(PropositionId.PC3, params)
    _require(m >= 1 and all(k >= 1 for k in ks), "m and all parts must be >= 1")
    total = sum(ks)
    diff = (
        _fact(m * total * p) // math.prod(_fact(k * p) ** m for k in ks)
        - _fact(m * total) // math.prod(_fact(k) ** m for k in ks)
    )
    observed = ordp_int(diff, p)
    return observed - (1 + ordp_factorial(m, p) + m * _ord(total, p)), None


_EVALUATORS = {
    PropositionId.P1: _eval_P1,
    PropositionId.P1_1: _eval_P1_1,
    PropositionId.P1_2: _eval_P1_2,
    PropositionId.P1_3: _eval_P1_3,
    PropositionId.P_RATIO_DIFF: _eval_P_ratio_diff,
    PropositionId.P3: _eval_P3,
    PropositionId.P3_1: _eval_P3_1,
    PropositionId.P4: _eval_P4,
    PropositionId.P4_STRONG: _eval_P4_strong,
    PropositionId.P_RATIO_POWER: _eval_P_ratio_power,
    PropositionId.P6: _eval_P6,
    PropositionId.P7: _eval_P7,
    PropositionId.P8: _eval_P8,
    PropositionId.P9: _eval_P9,
    PropositionId.PC2: _eval_PC2,
    PropositionId.PC3: _eval_PC3,
}


def margin(prop: PropositionId, params: Sequence[int], p: int) -> MarginReport:
    """Evaluate one statement at one admissible parameter tuple and prime."""
    p = as_prime(p)
    params = tuple(int(x) for x in params)
    value, branch = _EVALUATORS[prop](params, p)
    return MarginReport(prop, params, int(p), value, value >= 0, branch)


def conjecture_probe(p: int, r: int, a: int, m: int) -> ConjectureProbeRow:
    """Observed vs conjectured valuation of (m p^r a)!/(m p^(r-1) a)! minus
    ((p^r a)!/(p^(r-1) a)!)^m, for odd p with a coprime to p.

    The conjectured value is m p^(r-1) a + 3r for p > 3 and m p^(r-1) a +
    3r - 1 for p = 3; it is reported, never asserted.  The proven lower bound
    m p^(r-1) a + r is checked here for every non-degenerate row.
    """
    p = as_prime(p)
    if p == 2:
        raise ValueError("conjecture_probe requires an odd prime")
    if r < 1:
        raise ValueError("conjecture_probe requires r >= 1")
    if m < 1:
        raise ValueError("conjecture_probe requires m >= 1")
    if a < 1 or math.gcd(a, p) != 1:
        raise ValueError("conjecture_probe requires a >= 1 coprime to p")
    hi = p**r * a
    lo = p ** (r - 1) * a
    diff = _falling_ratio(m * hi, m * lo) - _falling_ratio(hi, lo) ** m
    degenerate = diff == 0
    observed = ordp_int(diff, p)
    predicted = m * lo + 3 * r - (1 if p == 3 else 0)
    if not degenerate and observed < m * lo + r:
        raise ArithmeticError(
            f"proven lower bound violated at p={p}, r={r}, a={a}, m={m}"
        )
    return ConjectureProbeRow(int(p), r, a, m, observed, predicted, degenerate)


def _sorted_range(values: Iterable[int]) -> tuple[int, ...]:
    out = tuple(sorted(set(int(v) for v in values)))
    if not out:
        raise ValueError("empty parameter range")
    return out


def _param_tuples(prop: PropositionId, ranges: Mapping[str, Iterable[int]]):
    shape = PARAM_SHAPES[prop]
    have = set(ranges)
    need = {
        "ks": {"parts", "k"},
        "m_ks": {"m", "parts", "k"},
        "m_n": {"m", "n"},
        "m_k_l": {"m", "k", "l"},
        "m_r_a": {"m", "r", "a"},
    }[shape]
    if have != need:
        raise ValueError(f"{prop.value} ranges must have keys {sorted(need)}, got {sorted(have)}")
    r = {key: _sorted_range(vals) for key, vals in ranges.items()}
    if shape == "ks":
        for n in r["parts"]:
            yield from product(r["k"], repeat=n)
    elif shape == "m_ks":
        for m in r["m"]:
            for n in r["parts"]:
                for ks in product(r["k"], repeat=n):
                    yield (m, *ks)
    elif shape == "m_n":
        yield from product(r["m"], r["n"])
    elif shape == "m_k_l":
        yield from product(r["m"], r["k"], r["l"])
    elif shape == "m_r_a":
        yield from product(r["m"], r["r"], r["a"])


def sweep(
    prop: PropositionId,
    ranges: Mapping[str, Iterable[int]],
    primes: Iterable[int],
) -> SweepResult:
    """Evaluate a statement over the cartesian box described by `ranges`.

    One report per admissible (params, p) pair, ordered by parameter tuple
    then prime; hypothesis-violating pairs are counted in `skipped`.
    """
    plist = _sorted_range(primes)
    reports: list[MarginReport] = []
    skipped = 0
    for params in _param_tuples(prop, ranges):
        for p in plist:
            try:
                reports.append(margin(prop, params, p))
            except HypothesisViolation:
                skipped += 1
    return SweepResult(prop, tuple(reports), skipped)


def _margin_json(v: Valuation):
    return v.value if v.is_finite else "oo"


def sweep_csv_text(result: SweepResult) -> str:
    """CSV rendering with columns prop, params, p, margin, holds, branch."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["prop", "params", "p", "margin", "holds", "branch"])
    for r in result.reports:
        writer.writerow(
            [
                r.prop.value,
                " ".join(str(x) for x in r.params),
                r.p,
                str(r.margin),
                "true" if r.holds else "false",
                r.branch or "",
            ]
        )
    return buf.getvalue()


def sweep_json_obj(result: SweepResult) -> dict:
    return {
        "prop": result.prop.value,
        "skipped": result.skipped,
        "all_hold": result.all_hold,
        "reports": [
            {
                "prop": r.prop.value,
                "params": list(r.params),
                "p": r.p,
                "margin": _margin_json(r.margin),
                "holds": r.holds,
                "branch": r.branch,
            }
            for r in result.reports
        ],
    }
