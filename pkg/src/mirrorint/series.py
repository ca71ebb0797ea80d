"""Sparse multivariate power series over exact rationals, truncated by total degree.

A series is a map from exponent tuples to nonzero Fractions, together with a
variable count and a total-degree bound.  Truncation is always by total
degree, which keeps composition and power substitution triangular.  Series
values are immutable by convention: every operation returns a new series.

Each series also carries a `reliable_degree`: the largest total degree
through which its coefficients are meaningful.  Fresh series are reliable to
their full bound; power substitution caps it at bound // p, and arithmetic
propagates the minimum, so downstream certificates never claim more than the
truncation supports.

Witnesses and serialization use graded lexicographic order (total degree
first, then tuple order), so output is deterministic across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

__all__ = [
    "TruncatedSeries",
    "IntegralityCertificate",
    "NonzeroConstantTerm",
    "ConstantTermNotOne",
    "grlex_key",
    "iter_exponents",
    "series_exp",
    "series_log",
    "theta",
    "substitute_powers",
    "is_integral",
    "det_theta_jacobian",
    "series_to_text",
    "series_from_text",
]


class NonzeroConstantTerm(ValueError):
    """Raised when an operation requires a series with constant term 0."""


class ConstantTermNotOne(ValueError):
    """Raised when an operation requires a series with constant term 1."""


def grlex_key(exponents: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    return (sum(exponents), exponents)


def _exponents_of_degree(nvars: int, total: int) -> Iterator[tuple[int, ...]]:
    if nvars == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _exponents_of_degree(nvars - 1, total - first):
            yield (first,) + rest


def iter_exponents(nvars: int, max_total: int, min_total: int = 0) -> Iterator[tuple[int, ...]]:
    """All exponent tuples with min_total <= total degree <= max_total, in
    graded-lex order."""
    for total in range(min_total, max_total + 1):
        yield from _exponents_of_degree(nvars, total)


class TruncatedSeries:
    """One truncated series; treat instances as immutable values."""

    __slots__ = ("nvars", "degree_bound", "reliable_degree", "_terms")

    def __init__(
        self,
        nvars: int,
        degree_bound: int,
        terms: Mapping[tuple[int, ...], Fraction | int] | None = None,
        *,
        reliable_degree: int | None = None,
    ) -> None:
        if nvars < 1:
            raise ValueError("nvars must be >= 1")
        if degree_bound < 0:
            raise ValueError("degree_bound must be >= 0")
        if reliable_degree is None:
            reliable_degree = degree_bound
        if not 0 <= reliable_degree <= degree_bound:
            raise ValueError("reliable_degree must lie in [0, degree_bound]")
        clean: dict[tuple[int, ...], Fraction] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent {exps} does not have {nvars} entries")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            if sum(exps) > degree_bound:
                raise ValueError(f"exponent {exps} exceeds the degree bound {degree_bound}")
            c = Fraction(coeff)
            if c:
                clean[exps] = c
        self.nvars = nvars
        self.degree_bound = degree_bound
        self.reliable_degree = reliable_degree
        self._terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int, degree_bound: int) -> "TruncatedSeries":
        return cls(nvars, degree_bound)

    @classmethod
    def constant(cls, value: Fraction | int, nvars: int, degree_bound: int) -> "TruncatedSeries":
        return cls(nvars, degree_bound, {(0,) * nvars: Fraction(value)})

    @classmethod
    def variable(cls, i: int, nvars: int, degree_bound: int) -> "TruncatedSeries":
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        exps = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(nvars, degree_bound, {exps: Fraction(1)})

    # -- inspection --------------------------------------------------------

    def coefficient(self, exps: Iterable[int]) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    @property
    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.nvars, Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: grlex_key(kv[0]))

    def support(self) -> list[tuple[int, ...]]:
        return sorted(self._terms, key=grlex_key)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.nvars == other.nvars
            and self.degree_bound == other.degree_bound
            and self._terms == other._terms
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return (
            f"TruncatedSeries(nvars={self.nvars}, degree_bound={self.degree_bound},"
            f" terms={len(self._terms)})"
        )

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        names = (
            ["z"]
            if self.nvars == 1
            else [f"z{i}" for i in range(self.nvars)]
        )
        pieces = []
        for exps, c in self.sorted_terms():
            mono = "*".join(
                (name if e == 1 else f"{name}^{e}")
                for name, e in zip(names, exps)
                if e
            )
            if not mono:
                pieces.append(str(c))
            elif c == 1:
                pieces.append(mono)
            elif c == -1:
                pieces.append(f"-{mono}")
            else:
                pieces.append(f"{c}*{mono}")
        out = " + ".join(pieces)
        return out.replace("+ -", "- ")

    # -- arithmetic --------------------------------------------------------

    def _check_compatible(self, other: "TruncatedSeries") -> tuple[int, int]:
        if self.nvars != other.nvars:
            raise ValueError(
                f"variable counts differ: {self.nvars} vs {other.nvars}"
            )
        return (
            min(self.degree_bound, other.degree_bound),
            min(self.reliable_degree, other.reliable_degree),
        )

    def __add__(self, other: "TruncatedSeries | Fraction | int") -> "TruncatedSeries":
        if isinstance(other, (int, Fraction)):
            other = TruncatedSeries.constant(other, self.nvars, self.degree_bound)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        bound, reliable = self._check_compatible(other)
        terms = {e: c for e, c in self._terms.items() if sum(e) <= bound}
        for e, c in other._terms.items():
            if sum(e) <= bound:
                terms[e] = terms.get(e, Fraction(0)) + c
        return TruncatedSeries(self.nvars, bound, terms, reliable_degree=reliable)

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(
            self.nvars,
            self.degree_bound,
            {e: -c for e, c in self._terms.items()},
            reliable_degree=self.reliable_degree,
        )

    def __sub__(self, other: "TruncatedSeries | Fraction | int") -> "TruncatedSeries":
        if isinstance(other, (int, Fraction)):
            other = TruncatedSeries.constant(other, self.nvars, self.degree_bound)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: "Fraction | int") -> "TruncatedSeries":
        return (-self) + other

    def __mul__(self, other: "TruncatedSeries | Fraction | int") -> "TruncatedSeries":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return TruncatedSeries(
                self.nvars,
                self.degree_bound,
                {e: c * v for e, v in self._terms.items()},
                reliable_degree=self.reliable_degree,
            )
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        bound, reliable = self._check_compatible(other)
        terms: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self._terms.items():
            d1 = sum(e1)
            if d1 > bound:
                continue
            for e2, c2 in other._terms.items():
                if d1 + sum(e2) > bound:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return TruncatedSeries(self.nvars, bound, terms, reliable_degree=reliable)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "TruncatedSeries":
        if not isinstance(k, int) or k < 0:
            raise ValueError("powers must be nonnegative ints")
        out = TruncatedSeries.constant(1, self.nvars, self.degree_bound)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def truncate(self, new_bound: int) -> "TruncatedSeries":
        if new_bound >= self.degree_bound:
            return TruncatedSeries(
                self.nvars, new_bound, self._terms,
                reliable_degree=self.reliable_degree,
            )
        return TruncatedSeries(
            self.nvars,
            new_bound,
            {e: c for e, c in self._terms.items() if sum(e) <= new_bound},
            reliable_degree=min(self.reliable_degree, new_bound),
        )


def _degree_parts(f: TruncatedSeries) -> list[dict[tuple[int, ...], Fraction]]:
    parts: list[dict[tuple[int, ...], Fraction]] = [
        {} for _ in range(f.degree_bound + 1)
    ]
    for e, c in f._terms.items():
        parts[sum(e)][e] = c
    return parts


def series_exp(f: TruncatedSeries) -> TruncatedSeries:
    """exp(f) for f with zero constant term; constant term of the result is 1.

    Built degree by degree from the Euler-grading identity
    theta_total(exp f) = theta_total(f) * exp f, where theta_total scales the
    degree-d part by d; this is exact and needs only truncated products.
    """
    if f.constant_term != 0:
        raise NonzeroConstantTerm("series_exp requires a zero constant term")
    bound = f.degree_bound
    fparts = _degree_parts(f)
    eparts: list[dict[tuple[int, ...], Fraction]] = [{} for _ in range(bound + 1)]
    eparts[0] = {(0,) * f.nvars: Fraction(1)}
    for d in range(1, bound + 1):
        acc: dict[tuple[int, ...], Fraction] = {}
        for j in range(1, d + 1):
            part = fparts[j]
            lower = eparts[d - j]
            if not part or not lower:
                continue
            for e1, c1 in part.items():
                w = c1 * j
                for e2, c2 in lower.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    acc[e] = acc.get(e, Fraction(0)) + w * c2
        inv = Fraction(1, d)
        eparts[d] = {e: c * inv for e, c in acc.items() if c}
    terms = {e: c for part in eparts for e, c in part.items()}
    return TruncatedSeries(
        f.nvars, bound, terms, reliable_degree=f.reliable_degree
    )


def series_log(g: TruncatedSeries) -> TruncatedSeries:
    """log(g) for g with constant term 1; inverse of series_exp up to the bound."""
    if g.constant_term != 1:
        raise ConstantTermNotOne("series_log requires constant term 1")
    bound = g.degree_bound
    gparts = _degree_parts(g)
    lparts: list[dict[tuple[int, ...], Fraction]] = [{} for _ in range(bound + 1)]
    for d in range(1, bound + 1):
        acc = {e: c * d for e, c in gparts[d].items()}
        for a in range(1, d):
            ga = gparts[a]
            lb = lparts[d - a]
            if not ga or not lb:
                continue
            w = d - a
            for e1, c1 in ga.items():
                for e2, c2 in lb.items():
                    e = tuple(x + y for x, y in zip(e1, e2))
                    acc[e] = acc.get(e, Fraction(0)) - c1 * w * c2
        inv = Fraction(1, d)
        lparts[d] = {e: c * inv for e, c in acc.items() if c}
    terms = {e: c for part in lparts for e, c in part.items()}
    return TruncatedSeries(
        g.nvars, bound, terms, reliable_degree=g.reliable_degree
    )


def theta(f: TruncatedSeries, i: int) -> TruncatedSeries:
    """The logarithmic derivative z_i * d/dz_i: scales each term by its i-th exponent."""
    if not 0 <= i < f.nvars:
        raise IndexError(f"variable index {i} out of range for {f.nvars} variables")
    return TruncatedSeries(
        f.nvars,
        f.degree_bound,
        {e: c * e[i] for e, c in f._terms.items() if e[i]},
        reliable_degree=f.reliable_degree,
    )


def substitute_powers(f: TruncatedSeries, power: int) -> TruncatedSeries:
    """f with every variable replaced by its power-th power.

    The degree bound is kept; terms pushed past it are dropped, and the
    result's reliable_degree is capped at bound // power to record exactly
    how far the truncated output can be trusted.
    """
    if power < 1:
        raise ValueError("power must be >= 1")
    bound = f.degree_bound
    terms = {}
    for e, c in f._terms.items():
        if sum(e) * power <= bound:
            terms[tuple(x * power for x in e)] = c
    return TruncatedSeries(
        f.nvars,
        bound,
        terms,
        reliable_degree=min(f.reliable_degree, bound // power),
    )


@dataclass(frozen=True)
class IntegralityCertificate:
    """Verdict on integer-ness of all coefficients through degree_checked.

    witness is the graded-lex-first non-integral term, as (exponents,
    coefficient); it is None exactly when integral is True.
    """

    degree_checked: int
    integral: bool
    witness: tuple[tuple[int, ...], Fraction] | None

    def to_json_obj(self) -> dict:
        obj: dict = {"degree_checked": self.degree_checked, "integral": self.integral}
        if self.witness is None:
            obj["witness"] = None
        else:
            exps, coeff = self.witness
            obj["witness"] = {
                "exponents": list(exps),
                "coefficient": f"{coeff.numerator}/{coeff.denominator}",
            }
        return obj


def is_integral(f: TruncatedSeries) -> IntegralityCertificate:
    """Certify that every coefficient through f.reliable_degree is an integer."""
    degree = f.reliable_degree
    for e, c in f.sorted_terms():
        if sum(e) > degree:
            continue
        if c.denominator != 1:
            return IntegralityCertificate(degree, False, (e, c))
    return IntegralityCertificate(degree, True, None)


def _det(entries: list[list[TruncatedSeries]]) -> TruncatedSeries:
    """Determinant by cofactor expansion with shared minors (subset dynamic
    programming); division-free, so it stays exact for series entries."""
    k = len(entries)
    nvars = entries[0][0].nvars
    bound = min(e.degree_bound for row in entries for e in row)
    reliable = min(e.reliable_degree for row in entries for e in row)
    states: dict[int, TruncatedSeries] = {
        0: TruncatedSeries.constant(
            1, nvars, bound
        )
    }
    for row in range(k):
        nxt: dict[int, TruncatedSeries] = {}
        for mask, val in states.items():
            for col in range(k):
                bit = 1 << col
                if mask & bit:
                    continue
                below = (mask & (bit - 1)).bit_count()
                term = val * entries[row][col]
                if (row - below) & 1:
                    term = -term
                new_mask = mask | bit
                if new_mask in nxt:
                    nxt[new_mask] = nxt[new_mask] + term
                else:
                    nxt[new_mask] = term
        states = nxt
    out = states[(1 << k) - 1]
    return TruncatedSeries(
        nvars, out.degree_bound, out._terms, reliable_degree=reliable
    )


def det_theta_jacobian(fs: list[TruncatedSeries]) -> TruncatedSeries:
    """det(delta_ij + theta_i f_j) for a family of len(fs) series in len(fs)
    variables, each with zero constant term."""
    k = len(fs)
    if k == 0:
        raise ValueError("need at least one series")
    nvars = fs[0].nvars
    bound = fs[0].degree_bound
    if nvars != k:
        raise ValueError(f"need {nvars} series for {nvars} variables, got {k}")
    for f in fs:
        if f.nvars != nvars or f.degree_bound != bound:
            raise ValueError("all series must share nvars and degree_bound")
        if f.constant_term != 0:
            raise NonzeroConstantTerm("jacobian entries require zero constant terms")
    entries = [
        [theta(fs[j], i) + (1 if i == j else 0) for j in range(k)]
        for i in range(k)
    ]
    return _det(entries)


def series_to_text(f: TruncatedSeries) -> str:
    """Canonical text form: one 'e_0 e_1 ... : num/den' line per term, graded-lex sorted."""
    lines = [
        f"{' '.join(str(x) for x in e)} : {c.numerator}/{c.denominator}"
        for e, c in f.sorted_terms()
    ]
    return "".join(line + "\n" for line in lines)


def series_from_text(text: str, nvars: int, degree_bound: int) -> TruncatedSeries:
    terms: dict[tuple[int, ...], Fraction] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        left, sep, right = line.partition(":")
        if not sep:
            raise ValueError(f"malformed series line: {line!r}")
        exps = tuple(int(tok) for tok in left.split())
        num, sep, den = right.strip().partition("/")
        if not sep:
            raise ValueError(f"malformed coefficient in line: {line!r}")
        terms[exps] = Fraction(int(num), int(den))
    return TruncatedSeries(nvars, degree_bound, terms)
