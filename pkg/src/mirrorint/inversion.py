"""Compositional inversion of unit-form map families Z_i = z_i * exp(f_i).

Two independent routes:

* invert_lagrange_good: closed-form coefficient extraction; the coefficient
  of Z^M in the i-th inverse is the coefficient of z^(M - e_i) in
  exp(-sum_j m_j f_j) * det(delta_ij + theta_i f_j);
* invert_iterative: degree-by-degree fixed-point substitution of
  z_i = Z_i * exp(-f_i(z)).

They must agree coefficient for coefficient; the tests hold them against
each other.  When no f_j involves variable 0, the determinant's first row is
trivial and inverse coefficients are supported on m0 == 0 (i >= 1) or
m0 == 1 (i == 0); that support filter is applied automatically and can be
forced on or off.

Series composition (substitute) lives here because the round-trip checks
need it; arguments must have zero constant terms so that truncation by total
degree stays exact.

The closed form needs one auxiliary product per target monomial; products
are truncated to the degree of the single coefficient being extracted and
shared across monomials through a prefix cache, which keeps the extraction
at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .series import (
    TruncatedSeries,
    det_theta_jacobian,
    iter_exponents,
    series_exp,
)

__all__ = [
    "UnitMapFamily",
    "substitute",
    "forward_maps",
    "invert_iterative",
    "invert_lagrange_good",
]


@dataclass(frozen=True)
class UnitMapFamily:
    """Maps Z_i = z_i * exp(f_i(z)), one f per variable, zero constant terms."""

    fs: tuple[TruncatedSeries, ...]

    def __post_init__(self) -> None:
        if not self.fs:
            raise ValueError("need at least one map")
        nv = self.fs[0].nvars
        bound = self.fs[0].degree_bound
        if nv != len(self.fs):
            raise ValueError(
                f"need {nv} series for {nv} variables, got {len(self.fs)}"
            )
        for f in self.fs:
            if f.nvars != nv or f.degree_bound != bound:
                raise ValueError("all series must share nvars and degree_bound")
            if f.constant_term != 0:
                raise ValueError("unit-map exponents must have zero constant term")

    @property
    def nvars(self) -> int:
        return len(self.fs)

    @property
    def degree_bound(self) -> int:
        return self.fs[0].degree_bound


class _PowerCache:
    """Lazily extended powers base**0, base**1, ... at a fixed bound."""

    def __init__(self, base: TruncatedSeries) -> None:
        self._powers = [TruncatedSeries.constant(1, base.nvars, base.degree_bound), base]

    def __getitem__(self, e: int) -> TruncatedSeries:
        while len(self._powers) <= e:
            self._powers.append(self._powers[-1] * self._powers[1])
        return self._powers[e]


def substitute(f: TruncatedSeries, args: list[TruncatedSeries]) -> TruncatedSeries:
    """f(args[0], ..., args[nvars-1]) truncated by total degree.

    Arguments must share a variable count and have zero constant terms, so a
    term of f of total degree d only feeds output degrees >= d and the
    truncation is exact through the common bound.
    """
    if len(args) != f.nvars:
        raise ValueError(f"need {f.nvars} arguments, got {len(args)}")
    nv = args[0].nvars
    bound = min([f.degree_bound] + [a.degree_bound for a in args])
    reliable = min([f.reliable_degree] + [a.reliable_degree for a in args])
    for a in args:
        if a.nvars != nv:
            raise ValueError("arguments must share a variable count")
        if a.constant_term != 0:
            raise ValueError("substitution arguments must have zero constant term")
    caches = [_PowerCache(a.truncate(bound)) for a in args]
    acc: dict[tuple[int, ...], Fraction] = {}
    for exps, coeff in f.sorted_terms():
        if sum(exps) > bound:
            continue
        term = TruncatedSeries.constant(coeff, nv, bound)
        for j, e in enumerate(exps):
            if e:
                term = term * caches[j][e]
        for mono, c in term.sorted_terms():
            acc[mono] = acc.get(mono, Fraction(0)) + c
    return TruncatedSeries(nv, bound, acc, reliable_degree=reliable)


def forward_maps(fam: UnitMapFamily) -> list[TruncatedSeries]:
    """The maps Z_i = z_i * exp(f_i) as explicit series."""
    out = []
    for i, f in enumerate(fam.fs):
        zi = TruncatedSeries.variable(i, fam.nvars, fam.degree_bound)
        out.append(zi * series_exp(f))
    return out


def _check_degree(fam: UnitMapFamily, degree: int) -> None:
    if degree < 1:
        raise ValueError("degree must be >= 1")
    if degree > fam.degree_bound:
        raise ValueError(
            f"degree {degree} exceeds the family bound {fam.degree_bound}"
        )


def invert_iterative(fam: UnitMapFamily, degree: int) -> list[TruncatedSeries]:
    """Inverse series by fixed-point iteration of z_i = Z_i * exp(-f_i(z)).

    The pass that works at bound d is exact through degree d because the
    outer Z_i factor raises every error term one degree; bounds grow with the
    passes so early passes stay cheap.
    """
    _check_degree(fam, degree)
    nv = fam.nvars
    neg = [(-f).truncate(degree) for f in fam.fs]
    current = [TruncatedSeries.variable(i, nv, 1) for i in range(nv)]
    for d in range(2, degree + 1):
        lifted = [c.truncate(d) for c in current]
        current = [
            TruncatedSeries.variable(i, nv, d)
            * series_exp(substitute(neg[i].truncate(d), lifted))
            for i in range(nv)
        ]
    # Rebuild to reset the reliability marker: the degree-by-degree argument
    # above guarantees exactness through `degree` regardless of the
    # truncations used along the way.
    return [TruncatedSeries(nv, degree, c._terms) for c in current]


def invert_lagrange_good(
    fam: UnitMapFamily, degree: int, reduced: bool | None = None
) -> list[TruncatedSeries]:
    """Inverse series by closed-form coefficient extraction.

    reduced=None auto-detects whether every f_j is independent of variable 0
    and then restricts the extraction to the supported m0 patterns; True
    forces the restriction (rejecting families that depend on variable 0),
    False runs the general extraction unconditionally.
    """
    _check_degree(fam, degree)
    nv = fam.nvars
    fs = [f.truncate(degree) for f in fam.fs]
    z0_free = all(all(e[0] == 0 for e in f.support()) for f in fs)
    if reduced is None:
        reduced = z0_free
    elif reduced and not z0_free:
        raise ValueError("reduced extraction requires all maps free of variable 0")

    det = det_theta_jacobian(fs)
    unit_powers = [_PowerCache(series_exp(-f)) for f in fs]
    inverses: list[dict[tuple[int, ...], Fraction]] = [{} for _ in range(nv)]
    for d in range(1, degree + 1):
        det_d = det.truncate(d - 1)
        prefix_cache: dict[tuple[int, ...], TruncatedSeries] = {(): det_d}
        for m in iter_exponents(nv, d, min_total=d):
            targets = [
                i
                for i in range(nv)
                if m[i] > 0 and (not reduced or m[0] == (1 if i == 0 else 0))
            ]
            if not targets:
                continue
            key: tuple[int, ...] = ()
            aux = det_d
            for j, e in enumerate(m):
                key = key + (e,)
                cached = prefix_cache.get(key)
                if cached is None:
                    cached = aux * unit_powers[j][e] if e else aux
                    prefix_cache[key] = cached
                aux = cached
            for i in targets:
                target = tuple(e - (1 if j == i else 0) for j, e in enumerate(m))
                coeff = aux.coefficient(target)
                if coeff:
                    inverses[i][m] = coeff
    return [TruncatedSeries(nv, degree, terms) for terms in inverses]
