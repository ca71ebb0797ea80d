"""Exact-arithmetic certification of integrality properties of local mirror
symmetry: p-adic valuations and digit sums, multinomial congruence margins,
Dwork-style integrality certificates for exponential series, local and
open-closed mirror maps built from toric charge vectors, superpotential and
mirror-curve series, and Lagrange-Good inversion."""

from .padic import (
    INFINITY,
    Prime,
    Valuation,
    coprime_residue_product,
    digit_sum,
    factorial_ratio_unit,
    ordp_factorial,
    ordp_int,
    ordp_rational,
    rp_product,
)
from .congruence import (
    ConjectureProbeRow,
    HypothesisViolation,
    MarginReport,
    PropositionId,
    SweepResult,
    conjecture_probe,
    margin,
    multinomial,
    sweep,
)
from .series import (
    ConstantTermNotOne,
    IntegralityCertificate,
    NonzeroConstantTerm,
    TruncatedSeries,
    det_theta_jacobian,
    is_integral,
    series_exp,
    series_from_text,
    series_log,
    series_to_text,
    substitute_powers,
    theta,
)
from .dwork import DworkReport, PrimeCongruence, dwork_certify, generate
from .geometry import (
    ChargeSystem,
    ConditionAUnverified,
    ConditionReport,
    CYViolation,
    IndexClassification,
    PRESETS,
    charge_system_from_json,
    check_condition_a,
    check_condition_b,
    classify,
    g1_series,
    g1_series_grouped,
    load_charge_system,
    mirror_map,
    preset,
    validate_charges,
)
from .brane import (
    BraneSystem,
    SuperpotentialSeries,
    curve_series,
    extend,
    open_closed_log,
    open_closed_map,
    superpotential,
)
from .inversion import (
    UnitMapFamily,
    forward_maps,
    invert_iterative,
    invert_lagrange_good,
    substitute,
)

__version__ = "0.1.0"
