"""Frame setups: scaling function, filter bank, optional scaling symbol.

A setup bundles a translation set Λ = {0, r/N} + 2ℤ with a frequency-side
scaling function ψ̂₀, refinement filter H₀, framing filters H₁…Hₙ, and an
optional strictly positive scaling symbol θ.  The hypotheses validated here:

  - support: ψ̂₀ vanishes outside [0, 1/(4N)]
  - normalization: ψ̂₀(γ) → 1 as γ → 0⁺ (dyadic probe 2^(−k), k = 12…40)
  - refinement: ψ̂₀(2Nγ) = H₀(γ)·ψ̂₀(γ) on [0, 1/(4N)]
  - filter condition on [0, 1/2]: Σₗ |Hₗ(γ)|² = 1, or its θ-weighted form
    θ(2Nγ)|H₀(γ)|² + Σ_{ℓ≥1} |Hₗ(γ)|² = θ(γ)

The generators are ψ̂ₗ(γ) = Hₗ(γ/(2N))·ψ̂₀(γ/(2N)); their support lands in
[0, 1/2], the window all lattice-sum identities integrate over.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ThetaMissing, ThetaNotPositive
from .lattice import TranslationSet
from .symfunc import (
    FreqExpr,
    ImaginaryUnit,
    PositiveReciprocal,
    RationalConst,
    Sqrt,
    dilate_arg,
    evaluate,
    midpoint_chunks,
    product_of,
)

# Residual tolerance for hypothesis checks; the 0⁺ normalization probe gets
# its own looser default since it is dominated by the coarsest probe point
# (a smooth ψ̂₀ with curvature c deviates by ~c·2^(−24) there).
DEFAULT_TOL = 1e-10
DEFAULT_LIMIT_TOL = 1e-6

SUPPORT_SCAN_REACH = Fraction(4)
_LIMIT_PROBE_KS = range(12, 41)


@dataclass(frozen=True)
class GeneralSetup:
    """Translation set, scaling function, filters H₀…Hₙ, optional symbol θ."""

    ts: TranslationSet
    psi0_hat: FreqExpr
    filters: tuple[FreqExpr, ...]
    theta: FreqExpr | None = None

    def __post_init__(self):
        object.__setattr__(self, "filters", tuple(self.filters))
        if len(self.filters) < 2:
            raise ValueError(
                "a setup needs the refinement filter H0 plus at least one "
                f"framing filter, got {len(self.filters)} filter(s)"
            )

    @property
    def n(self) -> int:
        """Number of framing filters (generators)."""
        return len(self.filters) - 1


def derive_generator(s: GeneralSetup, ell: int) -> FreqExpr:
    """Generator ψ̂ₗ(γ) = Hₗ(γ/(2N))·ψ̂₀(γ/(2N)) for 1 ≤ ℓ ≤ n."""
    if not 1 <= ell <= s.n:
        raise IndexError(f"generator index must be in [1, {s.n}], got {ell}")
    inner = product_of(s.filters[ell], s.psi0_hat)
    return dilate_arg(inner, Fraction(1, s.ts.dilation))


@dataclass(frozen=True)
class OepReport:
    residual: float
    theta_min: float
    theta_limit_deviation: float


@dataclass(frozen=True)
class ConditionReport:
    """Hypothesis and filter-condition residuals with per-check verdicts."""

    grid_log2: int
    tol: float
    limit_tol: float
    refinement_residual: float
    support_leak: float
    limit_deviation: float
    uep_residual: float
    oep_residual: float | None
    theta_min: float | None
    theta_limit_deviation: float | None
    checks: dict
    passed: bool

    def to_dict(self) -> dict:
        return {
            "grid_log2": self.grid_log2,
            "tol": self.tol,
            "limit_tol": self.limit_tol,
            "refinement_residual": self.refinement_residual,
            "support_leak": self.support_leak,
            "limit_deviation": self.limit_deviation,
            "uep_residual": self.uep_residual,
            "oep_residual": self.oep_residual,
            "theta_min": self.theta_min,
            "theta_limit_deviation": self.theta_limit_deviation,
            "checks": dict(self.checks),
            "passed": self.passed,
        }


def _abs2_values(e: FreqExpr, g: np.ndarray) -> np.ndarray:
    v = evaluate(e, g)
    return v.real * v.real + v.imag * v.imag


def _real_values(e: FreqExpr, g: np.ndarray, what: str) -> np.ndarray:
    v = evaluate(e, g)
    bad = np.abs(v.imag) > 1e-12
    if bad.any():
        i = int(np.argmax(bad))
        raise ThetaNotPositive(
            f"{what} must be real, got {complex(v[i])} at gamma={float(g[i])}"
        )
    return v.real


def _limit_deviation(e: FreqExpr) -> float:
    """max |e(2^(−k)) − 1| over the dyadic probe k = 12…40."""
    probes = np.array([2.0**-k for k in _LIMIT_PROBE_KS])
    v = evaluate(e, probes)
    return float(np.max(np.abs(v - 1.0)))


def uep_residual(s: GeneralSetup, grid_log2: int = 20) -> float:
    """sup over [0, 1/2] of |Σₗ |Hₗ(γ)|² − 1| (midpoint grid scan)."""
    worst = 0.0
    for g in midpoint_chunks(0, Fraction(1, 2), grid_log2):
        acc = _abs2_values(s.filters[0], g)
        for h in s.filters[1:]:
            acc += _abs2_values(h, g)
        worst = max(worst, float(np.max(np.abs(acc - 1.0))))
    return worst


def _theta_scan(theta: FreqExpr | None, ts: TranslationSet, grid_log2: int) -> float:
    """Verify θ strictly positive on [0, 1/2] and [0, N]; return the min."""
    if theta is None:
        raise ThetaMissing("setup has no scaling symbol")
    d = float(ts.dilation)
    tmin = math.inf
    for g in midpoint_chunks(0, Fraction(1, 2), grid_log2):
        for gg in (g, d * g):
            t = _real_values(theta, gg, "scaling symbol")
            m = float(np.min(t))
            if m <= 0.0:
                i = int(np.argmin(t))
                raise ThetaNotPositive(
                    f"scaling symbol is {m} at gamma={float(gg[i])}; "
                    "it must be strictly positive"
                )
            tmin = min(tmin, m)
    return tmin


def oep_check(s: GeneralSetup, grid_log2: int = 20) -> OepReport:
    """θ-weighted filter condition on [0, 1/2] plus the θ → 1 limit probe.

    residual = sup |θ(2Nγ)|H₀(γ)|² + Σ_{ℓ≥1}|Hₗ(γ)|² − θ(γ)|.
    With θ ≡ 1 the accumulation reproduces uep_residual bit for bit.
    """
    tmin = _theta_scan(s.theta, s.ts, grid_log2)
    d = float(s.ts.dilation)
    worst = 0.0
    for g in midpoint_chunks(0, Fraction(1, 2), grid_log2):
        t = _real_values(s.theta, g, "scaling symbol")
        t_dil = _real_values(s.theta, d * g, "scaling symbol")
        acc = t_dil * _abs2_values(s.filters[0], g)
        for h in s.filters[1:]:
            acc += _abs2_values(h, g)
        worst = max(worst, float(np.max(np.abs(acc - t))))
    return OepReport(
        residual=worst,
        theta_min=tmin,
        theta_limit_deviation=_limit_deviation(s.theta),
    )


def oep_residual(s: GeneralSetup, grid_log2: int = 20) -> float:
    return oep_check(s, grid_log2).residual


def validate_setup(
    s: GeneralSetup,
    grid_log2: int = 20,
    tol: float = DEFAULT_TOL,
    limit_tol: float = DEFAULT_LIMIT_TOL,
) -> ConditionReport:
    """Run every hypothesis check the setup's ingredients admit.

    The filter condition passes when either the plain residual or (with a
    scaling symbol present) the θ-weighted residual is within tol.
    """
    if grid_log2 < 10:
        raise ValueError(f"grid_log2 must be at least 10, got {grid_log2}")
    N = s.ts.N
    quarter = Fraction(1, 4 * N)

    refinement = 0.0
    d = float(s.ts.dilation)
    for g in midpoint_chunks(0, quarter, grid_log2):
        lhs = evaluate(s.psi0_hat, d * g)
        rhs = evaluate(s.filters[0], g) * evaluate(s.psi0_hat, g)
        refinement = max(refinement, float(np.max(np.abs(lhs - rhs))))

    leak = 0.0
    for a, b in ((quarter, SUPPORT_SCAN_REACH), (-SUPPORT_SCAN_REACH, Fraction(0))):
        for g in midpoint_chunks(a, b, grid_log2):
            leak = max(leak, float(np.max(np.abs(evaluate(s.psi0_hat, g)))))

    limit_dev = _limit_deviation(s.psi0_hat)
    uep = uep_residual(s, grid_log2)

    oep = theta_min = theta_limit = None
    if s.theta is not None:
        rep = oep_check(s, grid_log2)
        oep = rep.residual
        theta_min = rep.theta_min
        theta_limit = rep.theta_limit_deviation

    checks = {
        "refinement": refinement <= tol,
        "support": leak <= tol,
        "limit": limit_dev <= limit_tol,
        "uep": uep <= tol,
    }
    if s.theta is not None:
        checks["oep"] = oep <= tol
        checks["theta_limit"] = theta_limit <= limit_tol
        checks["filter_condition"] = checks["uep"] or checks["oep"]
    else:
        checks["filter_condition"] = checks["uep"]

    required = ["refinement", "support", "limit", "filter_condition"]
    if s.theta is not None:
        required.append("theta_limit")
    passed = all(checks[k] for k in required)

    return ConditionReport(
        grid_log2=grid_log2,
        tol=tol,
        limit_tol=limit_tol,
        refinement_residual=refinement,
        support_leak=leak,
        limit_deviation=limit_dev,
        uep_residual=uep,
        oep_residual=oep,
        theta_min=theta_min,
        theta_limit_deviation=theta_limit,
        checks=checks,
        passed=passed,
    )


def oep_normalize(s: GeneralSetup, grid_log2: int = 20) -> GeneralSetup:
    """Fold the scaling symbol into the filters and scaling function.

    H̃₀ = √(θ(2Nγ)/θ(γ))·H₀,  H̃ₗ = √(1/θ(γ))·Hₗ,  ψ̂̃₀ = √θ·ψ̂₀.

    If the input satisfies the θ-weighted condition with residual ε, the
    output satisfies the plain condition with residual ≤ ε/min θ.  θ of the
    result is the constant 1 (the normalization's fixed point); with θ ≡ 1
    already, every filter evaluates unchanged.
    """
    if s.theta is None:
        raise ThetaMissing("setup has no scaling symbol to normalize away")
    _theta_scan(s.theta, s.ts, grid_log2)
    recip = PositiveReciprocal(s.theta)
    theta_dil = dilate_arg(s.theta, s.ts.dilation)
    h0 = product_of(Sqrt(product_of(theta_dil, recip)), s.filters[0])
    rest = [product_of(Sqrt(recip), h) for h in s.filters[1:]]
    psi0 = product_of(Sqrt(s.theta), s.psi0_hat)
    return GeneralSetup(
        ts=s.ts,
        psi0_hat=psi0,
        filters=(h0, *rest),
        theta=RationalConst(Fraction(1)),
    )


def two_generator_setup(
    psi0_hat: FreqExpr,
    h0: FreqExpr,
    theta: FreqExpr,
    ts: TranslationSet,
    grid_log2: int = 20,
) -> GeneralSetup:
    """Two-filter completion H₁ = √(θ(2Nγ))·H₀·i, H₂ = √(θ(γ)).

    Built exactly as stated; note the θ-weighted filter condition then
    evaluates to θ(γ) + 2θ(2Nγ)|H₀(γ)|² on the left, so oep_residual of the
    result equals sup 2θ(2Nγ)|H₀(γ)|², nonzero whenever H₀ is.  The
    construction is reported as-is rather than corrected; callers should
    inspect oep_residual of the result.
    """
    _theta_scan(theta, ts, grid_log2)
    h1 = product_of(Sqrt(dilate_arg(theta, ts.dilation)), h0, ImaginaryUnit())
    h2 = Sqrt(theta)
    return GeneralSetup(ts=ts, psi0_hat=psi0_hat, filters=(h0, h1, h2), theta=theta)
