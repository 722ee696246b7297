"""Frame analysis: quadrature, lattice sums by two independent routes, reports.

Everything integrates by the midpoint rule on dyadic grids.  Midpoints of a
dyadic grid never coincide with dyadic indicator breakpoints (those land on
cell boundaries), so piecewise definitions cost no accuracy, and sums use
math.fsum (exactly rounded, ascending index), so results are bit-reproducible.

The Parseval frame property is verified by two deliberately independent
routes:

  direct    : truncated lattice sum Σ_λ |c_λ|² of coefficient quadratures
              c_λ = ∫₀^{1/2} (2N)^{j/2} f̂((2N)^j γ) conj(ĝ(γ)) e^{2πiλγ} dγ
              over the window λ ∈ {2m, r/N + 2m : |m| ≤ M};
  identity  : the closed form Σ_λ |c_λ|² = ∫₀^{1/2} |(2N)^{j/2} f̂((2N)^j γ)
              ĝ(γ)|² dγ, valid whenever supp ĝ ⊆ [0, 1/2] (both cosets of Λ
              contribute half of ‖f̂(...)ĝ‖² by Fourier-series completeness
              on a length-1/2 window).

The two never share intermediate results, so their agreement is evidence the
frame identity actually holds for the setup at hand.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import SupportViolation, TruncationGuard, UepPreconditionFailed
from .lattice import TranslationSet
from .setups import GeneralSetup, derive_generator, uep_residual
from .signals import SignalSpec
from .symfunc import FreqExpr, evaluate, midpoint_chunks

_POINTS_MAX_LOG2 = 22
_SUPPORT_PROBES = 64
_SUPPORT_TOL = 1e-12
_SUPPORT_REACH = 4.0

ROUTE_PARSEVAL = "parseval"
ROUTE_DIRECT = "direct"
_ROUTE_NAMES = {ROUTE_PARSEVAL: "parseval-identity", ROUTE_DIRECT: "direct-oracle"}


@dataclass(frozen=True)
class FrequencyGrid:
    """Regular midpoint grid: 2^log2_n cells on [a, b], sample points at
    cell midpoints a + (k + 1/2)h, h = (b − a)/2^log2_n."""

    a: Fraction
    b: Fraction
    log2_n: int

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if not self.a < self.b:
            raise ValueError(f"grid needs a < b, got [{self.a}, {self.b}]")
        if not 10 <= self.log2_n <= 26:
            raise ValueError(f"log2_n must be in [10, 26], got {self.log2_n}")

    @property
    def n(self) -> int:
        return 1 << self.log2_n

    @property
    def h(self) -> float:
        return float((self.b - self.a) / self.n)

    def points(self) -> np.ndarray:
        """All midpoints as one array (only up to log2_n = 22; beyond that
        use chunks(); a 2^26 grid materialized is half a gigabyte)."""
        if self.log2_n > _POINTS_MAX_LOG2:
            raise ValueError(
                f"grid with log2_n={self.log2_n} is too large to materialize; "
                "iterate over chunks()"
            )
        return next(iter(midpoint_chunks(self.a, self.b, self.log2_n, chunk=self.n)))

    def chunks(self, chunk: int = 1 << 20):
        return midpoint_chunks(self.a, self.b, self.log2_n, chunk=chunk)

    def to_meta(self) -> dict:
        return {"a": str(self.a), "b": str(self.b), "log2_n": self.log2_n}


def default_grid() -> FrequencyGrid:
    """The working grid every identity integrates over: [0, 1/2], 2^20 cells."""
    return FrequencyGrid(Fraction(0), Fraction(1, 2), 20)


def _resolve_grid(grid: FrequencyGrid | None) -> FrequencyGrid:
    return default_grid() if grid is None else grid


def _require_working_window(grid: FrequencyGrid):
    if grid.a != 0 or grid.b != Fraction(1, 2):
        raise ValueError(
            f"lattice sums integrate over [0, 1/2]; got grid on "
            f"[{grid.a}, {grid.b}]"
        )


def quad(values, grid: FrequencyGrid) -> complex:
    """Midpoint-rule integral h·Σ values (fsum over real and imaginary
    parts separately, ascending index)."""
    v = np.asarray(values, dtype=np.complex128)
    if v.shape != (grid.n,):
        raise ValueError(
            f"values length {v.shape} does not match grid size {grid.n}"
        )
    return complex(math.fsum(v.real) * grid.h, math.fsum(v.imag) * grid.h)


def _stream_real_integral(fn, grid: FrequencyGrid) -> float:
    """h·Σ fn(γ) over the grid, fn real-valued, chunked fsum."""
    partials = [math.fsum(fn(g)) for g in grid.chunks()]
    return math.fsum(partials) * grid.h


def periodize(e: FreqExpr, N: int, k_range: int, grid: FrequencyGrid) -> np.ndarray:
    """Samples of the N-periodization Σ_{|k| ≤ k_range} e(γ + N·k) on the
    grid midpoints (meant for a grid spanning one period [0, N]).

    Warns when |e| is detectably nonzero just outside the folded window,
    since then k_range truncates actual mass.
    """
    if N < 1:
        raise ValueError(f"period N must be a positive integer, got {N}")
    if k_range < 0:
        raise ValueError(f"k_range must be nonnegative, got {k_range}")
    g = grid.points()
    acc = np.zeros(g.shape, dtype=np.complex128)
    for k in range(-k_range, k_range + 1):
        acc += evaluate(e, g + float(N) * k)
    lo = float(grid.a) - N * (k_range + 1)
    hi = float(grid.b) + N * k_range
    step = float(N) / _SUPPORT_PROBES
    ks = np.arange(_SUPPORT_PROBES) + 0.5
    for probes in (hi + ks * step, lo + ks * step):
        worst = float(np.max(np.abs(evaluate(e, probes))))
        if worst > _SUPPORT_TOL:
            warnings.warn(
                f"periodization window |k| <= {k_range} leaks: |e| reaches "
                f"{worst:.3e} outside it",
                stacklevel=2,
            )
            break
    return acc


def _require_half_line_support(g_hat: FreqExpr):
    """Probe that ĝ has no detectable mass outside [0, 1/2]."""
    ks = np.arange(_SUPPORT_PROBES) + 0.5
    above = 0.5 + ks * ((_SUPPORT_REACH - 0.5) / _SUPPORT_PROBES)
    below = 0.0 - ks * (_SUPPORT_REACH / _SUPPORT_PROBES)
    for probes in (above, below):
        v = evaluate(g_hat, probes)
        worst = float(np.max(np.abs(v)))
        if worst > _SUPPORT_TOL:
            i = int(np.argmax(np.abs(v)))
            raise SupportViolation(
                f"analyzing function has magnitude {worst:.3e} at "
                f"gamma={float(probes[i])}, outside [0, 1/2]"
            )


def coefficient(
    f_hat: FreqExpr,
    g_hat: FreqExpr,
    ts: TranslationSet,
    j: int,
    lam,
    grid: FrequencyGrid | None = None,
) -> complex:
    """Single frame coefficient as a quadrature:
    c_λ = ∫₀^{1/2} (2N)^{j/2} f̂((2N)^j γ) conj(ĝ(γ)) e^{2πiλγ} dγ."""
    grid = _resolve_grid(grid)
    _require_working_window(grid)
    g = grid.points()
    d = float(ts.dilation)
    amp = d ** (0.5 * j)
    vals = (
        amp
        * evaluate(f_hat, (d**j) * g)
        * np.conj(evaluate(g_hat, g))
        * np.exp((2j * np.pi * float(lam)) * g)
    )
    return quad(vals, grid)


@dataclass(frozen=True)
class DirectLevelSum:
    """Truncated direct-route lattice sum with its coset breakdown.

    value == even_part + offset_part exactly (the two cosets are summed
    separately and added once).  value_at_half_m is the same sum truncated
    at |m| ≤ M//2; value − value_at_half_m estimates the coset tail, which
    decays like 1/M for indicator-type data.
    """

    value: float
    even_part: float
    offset_part: float
    value_at_half_m: float
    M: int


def _coset_sq(F: np.ndarray, g: np.ndarray, M: int, h: float) -> np.ndarray:
    """|h·Σ_k F_k e^{2πi(2m)γ_k}|² for m = −M…M, ascending.

    Phases advance by cumulative multiplication with e^{4πiγ} (one vector
    multiply and one BLAS dot per m), walking outward from m = 0 in each
    direction so phase drift stays at the ulp scale.
    """
    out = np.empty(2 * M + 1, dtype=np.complex128)
    step = np.exp((4j * np.pi) * g)
    P = np.ones_like(F)
    for m in range(M + 1):
        out[M + m] = np.dot(F, P)
        if m < M:
            P = P * step
    step_c = np.conj(step)
    P = step_c.copy()
    for m in range(1, M + 1):
        out[M - m] = np.dot(F, P)
        if m < M:
            P = P * step_c
    c = h * out
    return c.real * c.real + c.imag * c.imag


def lattice_sum_direct_detail(
    f_hat: FreqExpr,
    g_hat: FreqExpr,
    ts: TranslationSet,
    j: int,
    M: int = 2048,
    grid: FrequencyGrid | None = None,
) -> DirectLevelSum:
    """Direct route: Σ over λ ∈ {2m, r/N + 2m : |m| ≤ M} of |c_λ|².

    Each coset's |c_λ|² values are fsum-ed in ascending-λ order; the two
    coset totals are added once at the end, so the coset split is exact by
    construction.  Guards against M·h > 0.01 (phase under-resolution).
    """
    grid = _resolve_grid(grid)
    _require_working_window(grid)
    if M < 1:
        raise ValueError(f"window size M must be at least 1, got {M}")
    if M * grid.h > 0.01:
        raise TruncationGuard(
            f"M*h = {M * grid.h:.4g} > 0.01: the phase e^(2pi i lambda gamma) "
            "would be under-resolved; refine the grid or shrink M"
        )
    _require_half_line_support(g_hat)
    g = grid.points()
    d = float(ts.dilation)
    F = (
        (d ** (0.5 * j))
        * evaluate(f_hat, (d**j) * g)
        * np.conj(evaluate(g_hat, g))
    )
    h = grid.h
    sq_even = _coset_sq(F, g, M, h)
    F_off = F * np.exp((2j * np.pi * float(ts.offset)) * g)
    sq_off = _coset_sq(F_off, g, M, h)
    even = math.fsum(sq_even)
    off = math.fsum(sq_off)
    half = M // 2
    sl = slice(M - half, M + half + 1)
    value_half = math.fsum(sq_even[sl]) + math.fsum(sq_off[sl])
    return DirectLevelSum(
        value=even + off,
        even_part=even,
        offset_part=off,
        value_at_half_m=value_half,
        M=M,
    )


def lattice_sum_direct(
    f_hat: FreqExpr,
    g_hat: FreqExpr,
    ts: TranslationSet,
    j: int,
    M: int = 2048,
    grid: FrequencyGrid | None = None,
) -> float:
    return lattice_sum_direct_detail(f_hat, g_hat, ts, j, M, grid).value


def lattice_sum_parseval(
    f_hat: FreqExpr,
    g_hat: FreqExpr,
    ts: TranslationSet,
    j: int,
    grid: FrequencyGrid | None = None,
) -> float:
    """Identity route: ∫₀^{1/2} |(2N)^{j/2} f̂((2N)^j γ) ĝ(γ)|² dγ.

    Equals the full (untruncated) lattice sum whenever ĝ is supported in
    [0, 1/2]; that support is probed and violations raise SupportViolation.
    """
    grid = _resolve_grid(grid)
    _require_working_window(grid)
    _require_half_line_support(g_hat)
    d = float(ts.dilation)
    scale = d**j
    amp_sq = d**j

    def integrand(g):
        u = evaluate(f_hat, scale * g) * evaluate(g_hat, g)
        return amp_sq * (u.real * u.real + u.imag * u.imag)

    return _stream_real_integral(integrand, grid)


def level_profile(
    f_hat: FreqExpr,
    setup: GeneralSetup,
    j_list,
    grid: FrequencyGrid | None = None,
) -> list[tuple[int, float]]:
    """Scaling-level sums (j, Σ_λ |⟨f, level-j translate of ψ₀⟩|²) via the
    identity route against ψ̂₀, for each j in j_list."""
    grid = _resolve_grid(grid)
    return [
        (int(j), lattice_sum_parseval(f_hat, setup.psi0_hat, setup.ts, int(j), grid))
        for j in j_list
    ]


def norm_sq(f_hat: FreqExpr, support, grid: FrequencyGrid | None = None) -> float:
    """quad of |f̂|² over the support interval, at the grid's resolution
    (a fresh midpoint grid is laid over the support)."""
    grid = _resolve_grid(grid)
    a, b = (Fraction(x) for x in support)
    sub = FrequencyGrid(a, b, grid.log2_n)

    def integrand(g):
        v = evaluate(f_hat, g)
        return v.real * v.real + v.imag * v.imag

    return _stream_real_integral(integrand, sub)


def bessel_check(
    signal: SignalSpec,
    setup: GeneralSetup,
    grid: FrequencyGrid | None = None,
) -> tuple[float, bool]:
    """Level-0 sum against ψ̂₀ and whether it is ≤ (1 + 1e-9)·‖f‖².

    The sum is a lattice sum of coefficients against unit-norm-bounded ψ̂₀,
    so it can never exceed the signal's energy; the slack covers quadrature
    noise between the two independent integrals.
    """
    grid = _resolve_grid(grid)
    s = lattice_sum_parseval(signal.fhat, setup.psi0_hat, setup.ts, 0, grid)
    nrm = norm_sq(signal.fhat, signal.support, grid)
    return s, s <= (1.0 + 1e-9) * nrm


def telescoping_residual(
    f_hat: FreqExpr,
    setup: GeneralSetup,
    j: int,
    grid: FrequencyGrid | None = None,
    uep_tol: float = 1e-8,
) -> float:
    """|Σ_{ℓ=0}^{n} S_{j−1}(ψ̂ₗ) − S_j(ψ̂₀)| where S is the identity-route
    level sum (ℓ = 0 term uses ψ̂₀ itself).

    The refinement structure collapses one level of generator sums into the
    next scaling-level sum when the filters satisfy the unitary condition;
    that condition is checked first (UepPreconditionFailed otherwise).
    """
    grid = _resolve_grid(grid)
    resid = uep_residual(setup, grid.log2_n)
    if resid > uep_tol:
        raise UepPreconditionFailed(
            f"filter condition residual {resid:.3e} exceeds {uep_tol:.1e}; "
            "the telescoping identity needs the unitary filter condition"
        )
    terms = [lattice_sum_parseval(f_hat, setup.psi0_hat, setup.ts, j - 1, grid)]
    for ell in range(1, setup.n + 1):
        gen = derive_generator(setup, ell)
        terms.append(lattice_sum_parseval(f_hat, gen, setup.ts, j - 1, grid))
    lhs = math.fsum(terms)
    rhs = lattice_sum_parseval(f_hat, setup.psi0_hat, setup.ts, j, grid)
    return abs(lhs - rhs)


@dataclass(frozen=True)
class FrameReport:
    """Per-(generator, level) sums with totals, signal norm, and warnings."""

    route: str
    signal_label: str
    j_min: int
    j_max: int
    M: int | None
    grid: dict
    levels: tuple  # ((ell, j, value), ...) ascending (ell, j)
    total: float
    signal_norm_sq: float
    ratio: float
    neg_frequency_mass: float
    coverage_tail_mass: float
    coset_tail_estimate: float | None
    warnings: tuple

    def to_dict(self) -> dict:
        return {
            "route": self.route,
            "signal": self.signal_label,
            "j_min": self.j_min,
            "j_max": self.j_max,
            "M": self.M,
            "grid": dict(self.grid),
            "levels": [[ell, j, v] for (ell, j, v) in self.levels],
            "total": self.total,
            "signal_norm_sq": self.signal_norm_sq,
            "ratio": self.ratio,
            "neg_frequency_mass": self.neg_frequency_mass,
            "coverage_tail_mass": self.coverage_tail_mass,
            "coset_tail_estimate": self.coset_tail_estimate,
            "warnings": list(self.warnings),
        }

    def to_json_text(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_csv_text(self) -> str:
        lines = ["generator,level,value"]
        lines.extend(f"{ell},{j},{v!r}" for (ell, j, v) in self.levels)
        return "\n".join(lines) + "\n"


def parseval_report(
    signal: SignalSpec,
    setup: GeneralSetup,
    j_min: int = -4,
    j_max: int = 4,
    route: str = ROUTE_PARSEVAL,
    M: int = 2048,
    grid: FrequencyGrid | None = None,
) -> FrameReport:
    """Frame-identity verification over a level window.

    Sums Σ_{ℓ=1}^{n} Σ_{j=j_min}^{j_max} (lattice sum for generator ℓ at
    level j) by the chosen route and compares against ‖f‖².  The report
    carries the mass the window cannot see: declared-support mass at
    negative frequencies and above the coverage ceiling (2N)^j_max/2, plus
    (direct route) the coset truncation estimate.
    """
    grid = _resolve_grid(grid)
    if j_max < j_min:
        raise ValueError(f"empty level window: j_min={j_min} > j_max={j_max}")
    if route not in _ROUTE_NAMES:
        raise ValueError(f"route must be one of {sorted(_ROUTE_NAMES)}, got {route!r}")

    levels = []
    tail_terms = []
    for ell in range(1, setup.n + 1):
        gen = derive_generator(setup, ell)
        for j in range(j_min, j_max + 1):
            if route == ROUTE_PARSEVAL:
                v = lattice_sum_parseval(signal.fhat, gen, setup.ts, j, grid)
            else:
                d = lattice_sum_direct_detail(signal.fhat, gen, setup.ts, j, M, grid)
                v = d.value
                tail_terms.append(d.value - d.value_at_half_m)
            levels.append((ell, j, v))

    total = math.fsum(v for (_, _, v) in levels)
    nrm = norm_sq(signal.fhat, signal.support, grid)

    a, b = signal.support
    neg_mass = 0.0
    if a < 0:
        neg_mass = norm_sq(signal.fhat, (a, min(b, Fraction(0))), grid)
    cover_hi = Fraction(setup.ts.dilation) ** j_max * Fraction(1, 2)
    tail_mass = 0.0
    if b > cover_hi:
        tail_mass = norm_sq(signal.fhat, (max(a, cover_hi), b), grid)
    coset_tail = math.fsum(tail_terms) if route == ROUTE_DIRECT else None

    notes = []
    if nrm == 0.0:
        ratio = 0.0
        notes.append("signal norm is zero over the declared support")
    else:
        ratio = total / nrm
    if neg_mass > 0.0:
        notes.append(
            f"declared support has mass {neg_mass!r} at negative frequencies; "
            "the frame identity is only verified on [0, +inf)"
        )
    if tail_mass > 0.0:
        notes.append(
            f"mass {tail_mass!r} lies above the level-window coverage "
            f"(gamma > {cover_hi}); raise j_max to capture it"
        )
    if route == ROUTE_DIRECT and coset_tail > 0.0:
        notes.append(
            f"direct-route translation window |m| <= {M} leaves an estimated "
            f"tail {coset_tail!r}"
        )

    return FrameReport(
        route=_ROUTE_NAMES[route],
        signal_label=signal.label,
        j_min=j_min,
        j_max=j_max,
        M=M if route == ROUTE_DIRECT else None,
        grid=grid.to_meta(),
        levels=tuple(levels),
        total=total,
        signal_norm_sq=nrm,
        ratio=ratio,
        neg_frequency_mass=neg_mass,
        coverage_tail_mass=tail_mass,
        coset_tail_estimate=coset_tail,
        warnings=tuple(notes),
    )
