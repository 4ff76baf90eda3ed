"""Regularity diagnostics and the finite-energy membership classifier.

The diagnostics quantify how fast a CDF's modulus of continuity decays
(Holder fit, log-power modulus test) and how concentrated a step density
is (L^p and L(log L)^gamma functionals, evaluated in log space so
astronomically tall blocks never overflow).  ``classify_membership``
applies the sufficient conditions in a fixed strongest-first order and
returns the first conclusive certificate:

    Lipschitz -> L^p density -> Holder -> log-modulus
              -> direct energy bracket -> lower-bound series -> Unknown

Divergence certificates always carry a certified lower bound (a budget
violation or a growth certificate for a represented infinite series);
`+inf` results from the functionals are sentinel verdicts issued by a
growth test on log partial sums, never floating-point overflow.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadBeta, BadParams, DegenerateModulus
from .measures import (
    MonotoneCDF,
    QuadratureConfig,
    StepDensity,
    cdf_from_step_density,
    default_modulus_grid,
    sampled_modulus,
)
from .energy import (
    VERDICT_DIVERGENT,
    VERDICT_FINITE,
    energy_density,
    energy_double_stieltjes,
    holder_energy_bound,
    step_lower_bound,
)

__all__ = [
    "HolderFit",
    "MembershipVerdict",
    "MEMBER_CERTIFIED",
    "DIVERGENCE_CERTIFIED",
    "UNKNOWN",
    "RULE_LIPSCHITZ",
    "RULE_LP",
    "RULE_HOLDER",
    "RULE_LOG_MODULUS",
    "RULE_ENERGY",
    "RULE_SERIES",
    "modulus_of_continuity",
    "fit_holder",
    "check_log_modulus",
    "lp_norm",
    "l_log_l_gamma",
    "classify_membership",
]

MEMBER_CERTIFIED = "MemberCertified"
DIVERGENCE_CERTIFIED = "DivergenceCertified"
UNKNOWN = "Unknown"

RULE_LIPSCHITZ = "Lipschitz"
RULE_LP = "LpDensity"
RULE_HOLDER = "Holder"
RULE_LOG_MODULUS = "LogModulus"
RULE_ENERGY = "EnergyDirect"
RULE_SERIES = "LowerBoundSeries"

# Default dyadic fitting window 2^-4 .. 2^-16: finer scales would drop below
# the truncation error of depth-limited self-similar evaluators.
DEFAULT_FIT_RANGE = (4, 16)
# Fitted slope at or above this is treated as Lipschitz (slope 1 up to fit
# noise on rough evaluators).
LIPSCHITZ_MIN_ALPHA = 0.98
# Below this the fitted exponent is statistical noise, not continuity.
HOLDER_MIN_ALPHA = 0.05
# Out-of-sample confirmation: the fitted bound must keep holding this many
# octaves past the fitting window, with 5% slack.
VALIDATION_OCTAVES = 4
VALIDATION_SLACK = 1.05
# Exponents tried by the L^p gate, strongest first.
LP_EXPONENTS = (2.0, 1.5, 1.25)
# Log-power moduli tried by the log-modulus gate, weakest (most inclusive)
# first: a bound with small beta > 1 already certifies membership.
LOG_MODULUS_BETAS = (1.5, 2.0, 3.0)
# Slope clamp keeping alpha in (0, 1].
_ALPHA_FLOOR = 1e-6
# Growth-sentinel test: log partial sums must climb monotonically across
# this many trailing blocks by at least this total rise.
_GROWTH_WINDOW = 10
_GROWTH_MIN_RISE = 0.01


@dataclass(frozen=True)
class HolderFit:
    """Fitted modulus bound |F(x+y) - F(x)| <= K * |y|**alpha.

    K is inflated post-fit so the bound holds on every sampled scale
    literally; residual is the max deviation of the log-modulus from the
    reported line (slope alpha, least-squares intercept).
    """

    alpha: float
    K: float
    scales: tuple
    residual: float

    def as_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "K": self.K,
            "scales": list(self.scales),
            "residual": self.residual,
        }


@dataclass(frozen=True)
class MembershipVerdict:
    """Certificate-first classification result.

    MemberCertified requires a satisfied sufficient condition or a finite
    energy bracket; DivergenceCertified requires a certified lower bound;
    Unknown names the last rule attempted in `rule` with the reason in the
    witness.
    """

    verdict: str
    rule: str
    witness: dict

    def as_dict(self) -> dict:
        return {"verdict": self.verdict, "rule": self.rule, "witness": dict(self.witness)}


def modulus_of_continuity(F: MonotoneCDF, y: float) -> float:
    """sup over a deterministic x grid of F(x + y) - F(x) at one scale y > 0."""
    return float(sampled_modulus(F, float(y)))


def fit_holder(
    F: MonotoneCDF, j_min: int, j_max: int, grid: np.ndarray | None = None
) -> HolderFit:
    """Least-squares Holder fit of the sampled modulus over scales 2^-j.

    Fits ln modulus against ln y for j in [j_min, j_max], clamps the slope
    into (0, 1], refits the intercept for the clamped slope, and inflates K
    so the bound holds on every sampled scale.  Scales where the sampled
    modulus is zero certify the bound trivially and are excluded from the
    regression.
    """
    if not (0 <= j_min < j_max):
        raise BadParams(f"need 0 <= j_min < j_max, got [{j_min}, {j_max}]")
    js = np.arange(j_min, j_max + 1, dtype=float)
    ys = 2.0**-js
    mods = np.asarray(sampled_modulus(F, ys, grid=grid), dtype=float)
    pos = mods > 0.0
    if np.count_nonzero(pos) < 2:
        raise DegenerateModulus(
            "modulus vanishes at the sampled scales; no exponent to fit"
        )
    ly = np.log(ys[pos])
    lm = np.log(mods[pos])
    npts = ly.size
    sx = float(np.sum(ly))
    sy = float(np.sum(lm))
    sxx = float(np.dot(ly, ly))
    sxy = float(np.dot(ly, lm))
    slope = (npts * sxy - sx * sy) / (npts * sxx - sx * sx)
    alpha = min(max(slope, _ALPHA_FLOOR), 1.0)
    intercept = (sy - alpha * sx) / npts
    residual = float(np.max(np.abs(lm - (intercept + alpha * ly))))
    K = math.exp(float(np.max(lm - alpha * ly)))
    return HolderFit(alpha, K, tuple(float(y) for y in ys[pos]), residual)


def check_log_modulus(F: MonotoneCDF, beta: float, grid: np.ndarray | None = None) -> dict:
    """Test F(x+y) - F(x) <= 1/|ln y|**beta for dyadic y below e^-(beta+1).

    The sup over x runs on the deterministic modulus grid; worst_ratio is
    the largest modulus * |ln y|**beta seen, and holds means it stayed at
    or below 1.
    """
    if not beta > 1.0:
        raise BadBeta(f"log-modulus exponent must be > 1, got {beta}")
    eps = math.exp(-(beta + 1.0))
    j0 = int(math.ceil(-math.log2(eps)))
    ys = 2.0 ** -np.arange(j0, 41, dtype=float)
    mods = np.asarray(sampled_modulus(F, ys, grid=grid), dtype=float)
    ratios = mods * np.abs(np.log(ys)) ** beta
    worst = float(np.max(ratios))
    return {"holds": bool(worst <= 1.0 + 1e-9), "eps_used": eps, "worst_ratio": worst}


def _tail_growing(partial_logs) -> bool:
    """Sentinel test: log partial sums still climbing across the tail blocks."""
    w = min(_GROWTH_WINDOW, len(partial_logs) - 1)
    if w < 3:
        return False
    tail = partial_logs[-(w + 1) :]
    if any(b <= a for a, b in zip(tail, tail[1:])):
        return False
    return tail[-1] - tail[0] >= _GROWTH_MIN_RISE


def _series_eval(term_logs, root: float) -> float:
    """(sum of exp(term_logs)) ** root with the +inf growth sentinel.

    Accumulates in log space for the sentinel test; the returned value is a
    compensated linear-space sum whenever no term overflows a double.
    """
    partial = -math.inf
    partial_logs = []
    for tl in term_logs:
        partial = float(np.logaddexp(partial, tl))
        partial_logs.append(partial)
    if not partial_logs or partial_logs[-1] == -math.inf:
        return 0.0
    if _tail_growing(partial_logs):
        return math.inf
    if max(term_logs) < 700.0:
        lin = math.fsum(math.exp(tl) for tl in term_logs)
        return lin**root if root != 1.0 else lin
    return math.exp(partial_logs[-1] * root)


def lp_norm(f: StepDensity, p: float) -> float:
    """(sum h_n^p d_n)^(1/p) in log space; +inf sentinel when the log
    partial sums keep growing across the trailing blocks."""
    if not p >= 1.0:
        raise BadParams(f"L^p exponent must be >= 1, got {p}")
    term_logs = [
        math.fsum([p * b.h_log, p * b.h_log_lo, b.d_log, b.d_log_lo])
        for b in f.blocks
    ]
    return _series_eval(term_logs, 1.0 / p)


def l_log_l_gamma(f: StepDensity, gamma: float) -> float:
    """sum h_n d_n (ln(1 + h_n))^gamma with ln(1+h) = ln h + ln(1 + 1/h)
    evaluated from the stored log-heights; +inf sentinel by growth test."""
    if gamma < 0.0:
        raise BadParams(f"exponent must be >= 0, got {gamma}")
    term_logs = []
    for b in f.blocks:
        mass_log = math.fsum([b.h_log, b.h_log_lo, b.d_log, b.d_log_lo])
        h_log = b.h_log + b.h_log_lo
        ln1p_h = h_log + math.log1p(math.exp(-h_log))
        if gamma > 0.0:
            term_logs.append(mass_log + gamma * math.log(ln1p_h))
        else:
            term_logs.append(mass_log)
    return _series_eval(term_logs, 1.0)


def _bound_confirmed(
    F: MonotoneCDF, alpha: float, K: float, j_hi: int, grid: np.ndarray | None = None
) -> bool:
    """Out-of-sample check: K|y|^alpha keeps bounding the modulus for
    VALIDATION_OCTAVES octaves past the fitting window (5% slack)."""
    js = np.arange(j_hi + 1, j_hi + 1 + VALIDATION_OCTAVES, dtype=float)
    ys = 2.0**-js
    mods = np.asarray(sampled_modulus(F, ys, grid=grid), dtype=float)
    return bool(np.all(mods <= VALIDATION_SLACK * K * ys**alpha + 1e-15))


def classify_membership(measure, cfg: QuadratureConfig = QuadratureConfig()) -> MembershipVerdict:
    """Apply the sufficient conditions strongest-first; first conclusive wins.

    CDF inputs take the modulus-based gates and, failing those, a direct
    double-Stieltjes bracket.  Step densities additionally get the L^p gate
    up front (on the density itself) and the diagonal lower-bound series as
    the final divergence certificate; their energy gate uses the exact
    block engine and certifies membership only, leaving divergence to the
    series rule.
    """
    f = measure if isinstance(measure, StepDensity) else None
    F = cdf_from_step_density(f) if f is not None else measure
    j_lo, j_hi = DEFAULT_FIT_RANGE
    grid = default_modulus_grid(F)

    fit = None
    try:
        fit = fit_holder(F, j_lo, j_hi, grid=grid)
    except DegenerateModulus:
        if F.total_mass <= 0.0:
            # the zero measure has zero energy; certify trivially
            return MembershipVerdict(
                MEMBER_CERTIFIED, RULE_LIPSCHITZ, {"alpha": 1.0, "K": 0.0, "zero_mass": True}
            )

    if fit is not None and fit.alpha >= LIPSCHITZ_MIN_ALPHA:
        ys = np.asarray(fit.scales, dtype=float)
        mods = np.asarray(sampled_modulus(F, ys, grid=grid), dtype=float)
        K1 = float(np.max(mods / ys))
        if _bound_confirmed(F, 1.0, K1, j_hi, grid=grid):
            return MembershipVerdict(
                MEMBER_CERTIFIED,
                RULE_LIPSCHITZ,
                {"alpha": 1.0, "K": K1,
                 "energy_bound": holder_energy_bound(K1, 1.0, F.total_mass)},
            )

    if f is not None:
        for p in LP_EXPONENTS:
            v = lp_norm(f, p)
            if math.isfinite(v):
                return MembershipVerdict(MEMBER_CERTIFIED, RULE_LP, {"p": p, "norm": v})

    if fit is not None and HOLDER_MIN_ALPHA <= fit.alpha < 1.0:
        if _bound_confirmed(F, fit.alpha, fit.K, j_hi, grid=grid):
            return MembershipVerdict(
                MEMBER_CERTIFIED,
                RULE_HOLDER,
                {"alpha": fit.alpha, "K": fit.K, "residual": fit.residual,
                 "energy_bound": holder_energy_bound(fit.K, fit.alpha, F.total_mass)},
            )

    for beta in LOG_MODULUS_BETAS:
        rep = check_log_modulus(F, beta, grid=grid)
        if rep["holds"]:
            return MembershipVerdict(
                MEMBER_CERTIFIED,
                RULE_LOG_MODULUS,
                {"beta": beta, "eps_used": rep["eps_used"],
                 "worst_ratio": rep["worst_ratio"]},
            )

    if f is not None:
        est = energy_density(f, cfg)
        if est.verdict == VERDICT_FINITE:
            return MembershipVerdict(
                MEMBER_CERTIFIED, RULE_ENERGY,
                {"value": est.value, "lower": est.lower, "upper": est.upper},
            )
        series = step_lower_bound(f)
        if series["diverging"] or series["partial_sum"] > cfg.divergence_budget:
            return MembershipVerdict(
                DIVERGENCE_CERTIFIED,
                RULE_SERIES,
                {"partial_sum": series["partial_sum"],
                 "diverging": bool(series["diverging"]),
                 "n_blocks": f.n_max},
            )
        return MembershipVerdict(
            UNKNOWN, RULE_SERIES, {"reason": "no sufficient condition concluded"}
        )

    est = energy_double_stieltjes(F, cfg)
    if est.verdict == VERDICT_FINITE:
        return MembershipVerdict(
            MEMBER_CERTIFIED, RULE_ENERGY,
            {"value": est.value, "lower": est.lower, "upper": est.upper},
        )
    if est.verdict == VERDICT_DIVERGENT:
        return MembershipVerdict(
            DIVERGENCE_CERTIFIED, RULE_ENERGY, {"lower": est.lower}
        )
    return MembershipVerdict(
        UNKNOWN, RULE_ENERGY, {"reason": "no sufficient condition concluded"}
    )
