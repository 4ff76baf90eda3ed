"""Quadrature engines for the positive logarithmic energy of line measures.

Three engines share one bracketing discipline:

* ``energy_double_stieltjes`` — double Stieltjes sums over mass-uniform
  partitions.  Off-diagonal cell pairs get rigorous kernel brackets
  (kernel at the cells' maximal separation below, at their gap above);
  diagonal and touching pairs are refined by mass bisection and carry a
  documented heuristic upper at the finest refinement scale.
* ``energy_one_sided`` — the equivalent one-sided form
  integral over x of [ int_0^1 (F(x+y) - F(x-y))/y dy ] dF(x)
  for continuous F, with an adaptive geometric grid in y and a
  modulus-of-continuity bound for the y -> 0 tail.
* ``energy_density`` — exact closed forms for step densities, evaluated in
  log space so blocks far beyond double-precision range still combine
  exactly.

Divergence is certified, never assumed: a ``Divergent`` verdict carries a
lower bound exceeding the configured budget, an identified atom-scale mass
concentration, or a growth certificate for the represented infinite block
series (those two set the lower bracket to +inf).  ``Inconclusive`` is an
explicit third verdict.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import (
    BadExponent,
    BadParams,
    DiscontinuousInput,
    NonpositiveDistance,
    ZeroMass,
)
from .measures import (
    INVERSE_TOL_FLOOR,
    MonotoneCDF,
    QuadratureConfig,
    StepDensity,
    _ginv_array,
    _partition_arrays,
    eval_cdf,
    sampled_modulus,
)

__all__ = [
    "EnergyEstimate",
    "VERDICT_FINITE",
    "VERDICT_DIVERGENT",
    "VERDICT_INCONCLUSIVE",
    "logplus_kernel",
    "energy_double_stieltjes",
    "energy_one_sided",
    "energy_density",
    "step_lower_bound",
    "holder_energy_bound",
]

VERDICT_FINITE = "FiniteConverged"
VERDICT_DIVERGENT = "Divergent"
VERDICT_INCONCLUSIVE = "Inconclusive"

# Smallest positive double: width clips so that kernel values never become
# inf on cells whose width underflows (the atom rule preempts heavy cells).
_TINY = 5e-324
# Bound on mass-bisection refinement of the near-diagonal bucket.
_MAX_NEAR_FACTOR = 64
# Parent-cell distance up to which pairs are bracketed on the refined
# partition instead of the coarse one (the near bucket's window).
_NEAR_WINDOW = 32
# Work cap for one near-bucket refinement pass, in kernel evaluations.
_NEAR_COST_CAP = 2**28
# Cap on the one-sided engine's adaptive inner y-grid size.
_MAX_INNER_GRID = 8192
# Fraction of total mass below which a resolution-floor-width cell is not
# treated as an atom (its diagonal term is then provably negligible).
_ATOM_MASS_FRACTION = 1e-6


@dataclass(frozen=True)
class EnergyEstimate:
    """Bracketed energy value with verdict and refinement trace.

    trace holds (partition size, lower sum, upper sum) triples; lower sums
    are nondecreasing along the trace because partitions are nested.
    """

    value: float
    lower: float
    upper: float
    verdict: str
    trace: tuple

    def as_dict(self) -> dict:
        return {
            "value": self.value,
            "lower": self.lower,
            "upper": self.upper,
            "verdict": self.verdict,
            "trace": [list(t) for t in self.trace],
        }


def logplus_kernel(s: float) -> float:
    """max(ln(1/s), 0) — the truncated logarithmic kernel at distance s > 0."""
    if not (s > 0.0):
        raise NonpositiveDistance(f"kernel distance must be positive, got {s}")
    if s >= 1.0:
        return 0.0
    return -math.log(s)


def _kern(arr: np.ndarray) -> np.ndarray:
    """Vectorized kernel on positive distances (caller guarantees s > 0)."""
    with np.errstate(divide="ignore"):
        return np.maximum(-np.log(arr), 0.0)


def _n_threads() -> int:
    raw = os.environ.get("LOGMEASURE_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def holder_energy_bound(K: float, alpha: float, mass: float) -> float:
    """2 (K / alpha) * mass — energy bound for a (K, alpha)-Holder CDF."""
    if not (0.0 < alpha <= 1.0):
        raise BadExponent(f"exponent must lie in (0, 1], got {alpha}")
    if K <= 0.0:
        raise BadParams(f"modulus constant must be positive, got {K}")
    if mass < 0.0:
        raise BadParams(f"mass must be nonnegative, got {mass}")
    return 2.0 * (K / alpha) * mass


# ----------------------------------------------------------------------
# Double-Stieltjes engine


def _lag_sums(bounds: np.ndarray, masses: np.ndarray, lag_lo: int, lag_hi: int):
    """Lower/upper kernel sums over cell pairs (i, i+L) for L in [lag_lo, lag_hi).

    Lower terms use the maximal separation bounds[i+L+1] - bounds[i]; upper
    terms use the gap bounds[i+L] - bounds[i+1], clipped away from zero so
    zero-width interior cells cannot produce inf (the atom rule preempts any
    heavy concentration).  The gap array at lag L equals an interior slice
    of the span array at lag L-2, so each kernel (log) pass is computed once
    and reused two lags later.  Returns ordered per-lag partial sums (factor
    2 for the two orderings of each pair is applied here).
    """
    lows, ups = [], []
    n = masses.size
    cache = {}
    for L in range(lag_lo, lag_hi):
        span = bounds[L + 1 :] - bounds[: n - L]
        ks = _kern(np.maximum(span, _TINY))
        cache[L] = ks
        kg = cache.pop(L - 2, None)
        if kg is not None:
            kg = kg[1 : n - L + 1]
        else:
            gap = bounds[L:n] - bounds[1 : n - L + 1]
            kg = _kern(np.maximum(gap, _TINY))
        if kg.size and float(np.max(kg)) <= 0.0:
            # gaps only grow with the lag: all remaining pairs are beyond
            # kernel range
            break
        mm = masses[: n - L] * masses[L:]
        lows.append(2.0 * float(np.dot(mm, ks)))
        ups.append(2.0 * float(np.dot(mm, kg)))
    return lows, ups


def _offdiag_sums(bounds: np.ndarray, masses: np.ndarray, lag_lo: int = 2):
    """Bracket sums over all pairs at lag >= lag_lo, optionally threaded."""
    n = masses.size
    if n <= lag_lo:
        return 0.0, 0.0
    threads = _n_threads()
    if threads == 1:
        lows, ups = _lag_sums(bounds, masses, lag_lo, n)
        return math.fsum(lows), math.fsum(ups)
    # chunk the lag range; chunks are combined in fixed order
    edges = np.linspace(lag_lo, n, threads + 1, dtype=int)
    jobs = [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if a < b]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        parts = list(ex.map(lambda ab: _lag_sums(bounds, masses, ab[0], ab[1]), jobs))
    lows = [x for p in parts for x in p[0]]
    ups = [x for p in parts for x in p[1]]
    return math.fsum(lows), math.fsum(ups)


def _near_bracket(F, n: int, cfg, atom_floor: float, off_lo: float, off_up: float):
    """Bracket all pairs within _NEAR_WINDOW parent cells of the diagonal.

    The near bucket is evaluated on a factor-s finer nested partition,
    restricted to fine pairs whose parent cells are at most _NEAR_WINDOW
    apart (the coarse off-diagonal sums start just beyond that window, so
    every pair is counted exactly once).  Within the bucket, fine pairs at
    lag >= 2 get rigorous gap/span kernel brackets; diagonal and touching
    fine pairs are bounded above by the documented heuristic
    mass_i*mass_j*ln(1/width) and refined (s doubling) until that residue
    drops below agreement_tol * (current lower + 1) and the bucket's
    bracket width stops limiting the round, or a work cap is reached.

    For CDFs without a continuity certificate, a resolution-floor-width
    cell still carrying non-negligible mass certifies an atom: jump CDFs
    are flagged Divergent here (lower = +inf).  Continuity-certified CDFs
    never take that route - a width-floor cell then only reflects resolution
    exhaustion and feeds the heuristic upper instead.

    Returns (near_lower, near_upper, atom_hit).
    """
    mass_floor = _ATOM_MASS_FRACTION * F.total_mass
    W = _NEAR_WINDOW
    s = 1
    near_lo, near_up = 0.0, math.inf
    while True:
        bounds, fvals = _partition_arrays(F, n * s)
        widths = np.diff(bounds)
        masses = np.diff(fvals)
        if not F.continuous:
            # r consecutive width-floor cells mean r+1 mass-uniform quantile
            # targets share one point, certifying an atom of mass at least
            # r * total/(n*s) there (the realized cell masses are 0 - a jump's
            # mass lands in the first cell past it, so runs are the signature)
            collapsed = widths <= atom_floor
            if bool(np.any(collapsed)):
                pad = np.concatenate(([0], collapsed.view(np.int8), [0]))
                steps = np.diff(pad)
                runs = np.flatnonzero(steps == -1) - np.flatnonzero(steps == 1)
                if float(np.max(runs)) * F.total_mass / (n * s) >= mass_floor:
                    return math.inf, math.inf, True
        m = masses.size
        wc = np.maximum(widths, _TINY)
        diag = float(np.dot(masses * masses, _kern(wc)))
        lo_parts = [diag]
        up_parts = [diag]
        heur = diag
        parent = np.arange(m, dtype=np.int64) // s
        cache = {}
        for L in range(1, min((W + 1) * s, m)):
            span = bounds[L + 1 :] - bounds[: m - L]
            ks = _kern(np.maximum(span, _TINY))
            cache[L] = ks
            kg = cache.pop(L - 2, None)
            if kg is not None:
                kg = kg[1 : m - L + 1]
            elif L >= 2:
                gap = bounds[L:m] - bounds[1 : m - L + 1]
                kg = _kern(np.maximum(gap, _TINY))
            mm = masses[: m - L] * masses[L:]
            if L > (W - 1) * s and L != W * s:
                # partial lags: only pairs whose parent distance is within
                # the window (other lags are entirely inside it)
                keep = np.nonzero(parent[L:] - parent[: m - L] <= W)[0]
                if keep.size == 0:
                    continue
                mm = mm[keep]
                ks = ks[keep]
                if kg is not None:
                    kg = kg[keep]
            lo_parts.append(2.0 * float(np.dot(mm, ks)))
            if L == 1:
                up1 = 2.0 * float(np.dot(mm, _kern(np.maximum(wc[: m - 1], wc[1:]))))
                up_parts.append(up1)
                heur += up1
            else:
                up_parts.append(2.0 * float(np.dot(mm, kg)))
        near_lo = math.fsum(lo_parts)
        near_up = math.fsum(up_parts)
        lower_est = off_lo + near_lo
        width_target = max(
            0.25 * (off_up - off_lo),
            0.375 * cfg.agreement_tol * max(1.0, lower_est),
        )
        if (
            heur <= cfg.agreement_tol * (lower_est + 1.0)
            and near_up - near_lo <= width_target
        ):
            break
        s2 = 2 * s
        if (
            s2 > _MAX_NEAR_FACTOR
            or n * s2 > 2**20
            or (W + 1) * s2 * s2 * n > _NEAR_COST_CAP
        ):
            break
        s = s2
    return near_lo, near_up, False


def energy_double_stieltjes(F: MonotoneCDF, cfg: QuadratureConfig = QuadratureConfig()) -> EnergyEstimate:
    """Bracketed double-Stieltjes energy of the measure dF."""
    if F.total_mass <= 0.0:
        raise ZeroMass("energy of the zero measure requires positive mass")
    span = F.support_hi - F.support_lo
    atom_floor = 64.0 * max(span * 2.0**-52, INVERSE_TOL_FLOOR)
    trace = []
    lower = 0.0
    upper = math.inf
    for n in cfg.depth_schedule:
        bounds, fvals = _partition_arrays(F, n)
        masses = np.diff(fvals)
        off_lo, off_up = _offdiag_sums(bounds, masses, _NEAR_WINDOW + 1)
        near_lo, near_up, atom_hit = _near_bracket(F, n, cfg, atom_floor, off_lo, off_up)
        if atom_hit:
            trace.append((n, math.inf, math.inf))
            return EnergyEstimate(math.inf, math.inf, math.inf, VERDICT_DIVERGENT, tuple(trace))
        # every round's sum is a valid lower bound of the same integral, so
        # the running maximum is one too and keeps the trace monotone even
        # when pairs migrate between the fine and coarse treatments
        lower = max(off_lo + near_lo, lower)
        upper = max(off_up + near_up, lower)
        trace.append((n, lower, upper))
        if lower > cfg.divergence_budget:
            return EnergyEstimate(lower, lower, math.inf, VERDICT_DIVERGENT, tuple(trace))
        if upper - lower <= cfg.agreement_tol * max(1.0, lower):
            value = 0.5 * (lower + upper)
            return EnergyEstimate(value, lower, upper, VERDICT_FINITE, tuple(trace))
    value = 0.5 * (lower + upper) if math.isfinite(upper) else lower
    return EnergyEstimate(value, lower, upper, VERDICT_INCONCLUSIVE, tuple(trace))


# ----------------------------------------------------------------------
# One-sided engine


def _modulus_tail_bound(F: MonotoneCDF, y_top: float) -> float:
    """Upper bound for int_0^{y_top} (F(x+y) - F(x-y))/y dy, uniform in x.

    Octave sums: the integral is at most sum over dyadic y <= y_top of
    (sampled two-sided modulus at y) * ln 2.  The sampled modulus is summed
    down to the scale where it stops decreasing reliably, then the remaining
    tail is bounded by geometric extrapolation of the last decay ratio; if
    the modulus shows no decay the bound is +inf (no continuity to exploit).
    """
    if y_top <= 0.0:
        return 0.0
    j = max(0, int(math.floor(-math.log2(y_top))))
    ys = [2.0 ** (-k) for k in range(j, j + 24)]
    mods = 2.0 * np.asarray(sampled_modulus(F, np.array(ys)), dtype=float)
    total = float(np.sum(mods)) * math.log(2.0)
    last = float(mods[-1])
    prev = float(mods[-8]) if mods.size >= 8 else float(mods[0])
    if last <= 0.0:
        return total
    if prev <= 0.0 or last >= 0.7 * prev:
        return math.inf
    ratio = (last / prev) ** (1.0 / 7.0)
    tail = last * ratio / (1.0 - ratio) * math.log(2.0)
    return total + tail


def energy_one_sided(F: MonotoneCDF, cfg: QuadratureConfig = QuadratureConfig()) -> EnergyEstimate:
    """One-sided form of the energy for continuous CDFs.

    Outer integral: midpoint atoms of a mass-uniform partition.  Inner
    integral over y in [2^-52, 1]: a geometric doubling grid, adaptively
    subdivided where the rigorous per-segment brackets are widest (the
    inner increment F(x+y) - F(x-y) is nondecreasing in y); the tail below
    2^-52 is bounded by the sampled modulus of continuity.  The outer
    midpoint rule is the documented heuristic part of this engine's
    bracket, so the verdict additionally requires the outer value to have
    drifted by at most half a tolerance over two consecutive refinements.
    """
    if not F.continuous:
        raise DiscontinuousInput(
            "the one-sided energy form requires a continuity-certified CDF"
        )
    if F.total_mass <= 0.0:
        raise ZeroMass("energy of the zero measure requires positive mass")
    M = F.total_mass
    y_min = 2.0**-52
    tail_up = _modulus_tail_bound(F, y_min)
    trace = []
    prev_value = None
    ok_streak = 0
    lower = 0.0
    upper = math.inf
    value = 0.0
    # the adaptive geometric y-grid persists across outer refinements
    ys = np.sort(2.0 ** (-np.arange(53, dtype=float)))  # 2^-52 .. 1, doubling
    outer_schedule = [n for n in cfg.depth_schedule if 2**8 <= n <= 2**13]
    for n in outer_schedule:
        targets = M * (np.arange(n) + 0.5) / n
        xs = _ginv_array(F, targets)
        w = M / n
        for _ in range(64):
            dln = np.log(ys[1:] / ys[:-1])
            inner_lo, inner_up, width_per_seg = _one_sided_sums(F, xs, w, ys, dln)
            if (
                inner_up - inner_lo <= cfg.agreement_tol * max(1.0, inner_lo)
                or ys.size >= _MAX_INNER_GRID
            ):
                break
            # grow the grid geometrically, giving each segment new interior
            # points in proportion to its share of the bracket width
            budget = min(ys.size, _MAX_INNER_GRID - ys.size)
            total_w = float(np.sum(width_per_seg))
            alloc = np.floor(width_per_seg / max(total_w, _TINY) * budget).astype(np.int64)
            if not np.any(alloc > 0):
                alloc[int(np.argmax(width_per_seg))] = 1
            cum = np.cumsum(alloc)
            pos = np.arange(cum[-1]) - np.repeat(cum - alloc, alloc)
            t = (pos + 1.0) / np.repeat(alloc + 1.0, alloc)
            log_lo = np.repeat(np.log(ys[:-1]), alloc)
            new = np.exp(log_lo + t * np.repeat(dln, alloc))
            ys = np.unique(np.concatenate((ys, new)))
        lower = inner_lo
        upper = inner_up + M * tail_up
        value = 0.5 * (lower + upper) if math.isfinite(upper) else lower
        trace.append((n, lower, upper))
        if lower > cfg.divergence_budget:
            return EnergyEstimate(lower, lower, math.inf, VERDICT_DIVERGENT, tuple(trace))
        if prev_value is not None and abs(value - prev_value) <= 0.5 * cfg.agreement_tol * max(1.0, abs(value)):
            ok_streak += 1
        else:
            ok_streak = 0
        if (
            math.isfinite(upper)
            and upper - lower <= cfg.agreement_tol * max(1.0, lower)
            and ok_streak >= 2
        ):
            return EnergyEstimate(value, lower, upper, VERDICT_FINITE, tuple(trace))
        prev_value = value
    return EnergyEstimate(value, lower, upper, VERDICT_INCONCLUSIVE, tuple(trace))


def _one_sided_sums(F, xs, w, ys, dln):
    """Inner-integral bracket sums, chunked over outer points for memory.

    Returns (inner lower sum, inner upper sum, per-segment weighted bracket
    widths) where the inner increment D(x, y) = F(x+y) - F(x-y) is bracketed
    on each geometric segment by its endpoint values (D is nondecreasing in
    y).
    """
    n = xs.size
    chunk = max(1, 4_000_000 // max(1, ys.size))
    lo_parts, up_parts = [], []
    width_per_seg = np.zeros(ys.size - 1)
    for s in range(0, n, chunk):
        xc = xs[s : s + chunk]
        D = eval_cdf(F, xc[:, None] + ys[None, :]) - eval_cdf(F, xc[:, None] - ys[None, :])
        lo_parts.append(float(np.sum(D[:, :-1] @ dln)))
        up_parts.append(float(np.sum(D[:, 1:] @ dln)))
        width_per_seg += np.sum(D[:, 1:] - D[:, :-1], axis=0) * dln
    inner_lo = w * math.fsum(lo_parts)
    inner_up = w * math.fsum(up_parts)
    return inner_lo, inner_up, w * width_per_seg


# ----------------------------------------------------------------------
# Step-density engine: exact closed forms in log space


def _primitive_lin_log(alpha: float, beta: float, t: float) -> float:
    """Antiderivative of (alpha + beta t)(-ln t) at t (t > 0); 0 at t = 0.

    int (alpha + beta t)(-ln t) dt
      = alpha t (1 - ln t) + beta t^2 (1 - 2 ln t) / 4.
    """
    if t <= 0.0:
        return 0.0
    lt = math.log(t)
    return alpha * t * (1.0 - lt) + beta * t * t * (1.0 - 2.0 * lt) / 4.0


def _trapezoid_log_integral(g: float, d1: float, d2: float) -> float:
    """int over [0,d1] x [0,d2] (offset by gap g >= 0) of log+ 1/|x-y|.

    With t the pair distance, the overlap length is the trapezoid
    lambda(t) = min(t - g, d1, d2, g + d1 + d2 - t) on [g, g + d1 + d2];
    the integral is int lambda(t) (-ln t) dt clipped to t <= 1.
    """
    lo = g
    hi = g + d1 + d2
    a, b = min(d1, d2), max(d1, d2)
    # breakpoints of the trapezoid: rise until g+a, plateau until g+b, fall
    pieces = []  # (t0, t1, alpha, beta) with lambda = alpha + beta t
    pieces.append((lo, g + a, -g, 1.0))
    if b > a:
        pieces.append((g + a, g + b, a, 0.0))
    pieces.append((g + b, hi, g + d1 + d2, -1.0))
    total = 0.0
    for t0, t1, al, be in pieces:
        t1 = min(t1, 1.0)
        t0 = max(t0, 0.0)
        if t1 <= t0:
            continue
        total += _primitive_lin_log(al, be, t1) - _primitive_lin_log(al, be, t0)
    return max(total, 0.0)


def _line_segment_log_integral(x0: float, a: float, d: float) -> float:
    """int_a^{a+d} log+ 1/|x0 - y| dy for a point x0 outside [a, a+d]."""
    lo = abs(x0 - a)
    hi = abs(x0 - (a + d))
    t0, t1 = min(lo, hi), max(lo, hi)
    t1 = min(t1, 1.0)
    if t1 <= t0:
        return 0.0
    # primitive of -ln t is t(1 - ln t)
    def prim(t):
        return t * (1.0 - math.log(t)) if t > 0.0 else 0.0

    return max(prim(t1) - prim(t0), 0.0)


def _self_pair_energy(b) -> float:
    """Exact h^2 d^2 (3/2 - ln d) in log space (d <= 1 so log+ = -ln)."""
    m2_log = math.fsum([2.0 * b.h_log, 2.0 * b.h_log_lo, 2.0 * b.d_log, 2.0 * b.d_log_lo])
    neg_ld = -b.d_log_total()
    return math.exp(m2_log) * (1.5 + neg_ld)


def _cross_pair_energy(bi, bj) -> float:
    """Exact cross term between two disjoint blocks (bi left of bj)."""
    di, dj = bi.width(), bj.width()
    gap = bj.a - (bi.a + di)
    if gap >= 1.0:
        return 0.0
    mi, mj = bi.mass(), bj.mass()
    if di > 0.0 and dj > 0.0:
        # heights in log space: hi*hj * integral
        hh_log = math.fsum([bi.h_log, bi.h_log_lo, bj.h_log, bj.h_log_lo])
        integral = _trapezoid_log_integral(max(gap, 0.0), di, dj)
        if integral <= 0.0:
            return 0.0
        return math.exp(hh_log + math.log(integral))
    if di == 0.0 and dj == 0.0:
        dist = bj.a - bi.a
        if dist >= 1.0 or dist <= 0.0:
            return 0.0
        return mi * mj * (-math.log(dist))
    # one block is resolution-width zero: treat it as a point atom
    if di == 0.0:
        point, seg = bi.a, bj
        m_pt, h_log = mi, math.fsum([bj.h_log, bj.h_log_lo])
    else:
        point, seg = bj.a, bi
        m_pt, h_log = mj, math.fsum([bi.h_log, bi.h_log_lo])
    integral = _line_segment_log_integral(point, seg.a, seg.width())
    if integral <= 0.0:
        return 0.0
    return m_pt * math.exp(h_log + math.log(integral))


def step_lower_bound(f: StepDensity) -> dict:
    """Per-block diagonal lower-bound series sum_n h_n^2 d_n^2 ln(1/d_n).

    Terms are evaluated as exp(2 ln h + 2 ln d) * (-ln d) with the exponent
    parts combined by compensated summation before exponentiation, so blocks
    whose widths underflow doubles still produce exact terms.  ``diverging``
    is a growth certificate for the represented infinite construction: true
    when the last half of the truncation still contributes at least 2% of
    the partial sum (or a term's log exceeds the overflow scale).
    """
    terms = []
    overflow = False
    for b in f.blocks:
        e_log = math.fsum([2.0 * b.h_log, 2.0 * b.h_log_lo, 2.0 * b.d_log, 2.0 * b.d_log_lo])
        neg_ld = -b.d_log_total()
        if e_log > 700.0:
            overflow = True
            terms.append(math.inf)
            continue
        term = math.exp(e_log) * neg_ld if neg_ld > 0.0 else 0.0
        terms.append(term)
    partial = math.fsum(t for t in terms if math.isfinite(t))
    if overflow:
        partial = math.inf
    n = len(terms)
    diverging = overflow
    if not diverging and n >= 4 and partial > 0.0:
        half = math.fsum(terms[: (n + 1) // 2])
        diverging = (partial - half) >= 0.02 * partial
    return {"terms": terms, "partial_sum": partial, "diverging": diverging}


def energy_density(f: StepDensity, cfg: QuadratureConfig = QuadratureConfig()) -> EnergyEstimate:
    """Exact block-pair energy of a step density.

    Self pairs and cross pairs use closed forms (log-space guarded); pairs
    separated by at least 1 are pruned.  The verdict is Divergent when the
    partial sum exceeds the budget or when the diagonal series carries a
    growth certificate for the represented infinite construction (the lower
    bracket is then +inf, standing for the certified limit, while the trace
    records the finite partial sum of the truncation).
    """
    blocks = f.blocks
    terms = [_self_pair_energy(b) for b in blocks]
    for i in range(len(blocks)):
        for j in range(i + 1, len(blocks)):
            if blocks[j].a - (blocks[i].a + blocks[i].width()) >= 1.0:
                break
            terms.append(2.0 * _cross_pair_energy(blocks[i], blocks[j]))
    terms.sort(key=abs, reverse=True)
    total = math.fsum(terms)
    series = step_lower_bound(f)
    trace = ((f.n_max, total, total),)
    if total > cfg.divergence_budget:
        return EnergyEstimate(total, total, math.inf, VERDICT_DIVERGENT, trace)
    if series["diverging"]:
        return EnergyEstimate(math.inf, math.inf, math.inf, VERDICT_DIVERGENT, trace)
    return EnergyEstimate(total, total, total, VERDICT_FINITE, trace)
