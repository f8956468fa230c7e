"""General Gauss-Jacobi rules: recurrence seeding at the frequency peak x_e,
two forward sweeps through the x -> -x symmetry, angular refinement of the
extreme nodes for negative exponents, and two normalization schemes."""
from __future__ import annotations

import enum
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import _backend
from .core import (DEFAULT_CONFIG, PrecisionConfig, QuadParams, log_K,
                   make_params, moment)
from .errors import (CountMismatch, MaxItersExceeded, NoConvergence,
                     SingularNormalization)
from .fixedpoint import refine_angular
from .gegenbauer import RunStats
from .ratios import log_deriv_tilde, terminating_2f1
from .taylor import TaylorSeed

_MIN_NORMAL = sys.float_info.min


class SweepEnd(enum.Enum):
    OMEGA_NONPOSITIVE = "omega_nonpositive"
    BOUNDARY_GUARD = "boundary_guard"
    COUNT_CAP = "count_cap"


class Scheme(enum.Enum):
    MU0_WITH_EXPLICIT_K = "mu0"
    THREE_MOMENTS = "moments"


@dataclass(frozen=True)
class SweepOutput:
    nodes: np.ndarray
    us: np.ndarray        # 1 - x at full relative accuracy
    vs: np.ndarray        # 1 + x at full relative accuracy
    yprimes: np.ndarray
    count: int
    terminated_by: SweepEnd
    iters: np.ndarray
    terms: np.ndarray


@dataclass(frozen=True)
class GeneralRule:
    params: QuadParams
    nodes: np.ndarray
    weights: np.ndarray
    scaled_weights: np.ndarray
    refined_low: int
    refined_high: int
    scheme: Scheme
    stats: RunStats
    flushed_underflow: int = 0

    @property
    def n(self) -> int:
        return len(self.nodes)


def seed_at_xe(params: QuadParams) -> TaylorSeed:
    """Taylor seed at the frequency peak x_e from the recurrence ratio.

    Normalizes the larger of (Ytilde, Ytilde') to 1; when x_e is itself a
    node the seed is (x_e, 0, 1), recognizable by seed.y == 0.
    """
    r = log_deriv_tilde(params, params.x_e)
    if math.isinf(r):
        return TaylorSeed(params.x_e, 0.0, 1.0)
    if abs(r) <= 1.0:
        return TaylorSeed(params.x_e, 1.0, r)
    return TaylorSeed(params.x_e, 1.0 / r, 1.0)


def sweep_from_xe(params: QuadParams, seed: TaylorSeed, max_nodes: int,
                  cfg: PrecisionConfig = DEFAULT_CONFIG) -> SweepOutput:
    """All zeros ahead of the seed, in increasing order.

    Ends by count cap, by certified exhaustion (no zero ahead of the last
    iterate), or by the 1 - 8 eps boundary guard.
    """
    nodes = np.empty(max_nodes)
    us = np.empty(max_nodes)
    vs = np.empty(max_nodes)
    yprimes = np.empty(max_nodes)
    iters = np.zeros(max_nodes, dtype=np.int64)
    terms = np.zeros(max_nodes, dtype=np.int64)
    count, code = _backend.sweep(
        float(params.n), params.alpha, params.beta,
        seed.x, seed.y, seed.yp, max_nodes,
        cfg.fp_tol, cfg.taylor_tol, cfg.max_fp_iters, cfg.max_taylor_terms,
        cfg.boundary, nodes, us, vs, yprimes, iters, terms)
    if code == _backend.SWEEP_MAX_ITERS:
        raise MaxItersExceeded("sweep stalled before exhausting its nodes")
    if code == _backend.SWEEP_TAYLOR_FAIL:
        raise NoConvergence("Taylor term cap hit during sweep")
    end = {_backend.SWEEP_COUNT_CAP: SweepEnd.COUNT_CAP,
           _backend.SWEEP_OMEGA_NONPOSITIVE: SweepEnd.OMEGA_NONPOSITIVE,
           _backend.SWEEP_BOUNDARY: SweepEnd.BOUNDARY_GUARD}[code]
    return SweepOutput(nodes[:count].copy(), us[:count].copy(), vs[:count].copy(),
                       yprimes[:count].copy(), count, end,
                       iters[:count].copy(), terms[:count].copy())


def extreme_weight(params: QuadParams, theta: float, log: bool = False) -> float:
    """Weight of the node at x = cos(theta) from the hypergeometric form.

    w = K / (sin^2(theta) * 2F1(-n+1, n+a+b+2; a+2; sin^2(theta/2))^2) with
    K assembled in log form; accurate where sin^2(theta/2) is small.
    """
    s2 = math.sin(0.5 * theta) ** 2
    F = terminating_2f1(params, s2)
    st2 = math.sin(theta) ** 2
    log_w = log_K(params) - math.log(st2) - 2.0 * math.log(abs(F))
    if log:
        return log_w
    return math.exp(log_w)


def _solve_full_pivot(A: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Tiny dense solve by Gaussian elimination with full pivoting."""
    A = A.astype(float).copy()
    b = b.astype(float).copy()
    k = len(b)
    scale = np.abs(A).max()
    if scale == 0.0:
        raise SingularNormalization("zero normalization matrix")
    perm = list(range(k))
    for col in range(k):
        sub = np.abs(A[col:, col:])
        i, j = np.unravel_index(np.argmax(sub), sub.shape)
        i += col
        j += col
        if abs(A[i, j]) <= 1e3 * DEFAULT_CONFIG.eps * scale:
            raise SingularNormalization("normalization system is numerically singular")
        if i != col:
            A[[col, i]] = A[[i, col]]
            b[[col, i]] = b[[i, col]]
        if j != col:
            A[:, [col, j]] = A[:, [j, col]]
            perm[col], perm[j] = perm[j], perm[col]
        for r in range(col + 1, k):
            f = A[r, col] / A[col, col]
            A[r, col:] -= f * A[col, col:]
            b[r] -= f * b[col]
    y = np.zeros(k)
    for r in range(k - 1, -1, -1):
        y[r] = (b[r] - A[r, r + 1:] @ y[r + 1:]) / A[r, r]
    out = np.zeros(k)
    for pos, orig in enumerate(perm):
        out[orig] = y[pos]
    return out


def normalize_general(taylor_set, refined_low_set, refined_high_set,
                      params: QuadParams, scheme: str = "auto"):
    """Scale the up-to-three weight sets onto the true normalization.

    Each set is a pair (x, w) of arrays (possibly empty).  Under the mu0
    scheme the refined weights are already absolute and only the Taylor set
    is rescaled to account for the remaining mass; under the three-moment
    scheme one scale per nonempty set is solved from the leading moments.
    Returns (taylor_w, low_w, high_w, scheme_used).
    """
    tx, tw = (np.asarray(v, dtype=float) for v in taylor_set)
    lx, lw = (np.asarray(v, dtype=float) for v in refined_low_set)
    hx, hw = (np.asarray(v, dtype=float) for v in refined_high_set)
    mu = [moment(params.alpha, params.beta, k) for k in (0, 1, 2)]
    no_refined = len(lw) == 0 and len(hw) == 0
    if scheme == "auto":
        scheme = "mu0" if (min(params.alpha, params.beta) > -0.75 or no_refined) else "moments"
    if scheme == Scheme.MU0_WITH_EXPLICIT_K.value:
        s_theta = math.fsum(lw) + math.fsum(hw)
        if len(tw):
            st = math.fsum(tw)
            if st <= 0.0:
                raise SingularNormalization("nonpositive Taylor weight sum")
            gamma = (mu[0] - s_theta) / st
            tw = gamma * tw
        return tw, lw.copy(), hw.copy(), Scheme.MU0_WITH_EXPLICIT_K
    # refined sets whose mass the moments cannot resolve stay absolute
    # (their hypergeometric weights are already exact to roundoff); solving
    # for their scale would divide by a vanishing column
    mass_floor = 1e-8 * mu[0]
    floating = [True]  # Taylor set always floats when present
    floating += [math.fsum(np.abs(w)) > mass_floor for w in (hw, lw)]
    sets = []
    fixed = []
    for flag, (x, w) in zip(floating, ((tx, tw), (hx, hw), (lx, lw))):
        if not len(w):
            continue
        (sets if flag else fixed).append((x, w))
    k = len(sets)
    rhs = np.array(mu[:k])
    for x, w in fixed:
        for p in range(k):
            rhs[p] -= math.fsum(w * x**p)
    A = np.empty((k, k))
    for col, (x, w) in enumerate(sets):
        for p in range(k):
            A[p, col] = math.fsum(w * x**p)
    g = _solve_full_pivot(A, rhs)
    scaled = []
    idx = 0
    for flag, (x, w) in zip(floating, ((tx, tw), (hx, hw), (lx, lw))):
        if len(w) and flag:
            scaled.append(g[idx] * w)
            idx += 1
        else:
            scaled.append(w.copy())
    return scaled[0], scaled[2], scaled[1], Scheme.THREE_MOMENTS


def _refine_count(n: int) -> int:
    """Three extreme nodes plus one more per decade of degree."""
    return 3 + max(0, int(math.log10(n)) - 1)


def _reflected(rule: GeneralRule, params: QuadParams) -> GeneralRule:
    s = rule.stats
    stats = RunStats(mean_fp_iters=s.mean_fp_iters, max_fp_iters=s.max_fp_iters,
                     mean_taylor_terms=s.mean_taylor_terms,
                     max_taylor_terms=s.max_taylor_terms,
                     nodes_high=s.nodes_low, nodes_low=s.nodes_high,
                     center_node=s.center_node,
                     refined_high=s.refined_low, refined_low=s.refined_high)
    return GeneralRule(params=params, nodes=-rule.nodes[::-1],
                       weights=rule.weights[::-1].copy(),
                       scaled_weights=rule.scaled_weights[::-1].copy(),
                       refined_low=rule.refined_high, refined_high=rule.refined_low,
                       scheme=rule.scheme, stats=stats,
                       flushed_underflow=rule.flushed_underflow)


def jacobi_rule(n: int, alpha: float, beta: float,
                cfg: PrecisionConfig = DEFAULT_CONFIG,
                refine: str = "auto", normalization: str = "auto") -> GeneralRule:
    """Complete n-point Gauss-Jacobi rule for weight (1-x)^alpha (1+x)^beta.

    refine: "auto" and "on" polish the extreme nodes of both ends in the
    angular variable and take their weights from the hypergeometric form,
    which keeps per-weight relative accuracy near the endpoints where the
    Taylor route cannot; "off" disables.  normalization: "auto" picks mu0
    above exponent -3/4 and the three-moment solve below, "mu0"/"moments"
    force a scheme.
    """
    if refine not in ("auto", "on", "off"):
        raise ValueError(f"refine must be auto/on/off, got {refine!r}")
    if normalization not in ("auto", "mu0", "moments"):
        raise ValueError(f"normalization must be auto/mu0/moments, got {normalization!r}")
    params = make_params(n, alpha, beta)
    if alpha < beta:
        # canonical orientation: build for the swapped parameters and mirror,
        # so rules for (a, b) and (b, a) agree to the bit
        mirrored = jacobi_rule(n, beta, alpha, cfg, refine, normalization)
        return _reflected(mirrored, params)
    swapped = params.swapped()

    seed_hi = seed_at_xe(params)
    center_is_node = seed_hi.y == 0.0
    hi = sweep_from_xe(params, seed_hi, n, cfg)
    seed_lo = seed_at_xe(swapped)
    lo = sweep_from_xe(swapped, seed_lo, n, cfg)

    total = hi.count + lo.count + (1 if center_is_node else 0)
    if total != n:
        raise CountMismatch(
            f"sweeps found {lo.count}+{hi.count}"
            f"{'+1' if center_is_node else ''} nodes for n = {n}")

    x = np.concatenate((-lo.nodes[::-1],
                        [params.x_e] if center_is_node else [],
                        hi.nodes))
    # reflection x -> -x swaps the endpoint distances
    u = np.concatenate((lo.vs[::-1],
                        [1.0 - params.x_e] if center_is_node else [],
                        hi.us))
    v = np.concatenate((lo.us[::-1],
                        [1.0 + params.x_e] if center_is_node else [],
                        hi.vs))
    yp = np.concatenate((lo.yprimes[::-1],
                         [seed_hi.yp] if center_is_node else [],
                         hi.yprimes))
    iters = np.concatenate((lo.iters[::-1],
                            [0] if center_is_node else [],
                            hi.iters))
    terms = np.concatenate((lo.terms[::-1],
                            [0] if center_is_node else [],
                            hi.terms))
    om = 1.0 / yp**2

    n_ex = _refine_count(n)
    do_hi = refine in ("on", "auto")
    do_lo = refine in ("on", "auto")
    # cap each side at half the rule so interior nodes stay on the Taylor
    # route (the hypergeometric form is an endpoint tool)
    n_hi = min(n_ex, n // 2) if do_hi else 0
    n_lo = min(n_ex, n // 2, n - n_hi) if do_lo else 0
    refined_hi_idx = list(range(n - n_hi, n))
    refined_lo_idx = list(range(n_lo))

    hi_w = np.empty(n_hi)
    for slot, i in enumerate(refined_hi_idx):
        # the tracked 1 - x seeds theta at full relative accuracy
        theta0 = 2.0 * math.asin(math.sqrt(0.5 * u[i]))
        theta, _ = refine_angular(params, theta0, cfg)
        s2 = math.sin(0.5 * theta) ** 2
        x[i] = 1.0 - 2.0 * s2
        u[i] = 2.0 * s2
        v[i] = 2.0 - 2.0 * s2
        hi_w[slot] = extreme_weight(params, theta)
    lo_w = np.empty(n_lo)
    for slot, i in enumerate(refined_lo_idx):
        theta0 = 2.0 * math.asin(math.sqrt(0.5 * v[i]))
        theta, _ = refine_angular(swapped, theta0, cfg)
        s2 = math.sin(0.5 * theta) ** 2
        x[i] = -(1.0 - 2.0 * s2)
        v[i] = 2.0 * s2
        u[i] = 2.0 - 2.0 * s2
        lo_w[slot] = extreme_weight(swapped, theta)

    tay_idx = np.arange(n_lo, n - n_hi)
    # Taylor-set weights before normalization; u, v carry the endpoint
    # distances at relative accuracy, so the singular factors do too
    with np.errstate(divide="ignore", over="ignore", under="ignore"):
        tay_w = om[tay_idx] * u[tay_idx] ** alpha * v[tay_idx] ** beta

    tw, lw, hw, scheme_used = normalize_general(
        (x[tay_idx], tay_w), (x[refined_lo_idx], lo_w), (x[refined_hi_idx], hi_w),
        params, normalization)

    w = np.empty(n)
    w[tay_idx] = tw
    w[refined_lo_idx] = lw
    w[refined_hi_idx] = hw

    if np.any(np.diff(x) <= 0.0):
        raise CountMismatch("nodes are not strictly increasing after assembly")

    flush_mask = (w != 0.0) & (np.abs(w) < _MIN_NORMAL)
    flushed = int(np.count_nonzero(flush_mask))
    if flushed:
        w = np.where(flush_mask, 0.0, w)

    swept = iters > 0
    stats = RunStats(
        mean_fp_iters=float(iters[swept].mean()) if swept.any() else 0.0,
        max_fp_iters=int(iters.max()) if n else 0,
        mean_taylor_terms=float(terms[swept].mean()) if swept.any() else 0.0,
        max_taylor_terms=int(terms.max()) if n else 0,
        nodes_high=hi.count, nodes_low=lo.count, center_node=center_is_node,
        refined_high=n_hi, refined_low=n_lo)
    return GeneralRule(params=params, nodes=x, weights=w, scaled_weights=om,
                       refined_low=n_lo, refined_high=n_hi, scheme=scheme_used,
                       stats=stats, flushed_underflow=flushed)
