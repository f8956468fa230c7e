"""Symmetric (alpha = beta) quadrature: one forward sweep from x = 0,
reflection, and moment-0 normalization with an optional last-weight
correction from the first two even moments."""
from __future__ import annotations

import math
import sys
from dataclasses import dataclass

import numpy as np

from . import _backend
from .core import DEFAULT_CONFIG, PrecisionConfig, make_params, moment
from .errors import (CountMismatch, MaxItersExceeded, NoConvergence,
                     SingularNormalization)

_MIN_NORMAL = sys.float_info.min


@dataclass(frozen=True)
class RunStats:
    """Per-rule aggregates of the sweep cost."""

    mean_fp_iters: float
    max_fp_iters: int
    mean_taylor_terms: float
    max_taylor_terms: int
    nodes_high: int
    nodes_low: int
    center_node: bool
    refined_high: int = 0
    refined_low: int = 0


@dataclass(frozen=True)
class SymmetricRule:
    lam: float
    nodes: np.ndarray
    weights: np.ndarray
    scaled_weights: np.ndarray
    gamma: float
    corrected_last: bool
    stats: RunStats
    flushed_underflow: int = 0

    @property
    def n(self) -> int:
        return len(self.nodes)


def _run_symmetric_sweep(n: int, lam: float, cfg: PrecisionConfig):
    """Positive-half sweep from the parity seed at x = 0."""
    m = n // 2
    nodes = np.empty(m)
    us = np.empty(m)
    vs = np.empty(m)
    yprimes = np.empty(m)
    iters = np.zeros(m, dtype=np.int64)
    terms = np.zeros(m, dtype=np.int64)
    if m > 0:
        y0, yp0 = (0.0, 1.0) if n % 2 else (1.0, 0.0)
        count, code = _backend.sweep(
            float(n), lam, lam, 0.0, y0, yp0, m,
            cfg.fp_tol, cfg.taylor_tol, cfg.max_fp_iters, cfg.max_taylor_terms,
            cfg.boundary, nodes, us, vs, yprimes, iters, terms)
        if code == _backend.SWEEP_MAX_ITERS:
            raise MaxItersExceeded("symmetric sweep stalled")
        if code == _backend.SWEEP_TAYLOR_FAIL:
            raise NoConvergence("Taylor term cap hit during symmetric sweep")
        if count != m:
            raise CountMismatch(f"expected {m} positive nodes, sweep found {count}")
    return nodes, us, vs, yprimes, iters, terms


def normalize_symmetric(nodes, scaled, lam: float, odd: bool,
                        correct_last: bool,
                        one_minus_x2=None) -> tuple[np.ndarray, float]:
    """Weights for the nonnegative-half nodes from their scaled weights.

    `nodes` holds the positive abscissas; when `odd`, `scaled` carries the
    center node's scaled weight first, then the positive ones.  Returns
    (weights, gamma) with weights ordered like `scaled`.  The plain path
    normalizes against mu_0; with `correct_last` the largest node's weight
    is instead solved together with gamma from the first two even moments,
    which decouples it from the error-prone Taylor value near the endpoint.

    one_minus_x2 optionally supplies 1 - x^2 at better-than-(1 - x*x)
    relative accuracy (the sweep tracks it); otherwise it is formed from
    the nodes.
    """
    nodes = np.asarray(nodes, dtype=float)
    scaled = np.asarray(scaled, dtype=float)
    m = len(nodes)
    if len(scaled) != m + (1 if odd else 0):
        raise SingularNormalization("scaled-weight vector does not match node count")
    mu0 = moment(lam, lam, 0)
    w0 = scaled[0] if odd else None
    om_pos = scaled[1:] if odd else scaled
    if one_minus_x2 is None:
        one_minus_x2 = 1.0 - nodes * nodes
    factors = np.asarray(one_minus_x2, dtype=float) ** lam
    if not correct_last:
        s = math.fsum(factors * om_pos)
        denom = (w0 if odd else 0.0) + 2.0 * s
        if denom <= 0.0:
            raise SingularNormalization("nonpositive normalization sum")
        gamma = mu0 / denom
        out = np.empty(len(scaled))
        if odd:
            out[0] = gamma * w0
            out[1:] = gamma * factors * om_pos
        else:
            out[:] = gamma * factors * om_pos
        return out, gamma
    if m < 1:
        raise SingularNormalization("last-weight correction needs a positive node")
    body = factors[:-1] * om_pos[:-1]
    s0 = (0.5 * w0 if odd else 0.0) + math.fsum(body)
    sx2 = math.fsum(nodes[:-1] ** 2 * body)
    xm2 = nodes[-1] ** 2
    denom = xm2 * s0 - sx2
    scale_ref = max(abs(xm2 * s0), abs(sx2), 1e-300)
    if s0 <= 0.0 or abs(denom) <= 1e3 * DEFAULT_CONFIG.eps * scale_ref:
        raise SingularNormalization("two-even-moment system is singular")
    gamma2 = (xm2 - 1.0 / (2.0 * lam + 3.0)) / denom
    wm2 = 1.0 - gamma2 * s0
    half_mu0 = 0.5 * mu0
    out = np.empty(len(scaled))
    if odd:
        out[0] = half_mu0 * gamma2 * w0
        out[1:-1] = half_mu0 * gamma2 * body
    else:
        out[:-1] = half_mu0 * gamma2 * body
    out[-1] = half_mu0 * wm2
    return out, half_mu0 * gamma2


def gegenbauer_rule(n: int, lam: float, cfg: PrecisionConfig = DEFAULT_CONFIG,
                    correct_last: bool | None = None) -> SymmetricRule:
    """Full symmetric rule for weight (1-x^2)^lam.

    correct_last defaults to on for lam < -1/2 (where the endpoint weights
    dominate and normalization would spread their error), provided enough
    positive nodes exist for the two-moment system.
    """
    params = make_params(n, lam, lam)
    m = n // 2
    odd = bool(n % 2)
    nodes_pos, us, vs, yprimes, iters, terms = _run_symmetric_sweep(n, lam, cfg)
    om_pos = 1.0 / yprimes**2
    if correct_last is None:
        correct_last = lam < -0.5 and (m >= 2 or (odd and m >= 1))
    scaled = np.concatenate(([1.0], om_pos)) if odd else om_pos
    half_w, gamma = normalize_symmetric(nodes_pos, scaled, lam, odd, correct_last,
                                        one_minus_x2=us * vs)
    nodes = np.concatenate((-nodes_pos[::-1], [0.0] if odd else [], nodes_pos))
    pos_w = half_w[1:] if odd else half_w
    weights = np.concatenate((pos_w[::-1], half_w[:1] if odd else [], pos_w))
    scaled_all = np.concatenate((om_pos[::-1], scaled[:1] if odd else [], om_pos))
    flush = int(np.count_nonzero((weights != 0.0) & (np.abs(weights) < _MIN_NORMAL)))
    if flush:
        weights = np.where(np.abs(weights) < _MIN_NORMAL, 0.0, weights)
    stats = RunStats(
        mean_fp_iters=float(iters.mean()) if m else 0.0,
        max_fp_iters=int(iters.max()) if m else 0,
        mean_taylor_terms=float(terms.mean()) if m else 0.0,
        max_taylor_terms=int(terms.max()) if m else 0,
        nodes_high=m, nodes_low=m, center_node=odd)
    return SymmetricRule(lam=lam, nodes=nodes, weights=weights,
                         scaled_weights=scaled_all, gamma=gamma,
                         corrected_last=correct_last, stats=stats,
                         flushed_underflow=flush)
