"""Fourth-order fixed-point iterators for the node sweeps.

The global iterator works in the tanh variable but is expressed directly
in x: one application moves z = atanh(x) forward by
F = arctan_branch(-1, sqrt(omega) Y/Ydot)/sqrt(omega), which never passes
the next zero while omega decreases, and contracts to it with order four.
Past the turning point the same map continues with hyperbolic functions
and can capture at most one further (extreme) zero.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _backend
from .core import DEFAULT_CONFIG, PrecisionConfig, QuadParams
from .errors import (DeltaNonpositive, DomainError, MaxItersExceeded,
                     NoConvergence, OmegaNonpositive)
from .ratios import h_theta
from .taylor import Transform, omega


def arctan_branch(j: int, zeta: float) -> float:
    """Branch-selected arctangent of the fixed-point map.

    arctan(zeta) when j*zeta > 0, arctan(zeta) + j*pi when j*zeta <= 0,
    j*pi/2 at zeta = +-inf.
    """
    if j not in (-1, 1):
        raise DomainError(f"branch index must be -1 or +1, got {j}")
    if math.isinf(zeta):
        return j * 0.5 * math.pi
    if j * zeta > 0.0:
        return math.atan(zeta)
    return math.atan(zeta) + j * math.pi


@dataclass
class SweepState:
    """Mutable cursor of one node sweep: iterate and (Ytilde, Ytilde') there."""

    x: float
    y: float
    yp: float
    iters: int = 0
    nodes_found: int = 0


def step_tanh(params: QuadParams, state: SweepState) -> float:
    """Next iterate of the forward (increasing-x) fixed-point map.

    Requires omega(tanh) > 0 at the iterate; a converged node (y == 0)
    advances by a half period toward the next zero.  Raises
    OmegaNonpositive past the turning point (the sweep kernel handles the
    hyperbolic tail itself).
    """
    x = state.x
    om = omega(Transform.TANH_R, params, x)
    if om <= 0.0:
        raise OmegaNonpositive(f"omega(tanh) = {om} at x = {x}")
    sq = math.sqrt(om)
    if state.y == 0.0:
        F = -math.pi / sq
    else:
        den = (1.0 - x * x) * state.yp + x * state.y
        zeta = math.inf if den == 0.0 else sq * state.y / den
        F = arctan_branch(-1, zeta) / sq
    t = math.tanh(F)
    return (x - t) / (1.0 - x * t)


class NodeSolve(NamedTuple):
    x: float
    yp: float
    iters: int
    terms: int


def solve_node(params: QuadParams, state: SweepState,
               cfg: PrecisionConfig = DEFAULT_CONFIG) -> NodeSolve:
    """Converge onto the next zero ahead of the state and return it.

    Alternates the fixed-point step with Taylor re-centering until the
    z-step falls below fp_tol, applies that final step, and reports Ytilde'
    at the node.  Raises OmegaNonpositive when no zero remains ahead.
    """
    nodes = np.empty(1)
    us = np.empty(1)
    vs = np.empty(1)
    yprimes = np.empty(1)
    iters = np.zeros(1, dtype=np.int64)
    terms = np.zeros(1, dtype=np.int64)
    count, code = _backend.sweep(
        float(params.n), params.alpha, params.beta,
        state.x, state.y, state.yp, 1,
        cfg.fp_tol, cfg.taylor_tol, cfg.max_fp_iters, cfg.max_taylor_terms,
        cfg.boundary, nodes, us, vs, yprimes, iters, terms)
    if count == 1:
        state.x = float(nodes[0])
        state.y = 0.0
        state.yp = float(yprimes[0])
        state.iters += int(iters[0])
        state.nodes_found += 1
        return NodeSolve(float(nodes[0]), float(yprimes[0]), int(iters[0]), int(terms[0]))
    if code in (_backend.SWEEP_OMEGA_NONPOSITIVE, _backend.SWEEP_BOUNDARY):
        raise OmegaNonpositive("no zero ahead of the current iterate")
    if code == _backend.SWEEP_MAX_ITERS:
        raise MaxItersExceeded(f"no convergence within {cfg.max_fp_iters} iterations")
    raise NoConvergence("Taylor series term cap hit during node solve")


def refine_angular(params: QuadParams, theta0: float,
                   cfg: PrecisionConfig = DEFAULT_CONFIG) -> tuple[float, int]:
    """Polish a node in the angular variable with the bilateral iterator.

    g(theta) = theta - (sin(theta)/sqrt(Delta)) arctan(sqrt(Delta) h) with
    Delta = 1/4 - a^2 + (a^2-b^2) sin^2(t/2) + (L^2/4) sin^2(t); for the
    extreme zeros that sit past the turning point Delta < 0 and the
    arctangent continues as artanh.  Intended for seeds already at node
    accuracy (tanh-sweep output).
    """
    if not 0.0 < theta0 < math.pi:
        raise DomainError(f"theta0 must lie in (0, pi), got {theta0}")
    alpha, beta = params.alpha, params.beta
    quarter_minus_a2 = 0.25 - alpha * alpha
    a2_minus_b2 = alpha * alpha - beta * beta
    L2_4 = 0.25 * params.L * params.L
    th = theta0
    for it in range(1, cfg.max_fp_iters + 1):
        st = math.sin(th)
        s2 = math.sin(0.5 * th) ** 2
        delta = quarter_minus_a2 + a2_minus_b2 * s2 + L2_4 * st * st
        h = h_theta(params, th, cfg)
        if delta > 0.0:
            sq = math.sqrt(delta)
            step = -(st / sq) * math.atan(sq * h)
        elif delta == 0.0:
            step = -st * h
        else:
            sq = math.sqrt(-delta)
            w = sq * h
            if abs(w) >= 1.0:
                raise DeltaNonpositive(
                    f"hyperbolic step undefined at theta = {th} (Delta = {delta})")
            step = -(st / sq) * math.atanh(w)
        new = th + step
        if new == th or abs(step) <= cfg.fp_tol * th:
            return new, it
        th = new
    raise MaxItersExceeded(f"angular refinement did not settle in {cfg.max_fp_iters} iterations")
