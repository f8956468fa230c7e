"""Independent validation: Golub-Welsch construction and moment-exactness.

Everything here is algorithmically disjoint from the fixed-point machinery
(eigenvalues of the Jacobi matrix instead of root-finding), which is what
makes it usable as an oracle for the rest of the package.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .core import DEFAULT_CONFIG, QuadParams, moment
from .errors import DomainError, EigenNoConvergence, LengthMismatch


@dataclass(frozen=True)
class TridiagonalJacobiMatrix:
    diag: np.ndarray
    offdiag: np.ndarray
    mu0: float


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray

    @property
    def n(self) -> int:
        return len(self.nodes)


def jacobi_matrix(params: QuadParams) -> TridiagonalJacobiMatrix:
    """Symmetric tridiagonal matrix whose eigenvalues are the nodes.

    Entries come from the monic three-term recurrence; the k = 1
    off-diagonal uses the reduced form (the generic one is 0/0 at
    alpha + beta = -1, the Chebyshev line).
    """
    n, a, b = params.n, params.alpha, params.beta
    d = np.zeros(n)
    e = np.zeros(max(n - 1, 0))
    d[0] = (b - a) / (a + b + 2.0)
    for k in range(2, n + 1):
        d[k - 1] = (b * b - a * a) / ((2.0 * k + a + b - 2.0) * (2.0 * k + a + b))
    if n > 1:
        e[0] = math.sqrt(4.0 * (1.0 + a) * (1.0 + b) / ((a + b + 2.0) ** 2 * (a + b + 3.0)))
    for k in range(2, n):
        s = 2.0 * k + a + b
        e[k - 1] = math.sqrt(4.0 * k * (k + a) * (k + b) * (k + a + b)
                             / (s * s * (s + 1.0) * (s - 1.0)))
    return TridiagonalJacobiMatrix(d, e, moment(a, b, 0))


def _newton_polish(x: np.ndarray, n: int, a: float, b: float) -> np.ndarray:
    """Two vectorized Newton steps on P_n via the three-term recurrence.

    QL eigenvalues carry a few-ulp absolute error of the matrix scale, which
    is a large *relative* error for nodes near zero; Newton recovers
    relative accuracy there.  The recurrence pair (value, derivative) is
    rescaled jointly when it grows, so only the ratio survives.
    """
    x = x.copy()
    for _ in range(2):
        p_m1 = np.ones_like(x)
        p = 0.5 * (a - b + (a + b + 2.0) * x)
        d_m1 = np.zeros_like(x)
        d = np.full_like(x, 0.5 * (a + b + 2.0))
        for k in range(1, n):
            A = 2.0 * (k + 1.0) * (k + a + b + 1.0) * (2.0 * k + a + b)
            Bx = (2.0 * k + a + b + 1.0) * (2.0 * k + a + b) * (2.0 * k + a + b + 2.0)
            B0 = (2.0 * k + a + b + 1.0) * (a * a - b * b)
            C = 2.0 * (k + a) * (k + b) * (2.0 * k + a + b + 2.0)
            p_new = ((Bx * x + B0) * p - C * p_m1) / A
            d_new = ((Bx * x + B0) * d + Bx * p - C * d_m1) / A
            p_m1, p, d_m1, d = p, p_new, d, d_new
            scale = max(np.abs(p).max(), np.abs(d).max())
            if scale > 1e120:
                inv = 1.0 / scale
                p_m1 *= inv
                p *= inv
                d_m1 *= inv
                d *= inv
        x = x - p / d
    return x


def golub_welsch(params: QuadParams) -> QuadratureRule:
    """Nodes and weights by diagonalizing the Jacobi matrix (O(n^2)).

    Weights are mu0 times the squared first eigenvector components, which
    the in-module QL iteration accumulates directly; the eigenvalues get a
    Newton polish from the recurrence so nodes near zero keep relative
    accuracy.
    """
    if params.n > 10_000:
        raise DomainError("golub_welsch is an O(n^2) oracle; use n <= 10000")
    mat = jacobi_matrix(params)
    n = params.n
    d = mat.diag.copy()
    e = np.zeros(n)
    e[: n - 1] = mat.offdiag
    z = np.zeros(n)
    z[0] = 1.0
    status = _backend.ql_first_components(d, e, z, DEFAULT_CONFIG.eps)
    if status != 0:
        raise EigenNoConvergence(f"QL failed at eigenvalue index {status - 1}")
    order = np.argsort(d)
    nodes = _newton_polish(d[order], n, params.alpha, params.beta)
    return QuadratureRule(nodes, mat.mu0 * z[order] ** 2)


def _monomial_moments(alpha: float, beta: float, kmax: int) -> list[float]:
    """mu_0..mu_kmax by the integration-by-parts recurrence.

    (k + a + b + 2) mu_{k+1} = k mu_{k-1} + (b - a) mu_k, which is
    forward-stable because both fundamental solutions decay algebraically.
    (The binomial-Beta expansion is the textbook alternative but its terms
    cancel by a factor ~3^k, hopeless in binary64 beyond k ~ 10.)
    """
    mus = [moment(alpha, beta, 0)]
    if kmax >= 1:
        mus.append(moment(alpha, beta, 1))
    for k in range(1, kmax):
        mus.append((k * mus[k - 1] + (beta - alpha) * mus[k]) / (k + alpha + beta + 2.0))
    return mus[: kmax + 1]


def exactness_check(rule, params: QuadParams, kmax: int) -> float:
    """Worst scaled defect of the monomial moments k = 0..kmax.

    defect_k = |sum w x^k - mu_k| / sum w |x|^k, with the exact moments
    from the stable three-term recurrence and the rule sums evaluated
    exactly (fsum), so the result reflects only the rule's own error.
    """
    if kmax > 2 * params.n - 1:
        raise DomainError("exactness only guaranteed for k <= 2n - 1")
    x = np.asarray(rule.nodes, dtype=float)
    w = np.asarray(rule.weights, dtype=float)
    mus = _monomial_moments(params.alpha, params.beta, kmax)
    worst = 0.0
    xk = np.ones_like(x)
    for k in range(kmax + 1):
        if k:
            xk = xk * x
        approx = math.fsum(w * xk)
        scale = math.fsum(np.abs(w * xk))
        if scale > 0.0:
            worst = max(worst, abs(approx - mus[k]) / scale)
        else:
            worst = max(worst, abs(approx - mus[k]))
    return worst


def compare_rules(a, b) -> tuple[float, float, float]:
    """(eps_mr nodes, eps_rm weights, eps_mr weights) of rule a against b.

    eps_mr is the worst per-element relative error; indices where the
    reference is zero at working precision fall back to absolute
    difference.  eps_rm is the worst absolute weight error relative to the
    largest reference weight.
    """
    ax = np.asarray(a.nodes, dtype=float)
    bx = np.asarray(b.nodes, dtype=float)
    aw = np.asarray(a.weights, dtype=float)
    bw = np.asarray(b.weights, dtype=float)
    if len(ax) != len(bx) or len(aw) != len(bw):
        raise LengthMismatch("rules have different sizes")
    tiny = 8.0 * DEFAULT_CONFIG.eps
    near_zero = np.abs(bx) <= tiny
    rel = np.where(near_zero, np.abs(ax - bx), np.abs(1.0 - ax / np.where(near_zero, 1.0, bx)))
    eps_mr_nodes = float(rel.max()) if len(rel) else 0.0
    wmax = np.abs(bw).max() if len(bw) else 0.0
    eps_rm_w = float(np.abs(aw - bw).max() / wmax) if wmax > 0.0 else 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.abs(1.0 - aw / bw)
    eps_mr_w = float(np.nanmax(ratio)) if len(bw) else 0.0
    return eps_mr_nodes, eps_rm_w, eps_mr_w
