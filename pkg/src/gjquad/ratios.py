"""Jacobi-polynomial ratios and logarithmic derivatives.

Everything here is recurrence- or continued-fraction based; no polynomial
values are ever formed, only ratios, so degree and exponents can be large
without overflow.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .core import DEFAULT_CONFIG, PrecisionConfig, QuadParams
from .errors import DomainError, NoConvergence

_CF_TINY = 1e-300
_CF_MAX_CONVERGENTS = 10_000


@dataclass(frozen=True)
class RatioResult:
    value: float
    terms_used: int
    converged: bool


def ratio_ttrr(params: QuadParams, x: float) -> float:
    """P_n(x)/P_{n-1}(x) by the upward three-term ratio recurrence.

    An intermediate zero of P_k(x) makes one ratio infinite; IEEE division
    carries the +-inf through and the next ratio is finite again, so the
    only sentinel outputs are 0.0 (x is a zero of P_n) and +-inf (x is a
    zero of P_{n-1}).
    """
    if not -1.0 < x < 1.0:
        raise DomainError(f"x must lie in (-1, 1), got {x}")
    n, alpha, beta = params.n, params.alpha, params.beta
    r = 0.5 * (alpha - beta + (alpha + beta + 2.0) * x)
    a2b2 = alpha * alpha - beta * beta
    for k in range(1, n):
        Lk = 2.0 * k + alpha + beta + 1.0
        A = 2.0 * (k + 1.0) * (k + alpha + beta + 1.0) * (Lk - 1.0)
        B = Lk * ((Lk * Lk - 1.0) * x + a2b2)
        C = 2.0 * (Lk + 1.0) * (k + alpha) * (k + beta)
        if r == 0.0:
            r = (B - math.copysign(math.inf, C)) / A
        else:
            r = (B - C / r) / A
    return r


def log_deriv_tilde(params: QuadParams, x: float) -> float:
    """Ytilde'(x)/Ytilde(x) for Ytilde = (1-x)^((a+1)/2) (1+x)^((b+1)/2) P_n(x).

    Returns a signed-infinity sentinel when x is a zero of P_n (Ytilde = 0).
    """
    rn = ratio_ttrr(params, x)
    n, alpha, beta = params.n, params.alpha, params.beta
    L = params.L
    if rn == 0.0:
        return math.inf
    inv = 1.0 / rn  # -0.0 when rn is -inf: the P_{n-1} zero drops out cleanly
    return ((n + beta + 1.0) / (2.0 * (1.0 + x))
            - (n + alpha + 1.0) / (2.0 * (1.0 - x))
            + (n * (alpha - beta) + 2.0 * (n + alpha) * (n + beta) * inv)
            / ((L - 1.0) * (1.0 - x * x)))


def _cf_shifted_ratio(n: float, alpha: float, beta: float, u: float,
                      tol: float, cap: int) -> tuple[float, int, bool]:
    """P_n^(alpha+1,beta)/P_n^(alpha,beta) as a continued fraction in u = 1-x.

    Modified Lentz evaluation; converged when the convergent factor is
    within tol of 1.
    """
    f = _CF_TINY
    C = _CF_TINY
    D = 0.0
    for j in range(1, cap + 1):
        c = alpha + j
        den = (n + c + beta + 1.0) * u
        aj = -2.0 * (c + n) / den
        bj = -1.0 - (n * u + 2.0 * c) / den
        D = bj + aj * D
        if D == 0.0:
            D = _CF_TINY
        C = bj + aj / C
        if C == 0.0:
            C = _CF_TINY
        D = 1.0 / D
        delta = C * D
        f *= delta
        if abs(delta - 1.0) <= tol:
            return f, j, True
    return f, cap, False


def cf_ratio_alpha(params: QuadParams, x: float, cfg: PrecisionConfig = DEFAULT_CONFIG) -> RatioResult:
    """P_n^(alpha+1,beta)(x)/P_n^(alpha,beta)(x) via the alpha-direction CF.

    Converges for |x - 1| < 2 (all of (-1, 1)), fastest near x = 1; this is
    the ratio the angular refinement consumes.
    """
    if not -1.0 < x < 1.0:
        raise DomainError(f"x must lie in (-1, 1), got {x}")
    value, used, ok = _cf_shifted_ratio(params.n, params.alpha, params.beta,
                                        1.0 - x, cfg.taylor_tol, _CF_MAX_CONVERGENTS)
    if not ok:
        raise NoConvergence(f"continued fraction did not converge in {used} convergents")
    return RatioResult(value, used, ok)


def h_theta(params: QuadParams, theta: float, cfg: PrecisionConfig = DEFAULT_CONFIG) -> float:
    """h with 1/h = sin(theta) Ydot(theta)/Y(theta) for the angular transform.

    1/h = 1/2 + alpha + L sin^2(t/2) - 2(n+a+b+1) sin^2(t/2) H, where H is
    the shifted-alpha ratio at x = cos(theta), evaluated with 1 - x written
    as 2 sin^2(theta/2) for accuracy near theta = 0.  Returns a signed
    infinity when the derivative vanishes.
    """
    if not 0.0 < theta < math.pi:
        raise DomainError(f"theta must lie in (0, pi), got {theta}")
    n, alpha, beta = params.n, params.alpha, params.beta
    s2 = math.sin(0.5 * theta) ** 2
    H, used, ok = _cf_shifted_ratio(n, alpha, beta, 2.0 * s2, cfg.taylor_tol, _CF_MAX_CONVERGENTS)
    if not ok:
        raise NoConvergence(f"continued fraction did not converge in {used} convergents")
    hinv = 0.5 + alpha + params.L * s2 - 2.0 * (n + alpha + beta + 1.0) * s2 * H
    if hinv == 0.0:
        return math.copysign(math.inf, hinv)
    return 1.0 / hinv


# double-double primitives (Dekker/Knuth): enough headroom for the
# alternating hypergeometric sum below, whose terms cancel by ~e^(k pi)
# when the argument leaves the immediate endpoint region
_SPLIT = 134217729.0  # 2^27 + 1


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _two_prod(a, b):
    p = a * b
    c = _SPLIT * a
    ahi = c - (c - a)
    alo = a - ahi
    c = _SPLIT * b
    bhi = c - (c - b)
    blo = b - bhi
    return p, ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo


def _dd_add(xh, xl, yh, yl):
    s, e = _two_sum(xh, yh)
    e += xl + yl
    h = s + e
    return h, e - (h - s)


def _dd_mul_d(xh, xl, d):
    p, e = _two_prod(xh, d)
    e += xl * d
    h = p + e
    return h, e - (h - p)


def _dd_div_d(xh, xl, d):
    q = xh / d
    p, e = _two_prod(q, d)
    r = ((xh - p) - e + xl) / d
    h = q + r
    return h, r - (h - q)


def terminating_2f1(params: QuadParams, s2: float) -> float:
    """2F1(-n+1, n+a+b+2; a+2; s2) by direct ascending summation.

    The series terminates after n terms; summation runs in double-double
    because away from s2 -> 0 the alternating terms cancel by a factor
    growing like e^(2 n sqrt(s2)), which plain binary64 cannot absorb for
    the second-from-the-end node onward.  Terms are dropped once they stay
    below the double-double noise floor of the running magnitude.
    """
    if not 0.0 <= s2 < 1.0:
        raise DomainError(f"s2 must lie in [0, 1), got {s2}")
    n, alpha, beta = params.n, params.alpha, params.beta
    th, tl = 1.0, 0.0
    sh, sl = 1.0, 0.0
    mag = 1.0
    negligible = 0
    for k in range(n - 1):
        num = (k - (n - 1.0)) * (n + alpha + beta + 2.0 + k)
        den = (alpha + 2.0 + k) * (k + 1.0)
        th, tl = _dd_mul_d(th, tl, num)
        th, tl = _dd_mul_d(th, tl, s2)
        th, tl = _dd_div_d(th, tl, den)
        sh, sl = _dd_add(sh, sl, th, tl)
        mag += abs(th)
        if abs(th) <= 1e-34 * mag:
            negligible += 1
            if negligible >= 3:
                break
        else:
            negligible = 0
    return sh + sl
