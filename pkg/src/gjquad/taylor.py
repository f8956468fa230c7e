"""Normal-form frequency functions and Taylor propagation of (Ytilde, Ytilde').

Ytilde = (1-x)^((alpha+1)/2) (1+x)^((beta+1)/2) P_n(x) satisfies
Q(x) Ytilde'' + R(x) Ytilde = 0 with polynomial Q, R, so its scaled
derivatives a_j = Ytilde^(j)/j! obey a five-term recurrence and the pair
(Ytilde, Ytilde') can be marched along the axis by truncated series.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .core import DEFAULT_CONFIG, PrecisionConfig, QuadParams
from .errors import DomainError, NoConvergence, StepOutOfRadius


class Transform(enum.Enum):
    """The three symmetric Liouville changes of variable."""

    TRIVIAL = "trivial"   # z = x
    ANGULAR = "angular"   # x = cos(theta)
    TANH_R = "tanh"       # x = tanh(z)


def omega(transform: Transform, params: QuadParams, coord: float) -> float:
    """Frequency function of the normal form for the given transform.

    TRIVIAL and TANH_R take x in (-1, 1); ANGULAR takes theta in (0, pi).
    Zeros of the solution can only accumulate where omega > 0.
    """
    L2 = params.L * params.L
    a2 = params.alpha * params.alpha
    b2 = params.beta * params.beta
    if transform is Transform.ANGULAR:
        if not 0.0 < coord < math.pi:
            raise DomainError(f"theta must lie in (0, pi), got {coord}")
        x = math.cos(coord)
        return 0.25 * L2 - (a2 - 0.25) / (2.0 * (1.0 - x)) - (b2 - 0.25) / (2.0 * (1.0 + x))
    if not -1.0 < coord < 1.0:
        raise DomainError(f"x must lie in (-1, 1), got {coord}")
    x = coord
    if transform is Transform.TANH_R:
        return 0.25 * ((L2 - 1.0) * (1.0 - x * x) - 2.0 * a2 * (1.0 + x) - 2.0 * b2 * (1.0 - x))
    q = 4.0 * (1.0 - x * x) ** 2
    r = (L2 - 1.0) * (1.0 - x * x) - 2.0 * (a2 - 1.0) * (1.0 + x) - 2.0 * (b2 - 1.0) * (1.0 - x)
    return r / q


@dataclass(frozen=True)
class TaylorSeed:
    """Expansion center with values (Ytilde, Ytilde') there."""

    x: float
    y: float
    yp: float

    def __post_init__(self):
        if not -1.0 < self.x < 1.0:
            raise DomainError(f"center must lie in (-1, 1), got {self.x}")
        if self.y == 0.0 and self.yp == 0.0:
            raise DomainError("seed values (0, 0) describe the zero solution")

    @property
    def radius(self) -> float:
        return min(1.0 - self.x, 1.0 + self.x)


@dataclass(frozen=True)
class TaylorResult:
    y: float
    yp: float
    terms: int
    radius: float


def taylor_coeffs(params: QuadParams, seed: TaylorSeed, N: int) -> list[float]:
    """Scaled derivatives a_0..a_N at the seed center, a_j = Ytilde^(j)/j!.

    Five-term recurrence with Q = 4(1-x^2)^2 and
    R = (L^2-1)(1-x^2) - 2(a^2-1)(1+x) - 2(b^2-1)(1-x); a_0, a_1 come from
    the seed.
    """
    if N < 0:
        raise DomainError("N must be nonnegative")
    x = seed.x
    L2m1 = params.L * params.L - 1.0
    a2 = params.alpha * params.alpha
    b2 = params.beta * params.beta
    Q = 4.0 * (1.0 - x * x) ** 2
    Qp = 16.0 * x**3 - 16.0 * x
    Qpp = 48.0 * x * x - 16.0
    Qppp = 96.0 * x
    Q4 = 96.0
    R = L2m1 * (1.0 - x * x) - 2.0 * (a2 - 1.0) * (1.0 + x) - 2.0 * (b2 - 1.0) * (1.0 - x)
    Rp = -2.0 * L2m1 * x + 2.0 * (b2 - a2)
    Rpp = -2.0 * L2m1
    a = [0.0] * (N + 1)
    if N >= 0:
        a[0] = seed.y
    if N >= 1:
        a[1] = seed.yp
    for j in range(N - 1):
        am2 = a[j - 2] if j >= 2 else 0.0
        am1 = a[j - 1] if j >= 1 else 0.0
        num = ((j + 1.0) * j * Qp * a[j + 1]
               + (0.5 * j * (j - 1.0) * Qpp + R) * a[j]
               + ((j - 1.0) * (j - 2.0) / 6.0 * Qppp + Rp) * am1
               + 0.5 * ((j - 2.0) * (j - 3.0) / 12.0 * Q4 + Rpp) * am2)
        a[j + 2] = -num / ((j + 2.0) * (j + 1.0) * Q)
    return a


def _series_step(L2m1, a2, b2, x, y, yp, h, tol, max_terms):
    """Single adaptive series evaluation of (Ytilde, Ytilde') at x + h.

    Recurses on b_j = a_j h^j so that coefficient growth ~ radius^-j cancels
    against h^j inside the representation (a_j alone overflows the binary64
    range for tiny radii long before the terms stop mattering).
    Returns (y, yp, terms_used) or raises NoConvergence.
    """
    Q = 4.0 * (1.0 - x * x) ** 2
    Qp_h = (16.0 * x**3 - 16.0 * x) * h
    h2 = h * h
    h3 = h2 * h
    h4 = h2 * h2
    Qpp = 48.0 * x * x - 16.0
    Qppp = 96.0 * x
    Q4 = 96.0
    R = L2m1 * (1.0 - x * x) - 2.0 * (a2 - 1.0) * (1.0 + x) - 2.0 * (b2 - 1.0) * (1.0 - x)
    Rp = -2.0 * L2m1 * x + 2.0 * (b2 - a2)
    Rpp = -2.0 * L2m1
    bm2 = 0.0
    bm1 = 0.0
    bj = y
    bjp1 = yp * h
    sy = bj
    syp = yp
    inv_h = 1.0 / h
    consec = 0
    j = 0
    while True:
        num = ((j + 1.0) * j * Qp_h * bjp1
               + (0.5 * j * (j - 1.0) * Qpp + R) * h2 * bj
               + ((j - 1.0) * (j - 2.0) / 6.0 * Qppp + Rp) * h3 * bm1
               + 0.5 * ((j - 2.0) * (j - 3.0) / 12.0 * Q4 + Rpp) * h4 * bm2)
        bjp2 = -num / ((j + 2.0) * (j + 1.0) * Q)
        j += 1
        bm2, bm1, bj, bjp1 = bm1, bj, bjp1, bjp2
        ty = bj
        typ = (j + 1.0) * bjp1 * inv_h
        sy += ty
        syp += typ
        if abs(ty) <= tol * abs(sy) and abs(typ) <= tol * abs(syp):
            consec += 1
            if consec >= 3:
                return sy, syp, j + 1
        else:
            consec = 0
        if j + 1 >= max_terms:
            raise NoConvergence(f"series needed more than {max_terms} terms at x={x}, h={h}")


def taylor_step(params: QuadParams, seed: TaylorSeed, h: float,
                cfg: PrecisionConfig = DEFAULT_CONFIG) -> TaylorResult:
    """Propagate (Ytilde, Ytilde') from the seed center to x + h.

    Long steps are split so no single series evaluation exceeds half the
    local distance to a singularity; toward an endpoint that makes the
    substep sizes geometric, costing O(log) evaluations.
    """
    radius = seed.radius
    target = seed.x + h
    if abs(h) >= radius or not -1.0 < target < 1.0:
        raise StepOutOfRadius(f"step to {target} leaves the convergence disk of {seed.x}")
    L2m1 = params.L * params.L - 1.0
    a2 = params.alpha * params.alpha
    b2 = params.beta * params.beta
    x, y, yp = seed.x, seed.y, seed.yp
    if h == 0.0:
        return TaylorResult(y, yp, 1, radius)
    total = 0
    while True:
        rem = target - x
        rad = min(1.0 - x, 1.0 + x)
        if abs(rem) <= 0.5 * rad:
            y, yp, used = _series_step(L2m1, a2, b2, x, y, yp, rem, cfg.taylor_tol, cfg.max_taylor_terms)
            return TaylorResult(y, yp, total + used, radius)
        hs = math.copysign(0.5 * rad, rem)
        y, yp, used = _series_step(L2m1, a2, b2, x, y, yp, hs, cfg.taylor_tol, cfg.max_taylor_terms)
        total += used
        x += hs


def growth_diagnostic(coeffs, x: float) -> float:
    """Empirical coefficient growth rate, max of |a_j|^(1/j) over the last
    quartile of indices.

    For a center x the theoretical rate is 1/min(1-x, 1+x) (both
    characteristic roots of the recurrence sit at distance radius), except
    in the polynomial cases where the tail vanishes and the estimate
    collapses to zero.
    """
    if len(coeffs) < 16:
        raise DomainError("need at least 16 coefficients")
    if not -1.0 < x < 1.0:
        raise DomainError(f"center must lie in (-1, 1), got {x}")
    start = (3 * len(coeffs)) // 4
    best = 0.0
    for j in range(start, len(coeffs)):
        aj = abs(coeffs[j])
        if aj > 0.0:
            best = max(best, math.exp(math.log(aj) / j))
    return best
