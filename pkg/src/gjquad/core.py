"""Parameter validation, derived constants, moments and log-scale constants.

Every gamma-dependent constant is exposed in logarithmic form and only
exponentiated by the caller, so that large degrees and exponents never
overflow intermediate products.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DegreeOutOfRange, DomainError, NotFinite, ParameterOutOfRange

LN2 = math.log(2.0)


@dataclass(frozen=True)
class QuadParams:
    """Validated quadrature parameters with derived constants.

    L = 2n + alpha + beta + 1 and x_e = (beta^2 - alpha^2)/(L^2 - 1), the
    abscissa where the tanh-transform frequency function peaks.
    """

    n: int
    alpha: float
    beta: float
    L: float = field(init=False)
    x_e: float = field(init=False)

    def __post_init__(self):
        L = 2.0 * self.n + self.alpha + self.beta + 1.0
        object.__setattr__(self, "L", L)
        object.__setattr__(self, "x_e", (self.beta**2 - self.alpha**2) / (L * L - 1.0))

    def swapped(self) -> "QuadParams":
        """Parameters with alpha and beta interchanged (the x -> -x symmetry)."""
        return QuadParams(self.n, self.beta, self.alpha)


@dataclass(frozen=True)
class PrecisionConfig:
    """Tolerances and caps for the iterative machinery.

    Defaults assume binary64: fp_tol = eps^(3/4) makes one further
    fourth-order step reach full precision, taylor_tol = eps/4 keeps the
    truncated series at roundoff level.
    """

    eps: float = 2.0**-52
    fp_tol: float = (2.0**-52) ** 0.75
    taylor_tol: float = 2.0**-52 / 4.0
    max_fp_iters: int = 30
    max_taylor_terms: int = 512

    def __post_init__(self):
        if not (0.0 < self.fp_tol < 1.0) or not (0.0 < self.taylor_tol < 1.0):
            raise ParameterOutOfRange("tolerances must lie in (0, 1)")
        if self.max_fp_iters < 5:
            raise ParameterOutOfRange("max_fp_iters must be >= 5")
        if self.max_taylor_terms < 32:
            raise ParameterOutOfRange("max_taylor_terms must be >= 32")

    @property
    def boundary(self) -> float:
        """Abscissa guard: iterates at or beyond 1 - 8 eps end a sweep."""
        return 1.0 - 8.0 * self.eps


DEFAULT_CONFIG = PrecisionConfig()


def make_params(n: int, alpha: float, beta: float) -> QuadParams:
    """Validate (n, alpha, beta) and return QuadParams with L and x_e."""
    for v in (alpha, beta):
        if not math.isfinite(v):
            raise NotFinite(f"exponent {v!r} is not finite")
    if not math.isfinite(n):
        raise NotFinite(f"degree {n!r} is not finite")
    if int(n) != n or n < 1:
        raise DegreeOutOfRange(f"degree must be a positive integer, got {n!r}")
    if alpha <= -1.0 or beta <= -1.0:
        raise ParameterOutOfRange(f"require alpha, beta > -1, got ({alpha}, {beta})")
    return QuadParams(int(n), float(alpha), float(beta))


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0."""
    if not (x > 0.0):
        raise DomainError(f"log_gamma requires x > 0, got {x!r}")
    return math.lgamma(x)


_BERNOULLI = (1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0)


def _stirling_tail(z: float) -> float:
    """Asymptotic correction S(z) with lnGamma(z) = (z-1/2)ln z - z + ln(2pi)/2 + S."""
    zi = 1.0 / z
    z2 = zi * zi
    total = 0.0
    power = zi
    for k, b2k in enumerate(_BERNOULLI, start=1):
        total += b2k / (2.0 * k * (2.0 * k - 1.0)) * power
        power *= z2
    return total


def lgamma_diff(z: float, delta: float) -> float:
    """ln Gamma(z + delta) - ln Gamma(z), accurate in absolute terms.

    Both lgamma values are O(z log z) while the difference is O(delta log z);
    forming it from two lgamma calls caps the absolute accuracy at
    ulp(lgamma), which is ~1e-12 already at z ~ 1000.  This evaluates the
    difference directly from the Stirling series, after lifting small
    arguments with log1p factors.
    """
    if not (z > 0.0 and z + delta > 0.0):
        raise DomainError(f"lgamma_diff requires z, z+delta > 0, got ({z}, {delta})")
    if delta == 0.0:
        return 0.0
    acc = 0.0
    while min(z, z + delta) < 12.0:
        acc -= math.log1p(delta / z)
        z += 1.0
    # (z-1/2) log1p(d/z) + d ln(z+d) - d + S(z+d) - S(z), all O(delta log z)
    main = (z - 0.5) * math.log1p(delta / z) + delta * math.log(z + delta) - delta
    return acc + main + _stirling_tail(z + delta) - _stirling_tail(z)


def log_moment0(alpha: float, beta: float) -> float:
    """ln mu_0 with mu_0 = 2^(a+b+1) Gamma(a+1) Gamma(b+1) / Gamma(a+b+2)."""
    return (alpha + beta + 1.0) * LN2 + log_gamma(alpha + 1.0) + log_gamma(beta + 1.0) - log_gamma(alpha + beta + 2.0)


def moment(alpha: float, beta: float, k: int) -> float:
    """Moment mu_k of (1-x)^alpha (1+x)^beta over [-1, 1], k in {0, 1, 2}.

    May raise OverflowError from the final exponentiation; use log_moment0
    for scale-free work.
    """
    if alpha <= -1.0 or beta <= -1.0:
        raise ParameterOutOfRange(f"require alpha, beta > -1, got ({alpha}, {beta})")
    if k not in (0, 1, 2):
        raise DomainError(f"moment defined for k in 0..2, got {k}")
    mu0 = math.exp(log_moment0(alpha, beta))
    if k == 0:
        return mu0
    if k == 1:
        return mu0 * (beta - alpha) / (alpha + beta + 2.0)
    return mu0 * ((alpha - beta) ** 2 + alpha + beta + 2.0) / ((alpha + beta + 2.0) * (alpha + beta + 3.0))


def log_M(params: QuadParams) -> float:
    """ln M with M = 2^(a+b+1) Gamma(n+a+1) Gamma(n+b+1) / (n! Gamma(n+a+b+1)).

    M relates the squared derivative at a node to its weight; the gamma
    ratios are taken through lgamma_diff so the O(1) result keeps absolute
    accuracy at any degree.
    """
    n, a, b = params.n, params.alpha, params.beta
    return (a + b + 1.0) * LN2 + lgamma_diff(n + 1.0, a) - lgamma_diff(n + b + 1.0, a)


def log_K(params: QuadParams) -> float:
    """ln K with K = (2 (n-1)! / ((n+a+b+1) (a+2)_{n-1}))^2 * M.

    K is the node-independent constant of the extreme-weight formula in the
    angular variable; the Pochhammer ratio (n-1)!/(a+2)_{n-1} runs through
    lgamma_diff for the same reason as in log_M.
    """
    n, a, b = params.n, params.alpha, params.beta
    return (2.0 * (LN2 - lgamma_diff(float(n), a + 1.0) + log_gamma(a + 2.0)
                   - math.log(n + a + b + 1.0))
            + log_M(params))
