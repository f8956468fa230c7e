"""Pure-Python fallback for the hot kernels.

Mirrors gjquad._kernel (the Cython extension): same state machine, same
arithmetic order, same extended-precision carry.  Selected by
gjquad._backend when the extension is unavailable or when GJQUAD_KERNEL=py
is set.

The sweep state lives in extended precision (np.longdouble, the C long
double) throughout: the endpoint distances u = 1 - x and v = 1 + x
(updated multiplicatively by the Moebius step so they keep relative
accuracy), the solution pair, the series arithmetic, and the fixed-point
step itself.  Marching toward x = 1 with a positive exponent propagates
the recessive solution branch, and any roundoff -- arithmetic,
truncation, or node re-anchoring -- excites the dominant one, which then
grows relatively like sqrt of the remaining endpoint distance; the extra
mantissa bits keep the accumulated excitation below double roundoff at
practical degrees.  Where long double is plain binary64 everything still
works, with reduced relative accuracy deep in the endpoint tails.
"""
from __future__ import annotations

import math

import numpy as np

NAME = "py"

SWEEP_COUNT_CAP = 0
SWEEP_OMEGA_NONPOSITIVE = 1
SWEEP_BOUNDARY = 2
SWEEP_MAX_ITERS = 3
SWEEP_TAYLOR_FAIL = 4

LD = np.longdouble
_LD0 = LD(0.0)
_LD1 = LD(1.0)
_LDH = LD(0.5)
_PI = LD(math.pi)
_NAN = LD(math.nan)


def _series_step(L2m1, am1x2, bm1x2, u, v, y, yp, h, tol, max_terms):
    """One adaptive series evaluation; recurses on b_j = a_j h^j.

    am1x2 = 2(alpha^2 - 1), bm1x2 = 2(beta^2 - 1); all state arguments are
    extended precision, and the center abscissa is derived from (u, v) so
    the ODE data stays consistent at extended accuracy.  Returns
    (y, yp, terms) with terms < 0 signalling term-cap failure.
    """
    x = _LDH * (v - u)
    uv = u * v
    Q = LD(4.0) * uv * uv
    Qp_h = LD(-16.0) * x * uv * h
    h2 = h * h
    h3 = h2 * h
    h4 = h2 * h2
    Qpp = LD(48.0) * x * x - LD(16.0)
    Qppp = LD(96.0) * x
    Q4 = LD(96.0)
    R = L2m1 * uv - am1x2 * v - bm1x2 * u
    Rp = LD(-2.0) * L2m1 * x + (bm1x2 - am1x2)
    Rpp = LD(-2.0) * L2m1
    bm2 = _LD0
    bm1 = _LD0
    bj = y
    bjp1 = yp * h
    sy = bj
    syp = yp
    inv_h = _LD1 / h
    consec = 0
    j = 0
    while True:
        num = (LD((j + 1.0) * j) * Qp_h * bjp1
               + (LD(0.5 * j * (j - 1.0)) * Qpp + R) * h2 * bj
               + (LD((j - 1.0) * (j - 2.0) / 6.0) * Qppp + Rp) * h3 * bm1
               + _LDH * (LD((j - 2.0) * (j - 3.0) / 12.0) * Q4 + Rpp) * h4 * bm2)
        bjp2 = -num / (LD((j + 2.0) * (j + 1.0)) * Q)
        j += 1
        bm2, bm1, bj, bjp1 = bm1, bj, bjp1, bjp2
        ty = bj
        typ = LD(j + 1.0) * bjp1 * inv_h
        sy += ty
        syp += typ
        if abs(ty) <= tol * abs(sy) and abs(typ) <= tol * abs(syp):
            consec += 1
            if consec >= 3:
                return sy, syp, j + 1
        else:
            consec = 0
        if j + 1 >= max_terms:
            return sy, syp, -1


def _propagate(L2m1, am1x2, bm1x2, u, v, ut, vt, y, yp, tol, max_terms, phase_cap):
    """March (y, yp) to the target (ut, vt) in substeps.

    Substeps stay within half the local endpoint distance; when phase_cap
    is positive they are also capped at that many radians of local phase,
    which bounds the partial-sum overshoot of each series evaluation and
    with it the roundoff injected into the recessive branch (used on
    positive-exponent sweeps, where that injection grows downstream).
    """
    total = 0
    while True:
        rem = (u - ut) if u <= v else (vt - v)
        rad = u if u <= v else v
        if rem == 0.0:
            return y, yp, total + 1
        cap = _LDH * rad
        if phase_cap > 0.0:
            uv = u * v
            r_over_q = (L2m1 * uv - am1x2 * v - bm1x2 * u) / (LD(4.0) * uv * uv)
            if r_over_q > 0.0:
                h_phase = LD(phase_cap) / np.sqrt(r_over_q)
                if h_phase < cap:
                    cap = h_phase
        if abs(rem) <= cap:
            y, yp, used = _series_step(L2m1, am1x2, bm1x2, u, v, y, yp, rem, tol, max_terms)
            if used < 0:
                return y, yp, -1
            return y, yp, total + used
        hs = cap if rem > 0 else -cap
        y, yp, used = _series_step(L2m1, am1x2, bm1x2, u, v, y, yp, hs, tol, max_terms)
        if used < 0:
            return y, yp, -1
        total += used
        u -= hs
        v += hs


def _step_f(L2m1, a2, b2, u, v, y, yp, at_node, probe_tail):
    """Signed z-step of the fixed-point map at the current state.

    In the oscillatory region (omega > 0) this is the branch-selected
    arctangent form; past the turning point it continues as the artanh
    form, which can see at most one further zero and only when the
    boundary exponent is negative (probe_tail).  Returns NaN when no zero
    lies ahead (sweep exhausted).
    """
    x = _LDH * (v - u)
    uv = u * v
    om = LD(0.25) * (L2m1 * uv - LD(2.0) * a2 * v - LD(2.0) * b2 * u)
    if om > 0.0:
        sq = np.sqrt(om)
        if at_node:
            return -_PI / sq
        den = uv * yp + x * y
        if den == 0.0:
            return -_LDH * _PI / sq
        zeta = sq * y / den
        if zeta < 0.0:
            return np.arctan(zeta) / sq
        return (np.arctan(zeta) - _PI) / sq
    if at_node or not probe_tail:
        return _NAN
    den = uv * yp + x * y
    if den == 0.0:
        return _NAN
    zeta = y / den
    D = -om
    if D == 0.0:
        return zeta if zeta < 0.0 else _NAN
    w = np.sqrt(D) * zeta
    if w >= 0.0 or w <= -1.0:
        return _NAN
    return np.arctanh(w) / np.sqrt(D)


def _local_f(L2m1, a2, b2, u, v, y, yp):
    """Plain (bilateral) step of the local fixed-point map; NaN if unusable."""
    x = _LDH * (v - u)
    uv = u * v
    den = uv * yp + x * y
    if den == 0.0:
        return _NAN
    zeta = y / den
    om = LD(0.25) * (L2m1 * uv - LD(2.0) * a2 * v - LD(2.0) * b2 * u)
    if om > 0.0:
        sq = np.sqrt(om)
        return np.arctan(sq * zeta) / sq
    D = -om
    if D == 0.0:
        return zeta
    w = np.sqrt(D) * zeta
    if w >= 1.0 or w <= -1.0:
        return _NAN
    return np.arctanh(w) / np.sqrt(D)


def sweep(n, alpha, beta, x0, y0, yp0, max_nodes,
          fp_tol, taylor_tol, max_fp_iters, max_taylor_terms, boundary,
          nodes, us, vs, yprimes, iters, terms):
    """Collect up to max_nodes zeros of Ytilde ahead of x0, in order.

    Seed (x0, y0, yp0) with y0 == 0 meaning "x0 is itself a zero" (the
    first move is then the half-period advance).  Outputs land in the
    supplied arrays; us and vs receive 1 - x and 1 + x of each node at
    full relative accuracy.  Returns (count, code) with code one of the
    SWEEP_* constants.
    """
    L = LD(2.0) * LD(n) + LD(alpha) + LD(beta) + _LD1
    L2m1 = L * L - _LD1
    a2 = LD(alpha) * LD(alpha)
    b2 = LD(beta) * LD(beta)
    am1x2 = LD(2.0) * (a2 - _LD1)
    bm1x2 = LD(2.0) * (b2 - _LD1)
    probe_tail = alpha < 0.0
    phase_cap = 0.5 if alpha > 0.0 else 0.0
    u = _LD1 - LD(x0)
    v = _LD1 + LD(x0)
    y = LD(y0)
    yp = LD(yp0)
    # truncate the carried series at the extended-precision roundoff, not
    # the double one, or truncation itself re-injects the dominant branch
    tol_l = LD(taylor_tol) * LD(2.0**-11)
    count = 0
    if x0 >= boundary:
        return 0, SWEEP_BOUNDARY
    at_node = y == 0.0

    while count < max_nodes:
        n_it = 0
        n_tm = 0
        ysign = 0.0 if at_node else (1.0 if y > 0.0 else -1.0)
        while True:
            F = _step_f(L2m1, a2, b2, u, v, y, yp, at_node, probe_tail)
            if math.isnan(float(F)):
                return count, SWEEP_OMEGA_NONPOSITIVE
            t = np.tanh(F)
            den_l = _LD1 - _LDH * (v - u) * t
            un = u * (_LD1 + t) / den_l
            vn = v * (_LD1 - t) / den_l
            n_it += 1
            if un == u and vn == v:
                if ysign == 0.0:
                    # advance no longer resolvable in the representation
                    return count, SWEEP_BOUNDARY
                nodes[count] = float(_LDH * (v - u))
                us[count] = float(u)
                vs[count] = float(v)
                yprimes[count] = float(yp)
                iters[count] = n_it
                terms[count] = n_tm
                count += 1
                y = _LD0
                at_node = True
                break
            if float(_LDH * (vn - un)) >= boundary:
                return count, SWEEP_BOUNDARY
            y, yp, used = _propagate(L2m1, am1x2, bm1x2, u, v, un, vn, y, yp,
                                     tol_l, max_taylor_terms, phase_cap)
            if used < 0:
                return count, SWEEP_TAYLOR_FAIL
            n_tm += used
            u = un
            v = vn
            at_node = False
            if ysign == 0.0:
                # first value on the fresh half-wave fixes the approach sign
                if y != 0.0:
                    ysign = 1.0 if y > 0.0 else -1.0
                    continue
                # landed exactly on the next zero
                nodes[count] = float(_LDH * (v - u))
                us[count] = float(u)
                vs[count] = float(v)
                yprimes[count] = float(yp)
                iters[count] = n_it
                terms[count] = n_tm
                count += 1
                y = _LD0
                at_node = True
                break
            done = False
            if abs(F) <= fp_tol:
                done = True
            elif y == 0.0 or (1.0 if y > 0.0 else -1.0) != ysign:
                # crossed the zero: converged unless the overshoot bound
                # says the step was too coarse for that
                dom = 0.25 * (-float(v - u) * float(L2m1)
                              - 2.0 * float(a2) + 2.0 * float(b2))
                C = abs(float(u) * float(v) * dom) / 12.0
                F2 = float(F) * float(F)
                if C * F2 * F2 <= fp_tol:
                    done = True
                else:
                    for _ in range(10):
                        Fl = _local_f(L2m1, a2, b2, u, v, y, yp)
                        if math.isnan(float(Fl)):
                            break
                        t = np.tanh(Fl)
                        den_l = _LD1 - _LDH * (v - u) * t
                        un = u * (_LD1 + t) / den_l
                        vn = v * (_LD1 - t) / den_l
                        n_it += 1
                        if un == u and vn == v:
                            break
                        y, yp, used = _propagate(L2m1, am1x2, bm1x2, u, v,
                                                 un, vn, y, yp, tol_l,
                                                 max_taylor_terms, phase_cap)
                        if used < 0:
                            return count, SWEEP_TAYLOR_FAIL
                        n_tm += used
                        u = un
                        v = vn
                        if abs(Fl) <= fp_tol:
                            break
                    done = True
            if done:
                nodes[count] = float(_LDH * (v - u))
                us[count] = float(u)
                vs[count] = float(v)
                yprimes[count] = float(yp)
                iters[count] = n_it
                terms[count] = n_tm
                count += 1
                y = _LD0
                at_node = True
                break
            if n_it >= max_fp_iters:
                return count, SWEEP_MAX_ITERS
    return count, SWEEP_COUNT_CAP


def ql_first_components(d, e, z, eps):
    """Implicit-shift QL on a symmetric tridiagonal matrix.

    d (diagonal) becomes the unsorted eigenvalues, z (any start vector,
    typically e_1) is rotated along; e is destroyed.  Returns 0 on success,
    or 1 + index of the eigenvalue that failed to converge.
    """
    n = len(d)
    if n == 1:
        return 0
    e[n - 1] = 0.0
    for l in range(n):
        j = 0
        while True:
            m = l
            while m < n - 1 and abs(e[m]) > eps * (abs(d[m]) + abs(d[m + 1])):
                m += 1
            if m == l:
                break
            if j == 30:
                return l + 1
            j += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = 1.0
            c = 1.0
            p = 0.0
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                if abs(f) < abs(g):
                    s = f / g
                    r = math.sqrt(s * s + 1.0)
                    e[i + 1] = g * r
                    c = 1.0 / r
                    s *= c
                else:
                    c = g / f
                    r = math.sqrt(c * c + 1.0)
                    e[i + 1] = f * r
                    s = 1.0 / r
                    c *= s
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                f = z[i + 1]
                z[i + 1] = s * z[i] + c * f
                z[i] = c * z[i] - s * f
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return 0
