# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled hot kernels: the fixed-point/Taylor node sweep and the
tridiagonal QL eigensolver.  gjquad._kernel_py is the line-for-line pure
Python twin; keep the two in lockstep.

The sweep state lives in C long double throughout: the endpoint distances
u = 1 - x and v = 1 + x (updated multiplicatively by the Moebius step so
they keep relative accuracy), the solution pair, the series arithmetic,
and the fixed-point step itself.  Marching toward x = 1 with a positive
exponent propagates the recessive solution branch, and any roundoff --
arithmetic, truncation, or node re-anchoring -- excites the dominant one,
which then grows relatively like sqrt of the remaining endpoint distance;
the extra mantissa bits keep the accumulated excitation below double
roundoff at practical degrees.  Where long double is plain binary64
everything still works, with reduced relative accuracy deep in the
endpoint tails."""

from libc.math cimport copysign, fabs, hypot, isnan, sqrt, NAN, M_PI

ctypedef long double real_t

cdef extern from "math.h":
    real_t fabsl(real_t) nogil
    real_t sqrtl(real_t) nogil
    real_t atanl(real_t) nogil
    real_t atanhl(real_t) nogil
    real_t tanhl(real_t) nogil
    real_t copysignl(real_t, real_t) nogil

NAME = "c"

SWEEP_COUNT_CAP = 0
SWEEP_OMEGA_NONPOSITIVE = 1
SWEEP_BOUNDARY = 2
SWEEP_MAX_ITERS = 3
SWEEP_TAYLOR_FAIL = 4


cdef int _series_step(real_t L2m1, real_t am1x2, real_t bm1x2,
                      real_t u, real_t v,
                      real_t* y, real_t* yp, real_t h,
                      real_t tol, long max_terms, long* used) nogil:
    # the center abscissa comes from (u, v) so the ODE data stays
    # consistent at extended accuracy
    cdef real_t x = 0.5 * (v - u)
    cdef real_t uv = u * v
    cdef real_t Q = 4.0 * uv * uv
    cdef real_t Qp_h = -16.0 * x * uv * h
    cdef real_t h2 = h * h
    cdef real_t h3 = h2 * h
    cdef real_t h4 = h2 * h2
    cdef real_t Qpp = 48.0 * x * x - 16.0
    cdef real_t Qppp = 96.0 * x
    cdef real_t Q4 = 96.0
    cdef real_t R = L2m1 * uv - am1x2 * v - bm1x2 * u
    cdef real_t Rp = -2.0 * L2m1 * x + (bm1x2 - am1x2)
    cdef real_t Rpp = -2.0 * L2m1
    cdef real_t bm2 = 0.0
    cdef real_t bm1 = 0.0
    cdef real_t bj = y[0]
    cdef real_t bjp1 = yp[0] * h
    cdef real_t sy = bj
    cdef real_t syp = yp[0]
    cdef real_t inv_h = 1.0 / h
    cdef int consec = 0
    cdef long j = 0
    cdef real_t num, bjp2, ty, typ
    while True:
        num = ((j + 1.0) * j * Qp_h * bjp1
               + (0.5 * j * (j - 1.0) * Qpp + R) * h2 * bj
               + ((j - 1.0) * (j - 2.0) / 6.0 * Qppp + Rp) * h3 * bm1
               + 0.5 * ((j - 2.0) * (j - 3.0) / 12.0 * Q4 + Rpp) * h4 * bm2)
        bjp2 = -num / ((j + 2.0) * (j + 1.0) * Q)
        j += 1
        bm2 = bm1
        bm1 = bj
        bj = bjp1
        bjp1 = bjp2
        ty = bj
        typ = (j + 1.0) * bjp1 * inv_h
        sy += ty
        syp += typ
        if fabsl(ty) <= tol * fabsl(sy) and fabsl(typ) <= tol * fabsl(syp):
            consec += 1
            if consec >= 3:
                y[0] = sy
                yp[0] = syp
                used[0] = j + 1
                return 0
        else:
            consec = 0
        if j + 1 >= max_terms:
            return 1


cdef int _propagate(real_t L2m1, real_t am1x2, real_t bm1x2,
                    real_t u, real_t v, real_t ut, real_t vt,
                    real_t* y, real_t* yp,
                    real_t tol, long max_terms, double phase_cap, long* total) nogil:
    # substeps bounded by half the local endpoint distance and, when
    # phase_cap > 0, by that many radians of local phase (bounds the
    # series overshoot and the roundoff it injects into the recessive
    # branch on positive-exponent sweeps)
    cdef real_t rem, rad, hs, cap, uv, r_over_q, h_phase
    cdef long used = 0
    total[0] = 0
    while True:
        if u <= v:
            rem = u - ut
            rad = u
        else:
            rem = vt - v
            rad = v
        if rem == 0.0:
            total[0] += 1
            return 0
        cap = 0.5 * rad
        if phase_cap > 0.0:
            uv = u * v
            r_over_q = (L2m1 * uv - am1x2 * v - bm1x2 * u) / (4.0 * uv * uv)
            if r_over_q > 0.0:
                h_phase = (<real_t> phase_cap) / sqrtl(r_over_q)
                if h_phase < cap:
                    cap = h_phase
        if fabsl(rem) <= cap:
            if _series_step(L2m1, am1x2, bm1x2, u, v, y, yp, rem, tol, max_terms, &used):
                return 1
            total[0] += used
            return 0
        hs = copysignl(cap, rem)
        if _series_step(L2m1, am1x2, bm1x2, u, v, y, yp, hs, tol, max_terms, &used):
            return 1
        total[0] += used
        u -= hs
        v += hs


cdef real_t _step_f(real_t L2m1, real_t a2, real_t b2,
                    real_t u, real_t v,
                    real_t y, real_t yp, bint at_node, bint probe_tail) nogil:
    cdef real_t x = 0.5 * (v - u)
    cdef real_t uv = u * v
    cdef real_t om = 0.25 * (L2m1 * uv - 2.0 * a2 * v - 2.0 * b2 * u)
    cdef real_t sq, den, zeta, D, w
    if om > 0.0:
        sq = sqrtl(om)
        if at_node:
            return (<real_t> -M_PI) / sq
        den = uv * yp + x * y
        if den == 0.0:
            return (<real_t> (-0.5 * M_PI)) / sq
        zeta = sq * y / den
        if zeta < 0.0:
            return atanl(zeta) / sq
        return (atanl(zeta) - (<real_t> M_PI)) / sq
    if at_node or not probe_tail:
        return NAN
    den = uv * yp + x * y
    if den == 0.0:
        return NAN
    zeta = y / den
    D = -om
    if D == 0.0:
        return zeta if zeta < 0.0 else NAN
    w = sqrtl(D) * zeta
    if w >= 0.0 or w <= -1.0:
        return NAN
    return atanhl(w) / sqrtl(D)


cdef real_t _local_f(real_t L2m1, real_t a2, real_t b2,
                     real_t u, real_t v,
                     real_t y, real_t yp) nogil:
    cdef real_t x = 0.5 * (v - u)
    cdef real_t uv = u * v
    cdef real_t den = uv * yp + x * y
    cdef real_t zeta, om, sq, D, w
    if den == 0.0:
        return NAN
    zeta = y / den
    om = 0.25 * (L2m1 * uv - 2.0 * a2 * v - 2.0 * b2 * u)
    if om > 0.0:
        sq = sqrtl(om)
        return atanl(sq * zeta) / sq
    D = -om
    if D == 0.0:
        return zeta
    w = sqrtl(D) * zeta
    if w >= 1.0 or w <= -1.0:
        return NAN
    return atanhl(w) / sqrtl(D)


def sweep(double n, double alpha, double beta,
          double x0, double y0, double yp0, long max_nodes,
          double fp_tol, double taylor_tol, long max_fp_iters,
          long max_taylor_terms, double boundary,
          double[::1] nodes, double[::1] us, double[::1] vs,
          double[::1] yprimes, long long[::1] iters, long long[::1] terms):
    """See gjquad._kernel_py.sweep."""
    cdef real_t L = 2.0 * (<real_t> n) + (<real_t> alpha) + (<real_t> beta) + 1.0
    cdef real_t L2m1 = L * L - 1.0
    cdef real_t a2 = (<real_t> alpha) * (<real_t> alpha)
    cdef real_t b2 = (<real_t> beta) * (<real_t> beta)
    cdef real_t am1x2 = 2.0 * (a2 - 1.0)
    cdef real_t bm1x2 = 2.0 * (b2 - 1.0)
    cdef bint probe_tail = alpha < 0.0
    cdef double phase_cap = 0.5 if alpha > 0.0 else 0.0
    cdef real_t u = 1.0 - (<real_t> x0)
    cdef real_t v = 1.0 + (<real_t> x0)
    cdef real_t y = y0
    cdef real_t yp = yp0
    # truncate the carried series at the extended-precision roundoff, not
    # the double one, or truncation itself re-injects the dominant branch
    cdef real_t tol_l = (<real_t> taylor_tol) * (2.0 ** -11)
    cdef long count = 0
    cdef bint at_node
    cdef long n_it, k
    cdef long long n_tm
    cdef long used = 0
    cdef double ysign, dom, C, F2
    cdef real_t F, t, den_l, un, vn, Fl
    cdef bint done
    if x0 >= boundary:
        return 0, SWEEP_BOUNDARY
    at_node = y == 0.0
    with nogil:
        while count < max_nodes:
            n_it = 0
            n_tm = 0
            ysign = 0.0 if at_node else (1.0 if y > 0.0 else -1.0)
            while True:
                F = _step_f(L2m1, a2, b2, u, v, y, yp, at_node, probe_tail)
                if isnan(<double> F):
                    with gil:
                        return count, SWEEP_OMEGA_NONPOSITIVE
                t = tanhl(F)
                den_l = 1.0 - 0.5 * (v - u) * t
                un = u * (1.0 + t) / den_l
                vn = v * (1.0 - t) / den_l
                n_it += 1
                if un == u and vn == v:
                    if ysign == 0.0:
                        # advance no longer resolvable in the representation
                        with gil:
                            return count, SWEEP_BOUNDARY
                    nodes[count] = <double> (0.5 * (v - u))
                    us[count] = <double> u
                    vs[count] = <double> v
                    yprimes[count] = <double> yp
                    iters[count] = n_it
                    terms[count] = n_tm
                    count += 1
                    y = 0.0
                    at_node = True
                    break
                if <double> (0.5 * (vn - un)) >= boundary:
                    with gil:
                        return count, SWEEP_BOUNDARY
                if _propagate(L2m1, am1x2, bm1x2, u, v, un, vn,
                              &y, &yp, tol_l, max_taylor_terms, phase_cap, &used):
                    with gil:
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
                    nodes[count] = <double> (0.5 * (v - u))
                    us[count] = <double> u
                    vs[count] = <double> v
                    yprimes[count] = <double> yp
                    iters[count] = n_it
                    terms[count] = n_tm
                    count += 1
                    y = 0.0
                    at_node = True
                    break
                done = False
                if fabsl(F) <= fp_tol:
                    done = True
                elif y == 0.0 or (1.0 if y > 0.0 else -1.0) != ysign:
                    # crossed the zero: converged unless the overshoot bound
                    # says the step was too coarse for that
                    dom = 0.25 * (-(<double> (v - u)) * (<double> L2m1)
                                  - 2.0 * (<double> a2) + 2.0 * (<double> b2))
                    C = fabs((<double> u) * (<double> v) * dom) / 12.0
                    F2 = (<double> F) * (<double> F)
                    if C * F2 * F2 <= fp_tol:
                        done = True
                    else:
                        for k in range(10):
                            Fl = _local_f(L2m1, a2, b2, u, v, y, yp)
                            if isnan(<double> Fl):
                                break
                            t = tanhl(Fl)
                            den_l = 1.0 - 0.5 * (v - u) * t
                            un = u * (1.0 + t) / den_l
                            vn = v * (1.0 - t) / den_l
                            n_it += 1
                            if un == u and vn == v:
                                break
                            if _propagate(L2m1, am1x2, bm1x2, u, v,
                                          un, vn, &y, &yp, tol_l, max_taylor_terms,
                                          phase_cap, &used):
                                with gil:
                                    return count, SWEEP_TAYLOR_FAIL
                            n_tm += used
                            u = un
                            v = vn
                            if fabsl(Fl) <= fp_tol:
                                break
                        done = True
                if done:
                    nodes[count] = <double> (0.5 * (v - u))
                    us[count] = <double> u
                    vs[count] = <double> v
                    yprimes[count] = <double> yp
                    iters[count] = n_it
                    terms[count] = n_tm
                    count += 1
                    y = 0.0
                    at_node = True
                    break
                if n_it >= max_fp_iters:
                    with gil:
                        return count, SWEEP_MAX_ITERS
    return count, SWEEP_COUNT_CAP


def ql_first_components(double[::1] d, double[::1] e, double[::1] z, double eps):
    """See gjquad._kernel_py.ql_first_components."""
    cdef long n = d.shape[0]
    cdef long l, m, i, j
    cdef double g, r, s, c, p, f, b
    if n == 1:
        return 0
    e[n - 1] = 0.0
    with nogil:
        for l in range(n):
            j = 0
            while True:
                m = l
                while m < n - 1 and fabs(e[m]) > eps * (fabs(d[m]) + fabs(d[m + 1])):
                    m += 1
                if m == l:
                    break
                if j == 30:
                    with gil:
                        return l + 1
                j += 1
                g = (d[l + 1] - d[l]) / (2.0 * e[l])
                r = hypot(g, 1.0)
                g = d[m] - d[l] + e[l] / (g + copysign(r, g))
                s = 1.0
                c = 1.0
                p = 0.0
                for i in range(m - 1, l - 1, -1):
                    f = s * e[i]
                    b = c * e[i]
                    if fabs(f) < fabs(g):
                        s = f / g
                        r = sqrt(s * s + 1.0)
                        e[i + 1] = g * r
                        c = 1.0 / r
                        s *= c
                    else:
                        c = g / f
                        r = sqrt(c * c + 1.0)
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
