"""Acceptance suite: every criterion at its stated tolerance, one printed
pass/fail line each.  Run with `pytest tests/test_acceptance.py -v -s`."""
import math
import time

import numpy as np
import pytest

from gjquad import (DEFAULT_CONFIG, compare_rules, exactness_check,
                    gegenbauer_rule, golub_welsch, jacobi_rule, make_params,
                    moment)
from gjquad.fixedpoint import SweepState, step_tanh
from gjquad.gegenbauer import normalize_symmetric

EPS = DEFAULT_CONFIG.eps
CHEB_N_SET = list(range(1, 51)) + [101, 256, 1000]


def _report(tag, ok, detail):
    print(f"[acceptance] {tag}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"{tag}: {detail}"


def _node_err(got, ref):
    zero = np.abs(ref) <= 8 * EPS
    return np.where(zero, np.abs(got - ref),
                    np.abs(got / np.where(zero, 1.0, ref) - 1.0)).max()


def test_criterion_1_chebyshev_first_kind():
    t0 = time.perf_counter()
    worst_x = worst_w = 0.0
    for n in CHEB_N_SET:
        r = jacobi_rule(n, -0.5, -0.5)
        i = np.arange(1, n + 1)
        x_ref = np.sin(np.pi * (2.0 * i - 1.0 - n) / (2.0 * n))
        worst_x = max(worst_x, _node_err(r.nodes, x_ref))
        worst_w = max(worst_w, np.abs(r.weights / (math.pi / n) - 1.0).max())
    dt = time.perf_counter() - t0
    ok = worst_x <= 5e-14 and worst_w <= 5e-14 and dt < 5.0
    _report("C1 chebyshev-1st closed form", ok,
            f"node err {worst_x:.2e}, weight err {worst_w:.2e}, {dt:.2f}s")


def test_criterion_2_chebyshev_second_kind():
    t0 = time.perf_counter()
    worst_x = worst_w = 0.0
    for n in CHEB_N_SET:
        r = jacobi_rule(n, 0.5, 0.5)
        i = np.arange(1, n + 1)
        x_ref = np.sin(np.pi * (2.0 * i - (n + 1.0)) / (2.0 * (n + 1.0)))
        # evaluate sin away from pi so the reference keeps relative accuracy
        w_ref = (math.pi / (n + 1)) * np.sin(np.minimum(i, n + 1 - i) * np.pi / (n + 1)) ** 2
        worst_x = max(worst_x, _node_err(r.nodes, x_ref))
        worst_w = max(worst_w, np.abs(r.weights / w_ref - 1.0).max())
    dt = time.perf_counter() - t0
    ok = worst_x <= 5e-14 and worst_w <= 5e-14 and dt < 5.0
    _report("C2 chebyshev-2nd closed form", ok,
            f"node err {worst_x:.2e}, weight err {worst_w:.2e}, {dt:.2f}s")


def test_criterion_3_oracle_grid():
    t0 = time.perf_counter()
    grid = [-0.9, -0.75, -0.5, 0.0, 1.0, 5.0]
    worst_nodes = worst_w = 0.0
    for n in (5, 20, 90, 250):
        for a in grid:
            for b in grid:
                r = jacobi_rule(n, a, b)
                gw = golub_welsch(make_params(n, a, b))
                e_nodes, e_rm, _ = compare_rules(r, gw)
                worst_nodes = max(worst_nodes, e_nodes)
                worst_w = max(worst_w, e_rm)
    dt = time.perf_counter() - t0
    ok = worst_nodes <= 1e-12 and worst_w <= 1e-11 and dt < 60.0
    _report("C3 oracle grid 4x36", ok,
            f"eps_mr nodes {worst_nodes:.2e}, eps_rm weights {worst_w:.2e}, {dt:.1f}s")


def test_criterion_4_near_singular_exponent():
    details = []
    ok = True
    for n in (90, 250):
        params = make_params(n, -0.99, 2.0)
        r = jacobi_rule(n, -0.99, 2.0)
        gw = golub_welsch(params)
        _, e_rm, _ = compare_rules(r, gw)
        # kmax = 20: deep enough to exercise both weight sets while staying
        # within the checker's own double-precision floor
        defect = exactness_check(r, params, 20)
        details.append(f"n={n}: eps_rm {e_rm:.2e}, defect {defect:.2e}")
        ok = ok and e_rm <= 1e-11 and defect <= 1e-10
    _report("C4 near-singular exponent accuracy", ok, "; ".join(details))


def test_criterion_5_large_parameters():
    details = []
    ok = True
    for a in (0.0, 50.0, 100.0, 150.0):
        params = make_params(250, a, 150.0)
        r = jacobi_rule(250, a, 150.0)
        defect = exactness_check(r, params, 4)
        mass = math.fsum(r.weights)
        mass_err = abs(mass / moment(a, 150.0, 0) - 1.0)
        positive = bool((r.weights > 0.0).all())
        finite = bool(np.isfinite(r.weights).all() and np.isfinite(r.nodes).all())
        details.append(f"a={a:g}: defect {defect:.2e}, mass err {mass_err:.2e}")
        ok = ok and positive and finite and defect <= 1e-11 and mass_err <= 1e-11
    _report("C5 large parameters beta=150", ok, "; ".join(details))


def test_criterion_6_iteration_budget():
    r1000 = gegenbauer_rule(1000, -0.8)
    r10 = gegenbauer_rule(10, -0.8)
    s1, s2 = r1000.stats, r10.stats
    ok = (s1.mean_fp_iters <= 3.5 and s2.mean_fp_iters <= 4.5
          and s1.mean_taylor_terms <= 120.0)
    _report("C6 iteration budget", ok,
            f"n=1000: {s1.mean_fp_iters:.2f} iters, {s1.mean_taylor_terms:.1f} terms; "
            f"n=10: {s2.mean_fp_iters:.2f} iters")


def _jacobi_direct(n, a, b, x):
    if n == 0:
        return 1.0
    pm1, p = 1.0, 0.5 * (a - b + (a + b + 2.0) * x)
    for k in range(1, n):
        A = 2.0 * (k + 1) * (k + a + b + 1) * (2 * k + a + b)
        B = (2 * k + a + b + 1) * ((2 * k + a + b) * (2 * k + a + b + 2) * x + a * a - b * b)
        C = 2.0 * (k + a) * (k + b) * (2 * k + a + b + 2)
        p, pm1 = (B * p - C * pm1) / A, p
    return p


def test_criterion_7_invariant_suite():
    rng = np.random.default_rng(20260809)
    violations = []

    # fourth-order contraction at the Legendre n=2 node (fixed case)
    p2 = make_params(2, 0.0, 0.0)
    node = 1 / math.sqrt(3)
    znode = math.atanh(node)
    c_theory = math.sinh(znode) / math.cosh(znode) ** 3

    def legendre2_state(x):
        v = 0.5 * (3 * x * x - 1)
        s = math.sqrt(1 - x * x)
        return SweepState(x, s * v, s * 3 * x - x * v / s)

    x0 = math.tanh(znode - 1e-2)
    e1 = math.atanh(step_tanh(p2, legendre2_state(x0))) - znode
    c_obs = abs(e1) / 1e-2**4
    if not (c_theory / 10 <= c_obs <= c_theory * 10):
        violations.append(f"contraction constant {c_obs:.2e} vs {c_theory:.2e}")

    for trial in range(200):
        a, b = rng.uniform(-0.99, 8.0, size=2)
        n = int(rng.integers(2, 50))

        # count certification + reflection consistency
        try:
            r = jacobi_rule(n, a, b)
        except Exception as exc:
            violations.append(f"build failed n={n} a={a:.3f} b={b:.3f}: {exc}")
            continue
        rs = jacobi_rule(n, b, a)
        flipped = -rs.nodes[::-1]
        if _node_err(r.nodes, flipped) > 4 * EPS:
            violations.append(f"reflection nodes n={n} a={a:.3f} b={b:.3f}")
        if np.abs(r.weights / rs.weights[::-1] - 1.0).max() > 1e2 * EPS:
            violations.append(f"reflection weights n={n} a={a:.3f} b={b:.3f}")

        # interlacing with degree n+1
        r_up = jacobi_rule(n + 1, a, b)
        if not ((r_up.nodes[:-1] < r.nodes).all() and (r.nodes < r_up.nodes[1:]).all()):
            violations.append(f"interlacing n={n} a={a:.3f} b={b:.3f}")

        # scale invariance of the symmetric normalization
        if trial % 10 == 0:
            lam = float(rng.uniform(-0.99, 8.0))
            m = 3
            nodes = np.sort(rng.uniform(0.05, 0.95, size=m))
            scaled = rng.uniform(0.5, 2.0, size=m)
            w1, _ = normalize_symmetric(nodes, scaled, lam, False, False)
            w2, _ = normalize_symmetric(nodes, scaled * 37.5, lam, False, False)
            if np.abs(w1 / w2 - 1.0).max() > 4 * EPS:
                violations.append(f"scale invariance lam={lam:.3f}")

        # monotone bracketing of the iterates toward the first node
        if trial % 20 == 0:
            nn = 6
            pp = make_params(nn, a, b)

            def ytilde(x):
                return ((1 - x) ** ((a + 1) / 2) * (1 + x) ** ((b + 1) / 2)
                        * _jacobi_direct(nn, a, b, x))

            def state_at(x):
                h = 1e-7
                yv = ytilde(x)
                return SweepState(x, yv, (ytilde(x + h) - ytilde(x - h)) / (2 * h))

            gw = golub_welsch(pp)
            targets = gw.nodes[gw.nodes > pp.x_e]
            if len(targets):
                target = targets[0]
                x = pp.x_e + 0.2 * (target - pp.x_e)
                st = state_at(x)
                sign0 = math.copysign(1.0, st.y)
                for _ in range(8):
                    xn = step_tanh(pp, state_at(x))
                    if not xn > x:
                        violations.append(f"monotone n={nn} a={a:.3f} b={b:.3f}")
                        break
                    if xn > target + 1e-9:
                        violations.append(f"overshoot n={nn} a={a:.3f} b={b:.3f}")
                        break
                    x = xn
                    if abs(ytilde(x)) > 1e-12 and math.copysign(1.0, ytilde(x)) != sign0:
                        violations.append(f"sign flip n={nn} a={a:.3f} b={b:.3f}")
                        break
                    if target - x < 1e-12:
                        break

    ok = not violations
    _report("C7 invariant suite (200 samples)", ok,
            "zero violations" if ok else "; ".join(violations[:4]))


def test_criterion_8_linear_scaling():
    t0 = time.perf_counter()
    jacobi_rule(25_000, 0.3, 1.7)
    t_small = time.perf_counter() - t0
    t0 = time.perf_counter()
    jacobi_rule(100_000, 0.3, 1.7)
    t_big = time.perf_counter() - t0
    ratio = t_big / t_small
    ok = 2.5 <= ratio <= 6.5 and t_big < 10.0
    _report("C8 linear scaling", ok,
            f"t(1e5) = {t_big:.2f}s, t(2.5e4) = {t_small:.2f}s, ratio {ratio:.2f}")
