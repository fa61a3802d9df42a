"""Exit criteria for the package, one test per criterion.

Each test appends a PASS/FAIL line that is echoed in the terminal summary.
Run just these with ``pytest tests/test_acceptance.py -v``.
"""
import json
import math
import time

import numpy as np
import pytest
from scipy.integrate import quad

from conftest import ACCEPTANCE_LINES
from scsa import cli
from scsa.discretization import fourier_d2
from scsa.eigensolver import count_below, decompose
from scsa.grid import make_grid, sech2_signal, window_from_lambda
from scsa.reconstruction import (ReconstructionParams, c_gamma, classical_constant,
                                 classical_riesz_integral, reconstruct, reconstruct_zero,
                                 riesz_mean)
from scsa.validation import (convergence_order, gram_deviation, max_residual,
                             poschl_teller_spectrum, relative_error, weyl_count_residual)


def report(tag, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {tag}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_c1_poschl_teller_oracle():
    t0 = time.perf_counter()
    d = decompose(sech2_signal(make_grid(0, 10, 1024), 5.0), 0.1)
    elapsed = time.perf_counter() - t0
    pt = poschl_teller_spectrum(0.1)
    deep = pt[pt < -0.05]
    err = float(np.abs(d.eigenvalues[: deep.size] - deep).max())
    ok = err <= 1e-3 and d.N_h == 10 and elapsed < 60
    report(1, ok, f"max |lambda - PT| = {err:.2e} (<= 1e-3) over {deep.size} states, "
                  f"N_h = {d.N_h} (== 10), {elapsed:.1f} s (< 60 s)")


def test_c2_weyl_count(sech2_decomps, sech2):
    target = quad(lambda x: 1 / math.cosh(x - 5), 0, 10, epsabs=1e-13)[0] / math.pi
    parts, ok = [], True
    for h in (0.1, 0.05, 0.02):
        d = sech2_decomps(h)
        dev = abs(h * d.N_h - target)
        assert abs(weyl_count_residual(d, sech2, 0.0)) == pytest.approx(dev, abs=1e-6)
        ok &= dev <= 0.05
        parts.append(f"h={h:g}: N={d.N_h}, |hN - I|={dev:.4f}")
    report(2, ok, "; ".join(parts) + " (each <= 0.05)")


@pytest.mark.parametrize("gamma", [0.0, 0.5, 1.0])
def test_c3_riesz_mean_order(sech2_decomps, sech2, gamma):
    hs = (0.1, 0.05, 0.025)
    errs = [abs(h * riesz_mean(sech2_decomps(h), -0.5, gamma)
                - classical_riesz_integral(sech2, -0.5, gamma)) for h in hs]
    fit = convergence_order(hs, errs)
    need = 1 + gamma - 0.5
    ok = fit.order >= need and fit.r_squared >= 0.9
    report(f"3 (gamma={gamma:g})", ok,
           f"errors {['%.3e' % e for e in errs]}, order {fit.order:.3f} (>= {need:g}), "
           f"r^2 {fit.r_squared:.3f} (>= 0.9)")


@pytest.mark.slow
def test_c4_reconstruction_convergence(sech2_decomps):
    sups = []
    for h in (0.1, 0.01, 0.001):
        d = sech2_decomps(h, 4096)
        K = window_from_lambda(d.signal, -0.5)
        rec = reconstruct(d, ReconstructionParams(h, 0.5, -0.5, K))
        sups.append(relative_error(rec, d.signal, K).sup_rel)
    ok = sups[0] > sups[1] > sups[2] and sups[2] <= 0.02
    report(4, ok, f"sup_rel at h=0.1, 0.01, 0.001 (M=4096): "
                  f"{sups[0]:.3e} > {sups[1]:.3e} > {sups[2]:.3e}, last <= 0.02")


def test_c5_gamma2_order(sech2_decomps, sech2):
    hs = (0.1, 0.05, 0.025)

    def sup_errors(margin):
        K = window_from_lambda(sech2, -0.5, margin)
        return [relative_error(reconstruct(sech2_decomps(h), ReconstructionParams(h, 2.0, -0.5, K)),
                               sech2, K).sup_rel for h in hs]

    # K = {y > 0.6}: compact inside the allowed region {y > 0.5}
    fit = convergence_order(hs, sup_errors(0.1))
    edge = convergence_order(hs, sup_errors(None))
    ok = 1.5 <= fit.order <= 2.5
    report(5, ok, f"order {fit.order:.3f} in [1.5, 2.5] on K={{y > 0.6}} "
                  f"(r^2 {fit.r_squared:.3f}; default 2% margin window gives {edge.order:.3f})")


def test_c6_formula_identity(sech2_decomps):
    worst = 0.0
    for h in (0.1, 0.05):
        d = sech2_decomps(h)
        r4 = reconstruct(d, ReconstructionParams(h, 0.5, 0.0))
        worst = max(worst, float(np.abs(r4.values - reconstruct_zero(d).values).max()))
    report(6, worst <= 1e-12, f"max |y_(1/2)(x,0) - y_h(x,0)| = {worst:.1e} (<= 1e-12)")


def test_c7_constants():
    e0 = abs(classical_constant(0.0) - 1 / math.pi)
    e12 = abs(classical_constant(0.5) - 0.25)
    quad_err = 0.0
    for g in (0.0, 0.5, 1.0, 2.0):
        integral = quad(lambda e: (1 - e * e) ** g, -1, 1, epsabs=1e-13, epsrel=1e-13)[0]
        quad_err = max(quad_err, abs(c_gamma(g) - integral),
                       abs(2 * math.pi * classical_constant(g) - integral))
    ok = e0 <= 1e-12 and e12 <= 1e-12 and quad_err <= 1e-8
    report(7, ok, f"|L_0 - 1/pi| = {e0:.1e}, |L_1/2 - 1/4| = {e12:.1e} (<= 1e-12); "
                  f"c_gamma vs quadrature {quad_err:.1e} (<= 1e-8)")


def test_c8_numerical_hygiene(sech2_decomps, sech2):
    d2_err = 0.0
    for M, L in ((64, 10.0), (256, 10.0), (1024, 10.0)):
        g = make_grid(0, L, M)
        D = fourier_d2(g)
        for k in range(-M // 2 + 1, M // 2):
            f = np.exp(2j * np.pi * k * g.x / L)
            lam = -(2 * np.pi * k / L) ** 2
            d2_err = max(d2_err, float(np.abs(D @ f - lam * f).max()) / max(1.0, abs(lam)))
    gram = max(gram_deviation(sech2_decomps(h)) for h in (0.1, 0.05))
    resid = max(max_residual(sech2_decomps(h)) for h in (0.1, 0.05))
    d = sech2_decomps(0.1)
    shift = float(np.abs(decompose(sech2.shifted(0.5), 0.1).eigenvalues
                         - (d.eigenvalues - 0.5)).max())
    ok = d2_err <= 1e-9 and gram <= 1e-8 and resid <= 1e-7 and shift <= 1e-9
    report(8, ok, f"D2 exactness {d2_err:.1e} (<= 1e-9), Gram {gram:.1e} (<= 1e-8), "
                  f"residual/radius {resid:.1e} (<= 1e-7), shift {shift:.1e} (<= 1e-9)")


def test_c9_lambda_economy(beat):
    h = 0.1
    d = decompose(beat, h)
    n0 = count_below(d, 0.0)
    found = []
    for lam in (-60.0, -65.0, -70.0, -75.0, -80.0, -85.0, -90.0):
        K = window_from_lambda(beat, lam)
        sup = relative_error(reconstruct(d, ReconstructionParams(h, 0.5, lam, K)), beat, K).sup_rel
        sup0 = relative_error(reconstruct(d, ReconstructionParams(h, 0.5, 0.0, K)), beat, K).sup_rel
        n = count_below(d, lam)
        if n <= 0.5 * n0 and sup <= 2 * sup0:
            found.append(f"lambda={lam:g}: N={n}/{n0}, sup {sup:.2e} vs {sup0:.2e}")
    report(9, bool(found), "; ".join(found) if found else f"no lambda qualifies (N_h,0={n0})")


def test_c10_cli_determinism(tmp_path):
    cfg = {"input": "sech2", "h_list": [0.1, 0.05, 0.025], "lambda_list": [0.0, -0.5],
           "gamma_list": [0.5, 1.0, 2.0], "M": 512, "window": "auto", "emit_svg": False}
    outputs = []
    for run in ("a", "b"):
        p = tmp_path / f"{run}.json"
        p.write_text(json.dumps({**cfg, "output_dir": str(tmp_path / run)}))
        assert cli.main(["sweep", "--config", str(p)]) == 0
        outputs.append({f.name: f.read_bytes() for f in sorted((tmp_path / run).glob("*.csv"))})
    ok = outputs[0] == outputs[1] and len(outputs[0]) > 3
    report(10, ok, f"{len(outputs[0])} CSV files byte-identical across two sweep runs")
