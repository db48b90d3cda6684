"""Acceptance gate: one test per criterion, at the stated sizes and tolerances.

Each test records a ``PASS``/``FAIL`` line (printed immediately and again in
the terminal summary) before asserting.
"""
import time
from itertools import combinations, permutations

import numpy as np
import pytest

from atiyah_config import Configuration, analyze, atiyah_D, classic_D, kernels
from atiyah_config.experiments import SamplerSpec, minimize_absD, sample
from atiyah_config.gram3 import edge_gram, identity_residual, triangle_scalars
from atiyah_config.gram4 import (
    build_decomposition,
    collinearity_ratio,
    det_A4_closed_form,
    gram4_scalars,
)
from atiyah_config.linalg import determinant, eig_hermitian
from atiyah_config.spinor import SIGMA, herm, modified_hopf, quaternionic, rho, three_cycle, three_cycle_direct

from conftest import ACCEPTANCE_LINES, random_unit_spinors


def report(number, ok, detail, started):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail} ({time.perf_counter() - started:.1f}s)"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def uniform_configs(rng, n, count):
    out = []
    while len(out) < count:
        try:
            out.append(Configuration(rng.uniform(-1.0, 1.0, size=(n, 3))))
        except ValueError:
            continue
    return out


def triangles_with_collinear_limits(rng, count):
    out = []
    for k in range(count):
        if k % 5 == 4:
            d = rng.normal(size=3)
            t = rng.uniform(-1, 1, 3)
            scale = 10.0 ** rng.uniform(-12, -4)
            out.append(Configuration(np.outer(t, d) + scale * rng.normal(size=(3, 3))))
        else:
            out.append(Configuration(rng.uniform(-1, 1, (3, 3))))
    return out


def test_criterion_1_extremal_triangles():
    t0 = time.perf_counter()
    eq = analyze(Configuration([[0, 0, 0], [1, 0, 0], [0.5, np.sqrt(3) / 2, 0]]))
    col = analyze(Configuration([[0, 0, 0], [1, 0, 0], [2.7, 0, 0]]))
    e1, e2 = abs(eq.D - 1.125), abs(col.D - 1.0)
    report(1, e1 <= 1e-10 and e2 <= 1e-10, f"|D_eq - 9/8| = {e1:.2e}, |D_col - 1| = {e2:.2e}", t0)


def test_criterion_2_bridge_identity(rng):
    t0 = time.perf_counter()
    worst = 0.0
    for n in range(2, 7):
        for c in uniform_configs(rng, n, 1000):
            r = analyze(c)
            worst = max(worst, abs(r.detH - r.c_n * r.absD**2) / max(1.0, r.detH))
    consts = (analyze(Configuration(np.eye(3))).c_n, analyze(Configuration(np.vstack([np.eye(3), np.zeros(3)]))).c_n)
    ok = worst <= 1e-8 and consts == (4, 144)
    report(2, ok, f"max rel |detH - c_n|D|^2| = {worst:.2e} over 5000 configs; c3, c4 = {consts}", t0)


def test_criterion_3_triangle_closed_forms(rng):
    t0 = time.perf_counter()
    worst = dict(detH=0.0, detHm1=0.0, bounds=0.0, detG=0.0, identity=0.0)
    for c in triangles_with_collinear_limits(rng, 10_000):
        t = triangle_scalars(c)
        s = t.S
        _, h = kernels.config_matrices(np.ascontiguousarray(c.points))
        worst["detH"] = max(worst["detH"], abs(determinant(h).real - s * s) / (s * s))
        worst["detHm1"] = max(worst["detHm1"], abs(determinant(h - np.eye(3)).real - (s - 2) * (s - 1)))
        worst["bounds"] = max(worst["bounds"], 2 - s, s - 2.25)
        worst["detG"] = max(worst["detG"], abs(np.linalg.det(edge_gram(t))))
        worst["identity"] = max(worst["identity"], abs(identity_residual(t)))
    ok = all(v <= 1e-9 for v in worst.values())
    report(3, ok, "worst " + ", ".join(f"{k}={v:.2e}" for k, v in worst.items()) + " over 10^4 triangles", t0)


def test_criterion_4_decomposition(rng):
    t0 = time.perf_counter()
    resid, min_eig = 0.0, np.inf
    for c in uniform_configs(rng, 4, 10_000):
        dec = build_decomposition(c)
        resid = max(resid, dec.residual)
        min_eig = min(min_eig, dec.min_eigenvalues().min())
    ok = resid <= 1e-10 and min_eig >= -1e-9
    report(4, ok, f"max |H4 - sum A_i| = {resid:.2e}, min eig A_i = {min_eig:.2e} over 10^4 configs", t0)


def test_criterion_5_closed_form_and_collinear_limit(rng):
    t0 = time.perf_counter()
    worst = 0.0
    for c in uniform_configs(rng, 4, 10_000):
        det = determinant(build_decomposition(c).Atilde[3]).real
        s = gram4_scalars(c)
        worst = max(worst, abs(0.5 * det - (s.S - 2) * (s.S + 2) - s.R) / max(1.0, abs(det)))
    collinear = 0.0
    for _ in range(1000):
        d = rng.normal(size=3)
        t = rng.uniform(-2, 2, 3)
        if np.min(np.abs(np.diff(np.sort(t)))) < 1e-3:
            continue
        pts = np.vstack([np.outer(t, d) + rng.normal(size=3), rng.normal(size=3)])
        collinear = max(collinear, abs(determinant(build_decomposition(Configuration(pts)).Atilde[3])))
    ok = worst <= 1e-9 and collinear <= 1e-8
    report(5, ok, f"closed-form rel err = {worst:.2e}; max |det At| on collinear families = {collinear:.2e}", t0)


def test_criterion_6_h4_positive_definite():
    t0 = time.perf_counter()
    specs = [
        SamplerSpec("uniform-box", 4, 25_000, 601),
        SamplerSpec("gaussian", 4, 25_000, 602),
        SamplerSpec("near-collinear", 4, 25_000, 603, jitter=1e-8),
        SamplerSpec("clustered", 4, 25_000, 604, jitter=1e-6),
    ]
    margins = {}
    for spec in specs:
        lo = np.inf
        for c in sample(spec):
            _, h = kernels.config_matrices(np.ascontiguousarray(c.points))
            lo = min(lo, eig_hermitian(h).min)
        margins[spec.kind] = lo
    overall = min(margins.values())
    detail = ", ".join(f"{k}: {v:.6g}" for k, v in margins.items())
    report(6, overall > 0, f"min eig H4 over 10^5 configs = {overall:.6g} ({detail})", t0)


def test_criterion_7_absD_at_least_one(rng):
    t0 = time.perf_counter()
    lows = {}
    for n in range(2, 9):
        lows[n] = min(analyze(c).absD for c in uniform_configs(rng, n, 10_000))
    sweep_ok = all(v >= 1 - 1e-9 for v in lows.values())
    mins = {}
    for n in (3, 4):
        r = minimize_absD(n, restarts=4, seed=7)
        p = r.bestConfig.points
        flat = max(collinearity_ratio(p[list(t)]) for t in combinations(range(n), 3))
        mins[n] = (r.bestAbsD, flat)
    min_ok = all(abs(d - 1) <= 1e-5 and flat < 1e-3 for d, flat in mins.values())
    detail = "min |D| by n: " + ", ".join(f"{n}: {v:.12f}" for n, v in lows.items())
    detail += "; minimizer " + ", ".join(f"n={n}: |D|={d:.12f} collinearity={f:.1e}" for n, (d, f) in mins.items())
    report(7, sweep_ok and min_ok, detail, t0)


def _lift_tables(points):
    return np.stack([kernels.lift_table(np.ascontiguousarray(p)) for p in points])


def _perm3(t):
    return sum(t[..., 0, a] * t[..., 1, b] * t[..., 2, c] for a, b, c in permutations(range(3)))


def test_criterion_8_spinor_suites(rng):
    t0 = time.perf_counter()
    count = 100_000
    a, b, c = (random_unit_spinors(rng, count) for _ in range(3))
    res = {}
    res["2-cycle"] = np.max(np.abs(np.abs(herm(a, b)) ** 2 - rho(modified_hopf(a), modified_hopf(b))))
    res["3-cycle"] = np.max(np.abs(three_cycle(a, b, c) - three_cycle_direct(a, b, c)))
    ja, jb = quaternionic(a), quaternionic(b)
    res["quaternionic"] = max(
        np.max(np.abs(herm(ja, jb) - np.conj(herm(a, b)))),
        np.max(np.abs(modified_hopf(ja) + modified_hopf(a))),
        np.max(np.abs(quaternionic(ja) + a)),
    )
    # Pauli table: sigma_j sigma_k = delta_jk + i eps_jkl sigma_l on random combinations
    x, y = rng.normal(size=(count, 3)), rng.normal(size=(count, 3))
    sx = np.einsum("nk,kij->nij", x, SIGMA[1:])
    sy = np.einsum("nk,kij->nij", y, SIGMA[1:])
    expected = np.einsum("n,ij->nij", np.sum(x * y, axis=1), SIGMA[0]) + 1j * np.einsum(
        "nk,kij->nij", np.cross(x, y), SIGMA[1:]
    )
    res["pauli"] = np.max(np.abs(sx @ sy - expected) / (1 + np.linalg.norm(x, axis=1) * np.linalg.norm(y, axis=1))[:, None, None])
    # permanent path against the pipeline, and singularity of T_ij, for every (i, j)
    pts = rng.uniform(-1, 1, size=(count, 4, 3))
    lifts = _lift_tables(pts)
    h = np.stack([kernels.config_matrices(np.ascontiguousarray(p))[1] for p in pts])
    perm_err = sing = 0.0
    for i in range(4):
        for j in range(4):
            rows = lifts[:, i, [k for k in range(4) if k != i]]
            cols = lifts[:, j, [k for k in range(4) if k != j]]
            t = herm(rows[:, :, None, :], cols[:, None, :, :])
            perm_err = max(perm_err, np.max(np.abs(_perm3(t) - h[:, i, j]) / np.maximum(1.0, np.abs(h[:, i, j]))))
            sing = max(sing, np.max(np.abs(np.linalg.det(t))))
    res["permanent"] = perm_err
    res["T_singular"] = sing
    tols = {"2-cycle": 1e-11, "3-cycle": 1e-11, "quaternionic": 1e-12, "pauli": 1e-12, "permanent": 1e-11, "T_singular": 1e-10}
    ok = all(res[k] <= tols[k] for k in tols)
    report(8, ok, "10^5 checks each: " + ", ".join(f"{k}={v:.2e}" for k, v in res.items()), t0)


def test_criterion_9_classic_vs_atiyah(rng):
    t0 = time.perf_counter()
    worst = 0.0
    for n in range(2, 6):
        for c in uniform_configs(rng, n, 1000):
            worst = max(worst, abs(abs(classic_D(c)) - abs(atiyah_D(c))))
    report(9, worst <= 1e-10, f"max ||classic_D| - |atiyah_D|| = {worst:.2e} over 4000 configs", t0)
