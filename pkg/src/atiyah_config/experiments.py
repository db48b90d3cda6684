"""Configuration samplers, batch verification and a |D| minimizer.

Every sampled configuration ``k`` draws from its own generator stream
``Xoshiro256(seed, k)``, and every minimizer restart ``r`` from stream
``Xoshiro256(seed, r)``. Results therefore do not depend on how work is
split across processes, and any single item can be regenerated alone.
"""
import logging
import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import gram3, gram4, kernels
from .atiyah import Configuration, analyze, assign_lifts, gram_matrix
from .errors import AtiyahError, InvalidSpec
from .linalg import determinant, eig_hermitian, permanent
from .rng import Xoshiro256
from .symtensor import gram_constant

log = logging.getLogger(__name__)

KINDS = ("uniform-box", "gaussian", "near-collinear", "clustered")
SUITES = ("gram3", "gram4", "bridge", "conjectures", "all")
CSV_COLUMNS = ("n", "absD", "detH", "minEig", "conj1_margin", "conj2_margin", "max_residual")


@dataclass(frozen=True)
class SamplerSpec:
    """What to sample.

    ``jitter`` is the perpendicular noise scale for ``near-collinear`` and
    the separation scale of the tight pairs for ``clustered``.
    """

    kind: str
    n: int
    count: int
    seed: int
    jitter: float = 1e-4

    def validate(self):
        if self.kind not in KINDS:
            raise InvalidSpec(f"unknown kind {self.kind!r}; choose from {KINDS}")
        if self.n < 2:
            raise InvalidSpec("n must be at least 2")
        if self.count < 1:
            raise InvalidSpec("count must be at least 1")
        if self.kind in ("near-collinear", "clustered") and not self.jitter > 0:
            raise InvalidSpec("jitter must be positive")


def _draw(kind, n, jitter, g):
    if kind == "uniform-box":
        return g.uniform(-1.0, 1.0, 3 * n).reshape(n, 3)
    if kind == "gaussian":
        return g.normals(3 * n).reshape(n, 3)
    if kind == "near-collinear":
        d = g.unit_vector()
        base = g.uniform(-1.0, 1.0, 3)
        t = g.uniform(-1.0, 1.0, n)
        noise = g.normals(3 * n).reshape(n, 3)
        noise -= np.outer(noise @ d, d)
        return base + np.outer(t, d) + jitter * noise
    # clustered: each point after the first either starts afresh or sits
    # at distance ~jitter from a random earlier point
    pts = np.empty((n, 3))
    pts[0] = g.uniform(-1.0, 1.0, 3)
    for i in range(1, n):
        if g.random() < 0.5:
            anchor = pts[g.integer(i)]
            pts[i] = anchor + jitter * (0.5 + g.random()) * g.unit_vector()
        else:
            pts[i] = g.uniform(-1.0, 1.0, 3)
    return pts


def sample_one(spec, index):
    g = Xoshiro256(spec.seed, index)
    while True:
        try:
            return Configuration(_draw(spec.kind, spec.n, spec.jitter, g))
        except AtiyahError:
            continue


def sample(spec):
    """Deterministic list of ``spec.count`` valid configurations."""
    spec.validate()
    return [sample_one(spec, k) for k in range(spec.count)]


def _gram3_residuals(c, rep, h):
    t = gram3.triangle_scalars(c)
    s = t.S
    m = h - np.eye(3)
    return {
        "d_equals_half_s": abs(rep.D - s / 2.0),
        "det_h3": abs(rep.detH - s * s) / max(1.0, s * s),
        "det_h3_minus_1": abs(determinant(m).real - (s - 2.0) * (s - 1.0)),
        "coplanarity": abs(float(np.linalg.det(gram3.edge_gram(t)))),
        "identity": abs(gram3.identity_residual(t)),
        "bounds": max(0.0, 2.0 - s, s - 2.25),
        "lemma_psd": max(0.0, -eig_hermitian(m).min),
    }


def _gram4_residuals(c, h):
    lifts = assign_lifts(c)
    dec = gram4.build_decomposition(c, lifts)
    s = gram4.gram4_scalars(c, lifts)
    det_at = determinant(dec.Atilde[3]).real
    t_dets = []
    perm_err = 0.0
    for i in range(4):
        for j in range(4):
            t = gram4.mixed_gram(lifts, i, j)
            t_dets.append(abs(determinant(t)))
            perm_err = max(perm_err, abs(permanent(t) - h[i, j]))
    return {
        "decomposition": dec.residual,
        "A_psd": max(0.0, -min(eig_hermitian(a).min for a in dec.Atilde)),
        "closed_form": abs(det_at - gram4.det_A4_closed_form(s)) / max(1.0, abs(det_at)),
        "identity2": abs(4 * np.prod([1 - m for m in s.mu]) - (s.S - 2.0) ** 2),
        "T_singular": max(t_dets),
        "perm_vs_pipeline": perm_err / max(1.0, float(np.max(np.abs(h)))),
    }


def verify_one(c, suite="all"):
    """Report, margins and identity residuals for one configuration."""
    if suite not in SUITES:
        raise InvalidSpec(f"unknown suite {suite!r}; choose from {SUITES}")
    rep = analyze(c)
    residuals = {}
    if suite in ("bridge", "all"):
        residuals["bridge"] = abs(rep.detH - rep.c_n * rep.absD**2) / max(1.0, rep.detH)
    if suite in ("gram3", "all") and c.n == 3:
        residuals.update(_gram3_residuals(c, rep, gram_matrix(c)))
    if suite in ("gram4", "all") and c.n == 4:
        residuals.update(_gram4_residuals(c, gram_matrix(c)))
    return {
        "n": c.n,
        "absD": rep.absD,
        "detH": rep.detH,
        "minEig": rep.minEig,
        "conj1_margin": rep.conjecture1_margin,
        "conj2_margin": rep.conjecture2_margin,
        "max_residual": max(residuals.values(), default=0.0),
        "residuals": residuals,
    }


def _verify_chunk(args):
    configs, suite, start = args
    out = []
    for k, c in enumerate(configs):
        try:
            out.append(verify_one(c, suite))
        except (AtiyahError, ArithmeticError, ValueError) as exc:
            out.append({"index": start + k, "error": f"{type(exc).__name__}: {exc}"})
    return out


@dataclass
class BatchResult:
    records: list
    summary: dict = field(default_factory=dict)


def summarize(records, tol=1e-9):
    good = [r for r in records if "error" not in r]
    residual_max = {}
    for r in good:
        for name, v in r["residuals"].items():
            residual_max[name] = max(residual_max.get(name, 0.0), v)
    min1 = min((r["conj1_margin"] for r in good), default=math.nan)
    min2 = min((r["conj2_margin"] for r in good), default=math.nan)
    violations = sum(1 for r in good if r["conj1_margin"] < -tol or r["conj2_margin"] < -tol)
    return {
        "count": len(records),
        "errors": len(records) - len(good),
        "min_conj1_margin": min1,
        "min_conj2_margin": min2,
        "max_residual": max(residual_max.values(), default=0.0),
        "residuals": residual_max,
        "violations": violations,
        "tol": tol,
    }


def verify_batch(configs, suite="all", tol=1e-9, workers=1):
    """Run :func:`verify_one` over ``configs``; per-item failures are recorded, not raised."""
    configs = list(configs)
    if not configs:
        raise InvalidSpec("empty configuration list")
    if suite not in SUITES:
        raise InvalidSpec(f"unknown suite {suite!r}; choose from {SUITES}")
    if workers <= 1:
        records = _verify_chunk((configs, suite, 0))
    else:
        size = math.ceil(len(configs) / workers)
        chunks = [(configs[s:s + size], suite, s) for s in range(0, len(configs), size)]
        with ProcessPoolExecutor(workers) as pool:
            records = [r for part in pool.map(_verify_chunk, chunks) for r in part]
    return BatchResult(records, summarize(records, tol))


# --- minimization -----------------------------------------------------------

REFLECT, EXPAND, CONTRACT, SHRINK = 1.0, 2.0, 0.5, 0.5
INITIAL_STEP = 0.1
DIAMETER_TOL = 1e-10
MAX_EVALS = 100_000
COINCIDENT_REL_TOL = 1e-9


def gauge_fix(x, n):
    """Recenter on the centroid and scale to unit RMS radius."""
    p = x.reshape(n, 3)
    p = p - p.mean(axis=0)
    rms = math.sqrt(float(np.mean(np.sum(p * p, axis=1))))
    return (p / rms).ravel()


def abs_d_objective(x, n):
    """``|D|`` of the points packed in ``x``; ``inf`` outside the configuration space."""
    p = np.ascontiguousarray(x.reshape(n, 3))
    diff = p[:, None, :] - p[None, :, :]
    dist = np.sqrt(np.sum(diff * diff, axis=-1))
    off = dist[~np.eye(n, dtype=bool)]
    if not np.all(np.isfinite(off)) or off.min() < COINCIDENT_REL_TOL * off.max():
        return math.inf
    cm, _ = kernels.config_matrices(p)
    return abs(determinant(cm))


@dataclass
class MinimizeResult:
    bestConfig: Configuration
    bestAbsD: float
    iterations: int
    restarts: int
    converged: bool
    evaluations: int = 0


def nelder_mead(f, x0, n, max_evals=MAX_EVALS, step=INITIAL_STEP, diameter_tol=DIAMETER_TOL):
    """Nelder-Mead on gauge-fixed points; returns ``(x, fx, iterations, evals, converged)``.

    Every trial vertex is passed through :func:`gauge_fix` before it is
    evaluated and stored.
    """
    dim = x0.size
    simplex = [gauge_fix(x0, n)]
    for k in range(dim):
        v = simplex[0].copy()
        v[k] += step
        simplex.append(gauge_fix(v, n))
    fvals = [f(v) for v in simplex]
    evals = len(simplex)
    iterations = 0
    converged = False

    def trial(x):
        nonlocal evals
        x = gauge_fix(x, n)
        evals += 1
        return x, f(x)

    while evals < max_evals:
        order = np.argsort(fvals, kind="stable")
        simplex = [simplex[i] for i in order]
        fvals = [fvals[i] for i in order]
        best = simplex[0]
        diameter = max(float(np.linalg.norm(v - best)) for v in simplex[1:])
        if diameter < diameter_tol:
            converged = True
            break
        iterations += 1
        centroid = np.mean(simplex[:-1], axis=0)
        worst, fworst = simplex[-1], fvals[-1]
        xr, fr = trial(centroid + REFLECT * (centroid - worst))
        if fr < fvals[0]:
            xe, fe = trial(centroid + EXPAND * (xr - centroid))
            simplex[-1], fvals[-1] = (xe, fe) if fe < fr else (xr, fr)
            continue
        if fr < fvals[-2]:
            simplex[-1], fvals[-1] = xr, fr
            continue
        if fr < fworst:
            xc, fc = trial(centroid + CONTRACT * (xr - centroid))
            accept = fc <= fr
        else:
            xc, fc = trial(centroid + CONTRACT * (worst - centroid))
            accept = fc < fworst
        if accept:
            simplex[-1], fvals[-1] = xc, fc
            continue
        for i in range(1, len(simplex)):
            simplex[i], fvals[i] = trial(best + SHRINK * (simplex[i] - best))
    i = int(np.argmin(fvals))
    return simplex[i], fvals[i], iterations, evals, converged


def _restart(args):
    n, seed, r, max_evals = args
    g = Xoshiro256(seed, r)
    while True:
        x0 = g.normals(3 * n)
        if math.isfinite(abs_d_objective(gauge_fix(x0, n), n)):
            break
    return nelder_mead(lambda x: abs_d_objective(x, n), x0, n, max_evals=max_evals)


def minimize_absD(n, restarts=4, seed=0, max_evals=MAX_EVALS, workers=1):
    """Search for configurations of ``n`` points with small ``|D|``.

    Runs ``restarts`` independent Nelder-Mead searches over the ``3n``
    coordinates (each capped at ``max_evals`` evaluations) and keeps the best.
    """
    if not 2 <= n <= 8:
        raise InvalidSpec("n must lie in 2..8")
    if restarts < 1:
        raise InvalidSpec("restarts must be at least 1")
    jobs = [(n, seed, r, max_evals) for r in range(restarts)]
    if workers <= 1:
        runs = [_restart(j) for j in jobs]
    else:
        with ProcessPoolExecutor(workers) as pool:
            runs = list(pool.map(_restart, jobs))
    best = min(range(restarts), key=lambda r: (runs[r][1], r))
    x, fx, _, _, _ = runs[best]
    result = MinimizeResult(
        bestConfig=Configuration(x.reshape(n, 3)),
        bestAbsD=float(fx),
        iterations=sum(r[2] for r in runs),
        restarts=restarts,
        converged=any(r[4] for r in runs),
        evaluations=sum(r[3] for r in runs),
    )
    if result.bestAbsD < 1.0 - 1e-6:
        msg = f"|D| = {result.bestAbsD!r} < 1 found for n = {n}: possible counterexample to |D| >= 1"
        log.error(msg)
        warnings.warn(msg, RuntimeWarning, stacklevel=2)
    return result
