from itertools import combinations

import numpy as np
import pytest
from numpy.testing import assert_allclose

from atiyah_config import Configuration, analyze
from atiyah_config.errors import InvalidSpec
from atiyah_config.experiments import (
    SamplerSpec,
    abs_d_objective,
    gauge_fix,
    minimize_absD,
    nelder_mead,
    sample,
    verify_batch,
    verify_one,
)
from atiyah_config.gram4 import collinearity_ratio


def altitude_over_diameter(p):
    e1, e2 = p[1] - p[0], p[2] - p[0]
    sides = [np.linalg.norm(e1), np.linalg.norm(e2), np.linalg.norm(p[2] - p[1])]
    return np.linalg.norm(np.cross(e1, e2)) / max(sides) ** 2


class TestSample:
    def test_deterministic(self):
        spec = SamplerSpec("uniform-box", 4, 1, 42)
        assert np.array_equal(sample(spec)[0].points, sample(spec)[0].points)

    def test_prefix_stable(self):
        short = sample(SamplerSpec("gaussian", 3, 3, 9))
        long = sample(SamplerSpec("gaussian", 3, 10, 9))
        for a, b in zip(short, long):
            assert np.array_equal(a.points, b.points)

    @pytest.mark.parametrize("kind", ["uniform-box", "gaussian", "near-collinear", "clustered"])
    def test_kinds(self, kind):
        cs = sample(SamplerSpec(kind, 5, 20, 1, 1e-6))
        assert len(cs) == 20
        assert all(isinstance(c, Configuration) and c.n == 5 for c in cs)

    def test_near_collinear(self):
        for c in sample(SamplerSpec("near-collinear", 5, 50, 3, 1e-8)):
            for t in combinations(range(5), 3):
                assert altitude_over_diameter(c.points[list(t)]) < 1e-6

    def test_clustered_has_tight_pairs(self):
        cs = sample(SamplerSpec("clustered", 6, 50, 4, 1e-6))
        closest = [np.min(np.linalg.norm(c.points[:, None] - c.points[None], axis=-1) + np.eye(6) * 9) for c in cs]
        assert np.mean(np.array(closest) < 1e-5) > 0.5

    def test_two_points_have_unit_d(self):
        for c in sample(SamplerSpec("gaussian", 2, 20, 5)):
            assert_allclose(analyze(c).absD, 1.0, atol=1e-14)

    @pytest.mark.parametrize(
        "spec",
        [
            SamplerSpec("cube", 3, 1, 0),
            SamplerSpec("gaussian", 1, 1, 0),
            SamplerSpec("gaussian", 3, 0, 0),
            SamplerSpec("near-collinear", 3, 1, 0, 0.0),
        ],
    )
    def test_invalid(self, spec):
        with pytest.raises(InvalidSpec):
            sample(spec)


class TestVerify:
    def test_triangles(self):
        r = verify_batch(sample(SamplerSpec("uniform-box", 3, 1000, 11)), "all")
        assert r.summary["errors"] == 0
        assert r.summary["min_conj2_margin"] >= -1e-9
        assert r.summary["residuals"]["d_equals_half_s"] <= 1e-10
        assert r.summary["violations"] == 0

    def test_four_points(self):
        r = verify_batch(sample(SamplerSpec("uniform-box", 4, 1000, 12)), "gram4")
        assert r.summary["residuals"]["decomposition"] <= 1e-10

    def test_near_collinear_four(self):
        r = verify_batch(sample(SamplerSpec("near-collinear", 4, 1000, 13, 1e-8)), "conjectures")
        assert r.summary["min_conj1_margin"] > 0

    def test_errors_are_collected(self, monkeypatch):
        from atiyah_config import experiments

        def boom(c, suite):
            raise ArithmeticError("no convergence")

        monkeypatch.setattr(experiments, "verify_one", boom)
        r = experiments.verify_batch(sample(SamplerSpec("gaussian", 3, 2, 0)))
        assert r.summary["errors"] == 2
        assert r.records[1] == {"index": 1, "error": "ArithmeticError: no convergence"}

    def test_empty(self):
        with pytest.raises(InvalidSpec):
            verify_batch([])

    def test_bad_suite(self, tetrahedron):
        with pytest.raises(InvalidSpec):
            verify_one(tetrahedron, "everything")

    def test_workers_match_sequential(self):
        cs = sample(SamplerSpec("gaussian", 4, 12, 2))
        a = verify_batch(cs, workers=1).summary
        b = verify_batch(cs, workers=2).summary
        assert a == b


class TestMinimize:
    def test_gauge_fix(self, rng):
        x = gauge_fix(rng.normal(size=12) * 7 + 3, 4).reshape(4, 3)
        assert_allclose(x.mean(axis=0), 0, atol=1e-14)
        assert_allclose(np.mean(np.sum(x * x, axis=1)), 1.0)

    def test_objective_rejects_coincident(self):
        x = np.array([0, 0, 0, 1, 0, 0, 1 + 1e-12, 0, 0.0])
        assert abs_d_objective(x, 3) == np.inf

    def test_nelder_mead_quadratic(self):
        target = gauge_fix(np.arange(6.0), 2)
        x, fx, _, _, ok = nelder_mead(lambda v: float(np.sum((v - target) ** 2)), np.ones(6) + np.arange(6), 2)
        assert ok and fx < 1e-12

    def test_two_points(self):
        r = minimize_absD(2, restarts=1, seed=0)
        assert r.bestAbsD == pytest.approx(1.0, abs=1e-14)

    @pytest.mark.parametrize("n, tol", [(3, 1e-6), (4, 1e-5)])
    def test_reaches_collinear_minimum(self, n, tol):
        r = minimize_absD(n, restarts=2, seed=1)
        assert abs(r.bestAbsD - 1) <= tol
        assert r.converged
        p = r.bestConfig.points
        assert max(collinearity_ratio(p[list(t)]) for t in combinations(range(n), 3)) < 1e-3
        assert abs(analyze(r.bestConfig).absD - r.bestAbsD) <= 1e-12

    def test_deterministic(self):
        a = minimize_absD(3, restarts=1, seed=5, max_evals=300)
        b = minimize_absD(3, restarts=1, seed=5, max_evals=300)
        assert a.bestAbsD == b.bestAbsD
        assert np.array_equal(a.bestConfig.points, b.bestConfig.points)

    def test_eval_cap(self):
        r = minimize_absD(4, restarts=1, seed=0, max_evals=50)
        assert r.evaluations <= 50 + 13
        assert not r.converged

    @pytest.mark.parametrize("n", [1, 9])
    def test_bad_n(self, n):
        with pytest.raises(InvalidSpec):
            minimize_absD(n)

    def test_warns_below_one(self, monkeypatch):
        from atiyah_config import experiments

        monkeypatch.setattr(experiments, "abs_d_objective", lambda x, n: 0.5)
        with pytest.warns(RuntimeWarning, match="counterexample"):
            experiments.minimize_absD(2, restarts=1, max_evals=20)
