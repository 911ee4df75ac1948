import math

import numpy as np
import pytest

import rose


def test_bb_scalars_ordering():
    bb = rose.bb_scalars(np.array([1.0, 2.0]), np.array([3.0, 1.0]))
    assert bb.tau_s == pytest.approx(1.0)
    assert bb.tau_g == pytest.approx(math.sqrt(2.0))
    assert bb.tau_z == pytest.approx(2.0)
    assert bb.tau_s <= bb.tau_g <= bb.tau_z


def test_operator_roundtrip():
    lap = rose.five_point_laplacian(3)
    dense = lap.to_dense()
    assert dense.shape == (9, 9)
    assert np.allclose(dense, dense.T)
    v = np.arange(9.0)
    assert np.allclose(lap @ v, dense @ v)
    op = rose.SymmetricOperator.from_matrix(dense) + rose.SymmetricOperator.scaled_identity(2.0, 9)
    assert np.allclose(op.apply(v), dense @ v + 2.0 * v)


def test_minres_matches_direct_solve():
    rng = np.random.default_rng(7)
    q, _ = np.linalg.qr(rng.standard_normal((12, 12)))
    a = q @ np.diag(np.linspace(1.0, 5.0, 12)) @ q.T
    a = 0.5 * (a + a.T)
    b = rng.standard_normal(12)
    x, rep = rose.minres(rose.SymmetricOperator.from_matrix(a), b, max_iter=40, rel_tol=1e-12)
    assert rep.converged
    assert np.allclose(x, np.linalg.solve(a, b), rtol=1e-8, atol=1e-10)


def test_es_budget_steps():
    assert rose.es_budget(None, 1.0) == 10
    assert rose.es_budget(100.0, 99.999) == 50
    assert rose.es_budget(100.0, 99.95) == 30


def test_full_bounds_solve_benchmark_quickly():
    for alpha in (1e-5, 1e-3, 1e-1):
        problem = rose.quadratic_benchmark(alpha)
        cfg = rose.method_config("rose-dg-full")
        cfg.eps = 1e-13
        cfg.exact_seed_solve = True
        res = rose.minimize(problem, np.zeros(16), cfg)
        assert res.status == rose.Status.GRADIENT_TOL
        assert res.iterations <= 3
        assert np.allclose(res.x, problem.minimizer, atol=1e-8)


def test_callback_objective_with_unlimited_memory():
    c = np.array([1.0, -2.0, 0.5])
    cfg = rose.RoseConfig()
    cfg.memory = None
    cfg.eps = 1e-8
    problem = rose.CallbackObjective(
        3,
        lambda x: 0.5 * float(np.sum((x - c) ** 2 * np.array([1.0, 10.0, 100.0]))),
        lambda x: (x - c) * np.array([1.0, 10.0, 100.0]),
    )
    res = rose.minimize(problem, np.zeros(3), cfg)
    assert cfg.memory is None
    assert res.solved
    assert np.allclose(res.x, c, atol=1e-6)
    assert all(r.seed_lower <= r.seed_min <= r.seed_max <= r.seed_upper for r in res.records)


def test_toy_problem_es():
    problem = rose.toy_nonconvex(64, 1e-3)
    cfg = rose.RoseConfig()
    cfg.inner.adaptive = True
    res = rose.minimize(problem, rose.toy_start(64), cfg)
    assert res.solved
    assert res.final_value <= res.initial_value


def test_performance_profile():
    t = np.array([[1.0, 2.0], [3.0, 3.0], [np.inf, 5.0]])
    curves, dropped = rose.performance_profile(t, ["a", "b"])
    assert dropped == 0
    assert curves["a"][-1][1] == pytest.approx(2.0 / 3.0)
    assert curves["b"][-1][1] == pytest.approx(1.0)


def test_bad_config_raises():
    cfg = rose.RoseConfig()
    cfg.eps = -1.0
    with pytest.raises(ValueError):
        cfg.validate()
