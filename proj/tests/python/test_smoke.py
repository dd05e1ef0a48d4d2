import math

import numpy as np
import pytest

import hardy_rkhs as h


def test_kernel_values():
    assert h.szego(1j, 1j) == pytest.approx(1 / (4 * math.pi))
    assert h.szego_re(1 + 1j, 1j) == pytest.approx(1 / (5 * math.pi))
    dx, dy = h.szego_re_grad(0.3 + 0.7j, -1 + 2j)
    eps = 1e-6
    fx = (h.szego_re(0.3 + eps + 0.7j, -1 + 2j) - h.szego_re(0.3 - eps + 0.7j, -1 + 2j)) / (2 * eps)
    assert dx == pytest.approx(fx, rel=1e-6)


def test_single_sample_closed_form():
    prob = h.DirichletProblem([h.BoundarySample(1j, 1.0, 1.0)], 0.01)
    sol = h.solve_recursive(prob)
    c = 1 / (0.01 + 1 / (4 * math.pi))
    assert sol.coeffs[0] == pytest.approx(c, rel=1e-12)
    assert h.evaluate(sol, 1j) == pytest.approx(0.8884, abs=1e-4)
    assert h.boundary_residual(prob, sol)["max"] == pytest.approx(0.1116, abs=1e-4)


def test_recursive_matches_numpy_solve():
    rng = np.random.default_rng(1)
    pts = rng.uniform(-3, 3, 25) + 1j * rng.uniform(0.2, 4, 25)
    vals = rng.uniform(-1, 1, 25)
    w = rng.uniform(0.1, 2, 25)
    lam = 0.03
    prob = h.DirichletProblem([h.BoundarySample(z, a, b) for z, a, b in zip(pts, vals, w)], lam)
    m = np.array([[((1j / (2 * math.pi)) / (zi - np.conj(zj))).real for zj in pts] for zi in pts])
    expect = np.linalg.solve(lam * np.eye(25) + np.diag(w) @ m, w * vals)
    got = np.asarray(h.solve_recursive(prob).coeffs)
    assert np.max(np.abs(got - expect)) / (1 + np.max(np.abs(expect))) < 1e-9
    assert np.allclose(h.gram_matrix(prob), m, rtol=1e-14, atol=0)


def test_continuation_and_errors():
    prob = h.DirichletProblem([h.BoundarySample(1j, 1.0, 1.0)], 1.0)
    steps = h.continuation(prob, [1e-1, 1e-2, 1e-3])
    assert [round(s["max"], 3) for s in steps] == [0.557, 0.112, 0.012]
    with pytest.raises(ValueError):
        h.continuation(prob, [1e-2, 1e-2])
    with pytest.raises(ValueError):
        h.DirichletProblem([], 1.0)
    with pytest.raises(ValueError):
        h.BoundarySample(1 - 1j, 1.0, 1.0)


def test_press_pipeline():
    m = h.fit_map(h.quadratic_press(0.25))
    x, y = h.apply(m, (0.5, 0.5))
    assert x == pytest.approx(0.5, abs=0.02)
    assert 0.375 < y < 0.5
    target = h.apply(m, (0.3, 0.6))
    p = h.invert_point(m, target, (0.35, 0.57))
    assert p == pytest.approx((0.3, 0.6), abs=1e-8)
    assert h.jacobian(m, (0.5, 0.5)).det > 0

    img = h.make_grid_image(8, 128)
    assert img.shape == (128, 128) and img.dtype == np.uint8
    dist, stats = h.warp_image(m, img)
    assert stats["pixels"] == 128 * 128
    assert stats["failed"] <= stats["pixels"] // 100
    rec, _ = h.recover_image(m, dist)
    assert h.metrics(img, rec, 0.9)["exact_match_fraction"] >= 0.95


def test_folded_map_raises():
    src = [(k / 4, 0) for k in range(4)] + [(1, k / 4) for k in range(4)]
    src += [(1 - k / 4, 1) for k in range(4)] + [(0, 1 - k / 4) for k in range(4)]
    m = h.fit_map(h.BoundaryCorrespondence(src, [(1 - a, b) for a, b in src]))
    with pytest.raises(h.SingularJacobianError):
        h.invert_point(m, (0.3, 0.4), (0.5, 0.5))


def test_pgm_round_trip():
    rng = np.random.default_rng(2)
    img = rng.integers(0, 16, size=(7, 11), dtype=np.uint8)
    data = h.write_pgm(img, 16)
    assert data.startswith(b"P5 11 7 15\n")
    back, levels = h.read_pgm(data)
    assert levels == 16
    assert np.array_equal(back, img)
    with pytest.raises(h.PgmError):
        h.read_pgm(b"P5 5 2 255\n" + bytes(9))
