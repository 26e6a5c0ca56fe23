import numpy as np
import pytest

from wigmix import core


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)


def grid_points(lim, n):
    """Square (n*n, 2) grid over [-lim, lim]^2, plus the 1-D axes."""
    q = np.linspace(-lim, lim, n)
    p = np.linspace(-lim, lim, n)
    qq, pp = np.meshgrid(q, p, indexing="ij")
    return np.stack([qq.reshape(-1), pp.reshape(-1)], axis=1), q, p


def quadrature_2d(f, lim, n=401):
    """Simpson quadrature of f(points) over [-lim, lim]^2; oracle-grade only."""
    from scipy.integrate import simpson

    pts, q, p = grid_points(lim, n)
    vals = np.asarray(f(pts)).reshape(n, n)
    return simpson(simpson(vals, x=p, axis=1), x=q, axis=0)


def random_real_pd_cov(rng, dim=2, scale=1.0):
    a = rng.normal(size=(dim, dim))
    return scale * (a @ a.T + dim * np.eye(dim))


def wigner_on_grid(state, lim, n):
    pts, q, p = grid_points(lim, n)
    w = core.wigner_many(state, pts)
    return w.reshape(n, n), q, p
