import math

import pytest
from scipy import integrate
from scipy.stats import gamma as scipy_gamma

from steadychaos import GammaParams, gamma_pdf


def weighted_moment_quadrature(p: GammaParams, n: int, s: float) -> float:
    """Independent adaptive-quadrature oracle for E[X^n e^{-sX}].

    Integrates on (0, cut] where cut is the 1-1e-15 quantile of the weighted
    measure Gamma(k+n, theta/(1+s*theta)), with the peak as a break point.
    """
    scale = p.theta / (1.0 + s * p.theta)
    cut = scipy_gamma.ppf(1.0 - 1e-15, p.k + n, scale=scale)
    mode = (p.k + n - 1.0) * scale
    points = [mode] if 0.0 < mode < cut else None
    value, _ = integrate.quad(
        lambda x: x**n * math.exp(-s * x) * gamma_pdf(x, p),
        0.0,
        cut,
        limit=500,
        epsabs=0.0,
        epsrel=1e-12,
        points=points,
    )
    return value


def central_moment_quadrature(p: GammaParams, order: int) -> float:
    """Quadrature oracle for E[(X - mu)^order]; no cancellation in the integrand."""
    mu = p.k * p.theta
    cut = scipy_gamma.ppf(1.0 - 1e-15, p.k + order, scale=p.theta)
    value, _ = integrate.quad(
        lambda x: (x - mu) ** order * gamma_pdf(x, p),
        0.0,
        cut,
        limit=500,
        epsabs=0.0,
        epsrel=1e-12,
        points=[mu] if mu < cut else None,
    )
    return value


@pytest.fixture
def quad_moment():
    return weighted_moment_quadrature


@pytest.fixture
def quad_central():
    return central_moment_quadrature
