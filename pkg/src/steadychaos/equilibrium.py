"""Equilibrium growth-rate branches for the stochastic logistic and Ricker maps.

Given the shape k of the gamma-distributed stationary population and the
variance of the multiplicative noise, recover the growth rates r+/r- that
preserve the first two moments over one step, together with the implied
scale theta and the feasibility bound on the noise variance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

MapKind = Literal["logistic", "ricker"]

# Ricker root scan: step one order below the closest observed root spacing;
# the lower bracket excludes the trivial root r = 0.
RICKER_SCAN_STEP = 1e-3
RICKER_SCAN_DELTA = 1e-8
RICKER_DEFAULT_R_MAX = 10.0


class InfeasibleError(ValueError):
    """No real equilibrium exists for the requested (k, var_eps)."""

    def __init__(self, message: str, bound: float):
        super().__init__(message)
        self.bound = bound


class NoRootError(RuntimeError):
    """Root scan found no positive root in the requested interval."""

    def __init__(self, message: str, r_lo: float, r_hi: float):
        super().__init__(message)
        self.r_lo = r_lo
        self.r_hi = r_hi


@dataclass(frozen=True)
class NoiseSpec:
    """Multiplicative perturbation with mean exactly 1 and the given variance.

    Only the variance enters the equilibrium theory; the family is realized
    at simulation time (gamma or lognormal, both nonnegative support).
    """

    variance: float
    family: Literal["gamma", "lognormal"] = "gamma"

    def __post_init__(self) -> None:
        if not (self.variance >= 0 and math.isfinite(self.variance)):
            raise ValueError(f"noise variance must be finite and >= 0, got {self.variance!r}")
        if self.family not in ("gamma", "lognormal"):
            raise ValueError(f"unknown noise family {self.family!r}")


@dataclass(frozen=True)
class Branch:
    r: float
    theta: float
    label: Literal["plus", "minus"]
    degenerate: bool = False


@dataclass(frozen=True)
class EquilibriumSolution:
    map: MapKind
    k: float
    var_eps: float
    branches: tuple[Branch, ...]
    feasible: bool
    bound_var: float
    roots_beyond_rmax: bool = False


def _check_k(k: float) -> None:
    if not (k > 0 and math.isfinite(k)):
        raise ValueError(f"shape k must be finite and > 0, got {k!r}")


def _check_var(var_eps: float) -> None:
    if not (var_eps >= 0 and math.isfinite(var_eps)):
        raise ValueError(f"var_eps must be finite and >= 0, got {var_eps!r}")


# ---------------------------------------------------------------------------
# Logistic map
# ---------------------------------------------------------------------------

def logistic_feasibility(k: float, var_eps: float) -> tuple[bool, float]:
    """Real branches exist iff var_eps <= 1/(k+2) and var_eps <= 0.5."""
    _check_k(k)
    _check_var(var_eps)
    bound = min(1.0 / (k + 2.0), 0.5)
    return var_eps <= bound, bound


def logistic_quadratic_residual(r: float, k: float, var_eps: float) -> float:
    """Residual of the equilibrium quadratic in r; zero at r+/r-."""
    _check_k(k)
    return (
        (k + 3.0) * r * r
        - (4.0 * k + 8.0) * r
        + (3.0 * k + 5.0 + var_eps / (var_eps + 1.0) * (k + 1.0) ** 2)
    )


def logistic_theta(r: float, k: float) -> float:
    """Scale implied by mean stationarity: theta = (r-1)/(r(1+k))."""
    return (r - 1.0) / (r * (1.0 + k))


def logistic_solve(k: float, var_eps: float) -> EquilibriumSolution:
    """Solve for both growth-rate branches of the stochastic logistic map."""
    feasible, bound = logistic_feasibility(k, var_eps)
    if not feasible:
        raise InfeasibleError(
            f"var_eps={var_eps} exceeds feasibility bound {bound} for k={k}",
            bound=bound,
        )
    disc = (1.0 - var_eps * (k + 2.0)) / (var_eps + 1.0)
    if disc < 0.0:
        # round-off at the exact boundary
        disc = 0.0
    half_width = (k + 1.0) * math.sqrt(disc)
    branches = []
    for label, sign in (("plus", 1.0), ("minus", -1.0)):
        r = (2.0 * k + 4.0 + sign * half_width) / (k + 3.0)
        degenerate = abs(r - 1.0) <= 1e-10
        theta = 0.0 if degenerate else logistic_theta(r, k)
        branches.append(Branch(r=r, theta=theta, label=label, degenerate=degenerate))
    return EquilibriumSolution(
        map="logistic",
        k=k,
        var_eps=var_eps,
        branches=tuple(branches),
        feasible=True,
        bound_var=bound,
    )


# ---------------------------------------------------------------------------
# Ricker map
# ---------------------------------------------------------------------------

def ricker_residual(r, k: float, var_eps: float):
    """2 e^{r/(k+1)} - ((1+var_eps) e^{2r})^{1/(k+2)} - 1.

    The second term is assembled in log space; accepts scalar or array r.
    """
    _check_k(k)
    _check_var(var_eps)
    r = np.asarray(r, dtype=float)
    value = (
        2.0 * np.exp(r / (k + 1.0))
        - np.exp((np.log1p(var_eps) + 2.0 * r) / (k + 2.0))
        - 1.0
    )
    return float(value) if value.ndim == 0 else value


def ricker_theta(r: float, k: float) -> float:
    """Scale implied by mean stationarity: theta = (e^{r/(k+1)} - 1)/r."""
    _check_k(k)
    if not (r > 0):
        raise ValueError(f"ricker theta requires r > 0, got {r!r}")
    return math.expm1(r / (k + 1.0)) / r


def _bisect_root(f, lo: float, hi: float, f_lo: float, f_hi: float) -> float:
    # refine until the bracket is below 1e-12 wide
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if (f_lo < 0.0) != (f_mid < 0.0):
            hi, f_hi = mid, f_mid
        else:
            lo, f_lo = mid, f_mid
        if hi - lo < 1e-12:
            break
    return 0.5 * (lo + hi)


def _ricker_roots(k: float, var_eps: float, r_max: float) -> list[float]:
    rs = np.arange(RICKER_SCAN_DELTA, r_max + RICKER_SCAN_STEP, RICKER_SCAN_STEP)
    rs = rs[rs <= r_max]
    vals = ricker_residual(rs, k, var_eps)
    roots = []
    f = lambda r: ricker_residual(r, k, var_eps)
    for i in range(len(rs) - 1):
        a, b = vals[i], vals[i + 1]
        if a == 0.0:
            roots.append(float(rs[i]))
        elif (a < 0.0) != (b < 0.0):
            roots.append(_bisect_root(f, float(rs[i]), float(rs[i + 1]), float(a), float(b)))
    if len(vals) and vals[-1] == 0.0:
        roots.append(float(rs[-1]))
    return roots


def ricker_noise_bound(k: float, r_max: float = RICKER_DEFAULT_R_MAX, tol: float = 1e-6) -> float:
    """Maximal noise variance for which a positive root exists in (0, r_max].

    The residual is pointwise strictly decreasing in var_eps, so root
    existence is monotone; found by bisection to ``tol``.
    """
    _check_k(k)
    rs = np.arange(RICKER_SCAN_DELTA, r_max + RICKER_SCAN_STEP, RICKER_SCAN_STEP)

    def exists(v: float) -> bool:
        return bool(np.max(ricker_residual(rs, k, v)) > 0.0)

    if not exists(0.0):
        return 0.0
    hi = 0.25
    while exists(hi):
        hi *= 2.0
        if hi > 1e12:  # unreachable in practice: the noise term grows without bound
            return math.inf
    lo = hi / 2.0 if hi > 0.25 else 0.0
    if lo > 0.0 and not exists(lo):
        lo = 0.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if exists(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def ricker_solve(
    k: float, var_eps: float, r_max: float = RICKER_DEFAULT_R_MAX
) -> EquilibriumSolution:
    """Solve for the positive growth-rate branches of the stochastic Ricker map."""
    _check_k(k)
    _check_var(var_eps)
    if not (r_max > 0):
        raise ValueError(f"r_max must be > 0, got {r_max!r}")
    roots = _ricker_roots(k, var_eps, r_max)
    beyond = bool(ricker_residual(r_max, k, var_eps) > 0.0)
    if not roots:
        msg = f"no positive root of the Ricker equilibrium in ({RICKER_SCAN_DELTA}, {r_max}]"
        if beyond:
            msg += "; the residual is still positive at r_max, roots may exist beyond it"
        raise NoRootError(msg, r_lo=RICKER_SCAN_DELTA, r_hi=r_max)
    roots = sorted(roots, reverse=True)
    labels = ("plus", "minus") if len(roots) >= 2 else ("plus",)
    branches = tuple(
        Branch(r=r, theta=ricker_theta(r, k), label=label)
        for r, label in zip(roots, labels)
    )
    return EquilibriumSolution(
        map="ricker",
        k=k,
        var_eps=var_eps,
        branches=branches,
        feasible=True,
        bound_var=ricker_noise_bound(k, r_max=r_max),
        roots_beyond_rmax=beyond,
    )
