"""Shared nonlinear least-squares machinery.

Thin wrapper around scipy's Levenberg-Marquardt / trust-region least squares
with a numerically differentiated Jacobian, returning best-fit parameters
together with covariance-derived one-sigma uncertainties.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import least_squares

from .errors import FitDiverged


@dataclass
class FitResult:
    params: np.ndarray
    sigmas: np.ndarray
    covariance: np.ndarray
    residual_norm: float
    names: tuple = field(default=())

    def as_dict(self):
        names = self.names or tuple(f"p{i}" for i in range(len(self.params)))
        return {
            n: {"value": float(v), "sigma": float(s)}
            for n, v, s in zip(names, self.params, self.sigmas)
        }


def fit_least_squares(residual_fn, x0, *, names=(), bounds=None, max_nfev=2000,
                      x_scale="jac"):
    """Minimize ||residual_fn(p)||^2 from the initial guess x0.

    Raises FitDiverged if the optimizer reports failure or the residual did
    not improve over the starting point.  Uncertainties come from the
    Gauss-Newton covariance (J^T J)^-1 scaled by the reduced chi-square.
    """
    x0 = np.asarray(x0, dtype=float)
    r0 = np.linalg.norm(residual_fn(x0))
    kwargs = dict(max_nfev=max_nfev, xtol=1e-12, ftol=1e-12, gtol=1e-12, x_scale=x_scale)
    if bounds is not None:
        result = least_squares(residual_fn, x0, bounds=bounds, **kwargs)
    else:
        result = least_squares(residual_fn, x0, **kwargs)
    if not result.success:
        raise FitDiverged(f"least squares failed: {result.message}")
    r1 = np.linalg.norm(result.fun)
    if r1 > r0 * (1 + 1e-9) and r0 > 0:
        raise FitDiverged("residual failed to decrease over the iteration budget")

    jac = result.jac
    n_pts, n_par = jac.shape
    dof = max(n_pts - n_par, 1)
    try:
        jtj_inv = np.linalg.inv(jac.T @ jac)
    except np.linalg.LinAlgError:
        jtj_inv = np.linalg.pinv(jac.T @ jac)
    s_sq = (r1 ** 2) / dof
    cov = jtj_inv * s_sq
    sigmas = np.sqrt(np.clip(np.diag(cov), 0.0, None))
    return FitResult(params=result.x, sigmas=sigmas, covariance=cov,
                     residual_norm=float(r1), names=tuple(names))


def fit_exponential_decay(t, y):
    """Fit y = a * exp(-t / tau); returns FitResult with params (a, tau).

    Seeded from a log-linear regression on positive samples.
    """
    t = np.asarray(t, dtype=float)
    y = np.asarray(y, dtype=float)
    pos = y > 0
    if pos.sum() >= 2:
        slope, intercept = np.polyfit(t[pos], np.log(y[pos]), 1)
        tau0 = -1.0 / slope if slope < 0 else (t.max() - t.min() + 1.0)
        a0 = np.exp(intercept)
    else:
        a0, tau0 = max(y.max(), 1e-6), t.max() - t.min() + 1.0

    def resid(p):
        return p[0] * np.exp(-t / p[1]) - y

    return fit_least_squares(resid, [a0, abs(tau0)], names=("amplitude", "tau"))


def linear_regression(x, y):
    """Plain least-squares line fit; returns (slope, intercept, slope_sigma)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    coeffs, cov = np.polyfit(x, y, 1, cov=True)
    return float(coeffs[0]), float(coeffs[1]), float(np.sqrt(cov[0, 0]))
