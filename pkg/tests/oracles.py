"""Brute-force reference counts by dense sign scans.

These use the original boundary conditions (not the phase formulas and not
the bracketing in the package) so they fail independently of it.
"""

import numpy as np
from scipy import optimize, special


def _xt(y):
    return 0.0 if y == 0 else optimize.brentq(lambda x: x * np.tanh(x) - y, 0, y + 2, xtol=1e-15)


def _xc(y):
    return optimize.brentq(lambda x: x / np.tanh(x) - y, 1e-300, y + 1, xtol=1e-15)


def transverse_count(k, n, R, L, family, sigma, npts=20000):
    """Sign changes of x J'(x) - (beta + x t(xL/R)) J(x) on (0, X)."""
    beta = (n - 3) / 2
    nu = k + beta
    if family == "tanh":
        X = R / L * _xt(sigma * L)
    else:
        if sigma * L <= 1:
            return 0
        X = R / L * _xc(sigma * L)
    x = np.linspace(1e-6, X, npts)
    t = np.tanh(x * L / R) if family == "tanh" else 1 / np.tanh(x * L / R)
    F = x * special.jvp(nu, x) - (beta + x * t) * special.jv(nu, x)
    return int(np.sum(F[:-1] * F[1:] < 0))


def _mod_sigma(nu, beta, R, alpha):
    x = alpha * R
    return (nu + x * special.ive(nu + 1, x) / special.ive(nu, x) - beta) / R


def radial_count(k, n, R, L, family, sigma, npts=20000):
    """Sign changes of the z-boundary condition for cos (radialA) or sin (radialB) modes."""
    beta = (n - 3) / 2
    nu = k + beta
    s = sigma * R + beta
    if s <= nu:
        return 0
    # alpha with sigma(alpha) = sigma, bracketed by the sqrt bound
    amax = optimize.brentq(lambda a: _mod_sigma(nu, beta, R, a) - sigma, 1e-12, s / R + 2)
    a = np.linspace(1e-9, amax, npts)
    sg = _mod_sigma(nu, beta, R, a)
    if family == "radialA":
        F = a * np.sin(a * L) + sg * np.cos(a * L)
    else:
        F = a * np.cos(a * L) - sg * np.sin(a * L)
    return int(np.sum(F[:-1] * F[1:] < 0))


def count(k, n, R, L, family, sigma):
    if family in ("tanh", "coth"):
        return transverse_count(k, n, R, L, family, sigma)
    return radial_count(k, n, R, L, family, sigma)
