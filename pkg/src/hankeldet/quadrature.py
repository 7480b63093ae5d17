"""Shared quadrature rules.

Provides the node families used throughout the package:

* composite Gauss-Legendre panels on finite intervals,
* a half-line rule built from Gauss-Legendre panels composed per decade
  through the map ``x = -log(u)/rate`` (exponential kernels become smooth
  low-order monomials in ``u``),
* a Filon-Legendre rule for oscillatory Fourier integrals whose node count
  is independent of the oscillation frequency,
* cached Gauss-Laguerre nodes.

All rules return plain ``(nodes, weights)`` arrays so callers can vectorize.
"""

from functools import lru_cache

import numpy as np
from scipy.special import roots_legendre, roots_laguerre, spherical_jn


@lru_cache(maxsize=64)
def _gl_rule(n):
    x, w = roots_legendre(n)
    return x, w


def gauss_panels(edges, nodes_per_panel=12):
    """Composite Gauss-Legendre nodes/weights for the given panel edges."""
    edges = np.asarray(edges, dtype=float)
    t, wt = _gl_rule(nodes_per_panel)
    a = edges[:-1]
    h = np.diff(edges)
    x = (a[:, None] + 0.5 * h[:, None] * (t[None, :] + 1.0)).ravel()
    w = (0.5 * h[:, None] * wt[None, :]).ravel()
    return x, w


def uniform_edges(a, b, n_panels):
    return np.linspace(a, b, n_panels + 1)


def geometric_edges(a, b, n_panels, ratio=2.0):
    """Panel edges on [a, b] refined geometrically toward ``a``."""
    if n_panels < 2:
        return np.array([a, b], dtype=float)
    steps = ratio ** np.arange(n_panels)
    cuts = np.concatenate([[0.0], np.cumsum(steps)])
    return a + (b - a) * cuts / cuts[-1]


def gauss_interval(a, b, n_panels, nodes_per_panel=12):
    return gauss_panels(uniform_edges(a, b, n_panels), nodes_per_panel)


def half_line_log_rule(rate, n_nodes, x_max=None, nodes_per_panel=8):
    """Nodes/weights for integrals over (0, inf) against kernels ~ e^{-rate*x}.

    Uses the substitution x = -log(u)/rate, u in (0, 1], with Gauss-Legendre
    panels composed per decade of u.  A kernel e^{-lam*x} becomes u^{lam/rate},
    which panelized Gauss handles to near machine precision even when lam
    spans several orders of magnitude.

    Parameters
    ----------
    rate : float
        Slowest decay rate of the integrand (sets the map scale).
    n_nodes : int
        Approximate total node count.
    x_max : float, optional
        Domain truncation; default ``40 / rate``.
    """
    if rate <= 0:
        raise ValueError("rate must be positive")
    if x_max is None:
        x_max = 40.0 / rate
    n_dec = max(2, int(np.ceil(x_max * rate / np.log(10.0))))
    per_dec = max(1, int(round(n_nodes / (n_dec * nodes_per_panel))))
    edges = [1.0]
    for d in range(n_dec):
        lo, hi = 10.0 ** (-(d + 1)), 10.0 ** (-d)
        edges.extend(np.linspace(hi, lo, per_dec + 1)[1:])
    edges = np.array(edges[::-1])
    u, wu = gauss_panels(edges, nodes_per_panel)
    x = -np.log(u) / rate
    w = wu / (rate * u)
    order = np.argsort(x)
    return x[order], w[order]


@lru_cache(maxsize=16)
def gauss_laguerre_rule(n):
    x, w = roots_laguerre(n)
    return x, w


# --- oscillatory integrals ---------------------------------------------------

def _legendre_moments(alpha, kmax):
    """M_k(alpha) = int_{-1}^{1} P_k(t) e^{i alpha t} dt = 2 i^k j_k(alpha)."""
    alpha = np.atleast_1d(np.asarray(alpha, dtype=float))
    aa = np.abs(alpha)
    ks = np.arange(kmax + 1)
    jk = spherical_jn(ks[:, None], aa[None, :])
    # j_k(-a) = (-1)^k j_k(a)
    sgn = np.where(alpha[None, :] < 0, (-1.0) ** ks[:, None], 1.0)
    return 2.0 * (1j ** ks)[:, None] * jk * sgn


class FilonTransform:
    """Reusable Filon-Legendre evaluator of u -> int f(xi) e^{i xi u} dxi.

    On each panel f is projected once onto Legendre polynomials (degree
    ``deg``); evaluation at any frequency u then uses the exact oscillatory
    moments 2 i^k j_k(u h/2), so accuracy is set by the smoothness of f per
    panel, never by the frequency.
    """

    def __init__(self, f, edges, deg=20, nodes_per_panel=None):
        edges = np.asarray(edges, dtype=float)
        nq = nodes_per_panel or (deg + 5)
        t, wt = _gl_rule(nq)
        kmax = deg
        P = np.empty((kmax + 1, nq))
        P[0] = 1.0
        if kmax >= 1:
            P[1] = t
        for k in range(1, kmax):
            P[k + 1] = ((2 * k + 1) * t * P[k] - k * P[k - 1]) / (k + 1)
        self.deg = kmax
        self.h2 = 0.5 * np.diff(edges)
        self.mid = 0.5 * (edges[:-1] + edges[1:])
        norm = (2 * np.arange(kmax + 1) + 1) / 2.0
        coefs = []
        for h2, c in zip(self.h2, self.mid):
            fv = np.asarray(f(c + h2 * t), dtype=complex)
            coefs.append(norm * (P * (wt * fv)[None, :]).sum(axis=1))
        self.coefs = np.array(coefs)  # (n_panels, deg+1)

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        uflat = u.ravel()
        total = np.zeros(uflat.size, dtype=complex)
        for p in range(len(self.h2)):
            mom = _legendre_moments(uflat * self.h2[p], self.deg)
            total += (self.h2[p] * np.exp(1j * self.mid[p] * uflat)
                      * (self.coefs[p][:, None] * mom).sum(axis=0))
        return total.reshape(u.shape)


def fourier_integral(f, edges, u, deg=20, nodes_per_panel=None):
    """int f(xi) e^{i xi u} dxi over the panelized interval (see FilonTransform)."""
    return FilonTransform(f, edges, deg=deg, nodes_per_panel=nodes_per_panel)(u)


def doubling_estimate(values_coarse, values_fine):
    """Max abs difference used as an a-posteriori error estimate."""
    return float(np.max(np.abs(np.asarray(values_fine) - np.asarray(values_coarse))))
