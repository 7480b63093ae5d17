"""Hankel integral operators on L2(0, inf).

The operator with scattering function phi acts as
``(G_phi f)(x) = int_0^inf phi(x+y) f(y) dy``.  This module provides the
Nystrom discretization used as the brute-force oracle for every determinant
identity, scattering functions built from exponential expansions, the
Hilbert-Schmidt norm, Laguerre-basis moments (both of scattering functions
and of frequency-side symbols), and finite Hankel moment matrices.
"""

import json
import os
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from .errors import (
    DivergenceError, EvaluationError, LengthError, QuadratureError,
)
from .quadrature import half_line_log_rule, gauss_laguerre_rule
from .specfun import laguerre_table


@dataclass
class ScatteringFunction:
    """Kernel profile phi of a Hankel operator, with decay metadata."""
    evaluate: callable
    decay_rate: float
    label: str = ""

    def __call__(self, x):
        return self.evaluate(np.asarray(x, dtype=float))


@dataclass(frozen=True)
class ExponentialExpansion:
    """phi(x) = sum_j xi_j exp(-lam_j x), finite list with a tail bound.

    The order of (lam, xi) is meaningful (interleaved grids from residue
    expansions keep their natural order); ``sorted_view`` gives the stably
    sorted copy when ascending exponents are required.
    """
    lam: tuple
    xi: tuple
    truncation_bound: float = 0.0
    x_ref: float = 0.0

    def __post_init__(self):
        lam = tuple(float(v) for v in self.lam)
        xi = tuple(complex(v) for v in self.xi)
        if len(lam) != len(xi):
            raise LengthError("exponent and coefficient lists differ in length")
        if any(v <= 0 for v in lam):
            raise ValueError("exponents must be positive")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "xi", xi)

    def __len__(self):
        return len(self.lam)

    def sorted_view(self):
        order = sorted(range(len(self.lam)), key=lambda j: (self.lam[j], j))
        return ExponentialExpansion(
            tuple(self.lam[j] for j in order), tuple(self.xi[j] for j in order),
            self.truncation_bound, self.x_ref)

    def evaluate(self, x):
        """Sum the expansion at x > 0, skipping terms below the noise floor.

        Terms are consumed in ascending-exponent order; for each block of
        abscissae only exponents with e^{-lam x} above ~1e-20 relative
        contribute, which keeps very long slowly-decaying expansions cheap
        at moderate x.
        """
        x = np.atleast_1d(np.asarray(x, dtype=float))
        shape = x.shape
        xf = x.ravel()
        order = np.argsort(np.asarray(self.lam), kind="stable")
        lam = np.asarray(self.lam)[order]
        xi = np.asarray(self.xi)[order]
        out = np.zeros(xf.shape, dtype=complex)
        xs_order = np.argsort(xf)
        cmax = max(1.0, float(np.max(np.abs(xi))))
        chunk = 2048
        for i in range(0, xf.size, chunk):
            idx = xs_order[i:i + chunk]
            xs = xf[idx]
            xmin = max(xs[0], 1e-300)
            lam_cut = (46.0 + np.log(cmax)) / xmin
            n_use = int(np.searchsorted(lam, lam_cut))
            if n_use == 0:
                continue
            acc = np.zeros(xs.shape, dtype=complex)
            blk = max(64, 4_000_000 // max(xs.size, 1))
            for b in range(0, n_use, blk):
                lamb = lam[b:min(b + blk, n_use)]
                acc += np.exp(-np.outer(xs, lamb)) @ xi[b:min(b + blk, n_use)]
            out[idx] = acc
        return out.reshape(shape)

    def to_json(self):
        return [(l, x.real, x.imag) for l, x in zip(self.lam, self.xi)]

    @staticmethod
    def from_json(rows, truncation_bound=0.0, x_ref=0.0):
        lam = tuple(r[0] for r in rows)
        xi = tuple(complex(r[1], r[2]) for r in rows)
        return ExponentialExpansion(lam, xi, truncation_bound, x_ref)


def expansion_to_scattering(exp):
    """Callable scattering function of a (possibly empty) expansion."""
    if len(exp) == 0:
        return ScatteringFunction(lambda x: np.zeros(np.shape(x)), decay_rate=1.0,
                                  label="zero")
    rate = min(exp.lam)

    def evaluate(x):
        return exp.evaluate(x)

    return ScatteringFunction(evaluate, decay_rate=rate, label="expansion")


@dataclass
class DiscretizedOperator:
    """Nystrom representation: K[i,j] = sqrt(w_i) k(x_i, x_j) sqrt(w_j)."""
    nodes: np.ndarray
    weights: np.ndarray
    kernel_matrix: np.ndarray
    shift: float = 0.0
    node_rule: str = "log-mapped Gauss-Legendre"
    rebuild: callable = field(default=None, repr=False)

    @property
    def n(self):
        return len(self.nodes)

    def is_hermitian(self, tol=1e-12):
        k = self.kernel_matrix
        scale = max(1.0, float(np.max(np.abs(k))))
        return bool(np.max(np.abs(k - k.conj().T)) <= tol * scale)

    def eigenvalues(self):
        if self.is_hermitian():
            return np.linalg.eigvalsh(self.kernel_matrix.real
                                      if np.isrealobj(self.kernel_matrix)
                                      else self.kernel_matrix)
        return np.linalg.eigvals(self.kernel_matrix)

    def frobenius_norm(self):
        return float(np.linalg.norm(self.kernel_matrix, "fro"))

    def dump(self, path_prefix):
        """JSON header + little-endian float64 row-major sidecar matrix."""
        k = self.kernel_matrix
        complex_data = bool(np.iscomplexobj(k) and np.max(np.abs(k.imag)) > 0)
        header = {"n": self.n, "node_rule": self.node_rule, "shift": self.shift,
                  "dtype": "complex128-as-2xfloat64" if complex_data else "float64",
                  "sidecar": os.path.basename(path_prefix) + ".bin"}
        with open(path_prefix + ".json", "w") as fh:
            json.dump(header, fh)
        with open(path_prefix + ".bin", "wb") as fh:
            if complex_data:
                np.ascontiguousarray(k.real).astype("<f8").tofile(fh)
                np.ascontiguousarray(k.imag).astype("<f8").tofile(fh)
            else:
                np.ascontiguousarray(k.real).astype("<f8").tofile(fh)
            self.nodes.astype("<f8").tofile(fh)
            self.weights.astype("<f8").tofile(fh)
        return path_prefix + ".json"

    @staticmethod
    def load(path_json):
        with open(path_json) as fh:
            header = json.load(fh)
        n = header["n"]
        raw = np.fromfile(os.path.join(os.path.dirname(path_json), header["sidecar"]),
                          dtype="<f8")
        if header["dtype"].startswith("complex"):
            k = raw[:n * n].reshape(n, n) + 1j * raw[n * n:2 * n * n].reshape(n, n)
            rest = raw[2 * n * n:]
        else:
            k = raw[:n * n].reshape(n, n)
            rest = raw[n * n:]
        return DiscretizedOperator(nodes=rest[:n], weights=rest[n:2 * n],
                                   kernel_matrix=k, shift=header["shift"],
                                   node_rule=header["node_rule"])


def hankel_nystrom(phi, n_nodes, shift=0.0, x_max=None):
    """Discretize G_phi (shifted scattering: kernel phi(x+y+2*shift)).

    Nodes are Gauss-Legendre panels composed per decade through the map
    x = -log(u)/rate, so exponential kernels with rates spanning decades are
    integrated accurately.
    """
    if n_nodes < 2:
        raise ValueError("n_nodes must be >= 2")
    rate = getattr(phi, "decay_rate", 1.0)
    x, w = half_line_log_rule(rate, n_nodes, x_max=x_max)
    s = np.sqrt(w)
    sums = x[:, None] + x[None, :] + 2.0 * shift
    uniq, inv = np.unique(np.round(sums, 12), return_inverse=True)
    try:
        vals = np.asarray(phi(uniq))[inv].reshape(sums.shape)
    except Exception as exc:  # pragma: no cover - defensive
        raise EvaluationError(f"scattering function failed on node sums: {exc}") from exc
    vals = np.asarray(vals)
    if np.iscomplexobj(vals) and np.max(np.abs(vals.imag)) < 1e-14 * max(1.0, np.max(np.abs(vals.real))):
        vals = vals.real
    k = s[:, None] * vals * s[None, :]

    def rebuild(m):
        return hankel_nystrom(phi, m, shift=shift, x_max=x_max)

    return DiscretizedOperator(nodes=x, weights=w, kernel_matrix=k, shift=shift,
                               rebuild=rebuild)


def hs_norm(phi, split=1.0):
    """Hilbert-Schmidt norm (int_0^inf t |phi(t)|^2 dt)^{1/2}."""
    def f(t):
        v = phi(np.array([t]))[0]
        return t * abs(v) ** 2

    a, ea = quad(f, 0.0, split, epsabs=1e-14, epsrel=1e-12, limit=200)
    b, eb = quad(f, split, np.inf, epsabs=1e-14, epsrel=1e-12, limit=200)
    total = a + b
    if not np.isfinite(total):
        raise DivergenceError("Hilbert-Schmidt integral is not finite")
    return float(np.sqrt(total))


def laguerre_moments(phi, n_max, n_quad=120, rtol=1e-9):
    """mu_n = int_0^inf phi(x) L_n(x) e^{-x/2} dx for n = 0..n_max.

    Gauss-Laguerre in the half-exponent variable x = 2u; a node-doubling
    consistency check guards against slow decay of phi.  Node counts stay
    below ~200, where the Laguerre weight recurrences are still stable.
    """
    n_quad = min(n_quad, max(90, n_max + 40))

    def compute(nq):
        u, w = gauss_laguerre_rule(nq)
        x = 2.0 * u
        tab = laguerre_table(n_max, x)
        fv = np.asarray(phi(x)) * 2.0
        return (tab * (w * fv)[None, :]).sum(axis=1)

    coarse = compute(n_quad)
    fine = compute(min(2 * n_quad, 190))
    scale = max(1.0, float(np.max(np.abs(fine))))
    if np.max(np.abs(fine - coarse)) > rtol * scale:
        raise QuadratureError("Laguerre moment quadrature failed node-doubling check")
    return fine


def hankel_matrix_from_moments(mu, n):
    """Finite Hankel moment matrix [mu_{j+k}]_{j,k<n}."""
    mu = np.asarray(mu)
    if len(mu) < 2 * n - 1:
        raise LengthError(f"need {2 * n - 1} moments for an {n}x{n} Hankel matrix")
    j = np.arange(n)
    return mu[j[:, None] + j[None, :]]


# --- Laguerre moments straight from a frequency-side symbol -------------------

def operator_laguerre_entries(phi, n_max, **kw):
    """Entries nu_n with <G_phi l_j, l_k> = nu_{j+k} in the Laguerre basis.

    The Laguerre functions satisfy (l_j * l_k)(s) = e^{-s/2}(L_{j+k}(s) -
    L_{j+k+1}(s)), so the operator matrix entries are first differences of
    the plain Laguerre moments: nu_n = mu_n - mu_{n+1}.
    """
    mu = laguerre_moments(phi, n_max + 1, **kw)
    return mu[:-1] - mu[1:]


def symbol_laguerre_moments(h_axis, n_max, reflected=False, n_grid=1 << 17):
    """Laguerre-basis Hankel matrix entries from a symbol on the axis.

    For a symbol function ``h(i xi)`` with its limit at infinity already
    subtracted (so h -> 0 along the axis), the Hankel operator whose
    scattering function is the causal part of phi(x) = (1/2 pi) *
    int h(i xi) e^{i xi x} d xi has Laguerre matrix [nu_{j+k}] with

        nu_n = (1/2 pi) int h(i xi) (-i xi - 1/2)^n (-i xi + 1/2)^{-n-1}
                 * (1 - w) d xi,   w = Cayley image of -i xi,

    which after transplanting to the unit circle is the plain Fourier
    coefficient of h(theta) e^{i theta}, evaluated by FFT on a midpoint
    grid.  ``reflected=True`` instead computes the entries for the
    reflected symbol h(-i xi) (the 'tilde' Hankel operator).
    """
    n = int(n_grid)
    theta = 2.0 * np.pi * (np.arange(n) + 0.5) / n
    # causal pairing needs the xi-negated kernel under the package-wide
    # phi(x) = (1/2pi) int h(i xi) e^{+i xi x} d xi convention
    xi = -0.5 / np.tan(theta / 2.0)
    if reflected:
        xi = -xi
    hv = np.asarray(h_axis(xi), dtype=complex)
    g = hv * np.exp(1j * theta)
    # the xi -> theta substitution traverses the circle clockwise
    c = -np.fft.ifft(g)
    ns = np.arange(n_max + 1)
    return c[: n_max + 1] * np.exp(1j * ns * np.pi / n)


def laguerre_hankel_section(h_axis, m, reflected=False, n_grid=1 << 17):
    """The m x m Laguerre-basis matrix of the Hankel operator of symbol h."""
    nu = symbol_laguerre_moments(h_axis, 2 * m - 2, reflected=reflected, n_grid=n_grid)
    return hankel_matrix_from_moments(nu, m)
