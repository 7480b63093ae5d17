"""Fredholm and Carleman determinants and the Wiener-Hopf identity.

Implements both sides of

    1 / det(W(psi) W(1/psi)) = det(I - G_{phi1} G_{phi2}) = det2(I + G_Phi)

* the left side by Nystrom discretization of the convolution operators
  W(psi), W(1/psi) on a truncated half-line (for symbols tending to 1), or
  equivalently by the Hankel-product form det(I - G~(psi-1) G(1/psi-1)),
  which also covers jointly-balanced quotient symbols whose boundary values
  tend to unimodular constants;
* the right side by Nystrom products of the two Hankel operators, by the
  block Carleman determinant, and by finite sections of the explicit
  R-matrix representation with its Cauchy-Binet expansion.
"""

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import SingularError, TruncationError, QuadratureError
from .quadrature import gauss_panels, uniform_edges, fourier_integral
from .hankel import (
    ScatteringFunction, ExponentialExpansion, expansion_to_scattering,
    hankel_nystrom,
)
from .barnes import (
    symbol_scattering_expansion, fourier_causal_transform,
)
from .symbols import sinh_kernel

_DET_FLOOR = 1e-300


@dataclass(frozen=True)
class DetResult:
    value: complex
    method: str
    error_estimate: float = 0.0

    def __post_init__(self):
        if self.error_estimate < 0:
            raise ValueError("error_estimate must be non-negative")


def fredholm_det(op, shift_sign=+1):
    """det(I + sign * K) of a discretized operator via LU factorization.

    When the operator carries a rebuild callback, the determinant is also
    computed at half the node count and the difference reported as the
    error estimate.
    """
    if shift_sign not in (+1, -1):
        raise ValueError("shift_sign must be +1 or -1")
    k = op.kernel_matrix
    val = complex(np.linalg.det(np.eye(op.n) + shift_sign * k))
    if abs(val) < _DET_FLOOR:
        raise SingularError("determinant vanished to working precision")
    err = 0.0
    if op.rebuild is not None and op.n >= 16:
        coarse = op.rebuild(op.n // 2)
        cval = complex(np.linalg.det(np.eye(coarse.n) + shift_sign * coarse.kernel_matrix))
        err = abs(val - cval)
    return DetResult(val, "nystrom", err)


def carleman_det2(op):
    """det2(I + K) = det(I + K) exp(-trace K)."""
    base = fredholm_det(op, +1)
    tr = complex(np.trace(op.kernel_matrix))
    return DetResult(base.value * np.exp(-tr), "nystrom", base.error_estimate)


# --- right-hand side pipelines -------------------------------------------------

def main_identity_rhs(phi1, phi2, n_nodes=240, x_max=None):
    """det(I - G_{phi1} G_{phi2}) with its block-Carleman twin.

    Returns a dict with 'product' (Fredholm determinant of the Hankel
    product) and 'block_det2' (Carleman determinant of the off-diagonal
    2x2 block operator); the two agree within the combined estimates.
    """
    def assemble(n):
        op1 = hankel_nystrom(phi1, n, x_max=x_max)
        op2 = hankel_nystrom(phi2, n, x_max=x_max)
        if not np.allclose(op1.nodes, op2.nodes):
            raise QuadratureError("operator discretizations must share nodes")
        k1, k2 = op1.kernel_matrix, op2.kernel_matrix
        nn = k1.shape[0]
        prod = complex(np.linalg.det(np.eye(nn) - k1 @ k2))
        block = np.zeros((2 * nn, 2 * nn), dtype=np.result_type(k1, k2))
        block[:nn, nn:] = k1
        block[nn:, :nn] = k2
        tr = complex(np.trace(block))
        det2 = complex(np.linalg.det(np.eye(2 * nn) + block)) * np.exp(-tr)
        return prod, det2

    prod_f, det2_f = assemble(n_nodes)
    prod_c, det2_c = assemble(max(8, n_nodes // 2))
    err = max(abs(prod_f - prod_c), abs(det2_f - det2_c))
    return {
        "product": DetResult(prod_f, "nystrom", abs(prod_f - prod_c)),
        "block_det2": DetResult(det2_f, "nystrom", abs(det2_f - det2_c)),
        "agreement": abs(prod_f - det2_f),
        "error_estimate": err,
    }


# --- R matrices and Cauchy-Binet ------------------------------------------------

@dataclass
class RMatrixPair:
    """Finite sections of the linear-system representation of the product.

    R12[j, l] = e^{-x(eta_l + lam_j)} xi_j / (eta_l + lam_j)
    R21[j, l] = e^{-x(eta_j + lam_l)} gam_j / (eta_j + lam_l)
    """
    r12: np.ndarray
    r21: np.ndarray
    x: float
    lam: np.ndarray
    eta: np.ndarray
    xi: np.ndarray
    gam: np.ndarray


def build_r_matrices(exp1, exp2, x=0.0, n=None):
    if x < 0:
        raise ValueError("x must be non-negative")
    n1 = len(exp1) if n is None else min(n, len(exp1))
    n2 = len(exp2) if n is None else min(n, len(exp2))
    lam = np.asarray(exp1.lam[:n1])
    xi = np.asarray(exp1.xi[:n1])
    eta = np.asarray(exp2.lam[:n2])
    gam = np.asarray(exp2.xi[:n2])
    s12 = lam[:, None] + eta[None, :]
    r12 = np.exp(-x * s12) * xi[:, None] / s12
    s21 = eta[:, None] + lam[None, :]
    r21 = np.exp(-x * s21) * gam[:, None] / s21
    r12[np.abs(r12) < _DET_FLOOR] = 0.0
    r21[np.abs(r21) < _DET_FLOOR] = 0.0
    return RMatrixPair(r12, r21, float(x), lam, eta, xi, gam)


def det_from_r(pair):
    """det(I - R12 R21), the finite-section determinant of the product."""
    n = pair.r12.shape[0]
    val = complex(np.linalg.det(np.eye(n) - pair.r12 @ pair.r21))
    if abs(val) < _DET_FLOOR:
        raise SingularError("R-matrix determinant vanished")
    # section-halving estimate (multiples of the expansion period retained)
    h = n // 2
    if h >= 1:
        sub = complex(np.linalg.det(np.eye(h) - pair.r12[:h, :h] @ pair.r21[:h, :h]))
        err = abs(val - sub)
    else:
        err = 0.0
    return DetResult(val, "rmatrix", err)


@dataclass(frozen=True)
class SubsetTerm:
    """One Cauchy-Binet summand det[R12]_{S,T} det[R21]_{T,S}."""
    s: tuple
    t: tuple
    value: complex
    value_closed_form: complex

    @property
    def order(self):
        return len(self.s)


def _log_vandermonde(v):
    """(log|Delta|, sign) of the Vandermonde determinant of v (natural order)."""
    n = len(v)
    if n <= 1:
        return 0.0, 1.0
    log_abs = 0.0
    sign = 1.0
    for i in range(n):
        for j in range(i + 1, n):
            d = v[j] - v[i]
            if d == 0:
                return -np.inf, 0.0
            log_abs += np.log(abs(d))
            if d < 0:
                sign = -sign
    return log_abs, sign


def _closed_form_term(pair, s_idx, t_idx):
    """Vandermonde/Cauchy closed form of a Cauchy-Binet summand (log space)."""
    lam = pair.lam[list(s_idx)]
    eta = pair.eta[list(t_idx)]
    xi = pair.xi[list(s_idx)]
    gam = pair.gam[list(t_idx)]
    la, sa = _log_vandermonde(lam)
    lb, sb = _log_vandermonde(eta)
    log_mag = 2.0 * (la + lb) - 2.0 * pair.x * (lam.sum() + eta.sum())
    log_mag -= 2.0 * np.log(lam[:, None] + eta[None, :]).sum()
    coef = np.prod(xi) * np.prod(gam)
    return coef * (sa * sb) ** 2 * np.exp(log_mag)


def cauchy_binet_expansion(pair, max_order=3):
    """Subset expansion of det(I - R12 R21) with dual-route summands.

    Every term is computed both as a product of two minors and via the
    Vandermonde-squared/Cauchy closed form; terms and the partial sums per
    order are returned.  Subsets are enumerated by (order, lexicographic),
    so term lists are reproducible.
    """
    n = pair.r12.shape[0]
    terms = []
    partial = [1.0 + 0.0j]
    total = 1.0 + 0.0j
    for order in range(1, max_order + 1):
        contrib = 0.0 + 0.0j
        for s_idx in combinations(range(n), order):
            rows12 = pair.r12[np.ix_(s_idx, range(n))]
            rows21 = pair.r21[np.ix_(range(n), s_idx)]
            for t_idx in combinations(range(n), order):
                m12 = rows12[:, list(t_idx)]
                m21 = pair.r21[np.ix_(t_idx, s_idx)]
                val = complex(np.linalg.det(m12) * np.linalg.det(m21))
                closed = complex(_closed_form_term(pair, s_idx, t_idx))
                terms.append(SubsetTerm(tuple(s_idx), tuple(t_idx), val, closed))
                contrib += val
        total += ((-1.0) ** order) * contrib
        partial.append(total)
    return terms, partial


def leading_term_approx(pair):
    """1 - e^{-2x(lam0+eta0)} xi0 gam0 / (lam0+eta0)^2 (grids sorted ascending)."""
    if np.any(np.diff(pair.lam) < 0) or np.any(np.diff(pair.eta) < 0):
        raise ValueError("leading-term approximation expects ascending grids")
    lam0, eta0 = pair.lam[0], pair.eta[0]
    xi0, gam0 = pair.xi[0], pair.gam[0]
    val = 1.0 - np.exp(-2.0 * pair.x * (lam0 + eta0)) * xi0 * gam0 / (lam0 + eta0) ** 2
    return DetResult(complex(val), "leading_term")


def jacobi_ratio_check(matrix, p_dim):
    """(det P(I+K)P, det P_perp (I+K)^{-1} P_perp) for the leading projection.

    Their ratio equals det(I+K) (Jacobi's determinant identity).
    """
    k = np.asarray(matrix)
    n = k.shape[0]
    if not 0 <= p_dim <= n:
        raise ValueError("projection dimension out of range")
    a = np.eye(n) + k
    try:
        inv = np.linalg.inv(a)
    except np.linalg.LinAlgError as exc:
        raise SingularError("I + K is singular") from exc
    top = complex(np.linalg.det(a[:p_dim, :p_dim])) if p_dim else 1.0 + 0j
    bot = complex(np.linalg.det(inv[p_dim:, p_dim:])) if p_dim < n else 1.0 + 0j
    return top, bot


# --- scattering functions of a symbol -------------------------------------------

_EXPANSION_TERMS = 1600


def symbol_scattering(symbol, inverse=False, reflected=False, k_terms=None):
    """Causal scattering function of psi - 1 (or 1/psi - 1).

    For gamma-quotient symbols this is an explicit residue expansion; for
    the sinh symbol the direct (psi - 1 = -K) closed form and a damped
    Fourier transform for the inverse symbol.
    """
    if symbol.kind == "gamma_quotient":
        exp = symbol_scattering_expansion(symbol.params, k_terms or _EXPANSION_TERMS,
                                          inverse=inverse, reflected=reflected)
        return expansion_to_scattering(exp)
    if symbol.kind == "sinh_kernel":
        g = symbol.params.gamma
        if not inverse:
            def evaluate(x):
                return -sinh_kernel(g, np.asarray(x, dtype=float))
            return ScatteringFunction(evaluate, decay_rate=min(g, symbol.eps),
                                      label="sinh")
        c = np.pi * np.pi / g
        sh, ch = np.sinh(c), np.cosh(c)

        def h(xi):
            # F/(1-F) along (possibly complex) xi; poles on the imaginary axis
            cs = np.cos(np.pi * (1j * np.asarray(xi, dtype=complex)) / g)
            return sh / (ch - sh + cs)

        def evaluate(x):
            x = np.atleast_1d(np.asarray(x, dtype=float))
            return fourier_causal_transform(h, x, xi_max=_sinh_xi_cut(g)).real

        return ScatteringFunction(evaluate, decay_rate=symbol.eps, label="sinh-inverse")
    raise ValueError(f"no scattering construction for symbol kind {symbol.kind!r}")


def _sinh_xi_cut(g, floor=1e-18):
    """|F| < floor beyond this frequency; tails can be dropped."""
    return g * (np.log(1.0 / floor) + 2.0 * np.pi * np.pi / g) / np.pi


def factor_scattering_functions(factors, xi_cut=None, deg=20):
    """The pair (phi1, phi2) built from numerical Wiener-Hopf factors.

    Uses psi_-/psi_+ - 1 = (psi - 1)/psi_+^2 + (1/psi_+^2 - 1); the second
    part is analytic and decaying in the upper half-plane, so its causal
    transform vanishes and phi1 is a tail-free Fourier integral of the
    exponentially decaying first part (mirror-image formula for phi2).
    Needs a symbol whose psi - 1 decays exponentially along the axis.
    """
    from .quadrature import FilonTransform
    symbol = factors.symbol
    if symbol.tail.get("type") != "exponential":
        raise QuadratureError("factor scattering transform needs exponential decay")
    if xi_cut is None:
        rate = symbol.tail["rate"]
        xi_cut = 40.0 / rate
    edges = uniform_edges(-xi_cut, xi_cut, max(32, int(2.0 * xi_cut)))

    def f1(xi):
        w = 1j * np.asarray(xi, dtype=complex)
        return (symbol(w) - 1.0) * np.exp(-2.0 * factors.log_psi_plus(w))

    def f2(xi):
        w = -1j * np.asarray(xi, dtype=complex)
        return (symbol(w) - 1.0) * np.exp(-2.0 * factors.log_psi_minus(w))

    t1 = FilonTransform(f1, edges, deg=deg)
    t2 = FilonTransform(f2, edges, deg=deg)
    rate = symbol.eps

    def make(transform):
        def evaluate(x):
            vals = transform(np.asarray(x, dtype=float)) / (2.0 * np.pi)
            return vals.real
        return ScatteringFunction(evaluate, decay_rate=rate, label="factor-ratio")

    return make(t1), make(t2)


# --- left-hand side: Wiener-Hopf operator discretization -------------------------

def convolution_kernel(symbol, inverse=False):
    """Kernel k(u) on the whole line with W(psi) = I + k(x - y) dy.

    k is the inverse transform of psi - 1 (or 1/psi - 1): closed form for
    the sinh symbol, model-subtracted damped Fourier quadrature for
    balanced gamma quotients (their 1/xi tails produce a jump at u = 0,
    handled by exact exponential model terms).
    """
    if symbol.kind == "sinh_kernel":
        g = symbol.params.gamma
        if not inverse:
            def kernel(u):
                return -sinh_kernel(g, np.asarray(u, dtype=float))
            return kernel
        c = np.pi * np.pi / g
        sh, ch = np.sinh(c), np.cosh(c)

        def h(xi):
            cs = np.cos(np.pi * (1j * np.asarray(xi, dtype=complex)) / g)
            return sh / (ch - sh + cs)

        cut = _sinh_xi_cut(g)

        def kernel(u):
            u = np.atleast_1d(np.asarray(u, dtype=float))
            out = np.empty(u.shape)
            pos = np.abs(u) > 1e-12
            if np.any(pos):
                out[pos] = fourier_causal_transform(h, np.abs(u[pos]), xi_max=cut).real
            if np.any(~pos):
                edges = uniform_edges(-cut, cut, max(64, int(cut)))
                xg, wg = gauss_panels(edges, 12)
                out[~pos] = float((wg * h(xg)).sum().real) / (2.0 * np.pi)
            return out

        return kernel

    if symbol.kind == "gamma_quotient":
        pars = symbol.params.swapped() if inverse else symbol.params
        sab, scd, q1, q2, q3 = pars.log_tail_coeffs()
        if abs(sab) > 1e-12 or abs(scd) > 1e-12:
            raise QuadratureError(
                "convolution kernel requires an individually balanced symbol")
        c1 = q1
        c2 = q2 + 0.5 * q1 * q1
        alpha = 1.0

        def h_side(xi, sign):
            from .specfun import log_gamma_lifted
            xi = np.asarray(xi, dtype=complex)
            s = sign * 1j * xi
            out = np.zeros(s.shape, dtype=complex)
            for v in pars.a:
                out += log_gamma_lifted(v + s)
            for v in pars.b:
                out -= log_gamma_lifted(v + s)
            for v in pars.c:
                out += log_gamma_lifted(v - s)
            for v in pars.d:
                out -= log_gamma_lifted(v - s)
            # psi - 1 ~ C1/(i xi) + C2/(i xi)^2; the exponential model below
            # carries the same two orders, so the remainder decays like xi^-3
            model = (sign * c1) / (alpha + 1j * xi) + \
                (c2 + sign * c1 * alpha) / (alpha + 1j * xi) ** 2
            return np.exp(out) - 1.0 - model

        def kernel(u):
            u = np.atleast_1d(np.asarray(u, dtype=float))
            out = np.zeros(u.shape)
            for sign, mask in ((+1.0, u > 1e-12), (-1.0, u < -1e-12)):
                if not np.any(mask):
                    continue
                uu = np.abs(u[mask])
                rem = fourier_causal_transform(lambda xi: h_side(xi, sign), uu,
                                               xi_max=60.0).real
                model = (sign * c1) * np.exp(-alpha * uu) + \
                    (c2 + sign * c1 * alpha) * uu * np.exp(-alpha * uu)
                out[mask] = rem + model
            mid = np.abs(u) <= 1e-12
            if np.any(mid):
                # diagonal takes the two-sided average; the +-C1 model jumps cancel
                edges = uniform_edges(-60.0, 60.0, 240)
                xg, wg = gauss_panels(edges, 12)
                vals = 0.5 * (h_side(xg, +1.0) + h_side(xg, -1.0))
                out[mid] = float((wg * vals).sum().real) / (2.0 * np.pi)
            return out

        return kernel
    raise ValueError(f"no convolution kernel for symbol kind {symbol.kind!r}")


def _conv_matrix(kernel, x, w):
    """Nystrom matrix of the convolution part: K[i,j] = k(x_i - x_j) w_j."""
    d = x[:, None] - x[None, :]
    uniq, inv = np.unique(np.round(d, 10), return_inverse=True)
    kv = np.asarray(kernel(uniq), dtype=float)
    return kv[inv].reshape(d.shape) * w[None, :]


def _truncated_product_det(k1, k2, length, n_panels, pad, q=8):
    """det of W(psi) W(1/psi) compressed to [0, length].

    The composition is carried out on the padded interval [0, length+pad]
    first (so the far edge of the quadrature domain does not inject a
    spurious second edge factor) and only then truncated: sections of the
    composed I + trace-class operator converge to the true determinant.
    """
    total = length + pad
    n_total = int(np.ceil(n_panels * total / length))
    x, w = gauss_panels(uniform_edges(0.0, total, n_total), q)
    a = _conv_matrix(k1, x, w)
    b = _conv_matrix(k2, x, w)
    composed = a + b + a @ b
    keep = x <= length
    sub = composed[np.ix_(keep, keep)]
    return complex(np.linalg.det(np.eye(sub.shape[0]) + sub))


def main_identity_lhs(symbol, length=None, n_nodes=240, tol=1e-6, method="auto"):
    """1 / det(W(psi) W(1/psi)) by an independent Wiener-Hopf pipeline.

    method='convolution' discretizes the convolution kernels of psi and
    1/psi, composes them on a padded half-line segment and truncates the
    composed operator (with truncation-doubling stability checks);
    method='hankel' evaluates the equivalent Hankel-product form
    det(I - G~(psi-1) G(1/psi-1)) from residue-series scattering functions
    (required for jointly balanced symbols, whose convolution kernels pick
    up distributional parts).
    """
    if method == "auto":
        method = "convolution" if symbol.tends_to_one else "hankel"
    if method == "hankel":
        phi_a = symbol_scattering(symbol, inverse=False, reflected=True)
        phi_b = symbol_scattering(symbol, inverse=True, reflected=False)

        def one(n):
            opa = hankel_nystrom(phi_a, n)
            opb = hankel_nystrom(phi_b, n)
            return complex(np.linalg.det(
                np.eye(opa.n) - opa.kernel_matrix @ opb.kernel_matrix))

        fine = one(n_nodes)
        coarse = one(max(16, n_nodes // 2))
        return DetResult(1.0 / fine, "hankel_product", abs(1.0 / fine - 1.0 / coarse))

    if symbol.kind == "sinh_kernel":
        # kernel oscillation scale is 1/gamma, decay scale 1/eps
        kernel_scale = 1.0 / symbol.params.gamma
        if length is None:
            length = 44.0 / symbol.eps
    else:
        kernel_scale = 0.5
        if length is None:
            length = 44.0
    k1 = convolution_kernel(symbol, inverse=False)
    k2 = convolution_kernel(symbol, inverse=True)
    pad = length

    def one(ln, n_panels):
        return _truncated_product_det(k1, k2, ln, n_panels, pad)

    n_panels = max(12, n_nodes // 8, int(np.ceil(3.0 * length / kernel_scale / 8.0)))
    base = one(length, n_panels)
    doubled = one(2.0 * length, 2 * n_panels)
    if abs(doubled - base) > 10.0 * tol * max(abs(base), 1e-12):
        raise TruncationError(
            f"domain doubling moved the determinant by {abs(doubled - base):.2e}")
    return DetResult(1.0 / doubled, "nystrom", abs(1.0 / doubled - 1.0 / base))
