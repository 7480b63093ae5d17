"""Symbols on a vertical strip and their Wiener-Hopf factorization.

A :class:`Symbol` is an analytic function ``psi(z)`` on ``{|Re z| < eps}``
whose boundary values ``psi(i xi)`` act as the symbol of a Wiener-Hopf
operator on L2(0, inf).  The factorization ``psi = psi_minus * psi_plus``
is computed from the additive splitting of ``log psi`` by Cauchy integrals
along the two vertical lines ``Re z = -eps'`` and ``Re z = +eps'``:

* ``psi_minus`` is holomorphic and zero-free to the RIGHT of ``-eps'/2``
  (its pole/zero ladders, if any, sit in the left half-plane); for a
  balanced gamma quotient it matches ``prod Gamma(a_j+z)/Gamma(b_j+z)``.
* ``psi_plus`` is holomorphic and zero-free to the LEFT of ``+eps'/2``.

Both factors are normalized to tend to 1 at infinity, which fixes the
additive constant in the splitting.
"""

import hashlib
import json
import os
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BalanceError, ZeroOnContourError, ResolutionError, NonzeroWindingError,
    ZeroInStripError, QuadratureError,
)
from .quadrature import gauss_panels, uniform_edges
from .specfun import log_gamma_array, log_gamma_lifted

_ZERO_TOL = 1e-12


def sinh_kernel(gamma, x):
    """Convolution kernel gamma*sin(pi x)/(pi*sinh(gamma x)); value 1 at x=0."""
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty_like(x)
    g = gamma * x
    small = np.abs(g) < 1e-8
    big = np.abs(g) > 500.0
    mid = ~small & ~big
    out[small] = np.sinc(x[small])  # remaining factor is 1 + O(g^2)
    out[mid] = gamma * np.sin(np.pi * x[mid]) / (np.pi * np.sinh(g[mid]))
    # 1/sinh(g) ~ 2 sign(g) e^{-|g|} far out; avoids overflow warnings
    out[big] = (2.0 * gamma / np.pi) * np.sin(np.pi * x[big]) * np.sign(x[big]) * np.exp(-np.abs(g[big]))
    if np.ndim(x) and x.shape != ():
        return out if out.size > 1 else float(out[0])
    return float(out[0])


def sinh_symbol(gamma, xi):
    """Fourier transform of the sinh kernel on the real frequency axis."""
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    c = np.pi * np.pi / gamma
    return np.sinh(c) / (np.cosh(c) + np.cosh(np.pi * np.asarray(xi, dtype=float) / gamma))


# Bernoulli polynomials needed by the Stirling tail of gamma quotients.
def _bern2(x):
    return x * x - x + 1.0 / 6.0


def _bern3(x):
    return x ** 3 - 1.5 * x * x + 0.5 * x


def _bern4(x):
    return x ** 4 - 2.0 * x ** 3 + x * x - 1.0 / 30.0


@dataclass(frozen=True)
class GammaQuotientParams:
    """Zeros/poles data of a gamma-quotient symbol.

    ``psi(i xi) = prod_j G(a_j+i xi)/G(b_j+i xi) * prod_j G(c_j-i xi)/G(d_j-i xi)``.

    The canonical class requires both exponent sums to balance,
    ``sum(a-b) = 0 = sum(c-d)``; with ``allow_joint_balance`` only the joint
    sum ``sum(a-b) + sum(c-d) = 0`` is enforced (the symbol then tends to
    unimodular constants instead of 1 at infinity).
    """
    a: tuple
    b: tuple
    c: tuple
    d: tuple
    allow_joint_balance: bool = False

    def __post_init__(self):
        for name in "abcd":
            vals = tuple(float(v) for v in getattr(self, name))
            if any(v <= 0 for v in vals):
                raise ValueError(f"parameters {name} must be positive")
            object.__setattr__(self, name, vals)
        if len(self.a) != len(self.b) or len(self.c) != len(self.d):
            raise ValueError("a/b and c/d must have equal lengths")
        sab = sum(self.a) - sum(self.b)
        scd = sum(self.c) - sum(self.d)
        if self.allow_joint_balance:
            if abs(sab + scd) > 1e-12:
                raise BalanceError(f"joint balance violated: sum(a-b)+sum(c-d) = {sab + scd:.3g}")
        elif abs(sab) > 1e-12 or abs(scd) > 1e-12:
            raise BalanceError(
                f"sum(a-b) = {sab:.3g}, sum(c-d) = {scd:.3g}; both must vanish")

    @property
    def m(self):
        return len(self.a)

    @property
    def mu(self):
        return len(self.c)

    def individually_balanced(self):
        return (abs(sum(self.a) - sum(self.b)) <= 1e-12
                and abs(sum(self.c) - sum(self.d)) <= 1e-12)

    def swapped(self):
        """Parameters of 1/psi (numerators and denominators exchanged)."""
        return GammaQuotientParams(self.b, self.a, self.d, self.c,
                                   allow_joint_balance=self.allow_joint_balance)

    def log_tail_coeffs(self):
        """(s_ab, s_cd, q1, q2, q3): log psi(z) ~ s_ab log z + s_cd log(-z) + sum q_n z^-n."""
        sab = sum(self.a) - sum(self.b)
        scd = sum(self.c) - sum(self.d)
        q = []
        for n, bern in ((1, _bern2), (2, _bern3), (3, _bern4)):
            dab = sum(bern(v) for v in self.a) - sum(bern(v) for v in self.b)
            dcd = sum(bern(v) for v in self.c) - sum(bern(v) for v in self.d)
            q.append((((-1.0) ** (n + 1)) * dab - dcd) / (n * (n + 1)))
        return sab, scd, q[0], q[1], q[2]


@dataclass(frozen=True)
class SinhSymbolParams:
    gamma: float

    def __post_init__(self):
        if self.gamma <= 0:
            raise ValueError("gamma must be positive")


class Symbol:
    """Analytic symbol on a vertical strip with decay metadata.

    Attributes
    ----------
    eps : float
        Strip half-width of analyticity and zero-freeness.
    delta : float
        Decay exponent in ``psi(z) = 1 + O(|z|^{-1/2-delta})``.
    kind : str
        One of ``gamma_quotient | sinh_kernel | scattering | custom``.
    """

    def __init__(self, evaluate, eps, delta, kind="custom", params=None,
                 log_evaluate=None, tail=None, tends_to_one=True):
        self._evaluate = evaluate
        self.eps = float(eps)
        self.delta = float(delta)
        self.kind = kind
        self.params = params
        self._log_evaluate = log_evaluate
        self.tail = tail or {}
        self.tends_to_one = tends_to_one

    def __call__(self, z):
        return self._evaluate(np.asarray(z, dtype=complex))

    def on_axis(self, xi):
        return self(1j * np.asarray(xi, dtype=float))

    def log_on_strip(self, z):
        """log psi(z), using the analytic Stirling tail at large |Im z|.

        Direct lgamma sums lose the balanced cancellation at large heights;
        the tail expansion keeps full relative accuracy there.
        """
        z = np.asarray(z, dtype=complex)
        if self._log_evaluate is not None:
            return self._log_evaluate(z)
        return np.log(self(z))

    def check_axis_limit(self, r_probe=1e4):
        """|psi(+-iR) - 1| <= 10 R^{-1/2-delta} (skipped for joint-balanced symbols)."""
        if not self.tends_to_one:
            return True
        vals = self.on_axis(np.array([-r_probe, r_probe]))
        bound = 10.0 * r_probe ** (-0.5 - self.delta)
        return bool(np.all(np.abs(vals - 1.0) <= bound))

    def limits_at_infinity(self):
        """(psi(+i inf), psi(-i inf)); differ from 1 for joint-balanced quotients."""
        if self.kind == "gamma_quotient" and isinstance(self.params, GammaQuotientParams):
            sab = sum(self.params.a) - sum(self.params.b)
            return (np.exp(-1j * np.pi * sab), np.exp(1j * np.pi * sab))
        return (1.0 + 0j, 1.0 + 0j)

    def to_json_dict(self):
        if self.kind == "gamma_quotient":
            p = {"a": self.params.a, "b": self.params.b,
                 "c": self.params.c, "d": self.params.d,
                 "allow_joint_balance": self.params.allow_joint_balance}
        elif self.kind == "sinh_kernel":
            p = {"gamma": self.params.gamma}
        elif self.kind == "scattering":
            p = {"lam": self.params}
        else:
            p = {}
        return {"kind": self.kind, "params": p, "eps": self.eps, "delta": self.delta}

    def content_hash(self):
        blob = json.dumps(self.to_json_dict(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:20]


def symbol_from_json_dict(rec):
    kind = rec["kind"]
    p = rec.get("params", {})
    if kind == "gamma_quotient":
        return gamma_quotient_symbol(GammaQuotientParams(
            tuple(p["a"]), tuple(p["b"]), tuple(p["c"]), tuple(p["d"]),
            allow_joint_balance=bool(p.get("allow_joint_balance", False))))
    if kind == "sinh_kernel":
        return sinh_symbol_object(p["gamma"])
    if kind == "scattering":
        return scattering_symbol(p["lam"])
    raise ValueError(f"cannot rebuild symbol of kind {kind!r} from JSON")


def sinh_symbol_object(gamma):
    """Symbol 1 - F for the sinh kernel, analytic on a computable strip."""
    par = SinhSymbolParams(float(gamma))
    g = par.gamma
    c = np.pi * np.pi / g
    sh, ch = np.sinh(c), np.cosh(c)

    def log_evaluate(z):
        z = np.asarray(z, dtype=complex)
        w = np.pi * z / g
        out = np.zeros(z.shape, dtype=complex)
        near = np.abs(w.imag) <= 50.0
        out[near] = np.log1p(-sh / (ch + np.cos(w[near])))
        # |log psi| < 4 sinh(c) e^{-50} beyond the cutoff: negligible
        return out

    def evaluate(z):
        return np.exp(log_evaluate(z))

    # zeros where cos(pi z / g) = sinh(c) - cosh(c) = -e^{-c}
    zero_dist = (g / np.pi) * np.arccos(-np.exp(-c))
    eps = 0.999 * min(zero_dist, g)
    return Symbol(evaluate, eps=eps, delta=0.5, kind="sinh_kernel", params=par,
                  log_evaluate=log_evaluate,
                  tail={"type": "exponential", "rate": np.pi / g})


def gamma_quotient_symbol(params):
    """Symbol built from gamma-function quotients (strip width = min parameter)."""
    a, b, c, d = params.a, params.b, params.c, params.d
    sab, scd, q1, q2, q3 = params.log_tail_coeffs()
    tau_switch = 1e3

    def _log_direct(z):
        # all arguments keep Re > 0 inside the strip; the lifted evaluation
        # is then branch-continuous along vertical contour lines
        out = np.zeros(z.shape, dtype=complex)
        for aj in a:
            out += log_gamma_lifted(aj + z)
        for bj in b:
            out -= log_gamma_lifted(bj + z)
        for cj in c:
            out += log_gamma_lifted(cj - z)
        for dj in d:
            out -= log_gamma_lifted(dj - z)
        return out

    def _log_tail(z):
        s = np.where(z.imag >= 0, 1.0, -1.0)
        logz = np.log(z)
        logmz = logz - 1j * np.pi * s
        return (sab * logz + scd * logmz + q1 / z + q2 / z ** 2 + q3 / z ** 3)

    def log_evaluate(z):
        z = np.asarray(z, dtype=complex)
        out = np.empty(z.shape, dtype=complex)
        far = np.abs(z.imag) > tau_switch
        if np.any(~far):
            out[~far] = _log_direct(z[~far])
        if np.any(far):
            out[far] = _log_tail(z[far])
        return out

    def evaluate(z):
        return np.exp(log_evaluate(np.asarray(z, dtype=complex)))

    eps = min(min(a), min(b), min(c), min(d))
    return Symbol(evaluate, eps=eps, delta=0.5, kind="gamma_quotient",
                  params=params, log_evaluate=log_evaluate,
                  tail={"type": "power", "coeffs": (q1, q2, q3),
                        "steps": (sab, scd)},
                  tends_to_one=params.individually_balanced())


def explicit_quotient_factors(params):
    """The closed-form factors of a gamma-quotient symbol.

    Returns (psi_minus, psi_plus) callables: psi_minus(z) is the a/b product
    (ladders in the left half-plane) and psi_plus(z) the c/d product.
    """
    a, b, c, d = params.a, params.b, params.c, params.d

    def psi_minus(z):
        z = np.asarray(z, dtype=complex)
        out = np.zeros(z.shape, dtype=complex)
        for aj in a:
            out += log_gamma_lifted(aj + z)
        for bj in b:
            out -= log_gamma_lifted(bj + z)
        return np.exp(out)

    def psi_plus(z):
        z = np.asarray(z, dtype=complex)
        out = np.zeros(z.shape, dtype=complex)
        for cj in c:
            out += log_gamma_lifted(cj - z)
        for dj in d:
            out -= log_gamma_lifted(dj - z)
        return np.exp(out)

    return psi_minus, psi_plus


def scattering_symbol(lam):
    """Reflection-type scattering symbol S(xi | lam), unimodular on the axis."""
    if lam <= 0:
        raise ValueError("lam must be positive")

    def evaluate(z):
        z = np.asarray(z, dtype=complex)
        lg = (log_gamma_lifted(1.0 + z) + log_gamma_lifted(lam - z)
              - log_gamma_lifted(1.0 - z) - log_gamma_lifted(lam + z))
        return -np.exp(lg)

    return Symbol(evaluate, eps=min(1.0, lam), delta=0.5, kind="scattering",
                  params=float(lam), tends_to_one=False)


def balancing_lambda(a, b, c, d):
    """The shift lam with 1 - lam + sum(b-a) = 0 = 1 - lam + sum(c-d).

    Exists when sum(b-a) + sum(d-c) = 0; raises BalanceError otherwise.
    """
    sba = sum(b) - sum(a)
    sdc = sum(d) - sum(c)
    if abs(sba + sdc) > 1e-12:
        raise BalanceError("no balancing shift: sum(b-a) + sum(d-c) != 0")
    return 1.0 + sba


def augmented_scattering_factors(a, b, c, d):
    """Explicit Wiener-Hopf-type factors for the scattering-augmented quotient.

    With lam = balancing_lambda(a, b, c, d), returns callables
    (psi_minus_tilde, psi_plus_tilde); each tends to 1 at infinity and their
    product is the original (jointly balanced) quotient symbol times
    -S(xi | lam).
    """
    lam = balancing_lambda(a, b, c, d)

    def psi_minus_t(z):
        z = np.asarray(z, dtype=complex)
        out = log_gamma_lifted(lam + z) - log_gamma_lifted(1.0 + z)
        for aj, bj in zip(a, b):
            out += log_gamma_lifted(aj + z) - log_gamma_lifted(bj + z)
        return np.exp(out)

    def psi_plus_t(z):
        z = np.asarray(z, dtype=complex)
        out = log_gamma_lifted(1.0 - z) - log_gamma_lifted(lam - z)
        for cj, dj in zip(c, d):
            out += log_gamma_lifted(cj - z) - log_gamma_lifted(dj - z)
        return np.exp(out)

    return lam, psi_minus_t, psi_plus_t


# --- winding numbers ---------------------------------------------------------

def winding_number(symbol, r, n_samples=4096, max_refine=6):
    """Winding of {psi(i xi): -r <= xi <= r} closed through the point 1.

    Accumulates wrapped argument increments along the sampled curve; the
    sampling is refined (doubled) until all increments are below pi/2 and
    the result is stable.
    """
    for attempt in range(max_refine):
        n = n_samples * (2 ** attempt)
        xi = np.linspace(-r, r, n)
        vals = symbol.on_axis(xi)
        if np.min(np.abs(vals)) < _ZERO_TOL:
            raise ZeroOnContourError("symbol vanishes on the sampled contour")
        pts = np.concatenate([[1.0 + 0j], vals, [1.0 + 0j]])
        inc = np.angle(pts[1:] / pts[:-1])
        if np.max(np.abs(inc)) < np.pi / 2:
            total = inc.sum() / (2.0 * np.pi)
            k = int(round(total))
            if abs(total - k) > 1e-6:
                raise ResolutionError(f"winding accumulation non-integer: {total}")
            return k
    raise ResolutionError("argument increments >= pi/2 at maximal refinement")


# --- Wiener-Hopf factorization -----------------------------------------------

@dataclass
class WienerHopfFactors:
    """Numerical Wiener-Hopf factors psi = psi_minus * psi_plus.

    ``psi_minus`` is holomorphic, zero-free and -> 1 on Re z > -eps_prime;
    ``psi_plus`` likewise on Re z < eps_prime.  Both are represented by
    Cauchy integrals over the stored contour data and may be evaluated
    anywhere strictly between the two contour lines.
    """
    symbol: Symbol
    eps_prime: float
    chi_contour_data: dict = field(repr=False)

    def _chi(self, w, side):
        data = self.chi_contour_data[side]
        z = data["nodes"]
        wt = data["weights"] * data["logpsi"]
        w = np.asarray(w, dtype=complex)
        flat = w.ravel()
        res = np.empty(flat.shape, dtype=complex)
        chunk = 2048
        for i in range(0, flat.size, chunk):
            ww = flat[i:i + chunk]
            res[i:i + chunk] = (wt[None, :] / (z[None, :] - ww[:, None])).sum(axis=1)
        res /= (2.0j * np.pi)
        out = res.reshape(w.shape)
        return -out if side == "left" else out

    def log_psi_minus(self, w):
        return self._chi(w, "left")

    def log_psi_plus(self, w):
        return self._chi(w, "right")

    def psi_minus(self, w):
        return np.exp(self.log_psi_minus(w))

    def psi_plus(self, w):
        return np.exp(self.log_psi_plus(w))

    def reconstruction_residual(self, n_probe=64):
        """max |psi_minus psi_plus / psi - 1| over probe grids on 3 vertical lines."""
        xs = (-0.45 * self.eps_prime, 0.0, 0.45 * self.eps_prime)
        worst = 0.0
        for x0 in xs:
            tau = np.linspace(-8.0, 8.0, n_probe)
            w = x0 + 1j * tau
            rec = self.psi_minus(w) * self.psi_plus(w)
            worst = max(worst, float(np.max(np.abs(rec / self.symbol(w) - 1.0))))
        return worst

    def to_json_dict(self):
        d = {"eps_prime": self.eps_prime, "symbol": self.symbol.to_json_dict()}
        for side in ("left", "right"):
            c = self.chi_contour_data[side]
            d[side] = {
                "nodes_re": list(c["nodes"].real), "nodes_im": list(c["nodes"].imag),
                "weights_re": list(c["weights"].real), "weights_im": list(c["weights"].imag),
                "logpsi_re": list(c["logpsi"].real), "logpsi_im": list(c["logpsi"].imag),
            }
        return d


def _contour_nodes(eps_prime, r0, r_inner=20.0, tail_levels=28, tail_per_level=8):
    """Quadrature nodes along a vertical line: dense center + geometric tails.

    The inner zone |tau| <= r_inner uses panels ~ eps'/2 wide so the Cauchy
    kernel 1/(z - w) is resolved for targets w one strip-width away; beyond
    r_inner panels widen to O(1), and exponentially mapped tails handle the
    algebraic decay out to r0 * e^(tail_levels).
    """
    width = min(1.0, max(eps_prime / 2.0, 0.02))
    n_inner = max(4, int(np.ceil(2.0 * min(r_inner, r0) / width)))
    tau_c, w_c = gauss_panels(uniform_edges(-min(r_inner, r0), min(r_inner, r0), n_inner), 10)
    taus = [tau_c]
    wts = [w_c]
    if r0 > r_inner:
        n_mid = max(2, int(np.ceil(r0 - r_inner)))
        for sign in (+1.0, -1.0):
            t, w = gauss_panels(uniform_edges(r_inner, r0, n_mid), 10)
            taus.append(sign * t)
            wts.append(w)
    for sign in (+1.0, -1.0):
        edges = r0 * np.exp(np.linspace(0.0, tail_levels, tail_levels * 2 + 1))
        t, w = gauss_panels(edges, tail_per_level)
        taus.append(sign * t)
        wts.append(w)
    tau = np.concatenate(taus)
    wt = np.concatenate(wts)
    order = np.argsort(tau)
    return tau[order], wt[order]


def _continuous_log(vals):
    """Unwrap log of a sequence of nonzero values (imag increments < pi)."""
    mags = np.log(np.abs(vals))
    args = np.angle(vals)
    d = np.diff(args)
    d = (d + np.pi) % (2 * np.pi) - np.pi
    unwrapped = np.concatenate([[args[0]], args[0] + np.cumsum(d)])
    return mags + 1j * unwrapped


def wiener_hopf_factorize(symbol, eps_prime=None, tol=1e-8, r0=None):
    """Factor psi = psi_minus psi_plus by Cauchy-splitting log psi.

    Requires winding number zero and a zero-free closed strip; the contour
    is truncated where the decay hypothesis bounds the tail below ``tol``.

    Raises
    ------
    NonzeroWindingError, ZeroInStripError, QuadratureError
    """
    if not symbol.tends_to_one:
        raise NonzeroWindingError(
            "symbol does not tend to 1 along the axis; factorization with "
            "normalized factors is not available")
    if eps_prime is None:
        eps_prime = symbol.eps / 4.0
    if eps_prime <= 0 or eps_prime >= symbol.eps:
        raise ValueError("eps_prime must lie in (0, eps)")
    k = winding_number(symbol, r=max(50.0, 20.0 / eps_prime))
    if k != 0:
        raise NonzeroWindingError(f"winding number {k} != 0")

    # zero-freeness of psi on the closed strip |Re z| <= eps'
    for x0 in np.linspace(-eps_prime, eps_prime, 5):
        tau = np.linspace(-40.0, 40.0, 801)
        if np.min(np.abs(symbol(x0 + 1j * tau))) < _ZERO_TOL:
            raise ZeroInStripError("symbol vanishes inside the factorization strip")

    tail = symbol.tail
    if r0 is None:
        if tail.get("type") == "exponential":
            r0 = 60.0 / tail["rate"]
        else:
            r0 = 60.0

    data = {}
    for side, x0 in (("left", -eps_prime), ("right", +eps_prime)):
        tau, wt = _contour_nodes(eps_prime, r0)
        z = x0 + 1j * tau
        logpsi = symbol.log_on_strip(z)
        # continuity + endpoint consistency (winding zero => args vanish at ends)
        logpsi_c = _continuous_log(np.exp(logpsi)) if tail.get("type") != "power" else logpsi
        ends = max(abs(logpsi_c[0].imag), abs(logpsi_c[-1].imag))
        if ends > 0.1:
            raise QuadratureError("contour log did not return to branch 0 at the ends")
        tail_mag = abs(logpsi_c[-1])
        if tail_mag * 2.0 > tol and tail.get("type") == "exponential":
            raise QuadratureError(
                f"contour truncation tail {tail_mag:.2e} exceeds tolerance {tol:.2e}")
        data[side] = {"nodes": z, "weights": 1j * wt, "logpsi": logpsi_c}

    return WienerHopfFactors(symbol=symbol, eps_prime=eps_prime,
                             chi_contour_data=data)


def factor_cache_path(symbol, cache_dir):
    return os.path.join(cache_dir, f"whf_{symbol.content_hash()}.json")


def save_factors(factors, cache_dir):
    os.makedirs(cache_dir, exist_ok=True)
    path = factor_cache_path(factors.symbol, cache_dir)
    with open(path, "w") as fh:
        json.dump(factors.to_json_dict(), fh)
    return path


def load_factors(symbol, cache_dir):
    path = factor_cache_path(symbol, cache_dir)
    if not os.path.exists(path):
        return None
    with open(path) as fh:
        d = json.load(fh)
    data = {}
    for side in ("left", "right"):
        c = d[side]
        data[side] = {
            "nodes": np.array(c["nodes_re"]) + 1j * np.array(c["nodes_im"]),
            "weights": np.array(c["weights_re"]) + 1j * np.array(c["weights_im"]),
            "logpsi": np.array(c["logpsi_re"]) + 1j * np.array(c["logpsi_im"]),
        }
    return WienerHopfFactors(symbol=symbol, eps_prime=d["eps_prime"],
                             chi_contour_data=data)


def c2_norm(symbol, n_tau=2001, tau_max=200.0):
    """Diagnostic strip norm: sup |psi| plus the largest line L2 norm of psi-1."""
    sup = 0.0
    l2 = 0.0
    tau = np.linspace(-tau_max, tau_max, n_tau)
    for x0 in np.linspace(-symbol.eps / 2, symbol.eps / 2, 5):
        vals = symbol(x0 + 1j * tau)
        sup = max(sup, float(np.max(np.abs(vals))))
        l2 = max(l2, float(np.sqrt(np.trapezoid(np.abs(vals - 1.0) ** 2, tau))))
    return sup + l2
