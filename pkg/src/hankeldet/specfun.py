"""Complex special functions used by every other module.

Gamma is a fixed 15-term Lanczos rational approximation (g = 607/128) with
the reflection formula for Re z < 1/2; no external special-function library
is involved, so accuracy is predictable across platforms.  The remaining
functions (Pochhammer, generalized hypergeometric series, Chebyshev-U,
Laguerre, Struve, Bessel J0) are the classical series/recurrences, each with
an explicit failure mode instead of silent truncation.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    PoleError, BranchJumpError, DivergenceError, DenominatorPoleError,
    ConvergenceError,
)
from .quadrature import _gl_rule

_LANCZOS_G = 607.0 / 128.0
_LANCZOS_C = np.array([
    0.99999999999999709182,
    57.156235665862923517, -59.597960355475491248, 14.136097974741747174,
    -0.49191381609762019978, 0.33994649984811888699e-4,
    0.46523628927048575665e-4, -0.98374475304879564677e-4,
    0.15808870322491248884e-3, -0.21026444172410488319e-3,
    0.21743961811521264320e-3, -0.16431810653676389022e-3,
    0.84418223983852743293e-4, -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
])

_LOG_SQRT_TWO_PI = 0.5 * np.log(2.0 * np.pi)


def _is_nonpositive_integer(z, tol=1e-14):
    z = complex(z)
    if z.real > 0.5 or abs(z.imag) > tol:
        return False
    return abs(z.real - round(z.real)) <= tol * max(1.0, abs(z.real))


def _lanczos_log_gamma_right(z):
    """log Gamma via Lanczos, valid for Re z >= 0.5 (array capable)."""
    z = np.asarray(z, dtype=complex)
    w = z - 1.0
    a = np.full(z.shape, _LANCZOS_C[0], dtype=complex)
    for k in range(1, len(_LANCZOS_C)):
        a = a + _LANCZOS_C[k] / (w + k)
    t = w + _LANCZOS_G + 0.5
    return _LOG_SQRT_TWO_PI + (w + 0.5) * np.log(t) - t + np.log(a)


def log_gamma_lifted(z, max_lift=2000):
    """log Gamma on complex arrays via recurrence lifting into Re z >= 1/2.

    log G(z) = log G(z+k) - sum_j log(z+j).  For Re z > 0 this is continuous
    along vertical lines (every log argument stays in the right half-plane),
    which the contour machinery relies on.  Branch for Re z <= 0 is
    unspecified modulo 2*pi*i; exp() of the result is always Gamma(z).
    """
    z = np.asarray(z, dtype=complex)
    zz = z.copy()
    acc = np.zeros(z.shape, dtype=complex)
    for _ in range(max_lift):
        mask = zz.real < 0.5
        if not np.any(mask):
            break
        acc[mask] -= np.log(zz[mask])
        zz[mask] += 1.0
    else:
        raise ValueError("argument too far left to lift")
    return acc + _lanczos_log_gamma_right(zz)


def log_gamma_array(z):
    """Branch-unspecified log Gamma on complex arrays.

    Reflection is used for Re z < 1/2 at moderate heights; far from the real
    axis the recurrence lift avoids sin(pi z) overflow.  Imaginary parts may
    differ from the principal branch by multiples of 2*pi; exp() of the
    result is always Gamma(z).  Use :func:`log_gamma_continuous` when a
    coherent branch along a path is needed.
    """
    z = np.asarray(z, dtype=complex)
    out = np.empty(z.shape, dtype=complex)
    right = z.real >= 0.5
    refl = ~right & (np.abs(z.imag) <= 8.0)
    lift = ~right & ~refl
    if np.any(right):
        out[right] = _lanczos_log_gamma_right(z[right])
    if np.any(refl):
        zl = z[refl]
        # Gamma(z) Gamma(1-z) = pi / sin(pi z)
        out[refl] = (np.log(np.pi) - np.log(np.sin(np.pi * zl))
                     - _lanczos_log_gamma_right(1.0 - zl))
    if np.any(lift):
        out[lift] = log_gamma_lifted(z[lift])
    return out


def gamma_array(z):
    return np.exp(log_gamma_array(z))


def gamma(z):
    """Euler gamma function for scalar complex z (Lanczos + reflection)."""
    if _is_nonpositive_integer(z):
        raise PoleError(f"gamma pole at z = {z}")
    val = gamma_array(np.array([complex(z)]))[0]
    if np.isreal(complex(z)) and complex(z).imag == 0.0:
        return complex(val.real, 0.0) if abs(val.imag) > 0 else val
    return complex(val)


def lgamma_real_signed(x):
    """(log|Gamma(x)|, sign) for real non-pole x; exact sign bookkeeping."""
    x = float(x)
    if x > 0.5:
        return float(_lanczos_log_gamma_right(np.array([x + 0j]))[0].real), 1.0
    if _is_nonpositive_integer(x):
        raise PoleError(f"gamma pole at x = {x}")
    s = np.sin(np.pi * x)
    lg = (np.log(np.pi) - np.log(abs(s))
          - _lanczos_log_gamma_right(np.array([(1.0 - x) + 0j]))[0].real)
    return float(lg), float(np.sign(s))


def log_gamma_continuous(path):
    """log Gamma along a path, with imaginary part continued continuously.

    The first point is assigned its principal value; subsequent points are
    adjusted by multiples of 2*pi so that increments of the imaginary part
    stay below pi in magnitude.

    Raises
    ------
    BranchJumpError
        If a raw increment cannot be disambiguated (>= pi after wrapping).
    PoleError
        If any path point is a pole.
    """
    pts = [complex(p) for p in path]
    if not pts:
        return []
    for p in pts:
        if _is_nonpositive_integer(p):
            raise PoleError(f"gamma pole on path at {p}")
    raw = log_gamma_array(np.array(pts))
    # principal value at the first point
    out = [complex(raw[0].real, _wrap_to_principal(raw[0].imag))]
    for k in range(1, len(pts)):
        prev = out[-1].imag
        inc = _wrap_angle(raw[k].imag - prev)
        if abs(inc) >= np.pi * (1.0 - 1e-9):
            raise BranchJumpError(
                f"argument increment {inc:.3f} >= pi between path points "
                f"{pts[k-1]} and {pts[k]}")
        out.append(complex(raw[k].real, prev + inc))
    return out


def _wrap_angle(a):
    """Wrap to (-pi, pi]."""
    return float(np.angle(np.exp(1j * a)))


def _wrap_to_principal(a):
    return _wrap_angle(a)


def pochhammer(c, k):
    """(c)_k = c (c+1) ... (c+k-1), exact product; (c)_0 = 1."""
    if k < 0 or int(k) != k:
        raise ValueError("pochhammer order must be a non-negative integer")
    out = complex(1.0)
    c = complex(c)
    for j in range(int(k)):
        out *= c + j
    return out


@dataclass(frozen=True)
class PFQParams:
    """Parameter lists of a generalized hypergeometric series pFq."""
    numerator: tuple = field(default_factory=tuple)
    denominator: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "numerator", tuple(complex(a) for a in self.numerator))
        object.__setattr__(self, "denominator", tuple(complex(b) for b in self.denominator))
        for b in self.denominator:
            if _is_nonpositive_integer(b):
                raise DenominatorPoleError(f"denominator parameter {b} is a non-positive integer")

    @property
    def p(self):
        return len(self.numerator)

    @property
    def q(self):
        return len(self.denominator)


@dataclass(frozen=True)
class PFQResult:
    value: complex
    error_estimate: float
    n_terms: int


_PFQ_TERM_CAP = 10_000


def pfq(params, z, rtol=1e-15):
    """Evaluate pFq(numerator; denominator; z) by direct summation.

    Summation stops when two consecutive terms fall below ``rtol * |sum|``.
    Evaluation outside the convergence domain raises instead of returning a
    silently-truncated value (determinant pipelines must not ingest wrong
    values).

    Returns
    -------
    PFQResult with the value and a last-term error estimate.
    """
    z = complex(z)
    p, q = params.p, params.q
    terminating = any(_is_nonpositive_integer(a) for a in params.numerator)
    if not terminating:
        if p == q + 1 and abs(z) >= 1.0:
            raise DivergenceError(
                f"{p}F{q} series diverges (or is on its convergence boundary) at |z| = {abs(z):.3g}")
        if p > q + 1 and z != 0:
            raise DivergenceError(f"{p}F{q} has zero radius of convergence")
    term = complex(1.0)
    total = complex(1.0)
    small_streak = 0
    for k in range(_PFQ_TERM_CAP):
        num = complex(1.0)
        for a in params.numerator:
            num *= a + k
        if num == 0:
            return PFQResult(total, abs(term), k + 1)
        den = complex(k + 1)
        for b in params.denominator:
            bb = b + k
            if bb == 0:
                raise DenominatorPoleError(f"denominator parameter {b} hit a pole at term {k}")
            den *= bb
        term = term * num / den * z
        total += term
        if abs(term) < rtol * max(abs(total), 1e-300):
            small_streak += 1
            if small_streak >= 2:
                return PFQResult(total, abs(term), k + 2)
        else:
            small_streak = 0
    raise ConvergenceError(
        f"pFq did not converge within {_PFQ_TERM_CAP} terms at z = {z}")


def chebyshev_u(n, x):
    """Chebyshev polynomial of the second kind, U_n(cos t) = sin((n+1)t)/sin t."""
    if n < 0:
        raise ValueError("n must be non-negative")
    um, u = 1.0, 2.0 * x
    if n == 0:
        return 1.0
    for _ in range(n - 1):
        um, u = u, 2.0 * x * u - um
    return u


def laguerre(n, x):
    """Laguerre polynomial L_n(x) by the stable three-term recurrence."""
    if n < 0:
        raise ValueError("n must be non-negative")
    lm, l = 1.0, 1.0 - x
    if n == 0:
        return lm * np.ones_like(x) if np.ndim(x) else 1.0
    for k in range(1, n):
        lm, l = l, ((2 * k + 1 - x) * l - k * lm) / (k + 1)
    return l


def laguerre_table(n_max, x):
    """L_0..L_n_max at array x, shape (n_max+1, len(x))."""
    x = np.asarray(x, dtype=float)
    out = np.empty((n_max + 1, x.size))
    out[0] = 1.0
    if n_max >= 1:
        out[1] = 1.0 - x
    for k in range(1, n_max):
        out[k + 1] = ((2 * k + 1 - x) * out[k] - k * out[k - 1]) / (k + 1)
    return out


_STRUVE_X_SERIES = 10.0
_STRUVE_X_MAX = 30.0


def struve(nu, x):
    """Struve function H_nu(x) by its ascending power series.

    For 10 < x <= 30 the same series is summed in 40-digit arithmetic
    (mpmath) to absorb cancellation; beyond x = 30 the ascending series is
    out of its supported range and a ConvergenceError is raised.
    """
    if x <= 0:
        raise ValueError("struve requires x > 0")
    if nu < 0:
        raise ValueError("struve requires nu >= 0")
    if x > _STRUVE_X_MAX:
        raise ConvergenceError(f"struve ascending series unsupported for x = {x} > {_STRUVE_X_MAX}")
    if x <= _STRUVE_X_SERIES:
        half = 0.5 * x
        # term_k = (-1)^k (x/2)^{2k+nu+1} / (Gamma(k+3/2) Gamma(k+nu+3/2))
        lg0, _ = lgamma_real_signed(1.5)
        lg1, _ = lgamma_real_signed(nu + 1.5)
        term = np.exp((nu + 1.0) * np.log(half) - lg0 - lg1)
        total = term
        k = 0
        while abs(term) > 1e-17 * max(abs(total), 1e-30) and k < 400:
            k += 1
            term *= -(half * half) / ((k + 0.5) * (k + nu + 0.5))
            total += term
        return float(total)
    import mpmath
    with mpmath.workdps(40):
        half = mpmath.mpf(x) / 2
        term = half ** (nu + 1) / (mpmath.gamma(mpmath.mpf(3) / 2) * mpmath.gamma(nu + mpmath.mpf(3) / 2))
        total = term
        k = 0
        while abs(term) > mpmath.mpf(10) ** (-30) * abs(total) and k < 2000:
            k += 1
            term *= -(half * half) / ((k + mpmath.mpf(1) / 2) * (k + nu + mpmath.mpf(1) / 2))
            total += term
        return float(total)


_J0_SERIES_X = 8.0


def bessel_j0(x):
    """Bessel J_0: ascending series for x <= 8, Bessel integral beyond."""
    x = float(abs(x))
    if x <= _J0_SERIES_X:
        q = -0.25 * x * x
        term, total = 1.0, 1.0
        k = 0
        while abs(term) > 1e-18 * max(abs(total), 1e-30) and k < 80:
            k += 1
            term *= q / (k * k)
            total += term
        return float(total)
    t, w = _gl_rule(400)
    theta = 0.5 * np.pi * (t + 1.0)
    return float((0.5 * np.pi * w * np.cos(x * np.sin(theta))).sum() / np.pi)
