"""Complex special functions: Gamma, upper incomplete Gamma, Riemann zeta.

Everything here is vectorized over numpy arrays and works in double
precision.  Scalar inputs give scalar outputs.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import loggamma as _loggamma

from .errors import PoleError

_EPS = np.finfo(float).eps
_TINY = 1e-300

# B_{2k} / (2k)!  for the Euler-Maclaurin tail of zeta
_B2K = [1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6, -3617 / 510,
        43867 / 798, -174611 / 330, 854513 / 138, -236364091 / 2730,
        8553103 / 6, -23749461029 / 870, 8615841276005 / 14322]
_EM_COEF = [b / math.factorial(2 * k + 2) for k, b in enumerate(_B2K)]


def _as_complex(s):
    arr = np.asarray(s, dtype=complex)
    return arr, arr.ndim == 0


def _out(arr, scalar):
    return complex(arr) if scalar else arr


def _nonpositive_integer(s, tol=0.0):
    return (np.abs(s.imag) <= tol) & (s.real <= tol) & (np.abs(s.real - np.round(s.real)) <= tol)


def loggamma(s):
    """Principal branch of log Gamma(s) (scipy backend)."""
    arr, scalar = _as_complex(s)
    if np.any(_nonpositive_integer(arr)):
        bad = arr[_nonpositive_integer(arr)].ravel()[0]
        raise PoleError(f"Gamma has a pole at s={bad.real:g}", location=complex(bad))
    return _out(_loggamma(arr), scalar)


def gamma_c(s):
    """Gamma(s) for complex s.

    Raises PoleError at non-positive integers.  Computed as exp(loggamma) so
    that |Im s| up to a few hundred neither overflows nor underflows.
    """
    arr, scalar = _as_complex(s)
    return _out(np.exp(loggamma(arr)), scalar)


def _gammainc_series(s, z, maxiter):
    """Lower incomplete gamma: z^s e^{-z} sum_k z^k / (s)_{k+1}."""
    term = 1.0 / s
    total = term.copy()
    active = np.ones(s.shape, dtype=bool)
    for k in range(1, maxiter):
        term = np.where(active, term * z / (s + k), term)
        total = np.where(active, total + term, total)
        active &= np.abs(term) > _EPS * np.abs(total)
        if not active.any():
            break
    return np.exp(s * np.log(z) - z) * total


def _gammainc_cf(s, z, maxiter):
    """Upper incomplete gamma by the Legendre continued fraction (modified Lentz)."""
    b = z + 1.0 - s
    c = np.full(s.shape, 1.0 / _TINY, dtype=complex)
    d = 1.0 / np.where(np.abs(b) < _TINY, _TINY, b)
    h = d.copy()
    active = np.ones(s.shape, dtype=bool)
    for i in range(1, maxiter):
        an = -i * (i - s)
        b = b + 2.0
        d = an * d + b
        d = np.where(np.abs(d) < _TINY, _TINY, d)
        c = b + an / c
        c = np.where(np.abs(c) < _TINY, _TINY, c)
        d = 1.0 / d
        delta = c * d
        h = np.where(active, h * delta, h)
        active &= np.abs(delta - 1.0) > 4 * _EPS
        if not active.any():
            break
    return np.exp(s * np.log(z) - z) * h


def gammainc_upper(s, z, maxiter: int = 4000):
    """Upper incomplete Gamma(s, z) for complex s and complex z with Re z >= 0.

    Power series (through Gamma(s) - gamma(s, z)) when |z| < |s| + 4,
    continued fraction otherwise.  Non-positive integer s always goes through
    the continued fraction, which stays valid there.
    """
    s_arr, s_scalar = _as_complex(s)
    z_arr, z_scalar = _as_complex(z)
    s_b, z_b = np.broadcast_arrays(s_arr, z_arr)
    s_b = s_b.astype(complex).ravel()
    z_b = z_b.astype(complex).ravel()
    out = np.empty(s_b.shape, dtype=complex)

    near_pole = _nonpositive_integer(s_b, tol=1e-9)
    use_series = (np.abs(z_b) < np.abs(s_b) + 4.0) & ~near_pole
    if use_series.any():
        ss, zz = s_b[use_series], z_b[use_series]
        out[use_series] = np.exp(_loggamma(ss)) - _gammainc_series(ss, zz, maxiter)
    if (~use_series).any():
        ss, zz = s_b[~use_series], z_b[~use_series]
        out[~use_series] = _gammainc_cf(ss, zz, maxiter)
    shape = np.broadcast_shapes(s_arr.shape, z_arr.shape)
    out = out.reshape(shape)
    return complex(out) if shape == () else out


def _zeta_em(s):
    """Euler-Maclaurin for Re s >= -1 (s != 1)."""
    t = np.abs(s.imag)
    n_cut = int(np.max(np.ceil(t / 3.0))) + 20 if s.size else 20
    n = np.arange(1, n_cut, dtype=float)
    logn = np.log(n)
    head = np.zeros(s.shape, dtype=complex)
    chunk = max(1, 2_000_000 // max(1, n.size))
    flat_s = s.ravel()
    flat_head = head.ravel()
    for lo in range(0, flat_s.size, chunk):
        block = flat_s[lo:lo + chunk]
        flat_head[lo:lo + chunk] = np.exp(-np.outer(block, logn)).sum(axis=1)
    head = flat_head.reshape(s.shape)
    N = float(n_cut)
    Ns = np.exp(-s * math.log(N))
    tail = N * Ns / (s - 1.0) + 0.5 * Ns
    # sum_k B_2k/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
    rising = s.copy()
    power = Ns / N
    for k, coef in enumerate(_EM_COEF):
        term = coef * rising * power
        tail = tail + term
        rising = rising * (s + 2 * k + 1) * (s + 2 * k + 2)
        power = power / (N * N)
    return head + tail


def zeta_r(s):
    """Riemann zeta(s) for complex s != 1.

    Euler-Maclaurin summation with Bernoulli tail for Re s >= -1, the
    functional equation zeta(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s) zeta(1-s)
    for Re s < -1.
    """
    arr, scalar = _as_complex(s)
    if np.any(arr == 1.0):
        raise PoleError("zeta has a pole at s=1", location=1.0)
    arr = np.atleast_1d(arr)
    out = np.empty(arr.shape, dtype=complex)
    # Euler-Maclaurin is accurate a little left of 0; the reflection then never
    # evaluates zeta(1 - s) near its pole
    right = arr.real >= -1.0
    if right.any():
        out[right] = _zeta_em(arr[right])
    left = ~right
    if left.any():
        sl = arr[left]
        trivial = (sl.imag == 0) & (np.mod(sl.real, 2.0) == 0)
        zr = _zeta_em(1.0 - sl)
        # log of 2^s pi^(s-1) Gamma(1-s); sin handled separately to keep its sign
        logfac = sl * math.log(2.0) + (sl - 1.0) * math.log(math.pi) + _loggamma(1.0 - sl)
        val = np.exp(logfac) * np.sin(0.5 * math.pi * sl) * zr
        out[left] = np.where(trivial, 0.0, val)
    out = out.reshape(np.shape(np.asarray(s)))
    return complex(out) if scalar else out


def zhat(s):
    """Completed zeta pi^{-s/2} Gamma(s/2) zeta(s); simple poles at 0 and 1."""
    arr, scalar = _as_complex(s)
    if np.any((arr == 0.0) | (arr == 1.0)):
        raise PoleError("completed zeta has poles at s=0 and s=1",
                        location=complex(arr[(arr == 0.0) | (arr == 1.0)].ravel()[0]))
    arr = np.atleast_1d(arr)
    # the trivial zeros of zeta cancel the poles of Gamma(s/2): use the
    # symmetric form on the left half-plane
    left = arr.real < 0.5
    work = np.where(left, 1.0 - arr, arr)
    val = np.exp(-0.5 * work * math.log(math.pi) + _loggamma(0.5 * work)) * zeta_r(work)
    val = val.reshape(np.shape(np.asarray(s)))
    return complex(val) if scalar else val
