"""Boundary function h_E: contour route, residue route, and the zeta-integral decomposition.

f_E(x) = (1/2 pi i) int_{(c)} Z(s + 1/2) x^{-s} ds, so the Mellin transform of
f_E is Z(s + 1/2) and a pole of Z at lam becomes the exponent lam - 1/2 in
h_E(x) = f_E(x) - x^{-1} f_E(1/x).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import DomainError, InputError, PrecisionError
from .hasse import ON_LINE_NOTE, PoleCatalog, zeta_integral_Z
from .lfunc import CoefficientTable, CurveData
from .report import VerificationReport

SHIFT = 0.5
ROUTE_TOL = 5e-2
IDENTITY_TOL = 1e-4
# absolute floor under which route errors are treated as noise in the trend check
TREND_FLOOR = 1e-9
TREND_MARGIN = 0.10
TRUNCATION_TOL = 1e-8
# abscissa used for f_E on x >= 1 inside the identity check: f is tiny there and
# x^{-c} with large c keeps quadrature noise below the integrand
RIGHT_ABSCISSA = 12.0


@dataclass(frozen=True)
class ContourSpec:
    c: float = 2.0
    T: float = 80.0
    nodes_per_unit: int = 16

    def __post_init__(self):
        if self.T < 20:
            raise InputError(f"truncation T={self.T} below 20")
        if self.nodes_per_unit < 8:
            raise InputError(f"nodes per unit {self.nodes_per_unit} below 8")

    def validate(self, max_pole_re: float = 2.0) -> None:
        """The shifted abscissa c + 1/2 must lie right of every pole of Z."""
        if not self.c + SHIFT > max_pole_re:
            raise DomainError(f"contour abscissa c={self.c} is not right of the poles "
                              f"(need c > {max_pole_re - SHIFT})")


@dataclass(frozen=True)
class SpectralTerm:
    lam: complex
    m: int
    coefficient: complex


def spectral_terms(catalog: PoleCatalog) -> list[SpectralTerm]:
    """C_m(lam) (-1)^{m-1}/(m-1)! for every catalog entry and m."""
    out = []
    for e in catalog.entries:
        for m, c in enumerate(e.principal, start=1):
            coef = complex(c) * (-1) ** (m - 1) / math.factorial(m - 1)
            if coef != 0:
                out.append(SpectralTerm(e.lam, m, coef))
    return out


class BoundaryFunction:
    """f_E and h_E from one tabulation of Z(c + 1/2 + it) on the trapezoid nodes."""

    def __init__(self, curve: CurveData, table: CoefficientTable, spec: ContourSpec | None = None,
                 max_pole_re: float = 2.0):
        spec = spec or ContourSpec()
        spec.validate(max_pole_re)
        self.curve, self.table, self.spec = curve, table, spec
        dt = 1.0 / spec.nodes_per_unit
        n_half = int(round(spec.T / dt))
        t_pos = dt * np.arange(n_half + 1)
        z_pos = np.asarray(zeta_integral_Z(curve, table, spec.c + SHIFT + 1j * t_pos))
        # Z(conj s) = conj Z(s): the lower half of the line is the mirror image
        self.t = np.concatenate([-t_pos[:0:-1], t_pos])
        self.z = np.concatenate([np.conj(z_pos[:0:-1]), z_pos])
        w = np.full(self.t.size, dt)
        w[0] = w[-1] = dt / 2
        self.weights = w * self.z / (2 * math.pi)
        self.z_edge = float(abs(z_pos[-1]))
        # |Z| decays like exp(-pi t / 4) along the line
        self._tail = 2 * self.z_edge * (4 / math.pi) / (2 * math.pi)

    def f(self, x, return_error: bool = False):
        xa = np.asarray(x, dtype=float)
        if np.any(xa <= 0):
            raise InputError("x must be positive")
        flat = xa.ravel()
        logx = np.log(flat)
        out = np.empty(flat.shape, dtype=complex)
        chunk = max(1, 2_000_000 // self.t.size)
        for lo in range(0, flat.size, chunk):
            lx = logx[lo:lo + chunk]
            phase = np.exp(-1j * np.outer(lx, self.t))
            out[lo:lo + chunk] = np.exp(-self.spec.c * lx) * (phase @ self.weights)
        err = self._tail * np.exp(-self.spec.c * logx)
        out = out.reshape(xa.shape)
        err = err.reshape(xa.shape)
        if np.any(err > TRUNCATION_TOL * np.maximum(1.0, np.abs(out))):
            warnings.warn(f"f_E truncation estimate up to {float(np.max(err)):.2e} "
                          f"(T={self.spec.T})", RuntimeWarning, stacklevel=2)
        if xa.ndim == 0:
            out, err = complex(out), float(err)
        return (out, err) if return_error else out

    def h(self, x, return_error: bool = False):
        xa = np.asarray(x, dtype=float)
        fx, ex = self.f(xa, return_error=True)
        fi, ei = self.f(1.0 / xa, return_error=True)
        val = fx - fi / xa
        err = ex + ei / xa
        return (val, err) if return_error else val


_CACHE: dict = {}


def boundary_function(curve: CurveData, table: CoefficientTable,
                      spec: ContourSpec | None = None) -> BoundaryFunction:
    spec = spec or ContourSpec()
    key = (curve, table.N, spec)
    if key not in _CACHE:
        _CACHE[key] = BoundaryFunction(curve, table, spec)
    return _CACHE[key]


def f_E(curve: CurveData, table: CoefficientTable, spec: ContourSpec | None, x,
        return_error: bool = False):
    """(1/2 pi) int_{-T}^{T} Z(c + 1/2 + it) x^{-c-it} dt by the trapezoid rule."""
    return boundary_function(curve, table, spec).f(x, return_error)


def h_E(curve: CurveData, table: CoefficientTable, spec: ContourSpec | None, x,
        return_error: bool = False):
    """h(x) = f_E(x) - x^{-1} f_E(1/x)."""
    return boundary_function(curve, table, spec).h(x, return_error)


def h_series(catalog: PoleCatalog, x, shift: float = SHIFT, t_max: float | None = None):
    """Residue expansion sum coefficient * x^{-(lam - shift)} (log x)^{m-1}.

    Terms with Im lam > 0 are doubled and their real part taken; terms with
    Im lam < 0 are their conjugates and are skipped.
    """
    terms = spectral_terms(catalog)
    if not terms:
        raise InputError("empty pole catalog")
    xa = np.asarray(x, dtype=float)
    if np.any(xa <= 0):
        raise InputError("x must be positive")
    lx = np.log(xa)
    out = np.zeros(xa.shape, dtype=complex)
    for term in terms:
        if t_max is not None and abs(term.lam.imag) > t_max + 1e-9:
            continue
        if term.lam.imag < 0:
            continue
        val = term.coefficient * np.exp(-(term.lam - shift) * lx) * lx ** (term.m - 1)
        out = out + (2 * val.real if term.lam.imag > 0 else val)
    return complex(out) if xa.ndim == 0 else out


def compare_routes(curve: CurveData, table: CoefficientTable, spec: ContourSpec | None,
                   catalog: PoleCatalog, xs, t_maxes=(10.0, 20.0, 40.0),
                   tol: float = ROUTE_TOL) -> VerificationReport:
    """Contour route vs residue route for h_E on xs, with the convergence trend in t_max."""
    xs = np.asarray(xs, dtype=float)
    if np.any((xs < 0.05) | (xs > 0.95)):
        raise InputError("compare_routes samples must lie in [0.05, 0.95]")
    hc = np.asarray(h_E(curve, table, spec, xs))
    t_maxes = [t for t in t_maxes if t <= catalog.t_max + 1e-9] or [catalog.t_max]
    errors, series = [], {}
    for tm in t_maxes:
        hs = np.asarray(h_series(catalog, xs, t_max=tm))
        series[tm] = hs
        errors.append(float(np.max(np.abs(hc - hs) / (1 + np.abs(hc)))))
    trend = all(e1 <= (1 + TREND_MARGIN) * e0 + TREND_FLOOR for e0, e1 in zip(errors, errors[1:]))
    final = errors[-1]
    idx = int(np.argmax(np.abs(hc - series[t_maxes[-1]])))
    score = max(final / tol, 0.0 if trend else math.inf)
    return VerificationReport(
        "boundary.compare_routes", complex(hc[idx]), complex(series[t_maxes[-1]][idx]),
        float(abs(hc[idx] - series[t_maxes[-1]][idx])), score, 1.0,
        params={"t_max": t_maxes[-1], "t_maxes": list(t_maxes), "route_tol": tol,
                "spec": vars(spec or ContourSpec())},
        notes=[ON_LINE_NOTE, "rel_err is max(route error / route_tol, trend violation)"],
        data={"x": xs, "h_contour": hc, "h_series": series[t_maxes[-1]],
              "errors": dict(zip(map(str, t_maxes), errors)), "monotone": trend,
              "route_error": final})


def _log_quad(func, a: float, b: float, epsabs: float):
    val, err = integrate.quad(func, a, b, complex_func=True, limit=400, epsabs=epsabs,
                              epsrel=1e-10)
    return complex(val), float(abs(err))


def verify_boundary_identity(curve: CurveData, table: CoefficientTable,
                             spec: ContourSpec | None, s_samples, *,
                             catalog: PoleCatalog | None = None,
                             tol: float = IDENTITY_TOL) -> VerificationReport:
    """Z(s) against int_1^inf x^{-1/2} f x^s + int_1^inf x^{-1/2} f x^{2-s} + int_0^1 x^{-1/2} h x^s."""
    bf = boundary_function(curve, table, spec)
    bf_right = boundary_function(curve, table, ContourSpec(RIGHT_ABSCISSA, bf.spec.T,
                                                           bf.spec.nodes_per_unit))
    re_max = max((e.lam.real for e in catalog.entries), default=2.0) if catalog else 2.0
    rows = []
    for s in s_samples:
        s = complex(s)
        if not s.real > re_max:
            raise DomainError(f"s={s} outside the window Re s > {re_max}")
        # int_0^1: integrand ~ x^{Re s - 2} |log x|^3, cut where it is below 1e-16
        z = complex(zeta_integral_Z(curve, table, s))
        eps = 1e-12 * abs(z)
        decay = s.real - re_max
        u_min = -min(700.0 / (bf.spec.c + 1), 45.0 / decay + 10.0)
        lower, e3 = _log_quad(lambda u: np.exp((s - SHIFT) * u) * bf.h(math.exp(u)), u_min, 0.0,
                              eps)
        upper1, e1 = _log_quad(lambda u: np.exp((s - SHIFT) * u) * bf_right.f(math.exp(u)), 0.0, 40.0,
                                eps)
        upper2, e2 = _log_quad(lambda u: np.exp((2 - s - SHIFT) * u) * bf_right.f(math.exp(u)), 0.0, 40.0,
                                eps)
        total = upper1 + upper2 + lower
        quad_err = e1 + e2 + e3
        if quad_err > tol * abs(z):
            raise PrecisionError(f"quadrature error {quad_err:.2e} at s={s}", achieved=quad_err)
        rows.append({"s": s, "Z": z, "xi_s": upper1, "xi_2ms": upper2, "omega": lower,
                     "sum": total, "rel_err": abs(total - z) / abs(z), "quad_err": quad_err})
    worst = max(rows, key=lambda r: r["rel_err"])
    return VerificationReport(
        "boundary.identity", worst["sum"], worst["Z"], abs(worst["sum"] - worst["Z"]),
        worst["rel_err"], tol, params={"s": [r["s"] for r in rows],
                                       "spec": vars(bf.spec),
                                       "right_abscissa": RIGHT_ABSCISSA},
        notes=["three-integral decomposition vs direct product evaluation"],
        data={"rows": rows})


def growth_exponent(x, h) -> tuple[float, float]:
    """Tail slopes: |h| ~ x^{-a0} as x -> 0 and |h| ~ x^{ainf} as x -> inf."""
    x = np.asarray(x, dtype=float)
    h = np.abs(np.asarray(h))
    if x.size < 8 or x.min() > 1e-3 or x.max() < 1e3:
        raise InputError("samples must span at least [1e-3, 1e3]")
    keep = h > 0
    x, h = x[keep], h[keep]
    lo = x <= x.min() * 10
    hi = x >= x.max() / 10
    if lo.sum() < 2 or hi.sum() < 2:
        raise InputError("need at least two nonzero samples in each end decade")
    s0 = np.polyfit(np.log(x[lo]), np.log(h[lo]), 1)[0]
    s1 = np.polyfit(np.log(x[hi]), np.log(h[hi]), 1)[0]
    return float(-s0), float(s1)
