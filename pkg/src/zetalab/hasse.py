"""Hasse zeta of the elliptic model, the zeta-integral product Z(s), its poles and zeros.

Z(s) = zhat(s/2)^2 * c_E^{-s} * zeta_E(s)^2, with
zeta_E(s) = n_E(s) zeta(s) zeta(s-1) / L(E,s) and
n_E(s) = prod_j (1 - k_j^{1-s})^{-1}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import special
from .errors import ConsistencyError, GeometryError, InputError, PoleError
from .lfunc import CoefficientTable, CurveData, l_value, lambda_E

CIRCLE_RADIUS = 0.05
CIRCLE_NODES = 64
ORDER_CAP = 8
ORDER_THRESHOLD = 1e-8
MERGE_RADIUS = 1e-6
MIN_RADIUS = 1e-5
SCAN_STEP = 0.02
ZERO_XTOL = 1e-9
# catalog centres must be tight: an offset d shows up as C_{m+1} ~ m d C_m
CENTRE_XTOL = 1e-14

CASES = ("endpoint-0-2", "center-1", "L-zero", "nE-zero", "merged")
ON_LINE_NOTE = ("zero search restricted to Re s = 1 (critical line of L(E,s)); "
                "zeros off that line would not be detected")


def _cplx(s):
    arr = np.asarray(s, dtype=complex)
    return arr, arr.ndim == 0


def n_E(curve: CurveData, s):
    """prod_j (1 - k_j^{1-s})^{-1}; raises PoleError on 1 + 2 pi i m / log k_j."""
    arr, scalar = _cplx(s)
    out = np.ones(arr.shape, dtype=complex)
    for j, k in enumerate(curve.fibers):
        factor = 1.0 - np.exp((1.0 - arr) * math.log(k))
        hit = factor == 0
        if not hit.any():
            # exact zeros of 1 - k^{1-s} do not always round to 0; test the lattice too
            m = (arr.imag * math.log(k)) / (2 * math.pi)
            hit = (arr.real == 1.0) & (np.abs(m - np.round(m)) < 1e-13)
        if hit.any():
            bad = complex(arr[hit].ravel()[0])
            m = int(round(bad.imag * math.log(k) / (2 * math.pi)))
            raise PoleError(f"n_E pole at s={bad} (fiber j={j}, k={k}, m={m})",
                            location=bad, j=j, m=m)
        out = out / factor
    return complex(out) if scalar else out


def n_E_inverse(curve: CurveData, s):
    """1/n_E(s) = prod_j (1 - k_j^{1-s}); entire."""
    arr, scalar = _cplx(s)
    out = np.ones(arr.shape, dtype=complex)
    for k in curve.fibers:
        out = out * (1.0 - np.exp((1.0 - arr) * math.log(k)))
    return complex(out) if scalar else out


def zeta_model(curve: CurveData, table: CoefficientTable, s):
    """zeta_E-script(s) = n_E(s) zeta(s) zeta(s-1) / L(E,s), valid on all of C."""
    arr, scalar = _cplx(s)
    if np.any(arr == 1.0) or np.any(arr == 2.0):
        raise PoleError("zeta(s) zeta(s-1) has poles at s=1 and s=2", location=complex(
            arr[(arr == 1.0) | (arr == 2.0)].ravel()[0]), factor="zeta")
    L = np.asarray(l_value(curve, table, arr))
    if np.any(L == 0):
        raise PoleError("L(E,s) vanishes (Gamma pole of the completion)",
                        location=complex(arr[L == 0].ravel()[0]), factor="L")
    val = n_E(curve, arr) * special.zeta_r(arr) * special.zeta_r(arr - 1.0) / L
    return complex(val) if scalar else val


def zeta_integral_Z(curve: CurveData, table: CoefficientTable, s):
    """Z(s) = zhat(s/2)^2 c_E^{-s} zeta_E-script(s)^2."""
    arr, scalar = _cplx(s)
    if np.any(arr == 0.0):
        raise PoleError("Z has a pole at s=0", location=0j, factor="zhat(s/2)")
    val = special.zhat(arr / 2.0) ** 2 * np.exp(-arr * math.log(curve.c_E)) \
        * zeta_model(curve, table, arr) ** 2
    return complex(val) if scalar else val


# --------------------------------------------------------------------------- zeros

def _bisect_vectorized(func, lo, hi, flo, xtol):
    lo, hi, flo = lo.copy(), hi.copy(), flo.copy()
    for _ in range(200):
        if not lo.size or np.max(hi - lo) <= xtol:
            break
        mid = 0.5 * (lo + hi)
        fm = func(mid)
        left = np.sign(fm) == np.sign(flo)
        lo = np.where(left, mid, lo)
        flo = np.where(left, fm, flo)
        hi = np.where(left, hi, mid)
    return 0.5 * (lo + hi)


def _sign_change_zeros(func, t_max, step, xtol):
    n = max(2, int(math.ceil(t_max / step)) + 1)
    t = np.linspace(0.0, t_max, n)
    r = func(t)
    # sign changes strictly inside; exact zeros at nodes are kept as is
    exact = t[r == 0]
    idx = np.flatnonzero(np.sign(r[:-1]) * np.sign(r[1:]) < 0)
    roots = _bisect_vectorized(func, t[idx], t[idx + 1], r[idx], xtol)
    return np.sort(np.concatenate([exact, roots]))


def _winding(func, center, radius, nodes=64):
    phi = 2 * math.pi * np.arange(nodes) / nodes
    vals = func(center + radius * np.exp(1j * phi))
    ang = np.unwrap(np.angle(np.append(vals, vals[0])))
    return int(round((ang[-1] - ang[0]) / (2 * math.pi)))


def critical_line_real(curve: CurveData, table: CoefficientTable, t, tol: float = 1e-6):
    """R(t) = Lambda(E,1+it), divided by i when omega = -1; real by the functional equation."""
    t = np.asarray(t, dtype=float)
    lam, err = lambda_E(curve, table, 1.0 + 1j * t, return_error=True)
    lam = np.asarray(lam)
    if curve.root_number_w == -1:
        lam = lam / 1j
    bad = np.abs(lam.imag) > tol * np.abs(lam) + 100 * np.asarray(err) + 1e-300
    if np.any(bad):
        raise ConsistencyError(
            f"Lambda(E,1+it) fails to be {'real' if curve.root_number_w == 1 else 'imaginary'} "
            f"at t={float(np.asarray(t)[bad].ravel()[0]):.6g}")
    return lam.real


def l_zero_scan(curve: CurveData, table: CoefficientTable, t_max: float,
                step: float = SCAN_STEP, xtol: float = ZERO_XTOL):
    """Ordinates gamma with Lambda(E, 1+i gamma) = 0, |gamma| <= t_max, with multiplicities.

    Returned sorted and closed under gamma -> -gamma.  Only the line Re s = 1
    is searched.
    """
    if t_max <= 0:
        raise InputError("t_max must be positive")

    def R(tt):
        return critical_line_real(curve, table, tt)

    pos = _sign_change_zeros(R, t_max, step, xtol)
    pos = pos[pos > 10 * xtol]
    lam = lambda s: np.asarray(lambda_E(curve, table, s))
    out: list[tuple[float, int]] = []
    # the centre is examined by the argument principle: even orders have no sign change
    central = _winding(lam, 1.0 + 0j, min(0.05, 0.5 * pos[0]) if pos.size else 0.05)
    if central > 0:
        out.append((0.0, central))
    for g in pos:
        neighbours = np.abs(pos - g)
        gap = np.min(neighbours[neighbours > 0]) if pos.size > 1 else 1.0
        mult = _winding(lam, 1.0 + 1j * g, min(0.01, gap / 3))
        out.append((float(g), max(mult, 1)))
        out.append((-float(g), max(mult, 1)))
    out.sort()
    return out


def hardy_z(t):
    """Hardy's function Z(t) = e^{i theta(t)} zeta(1/2 + i t), real for real t."""
    t = np.asarray(t, dtype=float)
    theta = special.loggamma(0.25 + 0.5j * t).imag - 0.5 * t * math.log(math.pi)
    return (np.exp(1j * theta) * special.zeta_r(0.5 + 1j * t)).real


def riemann_zero_ordinates(t_max: float, step: float = 0.05, xtol: float = ZERO_XTOL):
    """Positive ordinates of zeros of zeta on the critical line up to t_max."""
    if t_max < 14.0:
        return np.zeros(0)
    z = _sign_change_zeros(hardy_z, t_max, step, xtol)
    return z[z > 1.0]


# ------------------------------------------------------------------------ catalog

@dataclass
class PoleEntry:
    lam: complex
    order: int
    principal: np.ndarray  # C_1..C_order
    case: str
    radius: float = CIRCLE_RADIUS

    def to_json(self) -> dict:
        return {
            "lambda": [self.lam.real, self.lam.imag],
            "order": int(self.order),
            "principal": [[c.real, c.imag] for c in self.principal],
            "case": self.case,
        }

    @classmethod
    def from_json(cls, d: dict) -> "PoleEntry":
        return cls(complex(*d["lambda"]), int(d["order"]),
                   np.array([complex(*c) for c in d["principal"]]), str(d["case"]))

    def conjugate(self) -> "PoleEntry":
        return PoleEntry(self.lam.conjugate(), self.order, np.conj(self.principal), self.case,
                         self.radius)


@dataclass
class PoleCatalog:
    entries: list[PoleEntry]
    t_max: float = 0.0
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> list[dict]:
        return [e.to_json() for e in self.entries]

    @classmethod
    def from_json(cls, data: list[dict], t_max: float = 0.0) -> "PoleCatalog":
        return cls([PoleEntry.from_json(d) for d in data], t_max)

    def find(self, lam: complex, tol: float = 1e-6) -> PoleEntry | None:
        for e in self.entries:
            if abs(e.lam - lam) < tol:
                return e
        return None

    def restricted(self, t_max: float) -> "PoleCatalog":
        return PoleCatalog([e for e in self.entries if abs(e.lam.imag) <= t_max + 1e-9],
                           min(t_max, self.t_max), list(self.notes))

    def total_order(self, t_max: float | None = None) -> int:
        lim = math.inf if t_max is None else t_max + 1e-9
        return sum(e.order for e in self.entries if abs(e.lam.imag) <= lim)


def laurent_coefficients(func, lam: complex, radius: float, nodes: int, m_max: int = ORDER_CAP):
    """C_m = (1/2 pi i) oint f(s) (s - lam)^{m-1} ds for m = 1..m_max, plus max |f| on the circle."""
    phi = 2 * math.pi * (np.arange(nodes) + 0.5) / nodes
    dz = radius * np.exp(1j * phi)
    vals = np.asarray(func(lam + dz))
    coef = np.array([np.mean(vals * dz ** m) for m in range(1, m_max + 1)])
    return coef, float(np.max(np.abs(vals)))


def detect_order(coef: np.ndarray, radius: float, fmax: float,
                 threshold: float = ORDER_THRESHOLD) -> int:
    """Largest m with |C_m| r^{-m} above threshold * max|f| (0 when f is regular)."""
    order = 0
    for m, c in enumerate(coef, start=1):
        if abs(c) * radius ** (-m) > threshold * fmax:
            order = m
    return order


def _candidates(curve: CurveData, table: CoefficientTable, t_max: float, scan_step: float):
    cands: list[tuple[complex, str]] = [(0j, "endpoint-0-2"), (2 + 0j, "endpoint-0-2"),
                                        (1 + 0j, "center-1")]
    for k in curve.fibers:
        period = 2 * math.pi / math.log(k)
        for m in range(1, int(t_max / period) + 1):
            cands.append((complex(1.0, m * period), "nE-zero"))
    for g, _mult in l_zero_scan(curve, table, t_max, step=scan_step, xtol=CENTRE_XTOL):
        if g > 0:
            cands.append((complex(1.0, g), "L-zero"))
        elif g == 0:
            cands.append((1 + 0j, "center-1"))
    # merge coincidences; the centre keeps its own tag
    merged: list[tuple[complex, set]] = []
    for lam, case in sorted(cands, key=lambda c: (c[0].imag, c[0].real)):
        for i, (mlam, tags) in enumerate(merged):
            if abs(mlam - lam) < MERGE_RADIUS:
                merged[i] = (0.5 * (mlam + lam), tags | {case})
                break
        else:
            merged.append((lam, {case}))
    out = []
    for lam, tags in merged:
        if len(tags) == 1:
            case = next(iter(tags))
        elif "center-1" in tags:
            case = "center-1"
        else:
            case = "merged"
        out.append((lam, case))
    return out


def pole_catalog(curve: CurveData, table: CoefficientTable, t_max: float, *,
                 radius: float = CIRCLE_RADIUS, nodes: int = CIRCLE_NODES,
                 scan_step: float = SCAN_STEP) -> PoleCatalog:
    """All poles of Z with |Im| <= t_max, with exact orders and principal parts."""
    cands = _candidates(curve, table, t_max, scan_step)
    locs = np.array([c[0] for c in cands])
    allpts = np.concatenate([locs, np.conj(locs[locs.imag > 0])])
    Zf = lambda s: zeta_integral_Z(curve, table, s)
    entries: list[PoleEntry] = []
    for lam, case in cands:
        d = np.abs(allpts - lam)
        d = d[d > MERGE_RADIUS]
        r = radius
        nearest = float(d.min()) if d.size else math.inf
        if nearest < 2 * r:
            r = nearest / 3.0  # shrink once
            if r < MIN_RADIUS:
                raise GeometryError(f"candidate {lam} is within {nearest:.2g} of another "
                                    f"singularity; circle radius would drop below {MIN_RADIUS}")
        coef, fmax = laurent_coefficients(Zf, lam, r, nodes)
        if lam.imag == 0:
            coef = coef.real.astype(complex)  # Z is real on the real axis
        order = detect_order(coef, r, fmax)
        if order == 0:
            continue
        entries.append(PoleEntry(lam, order, coef[:order].copy(), case, r))
    full = list(entries) + [e.conjugate() for e in entries if e.lam.imag > 0]
    full.sort(key=lambda e: (e.lam.imag, e.lam.real))
    return PoleCatalog(full, t_max, [ON_LINE_NOTE])


# ------------------------------------------------------------------- cancellation

def _zeros_first_factor(t_max: float):
    """Zeros of (s-1) zhat(s/2) zhat(s) zhat(s-1) with |Im s| <= t_max (on-line zeta zeros)."""
    pts = []
    gam = riemann_zero_ordinates(t_max)
    for g in gam:
        for re in (0.5, 1.5):
            pts += [(complex(re, g), "zhat(s)" if re == 0.5 else "zhat(s-1)"),
                    (complex(re, -g), "zhat(s)" if re == 0.5 else "zhat(s-1)")]
        if 2 * g <= t_max:
            pts += [(complex(1.0, 2 * g), "zhat(s/2)"), (complex(1.0, -2 * g), "zhat(s/2)")]
    # (s-1) vanishes at 1 but zhat(s) zhat(s-1) has a double pole there: not a zero
    return pts


def _zeros_second_factor(curve: CurveData, table: CoefficientTable, t_max: float, step: float):
    pts = []
    for k in curve.fibers:
        period = 2 * math.pi / math.log(k)
        mmax = int(t_max / period)
        for m in range(-mmax, mmax + 1):
            pts.append((complex(1.0, m * period), f"1/n_E (k={k}, m={m})"))
    for g, mult in l_zero_scan(curve, table, t_max, step=step):
        pts.append((complex(1.0, g), f"Lambda_E (mult {mult})"))
    return pts


def cancellation_scan(curve: CurveData, table: CoefficientTable, t_max: float,
                      distance: float = 1e-3, step: float = SCAN_STEP) -> dict:
    """Near-coincidences between zeros of the zeta block and of n_E^{-1} Lambda_E."""
    a = _zeros_first_factor(t_max)
    b = _zeros_second_factor(curve, table, t_max, step)
    hits = []
    min_dist = math.inf
    for za, la in a:
        for zb, lb in b:
            dist = abs(za - zb)
            min_dist = min(min_dist, dist)
            if dist < distance:
                hits.append({"zeta_zero": [za.real, za.imag], "zeta_factor": la,
                             "E_zero": [zb.real, zb.imag], "E_factor": lb, "distance": dist})
    hits.sort(key=lambda h: (h["zeta_zero"][1], h["E_zero"][1]))
    return {
        "t_max": t_max,
        "threshold": distance,
        "zeta_block_zeros": [[z.real, z.imag] for z, _ in a],
        "E_block_zeros": [[z.real, z.imag] for z, _ in b],
        "min_distance": min_dist if (a and b) else None,
        "coincidences": hits,
        "notes": [ON_LINE_NOTE, "zeta zeros located on Re s = 1/2 only (Hardy Z sign changes)"],
    }
