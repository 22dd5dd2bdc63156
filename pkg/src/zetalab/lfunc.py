"""Elliptic curves over Q: point counts, Dirichlet coefficients, L(E,s) and Lambda(E,s).

Lambda(E,s) = q^{s/2} (2 pi)^{-s} Gamma(s) L(E,s) is evaluated everywhere through
the incomplete-Gamma approximate functional equation.  The split point of the
Mellin integral is put on the ray arg y = theta; for large |Im s| the ray is
tilted towards the imaginary axis so that the individual terms have the same
exponential size as Lambda itself (otherwise all digits cancel).
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from . import special
from .errors import ConsistencyError, DomainError, InputError, PrecisionError

REDUCTION_TYPES = ("split", "nonsplit", "additive")
CURVE_DIR = Path(__file__).parent / "curves"

# terms of the AFE are dropped once b_n cos(theta) exceeds this (e^{-42} ~ 6e-19)
AFE_CUTOFF = 42.0
# tilt parameter: the ray angle is pi/2 - TILT/|t|, costing about e^{TILT} in cancellation
AFE_TILT = 3.0


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    r = int(math.isqrt(n))
    for d in range(3, r + 1, 2):
        if n % d == 0:
            return False
    return True


def prime_power_base(n: int) -> int | None:
    """p if n = p^k (k >= 1), else None."""
    if n < 2:
        return None
    for p in range(2, int(math.isqrt(n)) + 1):
        if n % p == 0:
            while n % p == 0:
                n //= p
            return p if n == 1 else None
    return n


def primes_up_to(n: int) -> np.ndarray:
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(math.isqrt(n)) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    return np.flatnonzero(sieve).astype(np.int64)


@dataclass(frozen=True)
class CurveData:
    a_invariants: tuple[int, int, int, int, int]
    conductor_q: int
    root_number_w: int
    bad_primes: tuple[tuple[int, str], ...]
    fibers: tuple[int, ...] = ()
    c_E: float = 1.0
    label: str = ""

    def __post_init__(self):
        if len(self.a_invariants) != 5:
            raise InputError("need five Weierstrass coefficients a1,a2,a3,a4,a6")
        if self.discriminant == 0:
            raise InputError("singular Weierstrass equation (discriminant 0)")
        if self.root_number_w not in (-1, 1):
            raise InputError("root number must be +1 or -1")
        if self.conductor_q < 1:
            raise InputError("conductor must be >= 1")
        if not self.c_E > 0:
            raise InputError("c_E must be positive")
        for p, red in self.bad_primes:
            if not is_prime(p):
                raise InputError(f"bad prime {p} is not prime")
            if red not in REDUCTION_TYPES:
                raise InputError(f"reduction type {red!r} not in {REDUCTION_TYPES}")
        q_primes = {p for p in range(2, self.conductor_q + 1)
                    if self.conductor_q % p == 0 and is_prime(p)}
        if q_primes != {p for p, _ in self.bad_primes}:
            raise InputError("bad_primes must be exactly the primes dividing the conductor")
        for k in self.fibers:
            if k < 2 or prime_power_base(k) is None:
                raise InputError(f"fiber size {k} is not a prime power >= 2")

    @property
    def b_invariants(self) -> tuple[int, int, int, int]:
        a1, a2, a3, a4, a6 = self.a_invariants
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    @property
    def discriminant(self) -> int:
        b2, b4, b6, b8 = self.b_invariants
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    @property
    def reduction(self) -> dict[int, str]:
        return dict(self.bad_primes)

    @property
    def fiber_product(self) -> int:
        return math.prod(self.fibers)

    @property
    def symmetric_c_E(self) -> float:
        """The value of c_E for which the zeta-integral product is invariant under s -> 2-s."""
        return float(self.conductor_q * self.fiber_product)

    @classmethod
    def from_dict(cls, data: dict) -> "CurveData":
        try:
            bad = tuple((int(b["p"]), str(b["reduction"])) for b in data["bad_primes"])
            fibers = data.get("fibers")
            if fibers is None:
                # one fiber per bad prime with residue field F_p
                fibers = [p for p, _ in bad]
            return cls(
                a_invariants=tuple(int(a) for a in data["a_invariants"]),
                conductor_q=int(data["conductor"]),
                root_number_w=int(data["root_number"]),
                bad_primes=bad,
                fibers=tuple(int(k) for k in fibers),
                c_E=float(data.get("c_E", 1.0)),
                label=str(data.get("label", "")),
            )
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed curve record: {exc}") from exc

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "a_invariants": list(self.a_invariants),
            "conductor": self.conductor_q,
            "root_number": self.root_number_w,
            "bad_primes": [{"p": p, "reduction": r} for p, r in self.bad_primes],
            "fibers": list(self.fibers),
            "c_E": self.c_E,
        }

    def with_fibers(self, fibers, c_E: float | None = None) -> "CurveData":
        return CurveData(self.a_invariants, self.conductor_q, self.root_number_w,
                         self.bad_primes, tuple(fibers),
                         self.c_E if c_E is None else c_E, self.label)


def load_curve(ref: str | os.PathLike) -> CurveData:
    """Load a curve from a JSON path or a bundled/fixture label such as '11a1'."""
    path = Path(ref)
    if not path.exists():
        name = path.name if path.suffix == ".json" else f"{path.name}.json"
        search = [Path(d) for d in os.environ.get("ZETALAB_CURVE_DIR", "").split(os.pathsep) if d]
        search.append(CURVE_DIR)
        for d in search:
            if (d / name).exists():
                path = d / name
                break
        else:
            raise InputError(f"curve file {ref!r} not found")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from exc
    return CurveData.from_dict(data)


def _count_affine_odd(curve: CurveData, p: int) -> int:
    """Affine points mod odd p via (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6."""
    b2, b4, b6, _ = curve.b_invariants
    x = np.arange(p, dtype=np.int64)
    rhs = (4 * x) % p
    rhs = (rhs + b2) % p
    rhs = (rhs * x + 2 * b4) % p
    rhs = (rhs * x + b6) % p
    # number of square roots of each residue
    roots = np.zeros(p, dtype=np.int64)
    np.add.at(roots, (x * x) % p, 1)
    return int(roots[rhs].sum())


def _count_affine_brute(curve: CurveData, p: int) -> int:
    a1, a2, a3, a4, a6 = curve.a_invariants
    count = 0
    for x in range(p):
        for y in range(p):
            if (y * y + a1 * x * y + a3 * y - x ** 3 - a2 * x * x - a4 * x - a6) % p == 0:
                count += 1
    return count


def ap(curve: CurveData, p: int) -> int:
    """Trace of Frobenius a_p = p + 1 - #E(F_p), or the bad-reduction value."""
    p = int(p)
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    red = curve.reduction.get(p)
    if red is not None:
        return {"split": 1, "nonsplit": -1, "additive": 0}[red]
    if curve.discriminant % p == 0:
        raise InputError(f"discriminant vanishes mod {p} but {p} is not listed as bad")
    affine = _count_affine_brute(curve, p) if p == 2 else _count_affine_odd(curve, p)
    return p + 1 - (affine + 1)


@dataclass(frozen=True)
class CoefficientTable:
    N: int
    a: np.ndarray = field(repr=False)  # a[n] for 0 <= n <= N, a[0] unused

    def __getitem__(self, n: int) -> int:
        if not 1 <= n <= self.N:
            raise IndexError(n)
        return int(self.a[n])

    @cached_property
    def as_float(self) -> np.ndarray:
        return self.a[1:].astype(float)


_TABLE_CACHE: dict[tuple, CoefficientTable] = {}


def coefficients(curve: CurveData, N: int) -> CoefficientTable:
    """Dirichlet coefficients a_1..a_N of L(E,s)."""
    if N < 1:
        raise InputError("N must be >= 1")
    key = (curve.a_invariants, curve.bad_primes, N)
    if key in _TABLE_CACHE:
        return _TABLE_CACHE[key]
    for cached_key, tab in _TABLE_CACHE.items():
        if cached_key[:2] == key[:2] and tab.N >= N:
            out = CoefficientTable(N, tab.a[:N + 1].copy())
            out.a.setflags(write=False)
            return out
    a = np.zeros(N + 1, dtype=np.int64)
    a[1] = 1
    # smallest prime factor sieve
    spf = np.zeros(N + 1, dtype=np.int64)
    for p in primes_up_to(N):
        p = int(p)
        block = spf[p::p]
        block[block == 0] = p
        app = ap(curve, p)
        bad = p in curve.reduction
        pk, prev, cur = p, 1, app
        a[p] = app
        while pk * p <= N:
            pk *= p
            nxt = app * cur if bad else app * cur - p * prev
            prev, cur = cur, nxt
            a[pk] = cur
    for n in range(2, N + 1):
        p = int(spf[n])
        m = n
        while m % p == 0:
            m //= p
        if m != 1:
            a[n] = a[n // m] * a[m]
    a.setflags(write=False)
    table = CoefficientTable(N, a)
    _TABLE_CACHE[key] = table
    return table


def dirichlet_tail_bound(N: int, sigma: float) -> float:
    """Bound for sum_{n>N} |a_n| n^{-sigma} from |a_n| <= d(n) sqrt(n) and sum_{n<=x} d(n) <= x(log x + 1)."""
    alpha = sigma - 0.5
    if alpha <= 1:
        return math.inf
    g = alpha - 1.0
    return alpha * N ** (-g) / g * (math.log(N) + 1.0 + 1.0 / g)


def l_dirichlet(curve: CurveData, table: CoefficientTable, s: complex, tol: float | None = None):
    """Truncated Dirichlet series sum_{n<=N} a_n n^{-s}; returns (value, certified tail bound)."""
    s = complex(s)
    if s.real <= 2.0:
        raise DomainError("Dirichlet series is only used for Re s > 2; use lambda_E instead")
    n = np.arange(1, table.N + 1, dtype=float)
    value = complex(np.sum(table.as_float * np.exp(-s * np.log(n))))
    bound = dirichlet_tail_bound(table.N, s.real)
    if tol is not None and bound > tol:
        raise PrecisionError(f"tail bound {bound:.3g} exceeds tolerance {tol:.3g} with N={table.N}",
                             achieved=bound)
    return value, bound


def afe_angle(t):
    """Ray angle for the AFE split point; zero for small |t|."""
    t = np.asarray(t, dtype=float)
    at = np.abs(t)
    with np.errstate(divide="ignore"):
        theta = np.where(at > 2 * AFE_TILT / math.pi, math.pi / 2 - AFE_TILT / np.maximum(at, 1e-300), 0.0)
    return np.sign(t) * theta


def afe_terms_needed(curve: CurveData, t) -> np.ndarray:
    cos_th = np.cos(afe_angle(t))
    return np.ceil(AFE_CUTOFF * math.sqrt(curve.conductor_q) / (2 * math.pi * cos_th)).astype(int) + 2


def _lambda_block(curve, table, s, theta, radius, nmax):
    n = np.arange(1, nmax + 1, dtype=float)
    an = table.as_float[:nmax]
    keep = an != 0
    n, an = n[keep], an[keep]
    b = 2 * math.pi * n / math.sqrt(curve.conductor_q)
    logb = np.log(b)
    S = s[:, None]
    A = (radius * np.exp(1j * theta))[:, None]
    g1 = special.gammainc_upper(S, b[None, :] * A)
    g2 = special.gammainc_upper(2.0 - S, b[None, :] / A)
    t1 = an * np.exp(-S * logb) * g1
    t2 = curve.root_number_w * an * np.exp((S - 2.0) * logb) * g2
    terms = t1 + t2
    return terms.sum(axis=1), (np.abs(t1) + np.abs(t2)).sum(axis=1)


def lambda_E(curve: CurveData, table: CoefficientTable, s, *, return_error: bool = False,
             theta=None, radius: float = 1.0):
    """Completed L-function Lambda(E,s), entire in s.

    The Mellin integral of the q-expansion profile is split at the point
    radius * e^{i theta}.  The default radius 1 is the symmetry point, where
    Lambda(s) = omega Lambda(2-s) holds term by term; any other radius gives
    an independent evaluation, which is what validates the root number.
    ``theta`` overrides the automatic ray angle (broadcast against s).
    With return_error=True a rounding-error estimate is returned as well.
    """
    arr = np.asarray(s, dtype=complex)
    scalar = arr.ndim == 0
    flat = np.atleast_1d(arr).ravel()
    th = afe_angle(flat.imag) if theta is None else np.broadcast_to(np.asarray(theta, float), arr.shape).ravel()
    stretch = max(radius, 1.0 / radius)
    need = np.ceil(AFE_CUTOFF * stretch * math.sqrt(curve.conductor_q)
                   / (2 * math.pi * np.cos(th))).astype(int) + 2
    if need.size and need.max() > table.N:
        raise PrecisionError(
            f"coefficient table N={table.N} too short: |Im s|={np.abs(flat.imag).max():.1f} "
            f"needs N={need.max()}", achieved=float(need.max()))
    out = np.empty(flat.shape, dtype=complex)
    err = np.empty(flat.shape, dtype=float)
    order = np.argsort(need, kind="stable")
    budget = 400_000
    i = 0
    while i < order.size:
        nmax = need[order[i]]
        j = i
        while j < order.size and (j - i + 1) * need[order[j]] <= budget:
            j += 1
        j = max(j, i + 1)
        idx = order[i:j]
        nblock = int(need[idx].max())
        val, size = _lambda_block(curve, table, flat[idx], th[idx], radius, nblock)
        out[idx] = val
        err[idx] = 64 * np.finfo(float).eps * size
        i = j
    out = out.reshape(arr.shape)
    err = err.reshape(arr.shape)
    if scalar:
        out, err = complex(out), float(err)
    return (out, err) if return_error else out


def l_value(curve: CurveData, table: CoefficientTable, s):
    """L(E,s) = Lambda(E,s) / (q^{s/2} (2 pi)^{-s} Gamma(s)); zero at the poles of Gamma."""
    arr = np.asarray(s, dtype=complex)
    lam = np.asarray(lambda_E(curve, table, arr))
    flat = np.atleast_1d(arr)
    poles = (flat.imag == 0) & (flat.real <= 0) & (flat.real == np.round(flat.real))
    safe = np.where(poles, 1.0, flat)
    inv = np.exp(-special.loggamma(safe) - 0.5 * safe * math.log(curve.conductor_q)
                 + safe * math.log(2 * math.pi))
    inv = np.where(poles, 0.0, inv)
    val = np.atleast_1d(lam) * inv
    val = val.reshape(arr.shape)
    return complex(val) if arr.ndim == 0 else val


def check_root_number(curve: CurveData, table: CoefficientTable, tol: float = 1e-8) -> float:
    """Validate omega_E by comparing Lambda(s) with omega Lambda(2-s) split elsewhere."""
    s = np.array([0.7 + 0.3j, 1.3 + 1.1j, 0.4 + 2.0j])
    a = lambda_E(curve, table, s)
    b = lambda_E(curve, table, 2.0 - s, radius=1.3)
    resid = float(np.max(np.abs(a - curve.root_number_w * b) / (1.0 + np.abs(a))))
    if resid > tol:
        raise ConsistencyError(
            f"root number {curve.root_number_w:+d} inconsistent with the coefficients "
            f"(functional-equation residual {resid:.3g})")
    return resid
