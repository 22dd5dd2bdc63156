from __future__ import annotations

import math
import warnings

import mpmath as mp
import numpy as np
import pytest
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from zetalab import lfunc, meanper
from zetalab.errors import (ConsistencyError, ContractError, DomainError, InputError,
                            PoleError, PrecisionError, RemovablePointError)
from zetalab.meanper import GridFunction, ToyBoundary

L, N = 12.0, 1024


def gauss(center=0.0, width=1.0, n=N):
    return meanper.gaussian_log(L, n, center, width)


# ------------------------------------------------------------- grid functions

def test_grid_validation():
    with pytest.raises(InputError):
        GridFunction(L, 1000, np.zeros(1000))
    with pytest.raises(InputError):
        GridFunction(L, 128, np.zeros(128))
    with pytest.raises(InputError):
        GridFunction(-1.0, N, np.zeros(N))
    with pytest.raises(InputError):
        GridFunction(L, N, np.zeros(N - 1))
    with pytest.raises(InputError):
        GridFunction(L, N, np.full(N, np.nan))
    with pytest.raises(InputError):
        gauss() + meanper.gaussian_log(L, 2 * N)


def test_grid_nodes():
    g = gauss()
    assert g.t[0] == -L and g.t[-1] == pytest.approx(L - g.step)
    assert g.t[N // 2] == 0.0


# grids need at least 256 samples, so the smallest example is necessarily large
@settings(suppress_health_check=[HealthCheck.large_base_example, HealthCheck.too_slow])
@given(st.lists(st.floats(-1e6, 1e6), min_size=2 * 256, max_size=2 * 256))
def test_csv_roundtrip(tmp_path_factory, raw):
    vals = np.array(raw[::2]) + 1j * np.array(raw[1::2])
    g = GridFunction(7.5, 256, vals)
    path = tmp_path_factory.mktemp("csv") / "g.csv"
    g.to_csv(path)
    back = GridFunction.from_csv(path)
    assert back.L == g.L and back.n == g.n and np.array_equal(back.values, g.values)


def test_csv_rejects_bad_input(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("a,b,c\n1,2,3\n")
    with pytest.raises(InputError):
        GridFunction.from_csv(p)
    with pytest.raises(OSError):
        GridFunction.from_csv(tmp_path / "missing.csv")


# --------------------------------------------------------- convolution, Mellin

def test_convolution_gaussian_closed_form():
    g = gauss()
    conv = meanper.convolve(g, g)
    expect = math.sqrt(math.pi / 2) * np.exp(-g.t ** 2 / 2)
    assert np.max(np.abs(conv.values - expect)) < 1e-12


def test_convolution_routes_agree():
    f, g = gauss(1.0, 0.5), gauss(-2.0, 1.3)
    a, b = meanper.convolve(f, g, "fft"), meanper.convolve(f, g, "direct")
    assert np.max(np.abs(a.values - b.values)) <= 1e-10
    with pytest.raises(InputError):
        meanper.convolve(f, g, "magic")


def test_mellin_exponential_is_gamma():
    g = GridFunction.from_function(lambda x: np.exp(-x), L, 4096)
    assert abs(meanper.mellin(g, 3.0) - 2.0) < 1e-10
    assert abs(meanper.mellin(g, 3 + 2j) - complex(mp.gamma(3 + 2j))) < 1e-10
    with pytest.warns(meanper.PrecisionWarning):
        meanper.mellin(g, 0.5)
    with pytest.raises(DomainError):
        meanper.mellin(g, 100.0)


def test_mellin_gaussian_closed_form():
    s = np.array([0.3, 1 + 2j, -2 - 1j])
    g = gauss(0.4, 0.7)
    got = meanper.mellin(g, s)
    assert np.allclose(got, meanper.gaussian_log_mellin(s, 0.4, 0.7), rtol=1e-12)


@given(st.floats(-1.5, 1.5), st.floats(-3, 3))
def test_mellin_of_convolution_is_product(x, y):
    s = complex(x, y)
    f, g = gauss(0.5, 0.8), gauss(-1.0, 1.1)
    rhs = meanper.mellin(f, s) * meanper.mellin(g, s)
    direct = meanper.mellin(meanper.convolve(f, g, "direct"), s)
    assert abs(direct - rhs) <= 1e-10 * max(1.0, abs(rhs))
    # FFT roundoff is uniform in t, so x^{Re s} amplifies it at the grid edge
    if abs(x) <= 0.75:
        fast = meanper.mellin(meanper.convolve(f, g), s)
        assert abs(fast - rhs) <= 1e-10 * max(1.0, abs(rhs))


# -------------------------------------------------------------- group action

@given(st.floats(-3, 3), st.floats(-3, 3))
def test_tau_group_law(la, lb):
    g = gauss()
    step = g.step
    a, b = math.exp(round(la / step) * step), math.exp(round(lb / step) * step)
    left = meanper.tau_shift(meanper.tau_shift(g, a), b)
    right = meanper.tau_shift(g, a * b)
    assert np.max(np.abs(left.values - right.values)) < 1e-14


def test_tau_monomial_ratio_and_range():
    lam = 0.7
    g = GridFunction.from_function(lambda x: x ** -lam, L, N)
    k = 40
    a = math.exp(k * g.step)
    shifted = meanper.tau_shift(g, a)
    ratio = shifted.values[k:] / g.values[k:]
    assert np.allclose(ratio, a ** lam, rtol=1e-12)
    assert np.all(shifted.values[:k] == 0)
    with pytest.raises(DomainError):
        meanper.tau_shift(g, math.exp(13.0))
    with pytest.raises(InputError):
        meanper.tau_shift(g, -1.0)


@given(st.lists(st.floats(-10, 10), min_size=256, max_size=256))
def test_split_pm_reconstructs(vals):
    h = GridFunction(5.0, 256, vals)
    hp, hm = meanper.split_pm(h)
    assert np.array_equal((hp + hm).values, h.values)
    assert np.all(hp.values[h.t >= 0] == 0) and np.all(hm.values[h.t < 0] == 0)


@given(st.floats(-2, 2), st.floats(0.3, 2))
def test_convolution_commutes(c, w):
    f, g = gauss(c, w), gauss(-c / 2, 1.0)
    a, b = meanper.convolve(f, g), meanper.convolve(g, f)
    assert np.max(np.abs(a.values - b.values)) < 1e-12


# ------------------------------------------------------------ multipliers

def test_mellin_multiplier():
    g = gauss()
    assert meanper.mellin_multiplier(g, []) is g
    one = meanper.mellin_multiplier(g, [0])
    assert abs(meanper.mellin(one, 0.0)) < 1e-12
    s = 0.6 + 0.5j
    assert abs(meanper.mellin(one, s) - s * meanper.mellin(g, s)) < 1e-10
    two = meanper.mellin_multiplier(g, [0, 1])
    h = GridFunction.from_function(lambda x: 1 / x - 1, L, N)
    residual, _ = meanper.annihilation_residual(two, h)
    assert residual < 1e-8
    with pytest.raises(PrecisionError):
        meanper.mellin_multiplier(gauss(width=8.0), [0])


def test_spectral_D_of_gaussian():
    g = gauss()
    d = meanper.spectral_D(g)
    assert np.max(np.abs(d.values + 2 * g.t * g.values)) < 1e-12


def test_seminorm_examples():
    g = meanper.gaussian_log(L, 4096)
    assert meanper.seminorm(g, 0.0, 0) == pytest.approx(1.0)
    # sup |x f'(x)| = sup |2 t exp(-t^2)|
    assert meanper.seminorm(g, 1.0, 1) == pytest.approx(math.sqrt(2) * math.exp(-0.5), rel=1e-4)
    with pytest.raises(InputError):
        meanper.seminorm(g, 0.0, 5)


# ---------------------------------------------------------------- toy model

def test_toy_boundary():
    toy = ToyBoundary()
    assert toy.omega(3) == pytest.approx(1 / 6)
    with pytest.raises(PoleError):
        toy.omega(1)
    with pytest.raises(InputError):
        ToyBoundary(mu=0)
    # residues: -mu f0 at 0 and mu fhat0 at 1
    t = ToyBoundary(2.0, 3.0, 5.0)
    eps = 1e-7
    assert eps * t.omega(eps) == pytest.approx(-6.0, rel=1e-5)
    assert eps * t.omega(1 + eps) == pytest.approx(10.0, rel=1e-5)


def test_tate_toy_value():
    exact, value = meanper.tate_toy(ToyBoundary(), 3.0, L, 4096)
    assert abs(value - 1 / 6) < 1e-6 and exact == pytest.approx(1 / 6)


@given(st.floats(0.5, 3), st.floats(-2, 2), st.floats(-2, 2), st.floats(0.5, 2.5), st.floats(-3, 3))
def test_toy_independence_of_annihilator(mu, f0, fhat0, x, y):
    s = complex(x, y)
    assume(abs(s - 1) > 0.05)  # pole of the toy and zero of M(f1)
    toy = ToyBoundary(mu, f0, fhat0)
    f1, f2 = meanper.toy_annihilators(L, 2048)
    h = GridFunction.from_function(toy.h, L, 2048)
    r1 = meanper.mellin_carleman(h, f1, s)
    r2 = meanper.mellin_carleman(h, f2, s)
    scale = 1 + abs(toy.omega(s))
    assert abs(r1.value - r2.value) <= 1e-6 * scale
    assert abs(r1.value - toy.omega(s)) <= 1e-6 * scale
    assert r1.discrepancy <= 1e-6 * scale


def test_mc_errors():
    toy = ToyBoundary()
    h = GridFunction.from_function(toy.h, L, 2048)
    with pytest.raises(ContractError):
        meanper.mellin_carleman(h, meanper.gaussian_log(L, 2048), 3.0)
    f1, _ = meanper.toy_annihilators(L, 2048)
    with pytest.raises(RemovablePointError) as exc:
        meanper.mellin_carleman(h, f1, 0.0)
    assert exc.value.suggestion is not None


# ---------------------------------------------------------------- w0, v, w

def _theta(a, b):
    """z d/dz of a(z) K0(z) + b(z) z K1(z), with (zK1)' = -z K0 and K0' = -K1.

    a and b are coefficient lists in z; the result has the same form.
    """
    na = [n * c for n, c in enumerate(a)]
    nb = [n * c for n, c in enumerate(b)]
    # a K0 -> -a z K1 ; b z K1 -> -b z^2 K0
    out_a = na + [0] * 3
    for n, c in enumerate(b):
        out_a[n + 2] -= c
    out_b = nb + [0] * max(0, len(a) - len(nb))
    for n, c in enumerate(a):
        out_b[n] -= c
    return out_a, out_b


def _w0_oracle(curve, t):
    """8 K0(2 y^2) summed over the n_E^{-2} expansion, then P(-d/dt) by exact
    differentiation: with z = 2 y^2, d/dt = 2 z d/dz."""
    (k,) = curve.fibers
    scale = mp.mpf(curve.conductor_q) / curve.c_E
    poly = np.polynomial.Polynomial([0, 1]) ** 4 * np.polynomial.Polynomial([-2, 1]) ** 4 \
        * np.polynomial.Polynomial([-1, 1]) ** 2
    # derivative j of K0(z(t)) as (a_j, b_j)
    forms = [([1], [])]
    for _ in range(len(poly.coef) - 1):
        a, b = _theta(*forms[-1])
        forms.append(([2 * c for c in a], [2 * c for c in b]))
    total = mp.mpf(0)
    for c_a, a in ((1, 0), (-2 * k, 1), (k * k, 2)):
        z = 2 * (mp.e ** mp.mpf(t) * k ** a * scale) ** 2
        k0, k1 = mp.besselk(0, z), mp.besselk(1, z)
        for j, c in enumerate(poly.coef):
            pa, pb = forms[j]
            val = sum(q * z ** n for n, q in enumerate(pa)) * k0 \
                + sum(q * z ** n for n, q in enumerate(pb)) * z * k1
            total += c_a * 8 * int(round(c)) * (-1) ** j * val
    return float(total)


def test_w0_against_bessel_oracle(ws11):
    w0 = ws11.w0
    for t in (-1.0, 0.0, 1.5):
        i = int(round((t + w0.L) / w0.step))
        ref = _w0_oracle(ws11.curve, w0.t[i])
        assert abs(w0.values[i].real - ref) <= 1e-8 * w0.sup()


def test_w0_mellin(ws11):
    w0 = ws11.w0
    assert abs(meanper.mellin(w0, 1.0, check=False)) <= 1e-8 * meanper.mellin_scale(w0, 1.0)
    m3 = meanper.mellin_w0(ws11.curve, 3.0)
    assert abs(meanper.mellin(w0, 3.0, check=False) - m3) <= 1e-7 * abs(m3)
    with pytest.raises(InputError):
        meanper.build_w0(ws11.curve, 8.0, 1024)


@pytest.mark.parametrize("s", [1.5, 2.0, 2.5])
def test_v_mellin_is_lambda(ws11, s):
    got = meanper.mellin(ws11.v, s, check=False)
    ref = lfunc.lambda_E(ws11.curve, ws11.table, s)
    assert abs(got - ref) <= 1e-6 * abs(ref)


def test_v_crossover(e11, t11):
    x = np.array([0.95, 1.0, 1.05])
    for der in (False, True):
        a = meanper.v_series(e11, t11, x, der)
        b = meanper.v_reflect(e11, t11, x, der)
        assert np.max(np.abs(a - b)) <= 1e-9 * np.max(np.abs(a))
    with pytest.raises(InputError):
        meanper.v_series(e11, lfunc.coefficients(e11, 10), 0.01)


def test_w_mellin_matches_analytic(ws11):
    rng = np.random.default_rng(3)
    s = rng.uniform(2.5, 3.0, 10) + 1j * rng.uniform(-4, 4, 10)
    got = meanper.mellin(ws11.w, s, check=False)
    ref = meanper.mellin_w(ws11.curve, ws11.table, s)
    assert np.max(np.abs(got - ref) / np.abs(ref)) < 1e-6


def test_annihilator_routes(e11, t11):
    ann = meanper.build_annihilator(e11, t11, 12.0, 2048, full=True)
    assert ann.route_diff < 1e-5
    with pytest.raises(ConsistencyError):
        meanper.build_annihilator(e11, t11, 12.0, 2048, route_tol=1e-30)


def test_annihilation_verdicts(ws11):
    rep = meanper.annihilation_test(ws11.w, ws11.h, ws11.catalog)
    assert rep.passed and rep.data["mellin_pass"]
    assert all(o["found"] >= o["required"] for o in rep.data["orders"])
    bad = meanper.annihilation_test(ws11.w0, ws11.h, ws11.catalog)
    assert not bad.data["mellin_pass"] and not bad.passed


def test_taylor_and_order():
    coef = meanper.taylor_coefficients(lambda z: (z - 1) ** 3 * np.exp(z), 1.0)
    assert np.allclose(coef[:3], 0, atol=1e-14)
    assert coef[3] == pytest.approx(math.e)
    assert meanper.vanishing_order(coef, 0.05, math.e * 0.05 ** 3) == 3
