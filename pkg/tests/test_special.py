from __future__ import annotations

import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from zetalab import special
from zetalab.errors import PoleError

mp.mp.dps = 30

cplx = st.builds(complex, st.floats(-8, 8), st.floats(-60, 60))


def rel(a, b):
    return abs(complex(a) - complex(b)) / max(abs(complex(b)), 1e-300)


def test_gamma_classical_values():
    assert special.gamma_c(1) == pytest.approx(1.0, abs=1e-15)
    assert special.gamma_c(5) == pytest.approx(24.0, rel=1e-14)
    assert special.gamma_c(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)


@pytest.mark.parametrize("s", [0, -1, -7])
def test_gamma_poles_carry_location(s):
    with pytest.raises(PoleError) as exc:
        special.gamma_c(s)
    assert exc.value.location == s


@given(cplx)
def test_gamma_against_mpmath(s):
    if abs(s.imag) < 1e-6 and s.real <= 0 and abs(s.real - round(s.real)) < 1e-6:
        return
    assert rel(special.gamma_c(s), mp.gamma(mp.mpc(s))) < 1e-12


@given(cplx)
def test_gamma_duplication(s):
    if s.real < 0.5:
        s = complex(abs(s.real) + 0.5, s.imag)
    lhs = special.gamma_c(s) * special.gamma_c(s + 0.5)
    rhs = 2 ** (1 - 2 * s) * math.sqrt(math.pi) * special.gamma_c(2 * s)
    assert rel(lhs, rhs) < 1e-11


@pytest.mark.parametrize("s,z", [(2.5, 0.3), (1 + 3j, 0.57), (0.2 - 5j, 2.0), (-0.7 + 1j, 1.8),
                                 (-2.0, 1.1), (3 + 10j, 0.9 + 0.4j), (1.4, 12.0),
                                 (0.5 + 20j, 4.0 - 3.0j)])
def test_gammainc_upper_against_mpmath(s, z):
    expect = mp.gammainc(mp.mpc(s), mp.mpc(z))
    assert rel(special.gammainc_upper(s, z), expect) < 1e-11


def test_gammainc_vectorized_matches_scalar():
    s = np.array([0.5, 2 + 1j, -1.5 + 0.2j])
    z = np.array([0.4, 3.0, 7.0])
    vec = special.gammainc_upper(s, z)
    for i in range(3):
        assert vec[i] == special.gammainc_upper(s[i], z[i])


def test_zeta_values():
    assert special.zeta_r(2) == pytest.approx(math.pi ** 2 / 6, rel=1e-14)
    assert special.zeta_r(-1) == pytest.approx(-1 / 12, rel=1e-13)
    assert special.zeta_r(-2) == 0
    with pytest.raises(PoleError):
        special.zeta_r(1)


@given(st.builds(complex, st.floats(-6, 6), st.floats(-200, 200)))
def test_zeta_against_mpmath(s):
    if abs(s - 1) < 1e-3:
        return
    assert rel(special.zeta_r(s), mp.zeta(mp.mpc(s))) < 1e-11 or \
        abs(complex(special.zeta_r(s)) - complex(mp.zeta(mp.mpc(s)))) < 1e-13


@given(cplx)
def test_zeta_schwarz_reflection(s):
    if abs(s - 1) < 1e-3:
        return
    a = special.zeta_r(s)
    b = special.zeta_r(s.conjugate())
    assert abs(a - b.conjugate()) <= 1e-13 * max(1.0, abs(a))


def test_zhat_poles_and_residues():
    for s in (0, 1):
        with pytest.raises(PoleError):
            special.zhat(s)
    eps = 1e-6
    assert eps * special.zhat(1 + eps) == pytest.approx(1.0, abs=1e-5)
    assert eps * special.zhat(eps) == pytest.approx(-1.0, abs=1e-5)


def test_zhat_composed_value():
    expect = mp.pi ** -1.5 * mp.gamma(1.5) * mp.zeta(3)
    assert rel(special.zhat(3), expect) < 1e-13
    assert abs(special.zhat(0.3) - special.zhat(0.7)) < 1e-10


def test_zhat_symmetry_on_fifty_points():
    rng = np.random.default_rng(3)
    s = rng.uniform(-3, 4, 50) + 1j * rng.uniform(-40, 40, 50)
    a = special.zhat(s)
    b = special.zhat(1 - s)
    assert np.max(np.abs(a - b) / np.abs(a)) < 1e-10
