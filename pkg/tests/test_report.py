from __future__ import annotations

import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from zetalab.report import VerificationReport, compare, to_jsonable

finite = st.floats(allow_nan=False, allow_infinity=False, width=64)
nonneg = st.floats(0, 1e300)


@given(finite, finite, finite, nonneg, nonneg, st.floats(1e-300, 1e300))
def test_roundtrip_lossless(a, b, c, abs_err, rel_err, tol):
    rep = VerificationReport("x.check", complex(a, b), c, abs_err, rel_err, tol,
                             params={"s": [complex(a, b)], "n": 3},
                             notes=["limitation"], data={"arr": np.array([a, c])})
    back = VerificationReport.from_json(rep.to_json())
    assert back.lhs == rep.lhs and back.rhs == rep.rhs
    assert (back.abs_err, back.rel_err, back.tol) == (abs_err, rel_err, tol)
    assert back.passed == rep.passed
    assert back.to_json() == rep.to_json()


@given(nonneg, st.floats(1e-12, 1.0))
def test_pass_iff_within_tolerance(rel_err, tol):
    rep = VerificationReport("c", 0.0, 0.0, 0.0, rel_err, tol)
    assert rep.passed == (rel_err <= tol)
    assert rep.to_dict()["pass"] == rep.passed


def test_infinite_error_survives_json():
    rep = VerificationReport("c", None, None, math.inf, math.inf, 1.0)
    back = VerificationReport.from_json(rep.to_json())
    assert back.rel_err == math.inf and not back.passed


def test_from_dict_rejects_inconsistent_verdict():
    d = VerificationReport("c", 1.0, 1.0, 0.0, 2.0, 1.0).to_dict()
    d["pass"] = True
    with pytest.raises(ValueError):
        VerificationReport.from_dict(d)


def test_complex_encoding():
    assert to_jsonable(1 + 2j) == [1.0, 2.0]
    assert to_jsonable(np.array([1j])) == [[0.0, 1.0]]
    assert json.loads(json.dumps(to_jsonable({"v": np.float64(-math.inf)}))) == {"v": "-inf"}


def test_compare_and_line():
    rep = compare("a.b", 1.0 + 1e-9, 1.0, 1e-8)
    assert rep.passed and rep.abs_err == pytest.approx(1e-9)
    assert rep.line().startswith("[PASS] a.b")
    assert not compare("a.b", 2.0, 1.0, 1e-8).passed
