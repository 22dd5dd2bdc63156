"""Verification reports with lossless JSON round-trip."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np


def to_jsonable(value: Any) -> Any:
    """Complex -> [re, im]; numpy scalars/arrays -> Python; inf/nan -> strings."""
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if math.isfinite(v):
            return v
        return "nan" if math.isnan(v) else ("inf" if v > 0 else "-inf")
    if isinstance(value, (complex, np.complexfloating)):
        return [to_jsonable(value.real), to_jsonable(value.imag)]
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return value


def _float(v) -> float:
    if isinstance(v, str):
        return float(v)
    return float(v)


def _number(v):
    if isinstance(v, list):
        return complex(_float(v[0]), _float(v[1]))
    if v is None:
        return None
    return _float(v)


@dataclass
class VerificationReport:
    """One named check: two sides, their errors, and the verdict.

    ``passed`` is derived from ``rel_err <= tol``.  Checks combining several
    conditions report a normalized score (worst error / its tolerance) with
    ``tol = 1``; the raw numbers live in ``data``.
    """

    check: str
    lhs: complex | float | None
    rhs: complex | float | None
    abs_err: float
    rel_err: float
    tol: float
    params: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.rel_err <= self.tol)

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "lhs": to_jsonable(self.lhs),
            "rhs": to_jsonable(self.rhs),
            "abs_err": to_jsonable(self.abs_err),
            "rel_err": to_jsonable(self.rel_err),
            "tol": to_jsonable(self.tol),
            "pass": self.passed,
            "params": to_jsonable(self.params),
            "notes": list(self.notes),
            "data": to_jsonable(self.data),
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, **kw)

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        rep = cls(d["check"], _number(d["lhs"]), _number(d["rhs"]), _float(d["abs_err"]),
                  _float(d["rel_err"]), _float(d["tol"]), dict(d.get("params", {})),
                  list(d.get("notes", [])), dict(d.get("data", {})))
        if "pass" in d and bool(d["pass"]) != rep.passed:
            raise ValueError(f"report {rep.check!r}: stored verdict disagrees with rel_err/tol")
        return rep

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        return cls.from_dict(json.loads(text))

    def line(self) -> str:
        return (f"[{'PASS' if self.passed else 'FAIL'}] {self.check}: "
                f"rel_err={self.rel_err:.3e} tol={self.tol:.1e}")


def compare(check: str, lhs, rhs, tol: float, *, scale: float | None = None, **kw
            ) -> VerificationReport:
    """Single-value comparison; rel_err = |lhs - rhs| / scale (default max(|rhs|, tiny))."""
    abs_err = float(abs(lhs - rhs))
    denom = scale if scale is not None else max(abs(rhs), 1e-300)
    return VerificationReport(check, lhs, rhs, abs_err, abs_err / denom, tol, **kw)
