# -*- coding: utf-8 -*-
"""
Verification reports

A VerificationReport is the outcome of one executable check: a signed margin to
violation, the tolerance it is judged against, a witness node or point and the
serialized inputs. Reports serialize to JSON and to a summary CSV.
"""

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Union

import numpy as np
import pandas as pd

try:
    from src.encodings import (
        STATUS_FAIL,
        STATUS_HYPOTHESES_NOT_MET,
        STATUS_INCONCLUSIVE,
        STATUS_PASS,
    )
except ImportError:
    from .encodings import (
        STATUS_FAIL,
        STATUS_HYPOTHESES_NOT_MET,
        STATUS_INCONCLUSIVE,
        STATUS_PASS,
    )

SUMMARY_FLOAT_FORMAT = "%.12g"


def to_serializable(value: Any) -> Any:
    """Convert numpy scalars, complex numbers and dataclass-like objects to JSON types."""
    if hasattr(value, "as_dict"):
        return to_serializable(value.as_dict())
    if isinstance(value, dict):
        return {str(k): to_serializable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_serializable(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_serializable(value.tolist())
    if isinstance(value, (complex, np.complexfloating)):
        return {"re": float(value.real), "im": float(value.imag)}
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value) or math.isinf(value):
            return str(value)
        return float(f"{value:.12g}")
    return value


@dataclass
class VerificationReport:
    """
    Outcome of one check.

    Attributes:
        check_id: Label of the check.
        passed: True iff margin > −tolerance.
        margin: Signed distance to violation (NaN when the check was not carried out).
        tolerance: Tolerance the margin is judged against.
        status: One of pass, fail, hypotheses-not-met, inconclusive.
        witness: Node or point where the margin is attained.
        params: Serialized inputs.
        notes: Free text, always stating the tolerance.
        details: Per-statement margins and auxiliary numbers.
    """

    check_id: str
    passed: bool
    margin: float
    tolerance: float
    status: str
    witness: Any = None
    params: dict = field(default_factory=dict)
    notes: str = ""
    details: dict = field(default_factory=dict)

    @classmethod
    def from_margin(
        cls,
        check_id: str,
        margin: float,
        tolerance: float,
        witness: Any = None,
        params: dict = None,
        notes: str = "",
        details: dict = None,
    ) -> "VerificationReport":
        """Judge a margin against a tolerance."""
        margin = float(margin)
        passed = bool(margin > -tolerance)
        return cls(
            check_id=check_id,
            passed=passed,
            margin=margin,
            tolerance=float(tolerance),
            status=STATUS_PASS if passed else STATUS_FAIL,
            witness=witness,
            params=params or {},
            notes=_with_tolerance(notes, tolerance),
            details=details or {},
        )

    @classmethod
    def hypotheses_not_met(
        cls, check_id: str, reason: str, tolerance: float = 0.0, **kwargs
    ) -> "VerificationReport":
        return cls._not_carried_out(check_id, STATUS_HYPOTHESES_NOT_MET, reason, tolerance, **kwargs)

    @classmethod
    def inconclusive(
        cls, check_id: str, reason: str, tolerance: float = 0.0, **kwargs
    ) -> "VerificationReport":
        return cls._not_carried_out(check_id, STATUS_INCONCLUSIVE, reason, tolerance, **kwargs)

    @classmethod
    def _not_carried_out(cls, check_id, status, reason, tolerance, **kwargs):
        return cls(
            check_id=check_id,
            passed=False,
            margin=math.nan,
            tolerance=float(tolerance),
            status=status,
            witness=kwargs.get("witness"),
            params=kwargs.get("params") or {},
            notes=_with_tolerance(reason, tolerance),
            details=kwargs.get("details") or {},
        )

    def as_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "passed": self.passed,
            "status": self.status,
            "margin": self.margin,
            "tolerance": self.tolerance,
            "witness": self.witness,
            "params": self.params,
            "notes": self.notes,
            "details": self.details,
        }

    def to_json(self) -> str:
        return json.dumps(to_serializable(self.as_dict()), sort_keys=True)


def _with_tolerance(notes: str, tolerance: float) -> str:
    stamp = f"tolerance={tolerance:.12g}"
    return f"{notes}; {stamp}" if notes else stamp


def reports_to_json(reports: Iterable[VerificationReport], path: Union[str, Path]) -> None:
    """Write reports as a JSON array."""
    payload = [to_serializable(report.as_dict()) for report in reports]
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def summary_frame(reports: Iterable[VerificationReport]) -> pd.DataFrame:
    """Summary table with columns check_id, status, passed, margin, params."""
    return pd.DataFrame(
        [
            {
                "check_id": report.check_id,
                "status": report.status,
                "passed": report.passed,
                "margin": report.margin,
                "params": json.dumps(to_serializable(report.params), sort_keys=True),
            }
            for report in reports
        ],
        columns=["check_id", "status", "passed", "margin", "params"],
    )


def reports_to_csv(reports: Iterable[VerificationReport], path: Union[str, Path]) -> None:
    summary_frame(reports).to_csv(path, index=False, float_format=SUMMARY_FLOAT_FORMAT)


__all__ = [
    "STATUS_FAIL",
    "STATUS_HYPOTHESES_NOT_MET",
    "STATUS_INCONCLUSIVE",
    "STATUS_PASS",
    "VerificationReport",
    "reports_to_csv",
    "reports_to_json",
    "summary_frame",
    "to_serializable",
]
