import json
import math

import numpy as np
import pandas as pd
import pytest

from src.encodings import (
    EXIT_CODE_ENCODING,
    INV_STATUS_ENCODING,
    STATUS_ENCODING,
    STATUS_FAIL,
    STATUS_HYPOTHESES_NOT_MET,
    STATUS_INCONCLUSIVE,
    STATUS_LABELS,
    STATUS_PASS,
    exit_code_for,
    invert_dict,
)
from src.grid_field import Node
from src.reports import (
    VerificationReport,
    reports_to_csv,
    reports_to_json,
    summary_frame,
    to_serializable,
)


@pytest.fixture
def reports():
    return [
        VerificationReport.from_margin("a", margin=0.1, tolerance=0.01, params={"alpha": 0.5}),
        VerificationReport.from_margin("b", margin=-0.005, tolerance=0.01),
        VerificationReport.from_margin("c", margin=-0.5, tolerance=0.01),
        VerificationReport.hypotheses_not_met("d", "f vanishes", tolerance=0.01),
    ]


def test_margin_is_judged_against_the_tolerance(reports):
    assert [r.status for r in reports] == [
        STATUS_PASS,
        STATUS_PASS,
        STATUS_FAIL,
        STATUS_HYPOTHESES_NOT_MET,
    ]
    assert [r.passed for r in reports] == [True, True, False, False]


def test_notes_always_state_the_tolerance(reports):
    assert reports[0].notes == "tolerance=0.01"
    assert reports[3].notes == "f vanishes; tolerance=0.01"


def test_reports_not_carried_out_have_no_margin():
    report = VerificationReport.inconclusive("e", "Picard solve did not converge")
    assert report.status == STATUS_INCONCLUSIVE
    assert math.isnan(report.margin)
    assert json.loads(report.to_json())["margin"] == "nan"


def test_to_serializable():
    payload = {
        "nan": math.nan,
        "inf": -math.inf,
        "complex": 1.0 - 2.0j,
        "array": np.array([1, 2]),
        "flag": np.bool_(True),
        "count": np.int64(3),
        "node": Node(4, (0.5, -0.25)),
        1: (np.float64(0.1),),
    }
    assert to_serializable(payload) == {
        "nan": "nan",
        "inf": "-inf",
        "complex": {"re": 1.0, "im": -2.0},
        "array": [1, 2],
        "flag": True,
        "count": 3,
        "node": {"index": 4, "position": [0.5, -0.25]},
        "1": [0.1],
    }
    json.dumps(to_serializable(payload))


def test_summary_frame(reports):
    frame = summary_frame(reports)
    assert list(frame.columns) == ["check_id", "status", "passed", "margin", "params"]
    assert frame["check_id"].tolist() == ["a", "b", "c", "d"]
    assert json.loads(frame["params"][0]) == {"alpha": 0.5}
    assert summary_frame([]).empty


def test_report_writers(reports, tmp_path):
    json_path = tmp_path / "reports.json"
    reports_to_json(reports, json_path)
    payload = json.loads(json_path.read_text())
    assert [entry["check_id"] for entry in payload] == ["a", "b", "c", "d"]
    assert payload[3]["margin"] == "nan"

    csv_path = tmp_path / "summary.csv"
    reports_to_csv(reports, csv_path)
    frame = pd.read_csv(csv_path)
    assert frame["status"].tolist() == ["pass", "pass", "fail", "hypotheses-not-met"]
    assert frame["margin"][0] == pytest.approx(0.1)


@pytest.mark.parametrize(
    "statuses, strict, expected",
    [
        ([STATUS_PASS, STATUS_PASS], True, 0),
        ([], True, 0),
        ([STATUS_PASS, STATUS_FAIL], True, 2),
        ([STATUS_INCONCLUSIVE], False, 2),
        ([STATUS_PASS, STATUS_HYPOTHESES_NOT_MET], True, 3),
        ([STATUS_PASS, STATUS_HYPOTHESES_NOT_MET], False, 0),
        ([STATUS_HYPOTHESES_NOT_MET, STATUS_FAIL], True, 2),
    ],
)
def test_exit_code_for(statuses, strict, expected):
    assert exit_code_for(statuses, strict=strict) == expected


def test_encodings_are_consistent():
    assert invert_dict(INV_STATUS_ENCODING) == STATUS_ENCODING
    assert set(STATUS_LABELS) == set(STATUS_ENCODING)
    assert EXIT_CODE_ENCODING["invalid-parameters"] == 4
