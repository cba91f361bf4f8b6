# -*- coding: utf-8 -*-
"""
Mappings for the laboratory front ends

This module defines the mappings between verification statuses, process exit codes
and the labels shown by the web front end.
"""


def invert_dict(d):
    """Inverts a dictionary."""
    return {v: k for k, v in d.items()}


# Report status

STATUS_PASS = "pass"
STATUS_FAIL = "fail"
STATUS_HYPOTHESES_NOT_MET = "hypotheses-not-met"
STATUS_INCONCLUSIVE = "inconclusive"

STATUS_ENCODING = {
    STATUS_PASS: 0,
    STATUS_FAIL: 1,
    STATUS_HYPOTHESES_NOT_MET: 2,
    STATUS_INCONCLUSIVE: 3,
}
INV_STATUS_ENCODING = invert_dict(STATUS_ENCODING)


# Exit codes

EXIT_OK = 0
EXIT_FAILURE = 2
EXIT_HYPOTHESES_NOT_MET = 3
EXIT_INVALID_PARAMETERS = 4

EXIT_CODE_ENCODING = {
    "ok": EXIT_OK,
    "failure": EXIT_FAILURE,
    "hypotheses-not-met": EXIT_HYPOTHESES_NOT_MET,
    "invalid-parameters": EXIT_INVALID_PARAMETERS,
}
INV_EXIT_CODE_ENCODING = invert_dict(EXIT_CODE_ENCODING)


# Status labels for the web front end

STATUS_ICONS = {
    STATUS_PASS: ":material/check_circle:",
    STATUS_FAIL: ":material/cancel:",
    STATUS_HYPOTHESES_NOT_MET: ":material/warning:",
    STATUS_INCONCLUSIVE: ":material/help:",
}

STATUS_LABELS = {
    STATUS_PASS: "Pass",
    STATUS_FAIL: "Fail",
    STATUS_HYPOTHESES_NOT_MET: "Hypotheses not met",
    STATUS_INCONCLUSIVE: "Inconclusive",
}
INV_STATUS_LABELS = invert_dict(STATUS_LABELS)


def exit_code_for(statuses, strict: bool = True) -> int:
    """Summary exit code of a run from the statuses of its reports."""
    statuses = list(statuses)
    if any(s in (STATUS_FAIL, STATUS_INCONCLUSIVE) for s in statuses):
        return EXIT_CODE_ENCODING["failure"]
    if strict and STATUS_HYPOTHESES_NOT_MET in statuses:
        return EXIT_CODE_ENCODING["hypotheses-not-met"]
    return EXIT_CODE_ENCODING["ok"]
