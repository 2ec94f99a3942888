"""Scan records, the class-number congruence checks and report serialisation."""

from __future__ import annotations

import csv
import io
import json

from . import __version__
from .arith import is_fundamental, is_square_mod
from .qforms import class_number
from .traces import CERTIFICATION_THRESHOLD, MAX_RETRIES, WEIGHT_LCM, weighted_class_term

REPORT_FORMAT = "onan-moonshine/scan-report"
REPORT_VERSION = 1
MODULI = ("mod16", "mod9", "mod5", "mod7")
CSV_COLUMNS = ("D", "fundamental", "h", "a", "t") + MODULI

PRECISION_POLICY = {
    "digits": "ceil(2*pi*sqrt(|D|)/ln(10)) + 40",
    "on_failure": "double the digits",
    "max_retries": MAX_RETRIES,
    "certification_threshold": CERTIFICATION_THRESHOLD,
    "denominator_cleared_by": WEIGHT_LCM,
    "truncation_bound": "10*exp(4*pi*sqrt(n))*|q|^n",
}


def applicable_moduli(D: int) -> list[str]:
    """Which congruences a(D) = t(D) mod m are asserted for a fundamental D."""
    out = []
    if D % 2 == 0 and D < -8:
        out.append("mod16")
    if not is_square_mod(D, 3):
        out.append("mod9")
    if not is_square_mod(D, 5):
        out.append("mod5")
    if not is_square_mod(D, 7):
        out.append("mod7")
    return out


def _modulus(name: str) -> int:
    return int(name[3:])


def scan_record(D: int, a: int) -> dict:
    fundamental = is_fundamental(D)
    if not fundamental:
        return {
            "D": D,
            "fundamental": False,
            "h": None,
            "a": a,
            "t": None,
            "applicable": [],
            "checks": {m: "NA" for m in MODULI},
        }
    t = weighted_class_term(D)
    applicable = applicable_moduli(D)
    checks = {}
    for m in MODULI:
        if m not in applicable:
            checks[m] = "NA"
        else:
            checks[m] = "pass" if (a - t) % _modulus(m) == 0 else "fail"
    return {
        "D": D,
        "fundamental": True,
        "h": class_number(D),
        "a": a,
        "t": t,
        "applicable": applicable,
        "checks": checks,
    }


def summarize(records: list[dict]) -> dict:
    counts = {m: {"pass": 0, "fail": 0, "NA": 0} for m in MODULI}
    for rec in records:
        for m, status in rec["checks"].items():
            counts[m][status] += 1
    failures = sum(c["fail"] for c in counts.values())
    return {
        "records": len(records),
        "fundamental": sum(rec["fundamental"] for rec in records),
        "checks": counts,
        "failures": failures,
    }


def build_report(D_min: int, D_max: int, records: list[dict], all_discriminants: bool) -> dict:
    return {
        "format": REPORT_FORMAT,
        "version": REPORT_VERSION,
        "engine_version": __version__,
        "range": {"D_min": D_min, "D_max": D_max},
        "all_discriminants": all_discriminants,
        "check": "thm2",
        "precision_policy": PRECISION_POLICY,
        "summary": summarize(records),
        "records": records,
    }


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def to_csv(records: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in records:
        row = [rec["D"], int(rec["fundamental"]), rec["h"], rec["a"], rec["t"]]
        row = ["" if v is None else v for v in row]
        writer.writerow(row + [rec["checks"][m] for m in MODULI])
    return buf.getvalue()
