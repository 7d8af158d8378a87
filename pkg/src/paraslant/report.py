"""Run reports and their JSON, CSV and text renderings.

JSON is canonical: keys sorted, floats written with 17 significant digits,
no whitespace variation.  Identical inputs therefore give identical bytes.

CSV has one row per (analysis, sample) with the header::

    entry,analysis,subject,point,lambda,residual,type,theta,outcome

``point`` is the sample's parameter point (``;``-separated) or, for claim
rows, the constant assignment (``a=1;b=2``).
"""

from __future__ import annotations

import csv
import io
import json
import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .errors import InputError

CSV_HEADER = ("entry", "analysis", "subject", "point", "lambda", "residual", "type", "theta", "outcome")


@dataclass
class RunReport:
    command: str
    version: str
    manifest_digest: str
    sampling: dict
    results: list = field(default_factory=list)
    claims: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    strict: bool = False

    @property
    def summary(self) -> dict:
        counts = Counter(c["outcome"] for c in self.claims)
        counts.update(r["outcome"] for r in self.results if r.get("outcome"))
        return {k: counts[k] for k in sorted(counts)}

    @property
    def exit_code(self) -> int:
        return 1 if self.summary.get("FAIL", 0) else 0

    def to_dict(self) -> dict:
        return {
            "tool": "paraslant",
            "version": self.version,
            "command": self.command,
            "manifest_digest": self.manifest_digest,
            "sampling": self.sampling,
            "strict": self.strict,
            "results": self.results,
            "claims": self.claims,
            "skipped": self.skipped,
            "summary": self.summary,
            "exit_code": self.exit_code,
        }


def _plain(x):
    """Convert numpy scalars and arrays, tuples and sets to JSON types."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return _plain(x.tolist())
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    return x


def _encode(x, out: list):
    if x is None:
        out.append("null")
    elif isinstance(x, bool):
        out.append("true" if x else "false")
    elif isinstance(x, int):
        out.append(str(x))
    elif isinstance(x, float):
        # non-finite values are not JSON; write them as strings
        out.append(format(x, ".17g") if math.isfinite(x) else json.dumps(repr(x)))
    elif isinstance(x, str):
        out.append(json.dumps(x, ensure_ascii=False))
    elif isinstance(x, list):
        out.append("[")
        for i, v in enumerate(x):
            if i:
                out.append(",")
            _encode(v, out)
        out.append("]")
    elif isinstance(x, dict):
        out.append("{")
        for i, k in enumerate(sorted(x)):
            if i:
                out.append(",")
            out.append(json.dumps(k, ensure_ascii=False))
            out.append(":")
            _encode(x[k], out)
        out.append("}")
    else:
        raise TypeError(f"cannot serialise {type(x).__name__}")


def canonical_json(obj) -> str:
    out: list[str] = []
    _encode(_plain(obj), out)
    return "".join(out)


def _num(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _point(p) -> str:
    if isinstance(p, dict):
        return ";".join(f"{k}={_num(v)}" for k, v in p.items())
    if isinstance(p, (list, tuple)):
        return ";".join(_num(float(v)) for v in p)
    return "" if p is None else str(p)


def csv_rows(report: RunReport) -> list[tuple]:
    rows = []
    for r in report.results:
        entry, analysis, subject = r.get("entry", ""), r["analysis"], r.get("subject", "")
        data = r.get("report") or {}
        if analysis == "classify":
            for s in data.get("samples", []):
                rows.append((entry, analysis, subject, _point(s["point"]), _num(s["lambda"]), _num(s["residual"]),
                             data.get("type", ""), _num(data.get("theta")), r.get("outcome", "")))
        elif data.get("samples"):
            for s in data["samples"]:
                vals = [v for k, v in s.items() if k != "point" and isinstance(v, float)]
                rows.append((entry, analysis, subject, _point(s["point"]), "", _num(max(vals) if vals else None),
                             "", "", r.get("outcome", "")))
        else:
            rows.append((entry, analysis, subject, _point(r.get("point")), "", _num(r.get("residual")),
                         _num(r.get("label", "")), "", r.get("outcome", "")))
    for c in report.claims:
        d = c.get("detail", {})
        lam = c["computed"] if c["kind"] == "lambda-formula" else d.get("lambda")
        resid = d.get("max_deviation") if c["kind"] == "lambda-formula" else (
            c["computed"] if c["kind"] == "p-invariance" else d.get("residual"))
        typ = d.get("type") if c["kind"] == "lambda-formula" else (
            c["computed"] if isinstance(c["computed"], str) else "")
        rows.append((c["entry"], f"claim:{c['kind']}", c["subject"], _point(c["case"]), _num(lam), _num(resid),
                     typ or "", _num(d.get("theta")), c["outcome"]))
    return rows


def _text(report: RunReport) -> str:
    lines = [f"paraslant {report.version} {report.command}  seed={report.sampling.get('seed')} "
             f"samples={report.sampling.get('count')}"]
    for r in report.results:
        head = f"{r.get('outcome') or '-':<12} {r.get('entry', '')} {r['analysis']} {r.get('subject', '')}"
        lines.append(head.rstrip() + ("  " + r["summary"] if r.get("summary") else ""))
    for c in report.claims:
        case = _point(c["case"])
        lines.append(f"{c['outcome']:<12} {c['entry']} [{case}] {c['kind']} {c['subject']}: "
                     f"expected {_show(c['expected'])}, computed {_show(c['computed'])}")
    for s in report.skipped:
        lines.append(f"{'SKIPPED':<12} {s}")
    summ = ", ".join(f"{k}={v}" for k, v in report.summary.items()) or "nothing checked"
    lines.append(f"summary: {summ}; exit code {report.exit_code}")
    return "\n".join(lines) + "\n"


def _show(v) -> str:
    if isinstance(v, float):
        return format(v, ".10g")
    if isinstance(v, list):
        return "[" + ", ".join(_show(x) for x in v) + "]"
    return str(v)


def emit_report(report: RunReport, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (canonical_json(report.to_dict()) + "\n").encode()
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        w.writerows(csv_rows(report))
        return buf.getvalue().encode()
    if fmt == "text":
        return _text(report).encode()
    raise InputError(f"unsupported format {fmt!r}; use json, csv or text")
