"""Built-in example charts paired with their claimed properties.

Each entry is stored as a manifest document (see :mod:`paraslant.manifest`)
with an extra ``gallery`` section holding admissibility conditions, constant
assignments and claims.  Claims are checked by :func:`verify_entry`.

Claim kinds
-----------
``lambda-formula``       computed ``lambda`` of ``subject`` equals ``formula``
``type-label``           computed type equals ``label`` or the first row whose
                         conditions hold (``"unspecified"`` if none does)
``decomposition-label``  label of ``D1+D2``
``p-invariance``         ``P(subject)`` lies in ``target`` (default: itself)
``not-slant``            ``subject`` classifies as non-slant

Strict claims FAIL on mismatch; non-strict ones are recorded as DISCREPANCY.
"""

from __future__ import annotations

import copy
import re
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import InputError, ParaslantError
from .exprdsl import evaluate, parse
from .frame import ImmersionChart, Sampling, sample_frames
from .manifest import Manifest, parse_manifest
from .slant import (
    SLANT_TYPES,
    Tolerances,
    classify_slant,
    decompose_bislant,
    distribution_gram,
    project_onto,
)

CLAIM_KINDS = ("lambda-formula", "type-label", "decomposition-label", "p-invariance", "not-slant")
CAUSAL_QUALIFIERS = ("time-like", "space-like")
OUTCOMES = ("PASS", "FAIL", "DISCREPANCY", "UNSPECIFIED", "SKIPPED")

LAMBDA_TOL = 1e-9  # strict lambda claims
DISCREPANCY_TOL = 1e-6  # non-strict lambda claims
INVARIANCE_TOL = 1e-10


# ---------------------------------------------------------------------------
# conditions

_COND_RE = re.compile(r"^(?P<lhs>.+?)\s*(?P<op>!=|==|<=|>=|<|>)\s*(?P<rhs>.+)$")
_EQ_TOL = 1e-12


@dataclass(frozen=True)
class Condition:
    text: str
    op: str
    lhs: object
    rhs: object

    def holds(self, values: Mapping[str, float]) -> bool:
        a, b = evaluate(self.lhs, values), evaluate(self.rhs, values)
        if self.op == "<":
            return a < b
        if self.op == ">":
            return a > b
        if self.op == "<=":
            return a <= b
        if self.op == ">=":
            return a >= b
        if self.op == "==":
            return abs(a - b) <= _EQ_TOL
        return abs(a - b) > _EQ_TOL


def parse_condition(text: str, names: Sequence[str]) -> Condition:
    m = _COND_RE.match(text.strip())
    if m is None:
        raise InputError(f"condition {text!r} needs one of != == <= >= < >")
    return Condition(text, m["op"], parse(m["lhs"], (), names), parse(m["rhs"], (), names))


# ---------------------------------------------------------------------------
# claims and entries


@dataclass(frozen=True)
class Claim:
    kind: str
    subject: str
    source: str
    formula: str | None = None
    label: str | None = None
    rows: tuple[tuple[str, tuple[str, ...]], ...] = ()
    target: str | None = None
    strict: bool = True
    when: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in CLAIM_KINDS:
            raise InputError(f"unknown claim kind {self.kind!r}")
        for lab in [self.label] + [r[0] for r in self.rows]:
            if lab is not None and self.kind == "type-label":
                split_label(lab)

    @classmethod
    def from_dict(cls, d: Mapping) -> "Claim":
        rows = tuple((r["label"], tuple(r["conditions"])) for r in d.get("rows", ()))
        return cls(
            d["kind"], d["subject"], d.get("source", ""), d.get("formula"), d.get("label"), rows,
            d.get("target"), bool(d.get("strict", True)), tuple(d.get("when", ())),
        )

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "subject": self.subject, "source": self.source, "strict": self.strict}
        if self.formula is not None:
            out["formula"] = self.formula
        if self.label is not None:
            out["label"] = self.label
        if self.rows:
            out["rows"] = [{"label": lab, "conditions": list(c)} for lab, c in self.rows]
        if self.target is not None:
            out["target"] = self.target
        if self.when:
            out["when"] = list(self.when)
        return out


def split_label(label: str) -> tuple[str | None, str]:
    """``"time-like slant-3"`` -> ``("time-like", "slant-3")``."""
    parts = label.split()
    causal = None
    if len(parts) == 2 and parts[0] in CAUSAL_QUALIFIERS:
        causal, parts = parts[0], parts[1:]
    if len(parts) != 1 or parts[0] not in SLANT_TYPES:
        raise InputError(f"label {label!r} is not in the type vocabulary")
    return causal, parts[0]


@dataclass
class GalleryEntry:
    id: str
    title: str
    manifest: Manifest
    admissibility: tuple[str, ...]
    cases: tuple[dict, ...]
    claims: tuple[Claim, ...]
    document: dict = field(repr=False, default_factory=dict)

    @property
    def chart(self) -> ImmersionChart:
        return self.manifest.chart

    @property
    def constant_names(self) -> tuple[str, ...]:
        return tuple(self.chart.constants)

    def condition(self, text: str) -> Condition:
        return parse_condition(text, self.constant_names)

    def violations(self, assignment: Mapping[str, float]) -> list[str]:
        values = {**self.chart.constants, **assignment}
        return [c for c in self.admissibility if not self.condition(c).holds(values)]

    def case_chart(self, assignment: Mapping[str, float]) -> ImmersionChart:
        label = ",".join(f"{k}={_fmt(v)}" for k, v in assignment.items())
        return self.chart.with_constants(assignment, f"{self.id}[{label}]")


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


# ---------------------------------------------------------------------------
# entry documents

_AW1 = ["a*u1", "v1", "b*u1", "u1", "c*u2", "v2", "d*u2", "u2"]
_COMANCHERIA = ["u1", "a*v1", "b*v1", "v1", "u2", "c*v2", "d*v2", "v2"]
_P4 = ["u1", "v1", "u2", "v2"]


def _coord(m: int, *idx: int) -> dict:
    return {"basis": [["1" if j == i else "0" for j in range(m)] for i in idx]}


def _box(params, lo=-1.0, hi=1.0) -> dict:
    return {p: [lo, hi] for p in params}


def _doc(name, ambient, params, components, constants, distributions, admissibility, cases, claims, title):
    return {
        "name": name,
        "ambient": {"gallery": ambient},
        "chart": {
            "params": list(params),
            "domain": _box(params),
            "constants": dict(constants),
            "components": list(components),
        },
        "distributions": distributions,
        "analysis": {"classify": list(distributions) + ["TM"], "decompose": ["D1", "D2"]},
        "sampling": {"count": 64, "seed": 0},
        "gallery": {"title": title, "admissibility": admissibility, "cases": cases, "claims": claims},
    }


def _pair_rows(first: str, second: str, rows1, rows2) -> list[dict]:
    """Cross rows so every row of both factors gets five assignments."""
    cases = []
    n = len(rows1)
    for r in range(n):
        for i in range(5):
            (p, q), (s, t) = rows1[r][i], rows2[(r + i) % n][i]
            cases.append({first[0]: p, first[1]: q, second[0]: s, second[1]: t})
    return cases


# assignments per claimed table row (type 1, type 2, type 3)
_AW1_AB = [
    [(2, 0), (1.5, 0.5), (3, 0.5), (1, 0.5), (2, -0.5)],
    [(1, 2), (0.5, 1.5), (2, 2), (1, 3), (-1, 2)],
    [(0.5, 0.5), (0.5, 0), (0.3, 0.6), (-0.5, 0.5), (0.2, 0.2)],
]
# D2 rows satisfy both the claimed c^2 and the analogous d^2 inequalities
_AW1_CD = [
    [(0.8, 0.8), (0.9, 0.5), (0.6, 0.9), (0.75, 0.75), (-0.8, 0.7)],
    [(1.5, 1.5), (2, 2), (1.5, 3), (3, 1.5), (-2, 1.5)],
    [(0.5, 0.5), (0.5, 0), (0.3, 0.6), (-0.5, 0.5), (0.2, 0.2)],
]
# J-block factors: lambda = a^2/(1+a^2-b^2)
_J_AB = [
    [(2, 1.5), (1, 1.2), (2, 2), (1.5, 1.5), (3, 2)],
    [(1, 0.5), (2, 0), (1.5, 0), (0.5, 0.5), (2, 0.8)],
    [(1, 2), (0.5, 2), (1, 3), (2, 3), (0.5, 1.5)],
]
# J1-block factors, chosen inside the claimed rows
_J1_AB = [
    [(1.5, 2.5), (2, 3), (1.5, 2), (2, 2.5), (1.2, 2)],
    [(0.5, 1.5), (0.8, 2), (0.5, 3), (0.2, 1.2), (0.5, 2)],
    [(2, 0.5), (2, 1), (3, 1), (1.5, 0.5), (2, -0.5)],
]
# satisfies the claimed J1 type-3 row b^2-a^2<1 but has 1+b^2-a^2 = b^2 > 0
_J1_ROW3_COUNTEREXAMPLE = (1, 0.5)

_AW1_TABLE = '"type 1 & $a^2+b^2>1,\\quad b^2<1$ & $c^2+d^2>1,\\quad c^2<1$"'


def _aw1_rows(x: str, y: str, causal_x: str) -> list[dict]:
    s = f"{x}^2+{y}^2"
    return [
        {"label": "slant-1", "conditions": [f"{s} > 1", f"{causal_x}^2 < 1"]},
        {"label": "slant-2", "conditions": [f"{s} > 1", f"{causal_x}^2 > 1"]},
        {"label": "time-like slant-3", "conditions": [f"{s} < 1"]},
    ]


def _aw1_doc() -> dict:
    cases = _pair_rows("ab", "cd", _AW1_AB, _AW1_CD)
    dists = {
        "D1": _coord(4, 0, 1), "D2": _coord(4, 2, 3),
        "Dt1": _coord(4, 0, 3), "Dt2": _coord(4, 2, 1),
    }
    note = 'aw1 note: "both distributions are anti-invariant, that is $P(\\tilde D_1)=\\tilde D_2$"'
    claims = [
        {"kind": "lambda-formula", "subject": "D1", "formula": "a^2/(-1+a^2+b^2)",
         "source": 'aw1 table: "P^2_1=\\fra{a^2}{-1+a^2+b^2}Id_1"'},
        {"kind": "lambda-formula", "subject": "D2", "formula": "c^2/(-1+c^2+d^2)",
         "source": 'aw1 table: "P^2_2=\\fra{c^2}{-1+c^2+d^2}Id_2"'},
        {"kind": "type-label", "subject": "D1", "rows": _aw1_rows("a", "b", "b"), "source": f"aw1 table: {_AW1_TABLE}"},
        {"kind": "type-label", "subject": "D2", "rows": _aw1_rows("c", "d", "d"),
         "source": f"aw1 table (D2 column read with d^2 in place of c^2): {_AW1_TABLE}"},
        {"kind": "decomposition-label", "subject": "D1+D2", "label": "bi-slant",
         "source": 'aw1: "defines a bi-slant submanifold in $(\\R^8,J_2,g_2)$"'},
        {"kind": "type-label", "subject": "Dt1", "label": "anti-invariant", "source": note},
        {"kind": "type-label", "subject": "Dt2", "label": "anti-invariant", "source": note},
        {"kind": "p-invariance", "subject": "Dt1", "target": "Dt2", "source": note},
        {"kind": "p-invariance", "subject": "Dt2", "target": "Dt1", "source": note},
    ]
    return _doc("aw1", "J2-g2-R8", _P4, _AW1, {"a": 1.0, "b": 2.0, "c": 1.0, "d": 2.0}, dists,
                ["a^2+b^2 != 1", "c^2+d^2 != 1"], cases, claims, "bi-slant products of slant planes in (R^8, J2, g2)")


def _aw1_semi_doc() -> dict:
    bs = [0.5, 2, 1.5, 0.3, 3]
    cases = []
    for r in range(3):
        for i in range(5):
            c, d = _AW1_CD[r][i]
            cases.append({"a": 0.0, "b": bs[(r + i) % 5], "c": c, "d": d})
    src = 'aw1 degenerations: "Taking $a=0$ in the previous example we obtain a semi-slant submanifold"'
    prop = 'semi-slant: "Both the holomorphic and the slant distributions are $P$ invariant"'
    claims = [
        {"kind": "lambda-formula", "subject": "D1", "formula": "a^2/(-1+a^2+b^2)",
         "source": 'aw1 table: "P^2_1=\\fra{a^2}{-1+a^2+b^2}Id_1"'},
        {"kind": "lambda-formula", "subject": "D2", "formula": "c^2/(-1+c^2+d^2)",
         "source": 'aw1 table: "P^2_2=\\fra{c^2}{-1+c^2+d^2}Id_2"'},
        {"kind": "type-label", "subject": "D2", "rows": _aw1_rows("c", "d", "d"), "source": f"aw1 table: {_AW1_TABLE}"},
        {"kind": "p-invariance", "subject": "D1", "source": prop},
        {"kind": "p-invariance", "subject": "D2", "source": prop},
        {"kind": "type-label", "subject": "D1", "label": "para-complex", "strict": False, "source": src},
        {"kind": "decomposition-label", "subject": "D1+D2", "label": "semi-slant", "strict": False, "source": src},
    ]
    return _doc("aw1-semi", "J2-g2-R8", _P4, _AW1, {"a": 0.0, "b": 2.0, "c": 1.0, "d": 2.0},
                {"D1": _coord(4, 0, 1), "D2": _coord(4, 2, 3)},
                ["a^2+b^2 != 1", "c^2+d^2 != 1"], cases, claims, "aw1 with a = 0")


def _aw1_hemi_doc() -> dict:
    az = [2, 0.5, 1.5, 3, 0.7]
    cases = []
    for r in range(3):
        for i in range(5):
            c, d = _AW1_CD[r][i]
            cases.append({"a": az[(r + i) % 5], "b": 1.0, "c": c, "d": d})
    src = 'aw1 degenerations: "taking $b=1$ we obtain a hemi-slant submanifold"'
    claims = [
        {"kind": "lambda-formula", "subject": "D1", "formula": "a^2/(-1+a^2+b^2)",
         "source": 'aw1 table: "P^2_1=\\fra{a^2}{-1+a^2+b^2}Id_1"'},
        {"kind": "lambda-formula", "subject": "D2", "formula": "c^2/(-1+c^2+d^2)",
         "source": 'aw1 table: "P^2_2=\\fra{c^2}{-1+c^2+d^2}Id_2"'},
        {"kind": "type-label", "subject": "D2", "rows": _aw1_rows("c", "d", "d"), "source": f"aw1 table: {_AW1_TABLE}"},
        {"kind": "type-label", "subject": "D1", "label": "totally-real", "strict": False, "source": src},
        {"kind": "decomposition-label", "subject": "D1+D2", "label": "hemi-slant", "strict": False, "source": src},
    ]
    return _doc("aw1-hemi", "J2-g2-R8", _P4, _AW1, {"a": 2.0, "b": 1.0, "c": 1.0, "d": 2.0},
                {"D1": _coord(4, 0, 1), "D2": _coord(4, 2, 3)},
                ["a^2+b^2 != 1", "c^2+d^2 != 1"], cases, claims, "aw1 with b = 1")


def _j_rows(x: str, y: str) -> list[dict]:
    return [
        {"label": "slant-1", "conditions": [f"{y}^2-{x}^2 < 1", f"{y}^2 > 1"]},
        {"label": "slant-2", "conditions": [f"{y}^2-{x}^2 < 1", f"{y}^2 < 1"]},
        {"label": "space-like slant-3", "conditions": [f"{y}^2-{x}^2 > 1"]},
    ]


def _j1_rows(x: str, y: str) -> list[dict]:
    return [
        {"label": "slant-1", "conditions": [f"{y}^2-{x}^2 > 1", f"{x}^2 > 1"]},
        {"label": "slant-2", "conditions": [f"{y}^2-{x}^2 > 1", f"{x}^2 < 1"]},
        {"label": "space-like slant-3", "conditions": [f"{y}^2-{x}^2 < 1"]},
    ]


def _comancheria_doc(which: int) -> dict:
    ambient = {2: "J2-g2-R8", 3: "J3-g3-R8", 4: "J4-g4-R8"}[which]
    j1_first = which in (3, 4)
    j1_second = which == 4
    rows_ab = _J1_AB if j1_first else _J_AB
    rows_cd = _J1_AB if j1_second else _J_AB
    cases = _pair_rows("ab", "cd", rows_ab, rows_cd)
    if j1_first:
        p, q = _J1_ROW3_COUNTEREXAMPLE
        cases.append({"a": p, "b": q, "c": rows_cd[0][0][0], "d": rows_cd[0][0][1]})
    if j1_second:
        p, q = _J1_ROW3_COUNTEREXAMPLE
        cases.append({"a": rows_ab[0][0][0], "b": rows_ab[0][0][1], "c": p, "d": q})
    tab = f'comancheria table, (R^8,J_{which},g_{which}) row'
    claims = []
    for subj, (x, y), j1 in (("D1", "ab", j1_first), ("D2", "cd", j1_second)):
        idx = 1 if subj == "D1" else 2
        claims.append({
            "kind": "lambda-formula", "subject": subj, "formula": f"{x}^2/(1+{x}^2-{y}^2)", "strict": not j1,
            "source": f'{tab}: "P^2_{idx}=\\fra{{{x}^2}}{{1+{x}^2-{y}^2}}Id_{idx}"',
        })
        rows = _j1_rows(x, y) if j1 else _j_rows(x, y)
        quote = " ; ".join(f"{r['label']}: {', '.join(r['conditions'])}" for r in rows)
        claims.append({"kind": "type-label", "subject": subj, "rows": rows, "strict": not j1,
                       "source": f"{tab}, {subj} column: {quote}"})
    claims.append({"kind": "decomposition-label", "subject": "D1+D2", "label": "bi-slant",
                   "source": 'comancheria: "defines a bi-slant submanifold"'})
    return _doc(f"comancheria-J{which}", ambient, _P4, _COMANCHERIA, {"a": 1.0, "b": 2.0, "c": 1.0, "d": 2.0},
                {"D1": _coord(4, 0, 1), "D2": _coord(4, 2, 3)},
                ["a^2-b^2 != 1", "c^2-d^2 != 1"], cases, claims,
                f"products of slant planes in (R^8, J{which}, g{which})")


def _diecisiete_doc() -> dict:
    src = ('diecisiete: "$D_1=\\mbox{Span}\\left\\{\\fra{\\partial}{\\partial w}\\right\\}$ a totally real '
           'distribution and ... a type 3 slant distribution with $P_2^2=\\fra{1}{k^2-1}Id\\rceil_{ D_2}$"')
    claims = [
        {"kind": "lambda-formula", "subject": "D2", "formula": "1/(k^2-1)", "strict": False, "source": src},
        {"kind": "type-label", "subject": "D2", "label": "slant-3", "strict": False, "source": src},
        {"kind": "type-label", "subject": "D1", "label": "totally-real", "strict": False, "source": src},
        {"kind": "decomposition-label", "subject": "D1+D2", "label": "bi-slant", "strict": False,
         "source": 'diecisiete: "defines a bi-slant submanifold in $(\\R^6,J_5,g_5)$"'},
    ]
    cases = [{"k": k} for k in (1.5, 2.0, 3.0, 1.2, 5.0)]
    return _doc("diecisiete", "J5-g5-R6", ["u", "v", "w"], ["u", "k*cosh(v)", "v", "k*sinh(v)", "w", "0"],
                {"k": 2.0}, {"D1": _coord(3, 2), "D2": _coord(3, 0, 1)}, ["k > 1"], cases, claims,
                "three-dimensional bi-slant candidate in (R^6, J5, g5)")


def _final_doc() -> dict:
    src = ('final example: "with $P^2_1=\\fra{1}{2}Id_1$ and $P^2_2=\\fra{1}{2}Id_2$. '
           'It is not a slant submanifold"')
    claims = [
        {"kind": "lambda-formula", "subject": "D1", "formula": "1/2", "source": src},
        {"kind": "lambda-formula", "subject": "D2", "formula": "1/2", "source": src},
        {"kind": "type-label", "subject": "D1", "label": "slant-2", "source": src},
        {"kind": "type-label", "subject": "D2", "label": "slant-2", "source": src},
        {"kind": "not-slant", "subject": "TM", "source": src},
        {"kind": "decomposition-label", "subject": "D1+D2", "label": "bi-slant",
         "source": 'final example: "is a bi-slant submanifold"'},
    ]
    return _doc("final-half-half", "J2-g2-R8", _P4,
                ["u1", "v1+u2", "u1", "u1", "u2", "v2", "sqrt(3)*u2", "u2-v1"], {},
                {"D1": _coord(4, 0, 1), "D2": _coord(4, 2, 3)}, [], [{}], claims,
                "bi-slant with equal angles, not slant")


def _cr_family_doc() -> dict:
    small = [0.5, 0.3, 0.8, -0.5, 0.6]
    big = [2, 1.5, 3, -2, 1.2]
    cases = []
    for i in range(5):
        cases.append({"a": 1.0, "b": small[i], "c": big[i], "d": 0.0})
        cases.append({"a": 1.0, "b": big[i], "c": small[i], "d": 0.0})
    for i in range(5):
        cases.append({"a": 0.0, "b": small[i], "c": big[i], "d": 1.0})
        cases.append({"a": 0.0, "b": big[i], "c": small[i], "d": 1.0})
    for i in range(5):
        cases.append({"a": 0.0, "b": (small + big)[2 * i], "c": (big + small)[2 * i + 1], "d": 0.0})
    grid = 'CR examples: "Taking $a=1, d=0$, $D_1=...$ is a totally real distribution and $ D_2=...$ is an holomorphic distribution"'
    types = 'CR examples: "$D_1$ is type 1 if $b^2<1$ ... $D_2$ is type 3 if $c^2<1$"'
    a1d0 = ["a == 1", "d == 0"]
    claims = [
        {"kind": "type-label", "subject": "D1", "label": "totally-real", "strict": False, "when": a1d0, "source": grid},
        {"kind": "type-label", "subject": "D2", "label": "para-complex", "strict": False, "when": a1d0, "source": grid},
        {"kind": "type-label", "subject": "D1", "strict": False, "when": a1d0, "source": types,
         "rows": [{"label": "slant-1", "conditions": ["b^2 < 1"]}, {"label": "slant-2", "conditions": ["b^2 > 1"]}]},
        {"kind": "type-label", "subject": "D2", "strict": False, "when": a1d0, "source": types,
         "rows": [{"label": "slant-2", "conditions": ["c^2 > 1"]}, {"label": "slant-3", "conditions": ["c^2 < 1"]}]},
        {"kind": "decomposition-label", "subject": "D1+D2", "label": "CR", "strict": False, "when": a1d0,
         "source": 'CR examples: "So we got examples of CR-submanifolds of type 1-2, 1-3, 2-2 and 2-3"'},
        {"kind": "decomposition-label", "subject": "D1+D2", "label": "CR", "strict": False,
         "when": ["a == 0", "d == 1"],
         "source": 'CR examples: "Taking $a=0, d=1$ we can obtain 2-1, 2-2, 3-1 and again 3-2 examples"'},
        {"kind": "decomposition-label", "subject": "D1+D2", "label": "CR", "strict": False,
         "when": ["a == 0", "d == 0"],
         "source": 'CR definition: "$TM= D\\oplus D^\\perp$ with $ D$ an holomorphic distribution"'},
    ]
    return _doc("cr-family", "J2-g2-R8", _P4, _AW1, {"a": 1.0, "b": 0.5, "c": 2.0, "d": 0.0},
                {"D1": _coord(4, 0, 1), "D2": _coord(4, 2, 3)},
                ["a^2+b^2 != 1", "c^2+d^2 != 1"], cases, claims, "aw1 parameter grid for CR examples")


_BUILDERS = {
    "aw1": _aw1_doc,
    "aw1-semi": _aw1_semi_doc,
    "aw1-hemi": _aw1_hemi_doc,
    "comancheria-J2": lambda: _comancheria_doc(2),
    "comancheria-J3": lambda: _comancheria_doc(3),
    "comancheria-J4": lambda: _comancheria_doc(4),
    "diecisiete": _diecisiete_doc,
    "final-half-half": _final_doc,
    "cr-family": _cr_family_doc,
}
GALLERY_IDS = tuple(_BUILDERS)


def entry_document(id: str) -> dict:
    """The manifest document of a gallery entry (a fresh copy)."""
    if id not in _BUILDERS:
        raise InputError(f"unknown gallery entry {id!r}; valid ids: {', '.join(GALLERY_IDS)}")
    return copy.deepcopy(_BUILDERS[id]())


def entry_from_document(doc: Mapping) -> GalleryEntry:
    man = parse_manifest(doc)
    gal = doc.get("gallery") or {}
    entry = GalleryEntry(
        man.name,
        str(gal.get("title", "")),
        man,
        tuple(gal.get("admissibility", ())),
        tuple(dict(c) for c in gal.get("cases", ({},))),
        tuple(Claim.from_dict(c) for c in gal.get("claims", ())),
        dict(doc),
    )
    for text in entry.admissibility:
        entry.condition(text)
    for cl in entry.claims:
        if cl.formula is not None:
            parse(cl.formula, (), entry.constant_names)
        for _, conds in cl.rows:
            for c in conds:
                entry.condition(c)
        for c in cl.when:
            entry.condition(c)
    return entry


def load_example(id: str) -> GalleryEntry:
    return entry_from_document(entry_document(id))


# ---------------------------------------------------------------------------
# expected values


@dataclass(frozen=True)
class Expected:
    claim: Claim
    value: float | None = None
    label: str | None = None
    applies: bool = True


def expected_claims(entry: GalleryEntry, assignment: Mapping[str, float]) -> list[Expected]:
    """Evaluate formulas and select table rows for one constant assignment."""
    values = {**entry.chart.constants, **assignment}
    out = []
    for cl in entry.claims:
        applies = all(entry.condition(c).holds(values) for c in cl.when)
        value = label = None
        if cl.formula is not None:
            value = evaluate(parse(cl.formula, (), entry.constant_names), values)
        if cl.kind == "type-label":
            if cl.rows:
                label = "unspecified"
                for lab, conds in cl.rows:
                    if all(entry.condition(c).holds(values) for c in conds):
                        label = lab
                        break
            else:
                label = cl.label
        elif cl.label is not None:
            label = cl.label
        out.append(Expected(cl, value, label, applies))
    return out


# ---------------------------------------------------------------------------
# verification


@dataclass
class ClaimOutcome:
    entry: str
    case: dict
    kind: str
    subject: str
    strict: bool
    expected: object
    computed: object
    outcome: str
    source: str
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "entry": self.entry,
            "case": dict(self.case),
            "kind": self.kind,
            "subject": self.subject,
            "strict": self.strict,
            "expected": self.expected,
            "computed": self.computed,
            "outcome": self.outcome,
            "source": self.source,
            "detail": self.detail,
        }


def _causal_of(frames, bd) -> str:
    kinds = set()
    for fr in frames:
        ev = np.linalg.eigvalsh(distribution_gram(fr, bd.matrix(fr)))
        if np.all(ev > 0):
            kinds.add("space-like")
        elif np.all(ev < 0):
            kinds.add("time-like")
        else:
            kinds.add("neutral")
    return kinds.pop() if len(kinds) == 1 else "mixed"


class _CaseContext:
    """Lazily computed reports for one constant assignment, shared across claims."""

    def __init__(self, entry: GalleryEntry, chart: ImmersionChart, sampling: Sampling, tol: Tolerances):
        self.entry = entry
        self.chart = chart
        self.sampling = sampling
        self.tol = tol
        self.frames = sample_frames(chart, sampling)
        self._slant = {}
        self._bound = {}

    def bound(self, name: str):
        if name not in self._bound:
            self._bound[name] = self.entry.manifest.distribution(name, f"claims.{name}").bind(self.chart)
        return self._bound[name]

    def slant(self, name: str):
        if name not in self._slant:
            self._slant[name] = classify_slant(self.chart, self.bound(name), self.sampling, self.tol, self.frames)
        return self._slant[name]


def _outcome(ok: bool, strict: bool) -> str:
    if ok:
        return "PASS"
    return "FAIL" if strict else "DISCREPANCY"


def _check(ctx: _CaseContext, exp: Expected) -> tuple[object, str, dict]:
    cl = exp.claim
    if cl.kind == "lambda-formula":
        rep = ctx.slant(cl.subject)
        lams = [s["lambda"] for s in rep.samples]
        dev = max(abs(x - exp.value) for x in lams)
        tol = (LAMBDA_TOL if cl.strict else DISCREPANCY_TOL) * max(1.0, abs(exp.value))
        ok = dev <= tol and rep.type != "non-slant"
        detail = {"max_deviation": dev, "residual": rep.residual, "type": rep.type,
                  "lambda_min": min(lams), "lambda_max": max(lams)}
        if not ok:
            detail["per_point"] = [{"point": s["point"], "lambda": s["lambda"]} for s in rep.samples]
        return rep.lam, _outcome(ok, cl.strict), detail
    if cl.kind == "type-label":
        rep = ctx.slant(cl.subject)
        if exp.label == "unspecified":
            return rep.type, "UNSPECIFIED", {"lambda": rep.lam}
        causal, typ = split_label(exp.label)
        computed = rep.type
        detail = {"lambda": rep.lam, "residual": rep.residual, "theta": rep.theta}
        ok = computed == typ
        if causal is not None:
            actual = _causal_of(ctx.frames, ctx.bound(cl.subject))
            detail["causal"] = actual
            computed = f"{actual} {rep.type}"
            ok = ok and actual == causal
        return computed, _outcome(ok, cl.strict), detail
    if cl.kind == "decomposition-label":
        n1, n2 = (s.strip() for s in cl.subject.split("+"))
        rep = decompose_bislant(ctx.chart, ctx.bound(n1), ctx.bound(n2), ctx.sampling, ctx.tol, ctx.frames,
                                (ctx.slant(n1), ctx.slant(n2)))
        types = [r.type if r else None for r in (rep.report1, rep.report2)]
        return rep.label, _outcome(rep.label == exp.label, cl.strict), {"types": types, "reason": rep.reason}
    if cl.kind == "p-invariance":
        bd = ctx.bound(cl.subject)
        tgt = ctx.bound(cl.target) if cl.target else bd
        worst = 0.0
        for fr in ctx.frames:
            B, T = bd.matrix(fr), tgt.matrix(fr)
            PB = fr.P @ B
            worst = max(worst, float(np.max(np.abs(fr.E @ (PB - project_onto(fr, T, PB))))))
        return worst, _outcome(worst <= INVARIANCE_TOL, cl.strict), {"target": cl.target or cl.subject}
    if cl.kind == "not-slant":
        rep = ctx.slant(cl.subject)
        return rep.type, _outcome(rep.type == "non-slant", cl.strict), {
            "residual": rep.residual, "spread": rep.spread, "lambda": rep.lam}
    raise InputError(f"unknown claim kind {cl.kind!r}")


def expected_repr(exp: Expected):
    if exp.claim.kind == "lambda-formula":
        return exp.value
    if exp.claim.kind == "p-invariance":
        return f"P({exp.claim.subject}) in {exp.claim.target or exp.claim.subject}"
    if exp.claim.kind == "not-slant":
        return "non-slant"
    return exp.label


def verify_entry(
    entry: GalleryEntry,
    sampling: Sampling = Sampling(),
    tolerances: Tolerances = Tolerances(),
) -> list[ClaimOutcome]:
    """Check every claim of ``entry`` on every constant assignment."""
    out: list[ClaimOutcome] = []
    for case in entry.cases:
        bad = entry.violations(case)
        if bad:
            out.append(ClaimOutcome(entry.id, case, "admissibility", "-", True, bad, None, "SKIPPED", "",
                                    {"violated": bad}))
            continue
        chart = entry.case_chart(case)
        try:
            ctx = _CaseContext(entry, chart, sampling, tolerances)
        except ParaslantError as err:
            out.append(ClaimOutcome(entry.id, case, "sampling", "-", True, None, None, "FAIL", "",
                                    {"error": str(err), "code": err.code}))
            continue
        for exp in expected_claims(entry, case):
            if not exp.applies:
                continue
            cl = exp.claim
            try:
                computed, outcome, detail = _check(ctx, exp)
            except ParaslantError as err:
                computed, outcome, detail = None, _outcome(False, cl.strict), {"error": str(err), "code": err.code}
            out.append(ClaimOutcome(entry.id, case, cl.kind, cl.subject, cl.strict, expected_repr(exp),
                                    computed, outcome, cl.source, detail))
    return out
