"""Manifest documents: one JSON object describing an ambient, a chart and the analyses.

Schema (keys not listed are rejected)::

    {
      "name": "aw1",
      "ambient": {"gallery": "J2-g2-R8"}            # or {"J": [[..]], "g": [[..]]}
      "chart": {"params": [...], "domain": {"u1": [lo, hi], ...},
                "constants": {"a": 1.0}, "components": ["a*u1", ...]},
      "distributions": {"D1": {"basis": [["1", "0", ...], ...]}},
      "fields": {"X": ["v1", "1", ...]},
      "analysis": {"classify": ["D1", "TM"], "decompose": ["D1", "D2"],
                   "integrability": true, "geodesy": true, "curvature": true,
                   "identities": [["X", "Y"]], "cr_check": {"c": 4.0}},
      "sampling": {"count": 64, "seed": 0},
      "tolerances": {"slant": 1e-8, "boundary": 1e-6, "causal": 1e-9},
      "output": {"format": "json", "path": null}
    }

Errors are :class:`ManifestError` with a dotted ``pointer`` to the offending key.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Mapping

from .ambient import AmbientStructure, gallery_lookup, validate_structure
from .errors import InputError, ParaslantError
from .exprdsl import parse
from .frame import ImmersionChart, Sampling
from .slant import DistributionSpec, Tolerances

TOP_KEYS = {
    "name", "ambient", "chart", "distributions", "fields", "analysis", "sampling", "tolerances", "output", "gallery",
}
ANALYSIS_KEYS = {"classify", "decompose", "integrability", "geodesy", "curvature", "identities", "cr_check"}
FORMATS = ("json", "csv", "text")


class ManifestError(InputError):
    code = "manifest-error"

    def __init__(self, pointer: str, message: str):
        self.pointer = pointer
        super().__init__(f"{pointer}: {message}" if pointer else message)


@dataclass
class Manifest:
    name: str
    ambient: AmbientStructure
    chart: ImmersionChart
    distributions: dict[str, DistributionSpec]
    fields: dict[str, tuple[str, ...]]
    analysis: dict[str, Any]
    sampling: Sampling
    tolerances: Tolerances
    output: dict[str, Any]
    raw: dict = field(repr=False, default_factory=dict)

    def digest(self) -> str:
        return manifest_digest(self.raw)

    def distribution(self, name: str, pointer: str) -> DistributionSpec:
        if name == "TM":
            return DistributionSpec.whole(self.chart.m)
        if name not in self.distributions:
            raise ManifestError(pointer, f"unknown distribution {name!r}")
        return self.distributions[name]


def manifest_digest(raw: Mapping) -> str:
    text = json.dumps(raw, sort_keys=True, separators=(",", ":"), ensure_ascii=True)
    return hashlib.sha256(text.encode()).hexdigest()


def _require(obj, key: str, pointer: str, kind=None):
    if not isinstance(obj, Mapping) or key not in obj:
        raise ManifestError(pointer, f"missing required key {key!r}")
    value = obj[key]
    if kind is not None and not isinstance(value, kind):
        raise ManifestError(f"{pointer}.{key}" if pointer else key, f"expected {_kind_name(kind)}")
    return value


def _kind_name(kind) -> str:
    if isinstance(kind, tuple):
        return " or ".join(k.__name__ for k in kind)
    return {dict: "an object", list: "an array", str: "a string"}.get(kind, kind.__name__)


def _check_keys(obj: Mapping, allowed: set, pointer: str):
    extra = sorted(set(obj) - allowed)
    if extra:
        raise ManifestError(f"{pointer}.{extra[0]}" if pointer else extra[0], "unknown key")


def _matrix(value, pointer: str) -> list:
    if not isinstance(value, list) or not value or not all(isinstance(r, list) for r in value):
        raise ManifestError(pointer, "expected a nested array of numbers")
    for i, row in enumerate(value):
        if len(row) != len(value[0]):
            raise ManifestError(f"{pointer}[{i}]", "ragged matrix row")
        for j, x in enumerate(row):
            if isinstance(x, bool) or not isinstance(x, (int, float)):
                raise ManifestError(f"{pointer}[{i}][{j}]", "expected a number")
    return value


def parse_ambient(section, pointer: str = "ambient") -> AmbientStructure:
    if not isinstance(section, Mapping):
        raise ManifestError(pointer, "expected an object")
    _check_keys(section, {"gallery", "J", "g", "name"}, pointer)
    if "gallery" in section:
        if "J" in section or "g" in section:
            raise ManifestError(pointer, "give either 'gallery' or explicit 'J' and 'g', not both")
        try:
            return gallery_lookup(section["gallery"])
        except InputError as err:
            raise ManifestError(f"{pointer}.gallery", str(err)) from None
    J = _matrix(_require(section, "J", pointer), f"{pointer}.J")
    g = _matrix(_require(section, "g", pointer), f"{pointer}.g")
    try:
        return AmbientStructure(str(section.get("name", "custom")), J, g)
    except InputError as err:
        raise ManifestError(pointer, str(err)) from None


def parse_chart(section, ambient: AmbientStructure, name: str, pointer: str = "chart") -> ImmersionChart:
    if not isinstance(section, Mapping):
        raise ManifestError(pointer, "expected an object")
    _check_keys(section, {"params", "domain", "constants", "components"}, pointer)
    params = _require(section, "params", pointer, list)
    domain = _require(section, "domain", pointer, dict)
    components = _require(section, "components", pointer, list)
    constants = section.get("constants", {})
    if not isinstance(constants, dict):
        raise ManifestError(f"{pointer}.constants", "expected an object")
    for k, v in constants.items():
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ManifestError(f"{pointer}.constants.{k}", "expected a number")
    for p in params:
        iv = domain.get(p)
        if not (isinstance(iv, list) and len(iv) == 2 and all(isinstance(x, (int, float)) for x in iv)):
            raise ManifestError(f"{pointer}.domain.{p}", "expected [lo, hi]")
    for i, text in enumerate(components):
        try:
            parse(str(text), params, constants)
        except ParaslantError as err:
            raise ManifestError(f"{pointer}.components[{i}]", str(err)) from None
    try:
        return ImmersionChart(tuple(params), domain, constants, tuple(str(c) for c in components), ambient, name)
    except ParaslantError as err:
        raise ManifestError(pointer, str(err)) from None


def parse_manifest(raw: Mapping, overrides: Mapping[str, Any] | None = None) -> Manifest:
    """Validate ``raw`` and resolve every cross-reference.

    ``overrides`` may contain ``samples``, ``seed``, ``tol_slant``, ``format``
    and ``out``; they take precedence over the document.
    """
    if not isinstance(raw, Mapping):
        raise ManifestError("", "manifest must be a JSON object")
    overrides = {k: v for k, v in (overrides or {}).items() if v is not None}
    _check_keys(raw, TOP_KEYS, "")
    name = str(raw.get("name", "manifest"))
    ambient = parse_ambient(_require(raw, "ambient", ""))
    report = validate_structure(ambient)
    if not report.ok:
        detail = "; ".join(f"{v.axiom} (residual {v.residual:.3g})" for v in report.violations)
        raise ManifestError("ambient", f"invalid structure: {detail}")
    chart = parse_chart(_require(raw, "chart", ""), ambient, name)

    dists = {}
    for dname, spec in (raw.get("distributions") or {}).items():
        ptr = f"distributions.{dname}"
        if dname == "TM":
            raise ManifestError(ptr, "'TM' is reserved for the whole tangent bundle")
        basis = _require(spec, "basis", ptr, list)
        try:
            d = DistributionSpec(dname, tuple(tuple(v) for v in basis))
            d.bind(chart)
        except ParaslantError as err:
            raise ManifestError(f"{ptr}.basis", str(err)) from None
        dists[dname] = d

    fields = {}
    for fname, coeffs in (raw.get("fields") or {}).items():
        ptr = f"fields.{fname}"
        if not isinstance(coeffs, list):
            raise ManifestError(ptr, "expected an array of expressions")
        try:
            chart.parse_field([str(c) for c in coeffs])
        except ParaslantError as err:
            raise ManifestError(ptr, str(err)) from None
        fields[fname] = tuple(str(c) for c in coeffs)

    analysis = dict(raw.get("analysis") or {})
    _check_keys(analysis, ANALYSIS_KEYS, "analysis")
    known = set(dists) | {"TM"}
    for i, d in enumerate(analysis.get("classify", [])):
        if d not in known:
            raise ManifestError(f"analysis.classify[{i}]", f"unknown distribution {d!r}")
    pair = analysis.get("decompose")
    if pair is not None:
        if not (isinstance(pair, list) and len(pair) == 2):
            raise ManifestError("analysis.decompose", "expected two distribution names")
        for i, d in enumerate(pair):
            if d not in dists:
                raise ManifestError(f"analysis.decompose[{i}]", f"unknown distribution {d!r}")
    for key in ("integrability", "geodesy"):
        if analysis.get(key) and pair is None:
            raise ManifestError(f"analysis.{key}", "requires analysis.decompose")
    for i, ids in enumerate(analysis.get("identities", [])):
        if not (isinstance(ids, list) and len(ids) == 2):
            raise ManifestError(f"analysis.identities[{i}]", "expected [X, Y] field names")
        for j, f in enumerate(ids):
            if f not in fields:
                raise ManifestError(f"analysis.identities[{i}][{j}]", f"unknown field {f!r}")
    cr = analysis.get("cr_check")
    if cr is not None:
        if not isinstance(cr, Mapping) or not isinstance(cr.get("c"), (int, float)):
            raise ManifestError("analysis.cr_check", "expected {\"c\": number}")
        crpair = cr.get("pair", pair)
        if crpair is None or any(d not in dists for d in crpair):
            raise ManifestError("analysis.cr_check.pair", "needs two declared distributions")

    samp = dict(raw.get("sampling") or {})
    _check_keys(samp, {"count", "seed"}, "sampling")
    count = int(overrides.get("samples", samp.get("count", 64)))
    seed = int(overrides.get("seed", samp.get("seed", 0)))
    if count < 1:
        raise ManifestError("sampling.count", "must be at least 1")
    sampling = Sampling(count, seed)

    tol = dict(raw.get("tolerances") or {})
    _check_keys(tol, {"slant", "boundary", "causal", "degenerate", "zero"}, "tolerances")
    if "tol_slant" in overrides:
        tol["slant"] = float(overrides["tol_slant"])
    tolerances = replace(Tolerances(), **{k: float(v) for k, v in tol.items()})

    output = dict(raw.get("output") or {})
    _check_keys(output, {"format", "path"}, "output")
    if "format" in overrides:
        output["format"] = overrides["format"]
    if "out" in overrides:
        output["path"] = overrides["out"]
    output.setdefault("format", "json")
    output.setdefault("path", None)
    if output["format"] not in FORMATS:
        raise ManifestError("output.format", f"unsupported format {output['format']!r}; use one of {', '.join(FORMATS)}")

    canon = json.loads(json.dumps(raw))
    canon.setdefault("sampling", {})
    canon["sampling"] = {**canon["sampling"], "count": count, "seed": seed}
    return Manifest(name, ambient, chart, dists, fields, analysis, sampling, tolerances, output, canon)


def load_manifest(path, overrides: Mapping[str, Any] | None = None) -> Manifest:
    p = Path(path)
    if not p.is_file():
        raise ManifestError("", f"manifest file not found: {p}")
    try:
        raw = json.loads(p.read_text())
    except json.JSONDecodeError as err:
        raise ManifestError("", f"not valid JSON: {err}") from None
    return parse_manifest(raw, overrides)


def chart_document(chart: ImmersionChart, ambient: Mapping) -> dict:
    """Manifest fragment for a chart (``ambient`` is the ambient section)."""
    return {"name": chart.name, "ambient": dict(ambient), "chart": chart.to_dict()}
