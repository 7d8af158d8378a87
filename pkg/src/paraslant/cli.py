"""Command line interface.

    paraslant validate <manifest>
    paraslant analyze <manifest> [--samples N] [--seed S] [--tol-slant X] [--format F] [--out PATH]
    paraslant verify-paper [ids...] [--samples N] [--seed S] [--strict] [--format F] [--out PATH]
    paraslant gallery list
    paraslant gallery export <id> [--out PATH]

Exit codes: 0 when nothing FAILed, 1 when a check FAILed, 2 on input errors.
The seed comes from ``--seed``, else ``PARASLANT_SEED``, else the manifest.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path
from typing import Any, Mapping, Sequence

from . import __version__
from .ambient import validate_structure
from .errors import ParaslantError
from .frame import Sampling, sample_frames
from .gallery import GALLERY_IDS, entry_document, load_example, verify_entry
from .geo import covariant_identity_residuals, cr_curvature_check, geodesy_report, integrability_report, intrinsic_curvature
from .manifest import Manifest, ManifestError, load_manifest, manifest_digest, parse_manifest
from .report import RunReport, canonical_json, emit_report
from .slant import Tolerances, classify_slant, decompose_bislant

log = logging.getLogger("paraslant")

GAUSS_TOL = 1e-7
IDENTITY_TOL = 1e-8
SEED_ENV = "PARASLANT_SEED"


def _env_seed() -> int | None:
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise ManifestError(SEED_ENV, f"expected an integer, got {raw!r}") from None


def _resolve_overrides(overrides: Mapping[str, Any] | None) -> dict:
    out = dict(overrides or {})
    if out.get("seed") is None:
        env = _env_seed()
        if env is not None:
            out["seed"] = env
    return out


def run_manifest(source, overrides: Mapping[str, Any] | None = None) -> RunReport:
    """Run every analysis requested by a manifest (path, dict or :class:`Manifest`).

    Order: validate, classify, decompose, integrability, geodesy, curvature, CR check.
    """
    overrides = _resolve_overrides(overrides)
    if isinstance(source, Manifest):
        man = source
    elif isinstance(source, Mapping):
        man = parse_manifest(source, overrides)
    else:
        man = load_manifest(source, overrides)
    chart, tol, sampling = man.chart, man.tolerances, man.sampling
    an = man.analysis
    report = RunReport("analyze", __version__, man.digest(), {"count": sampling.count, "seed": sampling.seed},
                       strict=bool(overrides.get("strict")))
    res = report.results
    val = validate_structure(man.ambient)
    res.append({"entry": man.name, "analysis": "validate", "subject": man.ambient.name,
                "report": val.residuals, "outcome": "PASS" if val.ok else "FAIL"})
    frames = sample_frames(chart, sampling)

    for name in an.get("classify", []):
        rep = classify_slant(chart, man.distribution(name, "analysis.classify"), sampling, tol, frames)
        res.append({"entry": man.name, "analysis": "classify", "subject": name, "report": rep.to_dict(),
                    "summary": f"{rep.type} lambda={rep.lam:.12g}"})

    pair = an.get("decompose")
    types = None
    if pair:
        d1, d2 = (man.distribution(n, "analysis.decompose") for n in pair)
        rep = decompose_bislant(chart, d1, d2, sampling, tol, frames)
        res.append({"entry": man.name, "analysis": "decompose", "subject": "+".join(pair), "label": rep.label,
                    "report": rep.to_dict(), "summary": rep.label})
        if rep.report1 and rep.report2:
            types = (rep.report1.type, rep.report2.type)
        if an.get("integrability"):
            ir = integrability_report(chart, d1, d2, sampling, tol, frames, types)
            res.append({"entry": man.name, "analysis": "integrability", "subject": "+".join(pair),
                        "report": ir.to_dict(), "summary": _brief(ir.to_dict(), ("holomorphic", "totally_real",
                                                                                "bracket_D1", "bracket_D2"))})
        if an.get("geodesy"):
            gr = geodesy_report(chart, d1, d2, sampling, tol, frames)
            res.append({"entry": man.name, "analysis": "geodesy", "subject": "+".join(pair), "report": gr.to_dict(),
                        "summary": _brief(gr.to_dict(), ("tg1", "tg2", "mixed", "umbilicity"))})

    if an.get("curvature"):
        samples, worst = [], 0.0
        for fr in frames:
            cr = intrinsic_curvature(fr)
            samples.append({"point": fr.u.tolist(), "gauss": cr.gaussResidual, "codazzi": cr.codazziResidual})
            worst = max(worst, cr.gaussResidual, cr.codazziResidual)
        res.append({"entry": man.name, "analysis": "curvature", "subject": "TM", "residual": worst,
                    "report": {"samples": samples, "max_residual": worst}, "summary": f"max residual {worst:.3g}",
                    "outcome": "PASS" if worst <= GAUSS_TOL else "FAIL"})
    for xname, yname in an.get("identities", []):
        samples, worst = [], 0.0
        for fr in frames:
            rP, rF = covariant_identity_residuals(chart, fr.u, man.fields[xname], man.fields[yname])
            samples.append({"point": fr.u.tolist(), "rP": rP, "rF": rF})
            worst = max(worst, rP, rF)
        res.append({"entry": man.name, "analysis": "identities", "subject": f"{xname},{yname}", "residual": worst,
                    "report": {"samples": samples, "max_residual": worst}, "summary": f"max residual {worst:.3g}",
                    "outcome": "PASS" if worst <= IDENTITY_TOL else "FAIL"})
    crc = an.get("cr_check")
    if crc is not None:
        cpair = crc.get("pair", pair)
        d, dp = (man.distribution(n, "analysis.cr_check.pair") for n in cpair)
        value, where = cr_curvature_check(chart, d, dp, float(crc["c"]), sampling, frames)
        res.append({"entry": man.name, "analysis": "cr_check", "subject": "+".join(cpair), "residual": value,
                    "point": where, "report": {"c": float(crc["c"]), "max_abs": value, "witness": where},
                    "summary": f"c={float(crc['c']):g} max |R(X,Y,Z,W)| {value:.3g}"})
    return report


def _brief(d: Mapping, keys) -> str:
    return " ".join(f"{k}={d[k]:.3g}" for k in keys if d.get(k) is not None)


def verify_paper(
    ids: Sequence[str] | None = None,
    sampling: Sampling = Sampling(),
    tolerances: Tolerances = Tolerances(),
    strict: bool = False,
) -> RunReport:
    """Check the claims of the selected gallery entries (all when ``ids`` is empty)."""
    ids = list(ids) if ids else list(GALLERY_IDS)
    for i in ids:
        if i not in GALLERY_IDS:
            raise ManifestError("ids", f"unknown gallery entry {i!r}; valid ids: {', '.join(GALLERY_IDS)}")
    docs = {i: entry_document(i) for i in ids}
    report = RunReport("verify-paper", __version__, manifest_digest(docs),
                       {"count": sampling.count, "seed": sampling.seed}, strict=strict)
    for i in ids:
        entry = load_example(i)
        for out in verify_entry(entry, sampling, tolerances):
            rec = out.to_dict()
            if strict and rec["outcome"] == "DISCREPANCY":
                rec["outcome"] = "FAIL"
            if rec["outcome"] == "SKIPPED":
                report.skipped.append(f"{i} {rec['case']}: inadmissible ({'; '.join(rec['detail']['violated'])})")
                log.info("skipping %s case %s: admissibility %s", i, rec["case"], rec["detail"]["violated"])
                continue
            report.claims.append(rec)
    return report


def _write(data: bytes, path: str | None):
    if path:
        Path(path).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def _add_run_flags(p: argparse.ArgumentParser):
    p.add_argument("--samples", type=int, help="number of admissible sample points")
    p.add_argument("--seed", type=int, help="sampling seed (overrides PARASLANT_SEED and the manifest)")
    p.add_argument("--tol-slant", type=float, help="tolerance for P_D^2 = lambda Id")
    p.add_argument("--format", choices=("json", "csv", "text"), help="report format")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--strict", action="store_true", help="treat discrepancies as failures")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="paraslant", description="slant structure of submanifolds of flat para Kaehler spaces")
    ap.add_argument("--version", action="version", version=f"paraslant {__version__}")
    ap.add_argument("-v", "--verbose", action="count", default=0, help="log skipped samples and cases")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a manifest and its ambient structure")
    p.add_argument("manifest")

    p = sub.add_parser("analyze", help="run the analyses requested by a manifest")
    p.add_argument("manifest")
    _add_run_flags(p)

    p = sub.add_parser("verify-paper", help="check the claims attached to the gallery entries")
    p.add_argument("ids", nargs="*", help=f"entries to run (default: all of {', '.join(GALLERY_IDS)})")
    _add_run_flags(p)

    p = sub.add_parser("gallery", help="list or export gallery entries")
    gsub = p.add_subparsers(dest="gallery_command", required=True)
    gsub.add_parser("list")
    e = gsub.add_parser("export")
    e.add_argument("id")
    e.add_argument("--out")
    return ap


def _validate(path: str) -> int:
    man = load_manifest(path)
    rep = validate_structure(man.ambient)
    lines = [f"manifest {path}: ok", f"ambient {man.ambient.name}: "
             + ", ".join(f"{k}={v:.3g}" for k, v in rep.residuals.items())]
    lines.append(f"chart {man.chart.name}: {man.chart.m} parameters, {len(man.chart.components)} components")
    for name, d in man.distributions.items():
        lines.append(f"distribution {name}: rank {d.k}")
    print("\n".join(lines))
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "validate":
            return _validate(args.manifest)
        if args.command == "gallery":
            if args.gallery_command == "list":
                for i in GALLERY_IDS:
                    print(f"{i}\t{entry_document(i)['gallery']['title']}")
                return 0
            _write((canonical_json(entry_document(args.id)) + "\n").encode(), args.out)
            return 0
        overrides = {"samples": args.samples, "seed": args.seed, "tol_slant": args.tol_slant,
                     "format": args.format, "out": args.out, "strict": args.strict}
        if args.command == "analyze":
            man = load_manifest(args.manifest, _resolve_overrides(overrides))
            report = run_manifest(man, overrides)
            fmt, out = man.output["format"], man.output["path"]
        else:
            seed = args.seed if args.seed is not None else _env_seed()
            sampling = Sampling(args.samples or 64, seed if seed is not None else 0)
            tol = Tolerances(slant=args.tol_slant) if args.tol_slant is not None else Tolerances()
            report = verify_paper(args.ids, sampling, tol, args.strict)
            fmt, out = args.format or "text", args.out
        _write(emit_report(report, fmt), out)
        return report.exit_code
    except ParaslantError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
