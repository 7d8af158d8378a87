"""Slant classification of submanifolds and of tangent distributions.

For a distribution ``D`` with coefficient basis ``B`` (``m x k``), ``P_D`` is
the ``G``-orthogonal projection of ``P`` back onto ``D``.  A slant
distribution has ``P_D^2 = lambda Id`` with ``lambda`` constant; the sign and
size of ``lambda`` select the type:

========  ===============  ==============================
type      lambda           angle
========  ===============  ==============================
slant-1   lambda > 1       lambda = cosh^2(theta)
slant-2   0 < lambda < 1   lambda = cos^2(theta)
slant-3   lambda < 0       lambda = -sinh^2(theta)
========  ===============  ==============================

``lambda = 1`` with ``F = 0`` on ``D`` is para-complex (holomorphic),
``P_D = 0`` with ``P = 0`` on ``D`` is totally real, and ``P_D = 0`` alone is
anti-invariant.  ``lambda = 1`` without ``F = 0`` (or a nonzero nilpotent
``P_D``) is reported as ``boundary``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence, Union

import numpy as np

from .errors import DegenerateError, InputError, NoAdmissibleSamples
from .exprdsl import Expr, VarRef, eval_jet
from .frame import (
    CAUSAL_TOL,
    DEGENERATE_TOL,
    ImmersionChart,
    PointFrame,
    Sampling,
    classify_quadratic,
    sample_frames,
)

SLANT_TYPES = (
    "para-complex",
    "totally-real",
    "slant-1",
    "slant-2",
    "slant-3",
    "anti-invariant",
    "non-slant",
    "boundary",
)
PROPER_SLANT = ("slant-1", "slant-2", "slant-3")


@dataclass(frozen=True)
class Tolerances:
    slant: float = 1e-8
    boundary: float = 1e-6
    causal: float = CAUSAL_TOL
    degenerate: float = DEGENERATE_TOL
    zero: float = 1e-10


@dataclass(frozen=True)
class DistributionSpec:
    """A sub-bundle of the tangent bundle spanned by coefficient-expression fields.

    Each basis vector is a sequence of ``m`` expression strings, one per chart
    parameter.
    """

    name: str
    basis: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        basis = tuple(tuple(str(c) for c in v) for v in self.basis)
        if not basis:
            raise InputError(f"distribution {self.name!r} has an empty basis")
        if len({len(v) for v in basis}) != 1:
            raise InputError(f"distribution {self.name!r}: basis vectors of unequal length")
        object.__setattr__(self, "basis", basis)

    @property
    def k(self) -> int:
        return len(self.basis)

    @classmethod
    def coordinate(cls, name: str, indices: Sequence[int], m: int) -> "DistributionSpec":
        """Span of the coordinate fields ``d/du_i`` for ``i`` in ``indices``."""
        basis = []
        for i in indices:
            if not 0 <= i < m:
                raise InputError(f"coordinate index {i} out of range for m={m}")
            basis.append(tuple("1" if j == i else "0" for j in range(m)))
        return cls(name, tuple(basis))

    @classmethod
    def whole(cls, m: int) -> "DistributionSpec":
        return cls.coordinate("TM", range(m), m)

    def bind(self, chart: ImmersionChart) -> "BoundDistribution":
        if any(len(v) != chart.m for v in self.basis):
            raise InputError(f"distribution {self.name!r} needs {chart.m} coefficients per basis vector")
        return BoundDistribution(self.name, tuple(chart.parse_field(v) for v in self.basis), chart)


DistLike = Union[DistributionSpec, "BoundDistribution", str, None]


@dataclass(frozen=True, eq=False)
class BoundDistribution:
    name: str
    fields: tuple[tuple[Expr, ...], ...]
    chart: ImmersionChart

    @property
    def k(self) -> int:
        return len(self.fields)

    @cached_property
    def _constant(self) -> tuple[np.ndarray, np.ndarray] | None:
        # coordinate-style fields do not depend on the point; evaluate once
        if any(isinstance(n, VarRef) for fld in self.fields for e in fld for n in _nodes(e)):
            return None
        return field_values(self.chart, self.fields, np.zeros(self.chart.m))

    def matrix(self, frame: PointFrame) -> np.ndarray:
        """Coefficient matrix ``B`` (``m x k``) at the frame's point."""
        return self.with_derivatives(frame)[0]

    def with_derivatives(self, frame: PointFrame) -> tuple[np.ndarray, np.ndarray]:
        """``B`` and ``dB`` with ``dB[a, j, i] = d/du_i of B[a, j]``."""
        if self._constant is not None:
            B, dB = self._constant
            return B.copy(), dB.copy()
        return field_values(self.chart, self.fields, frame.u)


def _nodes(e: Expr):
    yield e
    for child in ("arg", "left", "right", "base"):
        sub = getattr(e, child, None)
        if sub is not None:
            yield from _nodes(sub)


def field_values(chart: ImmersionChart, fields, u) -> tuple[np.ndarray, np.ndarray]:
    point = dict(zip(chart.params, (float(v) for v in u)))
    m, k = chart.m, len(fields)
    B = np.empty((m, k))
    dB = np.empty((m, k, m))
    for j, fld in enumerate(fields):
        for a, e in enumerate(fld):
            jet = eval_jet(e, point, chart.constants)
            B[a, j] = jet.value
            dB[a, j] = jet.grad
    return B, dB


def bind_distribution(chart: ImmersionChart, D: DistLike) -> BoundDistribution:
    if D is None or (isinstance(D, str) and D == "TM"):
        return DistributionSpec.whole(chart.m).bind(chart)
    if isinstance(D, BoundDistribution):
        return D
    if isinstance(D, DistributionSpec):
        return D.bind(chart)
    raise InputError(f"not a distribution: {D!r}")


def gram_is_degenerate(M: np.ndarray, tol: float = DEGENERATE_TOL) -> bool:
    scale = float(np.max(np.abs(M))) if M.size else 0.0
    return scale == 0.0 or abs(np.linalg.det(M / scale)) <= tol


def distribution_gram(frame: PointFrame, B: np.ndarray) -> np.ndarray:
    return B.T @ frame.G @ B


def project_onto(frame: PointFrame, B: np.ndarray, v: np.ndarray) -> np.ndarray:
    """``G``-orthogonal projection of tangent coefficient vector(s) ``v`` onto span(B)."""
    GD = distribution_gram(frame, B)
    return B @ np.linalg.solve(GD, B.T @ frame.G @ v)


def estimate_lambda(Pd) -> tuple[float, float]:
    Pd = np.atleast_2d(np.asarray(Pd, dtype=float))
    k = Pd.shape[0]
    sq = Pd @ Pd
    lam = float(np.trace(sq)) / k
    residual = float(np.max(np.abs(sq - lam * np.eye(k))))
    return lam, residual


def restrict_P_to_distribution(frame: PointFrame, B, tol: float = DEGENERATE_TOL) -> np.ndarray:
    """``P_D = G_D^{-1} B^T G P B``."""
    B = np.asarray(B, dtype=float)
    if B.ndim == 1:
        B = B[:, None]
    GD = distribution_gram(frame, B)
    if gram_is_degenerate(GD, tol):
        raise DegenerateError(
            f"distribution metric is degenerate at u={frame.u.tolist()}", "degenerate-distribution-metric"
        )
    return np.linalg.solve(GD, B.T @ frame.G @ frame.P @ B)


@dataclass
class SlantReport:
    subject: str
    lam: float
    residual: float
    spread: float
    type: str
    theta: float | None
    causal_pattern: dict
    samples: list = field(default_factory=list)
    p_norm: float = 0.0
    f_norm: float = 0.0
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "lambda": self.lam,
            "residual": self.residual,
            "spread": self.spread,
            "type": self.type,
            "theta": self.theta,
            "causal_pattern": dict(self.causal_pattern),
            "p_norm": self.p_norm,
            "f_norm": self.f_norm,
            "notes": list(self.notes),
            "samples": [dict(s) for s in self.samples],
        }


def _relmax(A: np.ndarray, ref: np.ndarray) -> float:
    s = float(np.max(np.abs(ref))) if ref.size else 0.0
    return float(np.max(np.abs(A))) / s if s > 0 else float(np.max(np.abs(A), initial=0.0))


def slant_type(lam: float, residual: float, spread: float, pd_norm: float, p_norm: float, f_norm: float,
               tol: Tolerances = Tolerances()) -> tuple[str, float | None]:
    """Type label and slant angle from aggregated sample statistics."""
    scale = max(1.0, abs(lam))
    if residual > tol.slant * scale or spread > tol.slant * scale:
        return "non-slant", None
    if abs(lam) <= tol.boundary:
        if pd_norm > tol.boundary:
            return "boundary", None
        return ("totally-real" if p_norm <= tol.boundary else "anti-invariant"), None
    if abs(lam - 1.0) <= tol.boundary:
        return ("para-complex" if f_norm <= tol.boundary else "boundary"), None
    if lam > 1.0:
        return "slant-1", math.acosh(math.sqrt(lam))
    if lam > 0.0:
        return "slant-2", math.acos(math.sqrt(lam))
    return "slant-3", math.asinh(math.sqrt(-lam))


def _pair_label(cx: str, cpx: str | None) -> str:
    if cpx is None:
        return "annihilated"
    if "light-like" in (cx, cpx):
        return "null"
    return "preserved" if cx == cpx else "swapped"


def _frames_for(chart, bd: BoundDistribution, sampling: Sampling, frames, tol: Tolerances):
    def ok(fr):
        return not gram_is_degenerate(distribution_gram(fr, bd.matrix(fr)), tol.degenerate)

    if frames is None:
        return sample_frames(chart, sampling, accept=ok)
    kept = [fr for fr in frames if ok(fr)]
    if not kept:
        raise NoAdmissibleSamples(f"{bd.name}: no admissible points among {len(frames)} frames")
    return kept


def classify_slant(
    chart: ImmersionChart,
    D: DistLike = None,
    sampling: Sampling = Sampling(),
    tolerances: Tolerances = Tolerances(),
    frames: Sequence[PointFrame] | None = None,
) -> SlantReport:
    """Estimate ``lambda`` over sample points and classify ``D`` (default: ``TM``).

    ``frames`` may be supplied to reuse precomputed sample frames; points where
    the distribution metric is degenerate are skipped.
    """
    bd = bind_distribution(chart, D)
    frames = _frames_for(chart, bd, sampling, frames, tolerances)
    lams, residuals, samples = [], [], []
    pd_norm = p_norm = f_norm = 0.0
    pattern = {"preserved": 0, "swapped": 0, "null": 0, "annihilated": 0}
    for idx, fr in enumerate(frames):
        B = bd.matrix(fr)
        Pd = restrict_P_to_distribution(fr, B, tolerances.degenerate)
        lam, res = estimate_lambda(Pd)
        lams.append(lam)
        residuals.append(res)
        samples.append({"point": fr.u.tolist(), "lambda": lam, "residual": res})
        EB = fr.E @ B
        pd_norm = max(pd_norm, _relmax(fr.E @ B @ Pd, EB))
        p_norm = max(p_norm, _relmax(fr.E @ fr.P @ B, EB))
        f_norm = max(f_norm, _relmax(fr.Fcols @ B, EB))
        GD = distribution_gram(fr, B)
        rng = np.random.default_rng([sampling.seed, idx, 1])
        combos = [np.eye(bd.k)[:, j] for j in range(bd.k)] + [rng.standard_normal(bd.k) for _ in range(2)]
        for c in combos:
            cx = classify_quadratic(float(c @ GD @ c), float(c @ c), tolerances.causal)
            pc = Pd @ c
            ref = float(pc @ pc)
            cpx = None if ref <= (tolerances.zero * float(c @ c)) else classify_quadratic(
                float(pc @ GD @ pc), ref, tolerances.causal
            )
            pattern[_pair_label(cx, cpx)] += 1
    lam = float(np.median(lams))
    spread = float(np.max(np.abs(np.array(lams) - lam)))
    residual = float(max(residuals))
    typ, theta = slant_type(lam, residual, spread, pd_norm, p_norm, f_norm, tolerances)
    notes = []
    if typ == "slant-3":
        notes.append("type-3 convention: lambda = -sinh^2(theta) < 0, causal character preserved")
        if pattern["swapped"]:
            notes.append("causal character swapped on some samples despite lambda < 0")
    elif typ in ("slant-1", "slant-2") and pattern["preserved"]:
        notes.append("causal character preserved on some samples despite lambda > 0")
    return SlantReport(bd.name, lam, residual, spread, typ, theta, pattern, samples, p_norm, f_norm, notes)


@dataclass
class BiSlantReport:
    orthogonal: bool
    spanning: bool
    report1: SlantReport | None
    report2: SlantReport | None
    label: str
    orthogonality_residual: float = 0.0
    witness: list | None = None
    reason: str = ""

    def to_dict(self) -> dict:
        return {
            "orthogonal": self.orthogonal,
            "spanning": self.spanning,
            "orthogonality_residual": self.orthogonality_residual,
            "label": self.label,
            "reason": self.reason,
            "witness": self.witness,
            "report1": self.report1.to_dict() if self.report1 else None,
            "report2": self.report2.to_dict() if self.report2 else None,
        }


def decomposition_label(t1: str, t2: str) -> str:
    """Label of ``TM = D1 + D2`` from the factor types (in either order)."""
    if "non-slant" in (t1, t2):
        return "invalid"
    if {t1, t2} == {"para-complex", "totally-real"}:
        return "CR"
    for special, label in (("para-complex", "semi-slant"), ("totally-real", "hemi-slant")):
        if special in (t1, t2) and ({t1, t2} - {special}) <= set(PROPER_SLANT) and t1 != t2:
            return label
    return "bi-slant"


def decompose_bislant(
    chart: ImmersionChart,
    D1: DistLike,
    D2: DistLike,
    sampling: Sampling = Sampling(),
    tolerances: Tolerances = Tolerances(),
    frames: Sequence[PointFrame] | None = None,
    reports: tuple[SlantReport, SlantReport] | None = None,
) -> BiSlantReport:
    """Check ``TM = D1 + D2`` (orthogonal, spanning) and label it.

    ``reports`` may carry already computed factor classifications on the same frames.
    """
    b1 = bind_distribution(chart, D1)
    b2 = bind_distribution(chart, D2)
    if frames is None:
        frames = sample_frames(chart, sampling)
    orth_res = 0.0
    witness = None
    spanning = b1.k + b2.k == chart.m
    for fr in frames:
        B1, B2 = b1.matrix(fr), b2.matrix(fr)
        cross = float(np.max(np.abs(B1.T @ fr.G @ B2)))
        scale = max(1.0, float(np.max(np.abs(fr.G))))
        if cross / scale > orth_res:
            orth_res = cross / scale
            if orth_res > tolerances.zero and witness is None:
                witness = fr.u.tolist()
        if spanning:
            W = np.hstack([B1, B2])
            if gram_is_degenerate(W.T @ fr.G @ W, tolerances.degenerate):
                spanning = False
                witness = witness or fr.u.tolist()
    orthogonal = orth_res <= tolerances.zero
    if not (orthogonal and spanning):
        reason = "distributions are not g-orthogonal" if not orthogonal else "distributions do not span TM"
        return BiSlantReport(orthogonal, spanning, None, None, "invalid", orth_res, witness, reason)
    if reports is not None:
        r1, r2 = reports
    else:
        r1 = classify_slant(chart, b1, sampling, tolerances, frames)
        r2 = classify_slant(chart, b2, sampling, tolerances, frames)
    label = decomposition_label(r1.type, r2.type)
    reason = "" if label != "invalid" else "a factor is not a slant distribution"
    return BiSlantReport(True, True, r1, r2, label, orth_res, None, reason)


def _kernel_basis(A: np.ndarray, tol: float) -> np.ndarray:
    n = A.shape[1]
    if A.size == 0:
        return np.eye(n)
    _, s, vt = np.linalg.svd(A)
    cutoff = tol * max(1.0, float(s[0]) if s.size else 0.0)
    rank = int(np.sum(s > cutoff))
    return vt[rank:].T.copy()


def maximal_distributions(frame: PointFrame, tol: float = 1e-9) -> tuple[np.ndarray, np.ndarray]:
    """Bases (``m x k``) of ``{X : FX = 0}`` and ``{X : PX = 0}`` at one point."""
    return _kernel_basis(frame.Fcols, tol), _kernel_basis(frame.P, tol)


def check_P_invariance(
    chart: ImmersionChart,
    D: DistLike,
    sampling: Sampling = Sampling(),
    tolerances: Tolerances = Tolerances(),
    frames: Sequence[PointFrame] | None = None,
) -> float:
    """Largest ambient size of the part of ``P X`` outside ``D`` (``X`` in the basis)."""
    bd = bind_distribution(chart, D)
    frames = _frames_for(chart, bd, sampling, frames, tolerances)
    worst = 0.0
    for fr in frames:
        B = bd.matrix(fr)
        PB = fr.P @ B
        outside = PB - project_onto(fr, B, PB)
        worst = max(worst, float(np.max(np.abs(fr.E @ outside))))
    return worst
