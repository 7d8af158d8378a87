"""Extrinsic and intrinsic geometry of immersions in flat para Kaehler space.

Conventions
-----------
* ``h(d_i, d_j)`` is the normal part of ``d^2 x / du_i du_j`` (flat ambient).
* ``A_V`` is defined by ``g(A_V X, Y) = g(h(X, Y), V)``.
* ``R(X, Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z`` and
  ``R(X, Y, Z, W) = g(R(X, Y)Z, W)``.  With this sign the Gauss equation for
  a flat ambient reads ``R(i,j,k,l) = g(h_il, h_jk) - g(h_jl, h_ik)``; the
  opposite sign leaves a nonzero residual on curved charts (see tests).
* Holomorphic curvature of the space-form tensor: expanding the formula with
  ``g(JX, JX) = -g(X, X)`` gives ``g(R(X, JX)JX, X) = c g(X, X)^2``, so
  ``R(X, JX, JX, X) = c`` for unit ``X`` of either causal character.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import InputError
from .frame import ImmersionChart, PointFrame, Sampling, evaluate_frame, sample_frames
from .slant import (
    DistLike,
    Tolerances,
    bind_distribution,
    classify_slant,
    field_values,
    project_onto,
)

__all__ = [
    "LocalGeometry",
    "SecondFundamentalForm",
    "CurvatureReport",
    "second_fundamental_form",
    "shape_operator",
    "covariant_identity_residuals",
    "intrinsic_curvature",
    "spaceform_curvature",
    "holomorphic_sectional",
    "integrability_report",
    "geodesy_report",
    "cr_curvature_check",
]


def _norm(v) -> float:
    return float(np.linalg.norm(v))


@dataclass(frozen=True)
class _Ambient:
    g: np.ndarray
    J: np.ndarray


def _extended(fr: PointFrame) -> PointFrame:
    """Copy of ``fr`` with G^-1, P and F recomputed in extended precision."""
    L = np.longdouble
    E, H, T = fr.E.astype(L), fr.H.astype(L), fr.T.astype(L)
    g, J = fr.g.astype(L), fr.J.astype(L)
    G = E.T @ g @ E
    Gi = fr.Ginv.astype(L)
    eye = np.eye(fr.m, dtype=L)
    for _ in range(2):  # Newton-Schulz refinement of the float64 inverse
        Gi = Gi + Gi @ (eye - G @ Gi)
    P = Gi @ (E.T @ g @ J @ E)
    return replace(fr, E=E, H=H, T=T, G=G, Ginv=Gi, P=P, Fcols=J @ E - E @ P, ambient=_Ambient(g, J))


class LocalGeometry:
    """Derived quantities at one frame: Christoffels, h, derivatives of P and projectors.

    The structure identities cancel terms that grow like ``cond(G)^2``, so the
    arithmetic here runs in ``np.longdouble`` on a copy of the frame (``w``).
    Public helpers below cast results back to float64.
    """

    def __init__(self, frame: PointFrame):
        self.frame = frame
        self.w = _extended(frame)
        self.g = self.w.g
        self.J = self.w.J

    @property
    def m(self) -> int:
        return self.w.m

    @cached_property
    def dG(self) -> np.ndarray:
        """``dG[k, i, j] = d_k G_ij``."""
        E, H, g = self.w.E, self.w.H, self.g
        t = np.einsum("aik,ab,bj->kij", H, g, E)
        return t + t.transpose(0, 2, 1)

    @cached_property
    def ddG(self) -> np.ndarray:
        """``ddG[l, k, i, j] = d_l d_k G_ij``."""
        E, H, T, g = self.w.E, self.w.H, self.w.T, self.g
        a = np.einsum("aikl,ab,bj->lkij", T, g, E)
        b = np.einsum("aik,ab,bjl->lkij", H, g, H)
        return a + a.transpose(0, 1, 3, 2) + b + b.transpose(1, 0, 2, 3)

    @cached_property
    def dGinv(self) -> np.ndarray:
        Gi = self.w.Ginv
        return -np.einsum("kl,mlp,pq->mkq", Gi, self.dG, Gi)

    @cached_property
    def christoffel_lower(self) -> np.ndarray:
        """``Gamma_{ij,l}`` from the Koszul formula."""
        dG = self.dG
        return 0.5 * (dG + np.einsum("jil->ijl", dG) - np.einsum("lij->ijl", dG))

    @cached_property
    def christoffel(self) -> np.ndarray:
        """``Gamma[k, i, j]`` with ``nabla_i d_j = Gamma[k, i, j] d_k``."""
        return np.einsum("kl,ijl->kij", self.w.Ginv, self.christoffel_lower)

    @cached_property
    def dchristoffel(self) -> np.ndarray:
        """``dGamma[m, k, i, j] = d_m Gamma[k, i, j]``."""
        ddG = self.ddG
        dlow = 0.5 * (
            np.einsum("mijl->mijl", ddG) + np.einsum("mjil->mijl", ddG) - np.einsum("mlij->mijl", ddG)
        )
        return np.einsum("mkl,ijl->mkij", self.dGinv, self.christoffel_lower) + np.einsum(
            "kl,mijl->mkij", self.w.Ginv, dlow
        )

    @cached_property
    def riemann(self) -> np.ndarray:
        """``R[i, j, k, l] = g(R(d_i, d_j) d_k, d_l)``."""
        Gm, dGm = self.christoffel, self.dchristoffel
        up = (
            np.einsum("iljk->ijkl", dGm)
            - np.einsum("jlik->ijkl", dGm)
            + np.einsum("lip,pjk->ijkl", Gm, Gm)
            - np.einsum("ljp,pik->ijkl", Gm, Gm)
        )
        return np.einsum("ijkp,pl->ijkl", up, self.w.G)

    @cached_property
    def normal_projector(self) -> np.ndarray:
        fr = self.w
        return np.eye(fr.E.shape[0]) - fr.E @ fr.Ginv @ fr.E.T @ self.g

    @cached_property
    def dnormal_projector(self) -> np.ndarray:
        """``dQ[i] = d_i Q`` for ``Q = I - E G^-1 E^T g``."""
        fr = self.w
        Hi = fr.H.transpose(2, 0, 1)  # Hi[i] = d_i E
        EtG = fr.E.T @ self.g
        a = np.einsum("iap,pq,qb->iab", Hi, fr.Ginv, EtG)
        b = np.einsum("ap,ipq,qb->iab", fr.E, self.dGinv, EtG)
        c = np.einsum("ap,pq,icq,cb->iab", fr.E, fr.Ginv, Hi, self.g)
        return -(a + b + c)

    @cached_property
    def h(self) -> np.ndarray:
        """``h[i, j]`` ambient normal vectors, shape ``(m, m, 2n)``."""
        return np.einsum("ab,bij->ija", self.normal_projector, self.w.H)

    @cached_property
    def dh_normal(self) -> np.ndarray:
        """Normal part of ``d_i h(d_j, d_k)``, indexed ``[i, j, k, :]``."""
        fr = self.w
        Q, dQ = self.normal_projector, self.dnormal_projector
        raw = np.einsum("iab,bjk->ijka", dQ, fr.H) + np.einsum("ab,bjki->ijka", Q, fr.T)
        return np.einsum("ab,ijkb->ijka", Q, raw)

    @cached_property
    def dP(self) -> np.ndarray:
        """``dP[i] = d_i P`` for ``P = G^-1 E^T g J E``."""
        fr = self.w
        K = fr.E.T @ self.g @ self.J @ fr.E
        Hi = fr.H.transpose(2, 0, 1)
        dK = np.einsum("iap,ab,bq->ipq", Hi, self.g @ self.J, fr.E) + np.einsum(
            "ap,ab,ibq->ipq", fr.E, self.g @ self.J, Hi
        )
        return np.einsum("ipq,qr->ipr", self.dGinv, K) + np.einsum("pq,iqr->ipr", fr.Ginv, dK)

    # pointwise operators ------------------------------------------------

    def h_of(self, X, Y) -> np.ndarray:
        return np.einsum("ija,i,j->a", self.h, X, Y)

    def shape(self, V) -> np.ndarray:
        M = np.einsum("ija,ab,b->ij", self.h, self.g, V)
        return self.w.Ginv @ M

    def split_normal(self, V) -> tuple[np.ndarray, np.ndarray]:
        """``(t V, f V)``: tangent coefficients and normal ambient part of ``J V``."""
        fr = self.w
        JV = self.J @ V
        a = fr.Ginv @ (fr.E.T @ self.g @ JV)
        return a, JV - fr.E @ a

    def covariant(self, X, Y, dY) -> np.ndarray:
        """``nabla_X Y`` for a field with values ``Y`` and ``dY[a, i] = d_i Y^a``."""
        return dY @ X + np.einsum("kij,i,j->k", self.christoffel, X, Y)

    def terms(self, X, Y, dY) -> dict:
        """All pieces of the two structure identities for fields X, Y."""
        fr = self.w
        P, F = fr.P, fr.Fcols
        nXY = self.covariant(X, Y, dY)
        W = P @ Y
        dW = np.einsum("ipq,q->pi", self.dP, Y) + P @ dY
        nXPY = self.covariant(X, W, dW)
        nablaP_Y = nXPY - P @ nXY
        FY = F @ Y
        A_FY_X = self.shape(FY) @ X
        hXY = self.h_of(X, Y)
        th, fh = self.split_normal(hXY)
        Hi = fr.H.transpose(2, 0, 1)
        dPhi = (
            np.einsum("ab,ibq,q->ai", self.J, Hi, Y)
            - np.einsum("iap,pq,q->ai", Hi, P, Y)
            - np.einsum("ap,ipq,q->ai", fr.E, self.dP, Y)
            + F @ dY
        )
        nperp_FY = self.normal_projector @ (dPhi @ X)
        nablaF_Y = nperp_FY - F @ nXY
        return {
            "nabla_X_Y": nXY,
            "nabla_X_PY": nXPY,
            "nablaP_Y": nablaP_Y,
            "A_FY_X": A_FY_X,
            "h": hXY,
            "th": th,
            "fh": fh,
            "nablaF_Y": nablaF_Y,
            "h_X_PY": self.h_of(X, W),
        }


@dataclass
class SecondFundamentalForm:
    hAmb: np.ndarray  # (m, m, 2n)

    def __call__(self, X, Y) -> np.ndarray:
        return np.einsum("ija,i,j->a", self.hAmb, X, Y)


@dataclass
class CurvatureReport:
    riemann: np.ndarray
    christoffel: np.ndarray
    gaussResidual: float
    codazziResidual: float

    def to_dict(self) -> dict:
        return {"gauss_residual": self.gaussResidual, "codazzi_residual": self.codazziResidual}


def _frame(source, u=None) -> PointFrame:
    if isinstance(source, PointFrame):
        return source
    if isinstance(source, ImmersionChart):
        if u is None:
            raise InputError("a parameter point is required")
        return evaluate_frame(source, u)
    raise InputError(f"expected a chart or a frame, got {type(source).__name__}")


def second_fundamental_form(source, u=None) -> SecondFundamentalForm:
    return SecondFundamentalForm(LocalGeometry(_frame(source, u)).h.astype(float))


def shape_operator(frame: PointFrame, h: SecondFundamentalForm, V, tol: float = 1e-8) -> np.ndarray:
    V = np.asarray(V, dtype=float)
    resid = float(np.max(np.abs(frame.E.T @ frame.g @ V)))
    scale = max(1.0, float(np.max(np.abs(V))) * float(np.max(np.abs(frame.E))))
    if resid > tol * scale:
        raise InputError(f"vector is not normal to the submanifold (orthogonality residual {resid:.3g})")
    M = np.einsum("ija,ab,b->ij", h.hAmb, frame.g, V)
    return frame.Ginv @ M


def _as_field(chart: ImmersionChart, frame: PointFrame, X) -> tuple[np.ndarray, np.ndarray]:
    """Values and derivatives of a constant coefficient vector or an expression field."""
    if len(X) and isinstance(X[0], str):
        B, dB = field_values(chart, (chart.parse_field(list(X)),), frame.u)
        return B[:, 0], dB[:, 0, :]
    v = np.asarray(X, dtype=float)
    if v.shape != (chart.m,):
        raise InputError(f"tangent vector needs {chart.m} coefficients")
    return v, np.zeros((chart.m, chart.m))


def covariant_identity_residuals(chart: ImmersionChart, u, X, Y) -> tuple[float, float]:
    """Residuals of ``(nabla_X P)Y = A_FY X + t h(X,Y)`` and
    ``(nabla_X F)Y = -h(X, PY) + f h(X,Y)``."""
    fr = _frame(chart, u)
    geo = LocalGeometry(fr)
    Xv, _ = _as_field(chart, fr, X)
    Yv, dY = _as_field(chart, fr, Y)
    t = geo.terms(Xv, Yv, dY)
    rP = _norm(fr.E @ (t["nablaP_Y"] - t["A_FY_X"] - t["th"]))
    rF = _norm(t["nablaF_Y"] + t["h_X_PY"] - t["fh"])
    return rP, rF


def gauss_expected(geo: LocalGeometry) -> np.ndarray:
    hg = np.einsum("abx,xy,cdy->abcd", geo.h, geo.g, geo.h)
    # [i,j,k,l] -> g(h_il, h_jk) - g(h_jl, h_ik)
    return np.einsum("iljk->ijkl", hg) - np.einsum("jlik->ijkl", hg)


def intrinsic_curvature(source, u=None) -> CurvatureReport:
    geo = LocalGeometry(_frame(source, u))
    R = geo.riemann
    gauss = float(np.max(np.abs(R - gauss_expected(geo))))
    Gm, h = geo.christoffel, geo.h
    cov = geo.dh_normal - np.einsum("pij,pka->ijka", Gm, h) - np.einsum("pik,jpa->ijka", Gm, h)
    diff = cov - cov.transpose(1, 0, 2, 3)
    codazzi = float(np.max(np.linalg.norm(diff, axis=-1)))
    return CurvatureReport(R.astype(float), Gm.astype(float), gauss, codazzi)


def spaceform_curvature(g, J, c: float, X, Y, Z) -> np.ndarray:
    """``R(X,Y)Z`` of the para complex space form of constant holomorphic curvature ``c``."""
    g = np.asarray(g, dtype=float)
    J = np.asarray(J, dtype=float)
    X, Y, Z = (np.asarray(v, dtype=float) for v in (X, Y, Z))

    def ip(a, b):
        return float(a @ g @ b)

    JX, JY, JZ = J @ X, J @ Y, J @ Z
    return (c / 4.0) * (
        ip(X, Z) * Y - ip(Y, Z) * X + ip(X, JZ) * JY - ip(Y, JZ) * JX + 2.0 * ip(X, JY) * JZ
    )


def holomorphic_sectional(frame: PointFrame, h: SecondFundamentalForm, X, c: float, tol: float = 1e-8) -> float:
    """``c + g(h(X,X), h(X,X)) - g(h(X,PX), h(X,PX))`` for ``X`` with ``FX = 0``."""
    X = np.asarray(X, dtype=float)
    FX = frame.Fcols @ X
    ref = max(1.0, _norm(frame.E @ X))
    if _norm(FX) > tol * ref:
        raise InputError(f"X is not in the holomorphic distribution (|FX| = {_norm(FX):.3g})")
    g = frame.g
    hxx = h(X, X)
    hxp = h(X, frame.P @ X)
    return float(c + hxx @ g @ hxx - hxp @ g @ hxp)


# ---------------------------------------------------------------------------
# distribution-level reports


def _sampled(chart, sampling, frames):
    return list(frames) if frames is not None else sample_frames(chart, sampling)


@dataclass
class IntegrabilityReport:
    holomorphic: float | None  # max |h(X,PY) - h(PX,Y)|, D1 holomorphic
    slant_bracket: float  # residual of the pi_1 bracket condition on D2
    totally_real: float | None  # max |A_FX Y - A_FY X|, D1 totally real
    bracket_D1: float
    bracket_D2: float
    types: tuple[str, str]
    samples: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "holomorphic": self.holomorphic,
            "slant_bracket": self.slant_bracket,
            "totally_real": self.totally_real,
            "bracket_D1": self.bracket_D1,
            "bracket_D2": self.bracket_D2,
            "types": list(self.types),
            "samples": self.samples,
        }


def _bracket_outside(fr, B, dB, X, dX, Y, dY) -> float:
    br = dY @ X - dX @ Y
    return _norm(fr.E @ (br - project_onto(fr, B, br)))


def integrability_report(
    chart: ImmersionChart,
    D1: DistLike,
    D2: DistLike,
    sampling: Sampling = Sampling(),
    tolerances: Tolerances = Tolerances(),
    frames: Sequence[PointFrame] | None = None,
    types: tuple[str, str] | None = None,
) -> IntegrabilityReport:
    b1, b2 = bind_distribution(chart, D1), bind_distribution(chart, D2)
    frames = _sampled(chart, sampling, frames)
    if types is None:
        types = (
            classify_slant(chart, b1, sampling, tolerances, frames).type,
            classify_slant(chart, b2, sampling, tolerances, frames).type,
        )
    hol = types[0] == "para-complex"
    tr = types[0] == "totally-real"
    worst = {"holomorphic": 0.0, "slant_bracket": 0.0, "totally_real": 0.0, "bracket_D1": 0.0, "bracket_D2": 0.0}
    samples = []
    for fr in frames:
        geo = LocalGeometry(fr)
        B1, dB1 = b1.with_derivatives(fr)
        B2, dB2 = b2.with_derivatives(fr)
        rec = dict.fromkeys(worst, 0.0)
        k1, k2 = B1.shape[1], B2.shape[1]
        for i in range(k1):
            for j in range(k1):
                X, Y = B1[:, i], B1[:, j]
                if hol:
                    d = _norm(geo.h_of(X, fr.P @ Y) - geo.h_of(fr.P @ X, Y))
                    rec["holomorphic"] = max(rec["holomorphic"], d)
                if tr:
                    d = _norm(fr.E @ (geo.shape(fr.Fcols @ X) @ Y - geo.shape(fr.Fcols @ Y) @ X))
                    rec["totally_real"] = max(rec["totally_real"], d)
                if i < j:
                    d = _bracket_outside(fr, B1, dB1, X, dB1[:, i, :], Y, dB1[:, j, :])
                    rec["bracket_D1"] = max(rec["bracket_D1"], d)
        for i in range(k2):
            for j in range(i + 1, k2):
                X, dX, Y, dY = B2[:, i], dB2[:, i, :], B2[:, j], dB2[:, j, :]
                tXY = geo.terms(X, Y, dY)
                tYX = geo.terms(Y, X, dX)
                lhs = tXY["nabla_X_PY"] - tYX["nabla_X_PY"]
                rhs = tXY["A_FY_X"] - tYX["A_FY_X"]
                d = _norm(fr.E @ project_onto(fr, B1, (lhs - rhs).astype(float)))
                rec["slant_bracket"] = max(rec["slant_bracket"], d)
                d = _bracket_outside(fr, B2, dB2, X, dX, Y, dY)
                rec["bracket_D2"] = max(rec["bracket_D2"], d)
        for key in worst:
            worst[key] = max(worst[key], rec[key])
        samples.append({"point": fr.u.tolist(), **rec})
    return IntegrabilityReport(
        worst["holomorphic"] if hol else None,
        worst["slant_bracket"],
        worst["totally_real"] if tr else None,
        worst["bracket_D1"],
        worst["bracket_D2"],
        tuple(types),
        samples,
    )


@dataclass
class GeodesyReport:
    tg1: float
    tg2: float
    mixed: float
    mixed_condition_P: float  # max |(nabla_X P)Y - A_FY X| over cross pairs
    mixed_condition_F: float  # max |(nabla_X F)Y| over cross pairs
    umbilicity: float
    umbilical_vector: list
    pa_commutator: float
    f2_dichotomy: float
    samples: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "tg1": self.tg1,
            "tg2": self.tg2,
            "mixed": self.mixed,
            "mixed_condition_P": self.mixed_condition_P,
            "mixed_condition_F": self.mixed_condition_F,
            "umbilicity": self.umbilicity,
            "umbilical_vector": self.umbilical_vector,
            "pa_commutator": self.pa_commutator,
            "f2_dichotomy": self.f2_dichotomy,
            "samples": self.samples,
        }


def umbilicity_defect(geo: LocalGeometry) -> tuple[float, np.ndarray]:
    """``min_L max_ij |h_ij - G_ij L|`` with ``L`` normal, by least squares."""
    fr = geo.frame
    N = fr.Nbasis
    m = fr.m
    if N.shape[1] == 0:
        return 0.0, np.zeros(fr.E.shape[0])
    rows = [fr.G[i, j] * N for i in range(m) for j in range(m)]
    h = geo.h.astype(float)
    rhs = [h[i, j] for i in range(m) for j in range(m)]
    coef, *_ = np.linalg.lstsq(np.vstack(rows), np.concatenate(rhs), rcond=None)
    L = N @ coef
    defect = max(_norm(h[i, j] - fr.G[i, j] * L) for i in range(m) for j in range(m))
    return float(defect), L


def geodesy_report(
    chart: ImmersionChart,
    D1: DistLike,
    D2: DistLike,
    sampling: Sampling = Sampling(),
    tolerances: Tolerances = Tolerances(),
    frames: Sequence[PointFrame] | None = None,
) -> GeodesyReport:
    b1, b2 = bind_distribution(chart, D1), bind_distribution(chart, D2)
    frames = _sampled(chart, sampling, frames)
    keys = ("tg1", "tg2", "mixed", "mixed_condition_P", "mixed_condition_F", "umbilicity",
            "pa_commutator", "f2_dichotomy")
    worst = dict.fromkeys(keys, 0.0)
    worst_L = None
    samples = []
    for fr in frames:
        geo = LocalGeometry(fr)
        B1, dB1 = b1.with_derivatives(fr)
        B2, dB2 = b2.with_derivatives(fr)
        rec = dict.fromkeys(keys, 0.0)
        for key, B in (("tg1", B1), ("tg2", B2)):
            for i in range(B.shape[1]):
                for j in range(B.shape[1]):
                    rec[key] = max(rec[key], _norm(geo.h_of(B[:, i], B[:, j])))
        f2 = fr.fmat @ fr.fmat
        N = fr.Nbasis
        for (Ba, dBa, Bb, dBb) in ((B1, dB1, B2, dB2), (B2, dB2, B1, dB1)):
            for i in range(Ba.shape[1]):
                for j in range(Bb.shape[1]):
                    X, Y, dY = Ba[:, i], Bb[:, j], dBb[:, j, :]
                    t = geo.terms(X, Y, dY)
                    hn = _norm(t["h"])
                    rec["mixed"] = max(rec["mixed"], hn)
                    rec["mixed_condition_P"] = max(rec["mixed_condition_P"], _norm(fr.E @ (t["nablaP_Y"] - t["A_FY_X"])))
                    rec["mixed_condition_F"] = max(rec["mixed_condition_F"], _norm(t["nablaF_Y"]))
                    f2h = N @ (f2 @ (N.T @ t["h"]))
                    rec["f2_dichotomy"] = max(rec["f2_dichotomy"], min(hn, _norm(f2h - t["h"])))
        for n in range(N.shape[1]):
            A = geo.shape(N[:, n])
            for i in range(B1.shape[1]):
                X = B1[:, i]
                rec["pa_commutator"] = max(rec["pa_commutator"], _norm(fr.E @ (fr.P @ A @ X - A @ fr.P @ X)))
        defect, L = umbilicity_defect(geo)
        rec["umbilicity"] = defect
        if worst_L is None or defect >= worst["umbilicity"]:
            worst_L = L
        for key in keys:
            worst[key] = max(worst[key], rec[key])
        samples.append({"point": fr.u.tolist(), **rec, "L": L.tolist()})
    return GeodesyReport(
        worst["tg1"], worst["tg2"], worst["mixed"], worst["mixed_condition_P"], worst["mixed_condition_F"],
        worst["umbilicity"], [] if worst_L is None else worst_L.tolist(), worst["pa_commutator"],
        worst["f2_dichotomy"], samples,
    )


def cr_curvature_check(
    chart: ImmersionChart,
    D: DistLike,
    Dperp: DistLike,
    c: float,
    sampling: Sampling = Sampling(),
    frames: Sequence[PointFrame] | None = None,
) -> tuple[float, list | None]:
    """Largest ``|g(R(X,Y)Z, W)|`` for ``X, Y`` in ``D`` and ``Z, W`` in ``Dperp``.

    Returns the maximum and the parameter point where it was attained.
    """
    bd, bp = bind_distribution(chart, D), bind_distribution(chart, Dperp)
    frames = _sampled(chart, sampling, frames)
    g, J = chart.ambient.g, chart.ambient.J
    worst, where = 0.0, None
    for fr in frames:
        A = fr.E @ bd.matrix(fr)
        C = fr.E @ bp.matrix(fr)
        for i in range(A.shape[1]):
            for j in range(A.shape[1]):
                for k in range(C.shape[1]):
                    R = spaceform_curvature(g, J, c, A[:, i], A[:, j], C[:, k])
                    for w in range(C.shape[1]):
                        val = abs(float(R @ g @ C[:, w]))
                        if val > worst:
                            worst, where = val, fr.u.tolist()
    return worst, where
