"""Immersion charts and the pointwise linear algebra of a submanifold.

At a parameter point ``u`` the chart gives the tangent frame ``E`` (columns
``dx/du_i``), the induced metric ``G = E^T g E`` and the split of ``J`` into
tangential and normal parts::

    J E = E P + F        (P: m x m, F: 2n x m, g-orthogonal to E)
    J N = E t + N f      (N: basis of the normal space)
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from .ambient import AmbientStructure
from .errors import DegenerateError, InputError, JetError, NoAdmissibleSamples
from .exprdsl import Expr, eval_jet, parse

log = logging.getLogger(__name__)

DEGENERATE_TOL = 1e-10
CAUSAL_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class ImmersionChart:
    """A parametrised submanifold ``x(u_1..u_m)`` of a flat ambient space."""

    params: tuple[str, ...]
    domain: Mapping[str, tuple[float, float]]
    constants: Mapping[str, float]
    components: tuple[str, ...]
    ambient: AmbientStructure
    name: str = "chart"
    exprs: tuple[Expr, ...] = field(init=False, repr=False)

    def __post_init__(self):
        params = tuple(self.params)
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "constants", {k: float(v) for k, v in self.constants.items()})
        if len(set(params)) != len(params):
            raise InputError(f"duplicate parameter names in {params}")
        if len(self.components) != self.ambient.dim:
            raise InputError(
                f"chart has {len(self.components)} components but the ambient has dimension {self.ambient.dim}"
            )
        dom = {}
        for p in params:
            if p not in self.domain:
                raise InputError(f"no domain interval for parameter {p!r}")
            lo, hi = (float(v) for v in self.domain[p])
            if not lo <= hi:
                raise InputError(f"empty domain interval for {p!r}: [{lo}, {hi}]")
            dom[p] = (lo, hi)
        object.__setattr__(self, "domain", dom)
        exprs = tuple(parse(c, params, self.constants) for c in self.components)
        object.__setattr__(self, "exprs", exprs)

    @property
    def m(self) -> int:
        return len(self.params)

    def with_constants(self, constants: Mapping[str, float], name: str | None = None) -> "ImmersionChart":
        merged = {**self.constants, **constants}
        return ImmersionChart(self.params, self.domain, merged, self.components, self.ambient, name or self.name)

    def parse_field(self, coefficients: Sequence[str]) -> tuple[Expr, ...]:
        """Parse ``m`` coefficient expressions of a tangent vector field."""
        if len(coefficients) != self.m:
            raise InputError(f"a tangent field needs {self.m} coefficients, got {len(coefficients)}")
        return tuple(parse(str(c), self.params, self.constants) for c in coefficients)

    def in_domain(self, u) -> bool:
        return all(lo <= ui <= hi for ui, (lo, hi) in zip(u, self.domain.values()))

    def derivatives(self, u) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Position and first three derivative arrays of ``x`` at ``u``.

        Shapes: ``(2n,)``, ``(2n, m)``, ``(2n, m, m)``, ``(2n, m, m, m)``.
        """
        point = dict(zip(self.params, (float(v) for v in u)))
        jets = [eval_jet(e, point, self.constants) for e in self.exprs]
        x = np.array([j.value for j in jets])
        E = np.array([j.grad for j in jets])
        H = np.array([j.hess for j in jets])
        T = np.array([j.third for j in jets])
        return x, E, H, T

    def to_dict(self) -> dict:
        return {
            "params": list(self.params),
            "domain": {p: list(v) for p, v in self.domain.items()},
            "constants": dict(self.constants),
            "components": list(self.components),
        }


@dataclass(frozen=True, eq=False)
class PointFrame:
    u: np.ndarray
    x: np.ndarray
    E: np.ndarray
    G: np.ndarray
    Ginv: np.ndarray
    P: np.ndarray
    Fcols: np.ndarray
    Nbasis: np.ndarray
    tmat: np.ndarray
    fmat: np.ndarray
    H: np.ndarray
    T: np.ndarray
    ambient: AmbientStructure

    @property
    def m(self) -> int:
        return self.E.shape[1]

    @property
    def g(self) -> np.ndarray:
        return self.ambient.g

    @property
    def J(self) -> np.ndarray:
        return self.ambient.J


def _kernel(A: np.ndarray, rank: int) -> np.ndarray:
    # rows of Vt beyond the rank span the null space of A
    _, _, vt = np.linalg.svd(A)
    return vt[rank:].T.copy()


def evaluate_frame(chart: ImmersionChart, u, degenerate_tol: float = DEGENERATE_TOL) -> PointFrame:
    u = np.asarray(u, dtype=float)
    if u.shape != (chart.m,):
        raise InputError(f"point must have {chart.m} coordinates, got shape {u.shape}")
    if not chart.in_domain(u):
        raise InputError(f"point {u.tolist()} lies outside the chart domain {dict(chart.domain)}")
    x, E, H, T = chart.derivatives(u)
    g, J = chart.ambient.g, chart.ambient.J
    G = E.T @ g @ E
    G = 0.5 * (G + G.T)
    scale = float(np.max(np.abs(G))) if G.size else 0.0
    if scale == 0.0 or abs(np.linalg.det(G / scale)) <= degenerate_tol:
        raise DegenerateError(f"induced metric is degenerate at u={u.tolist()}", "degenerate-induced-metric")
    Ginv = np.linalg.solve(G, np.eye(chart.m))
    P = Ginv @ (E.T @ g @ J @ E)
    F = J @ E - E @ P
    N = _kernel(E.T @ g, chart.m)
    JN = J @ N
    tmat = Ginv @ (E.T @ g @ JN)
    fmat = N.T @ (JN - E @ tmat)
    return PointFrame(u, x, E, G, Ginv, P, F, N, tmat, fmat, H, T, chart.ambient)


def tangential_project(frame: PointFrame, v) -> tuple[np.ndarray, np.ndarray]:
    """Split an ambient vector into tangent coefficients ``a`` and normal remainder ``r``."""
    v = np.asarray(v, dtype=float)
    a = np.linalg.solve(frame.G, frame.E.T @ frame.g @ v)
    return a, v - frame.E @ a


def normal_part(frame: PointFrame, v) -> np.ndarray:
    return tangential_project(frame, v)[1]


def causal_character(frame: PointFrame, X, causal_tol: float = CAUSAL_TOL) -> str:
    """``space-like``, ``time-like`` or ``light-like`` for a tangent coefficient vector."""
    X = np.asarray(X, dtype=float)
    ref = float(X @ X)
    if ref == 0.0:
        raise InputError("causal character of the zero vector is undefined")
    q = float(X @ frame.G @ X)
    return classify_quadratic(q, ref, causal_tol)


def classify_quadratic(q: float, ref: float, causal_tol: float = CAUSAL_TOL) -> str:
    if abs(q) <= causal_tol * ref:
        return "light-like"
    return "space-like" if q > 0 else "time-like"


@dataclass(frozen=True)
class Sampling:
    count: int = 64
    seed: int = 0
    limit_factor: int = 10

    def __post_init__(self):
        if self.count < 1:
            raise InputError("sampling count must be at least 1")


def sample_point(chart: ImmersionChart, seed: int, attempt: int) -> np.ndarray:
    """Deterministic uniform point of the domain box for one attempt index."""
    rng = np.random.default_rng([seed, attempt])
    lo = np.array([b[0] for b in chart.domain.values()])
    hi = np.array([b[1] for b in chart.domain.values()])
    return lo + (hi - lo) * rng.random(chart.m)


def sample_frames(
    chart: ImmersionChart,
    sampling: Sampling,
    accept: Callable[[PointFrame], bool] | None = None,
) -> list[PointFrame]:
    """``sampling.count`` admissible frames, skipping degenerate points.

    At most ``limit_factor * count`` points are tried.
    """
    frames: list[PointFrame] = []
    limit = sampling.limit_factor * sampling.count
    skipped = 0
    for attempt in range(limit):
        u = sample_point(chart, sampling.seed, attempt)
        try:
            fr = evaluate_frame(chart, u)
        except (DegenerateError, JetError) as err:
            skipped += 1
            log.debug("skipping sample %s: %s", u.tolist(), err)
            continue
        if accept is not None and not accept(fr):
            skipped += 1
            continue
        frames.append(fr)
        if len(frames) == sampling.count:
            if skipped:
                log.info("%s: skipped %d inadmissible sample points", chart.name, skipped)
            return frames
    raise NoAdmissibleSamples(
        f"{chart.name}: only {len(frames)} of {sampling.count} admissible points in {limit} attempts"
    )
