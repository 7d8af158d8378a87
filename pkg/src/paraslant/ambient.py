"""Flat para Hermitian ambient spaces ``(R^2n, J, g)`` with constant matrices.

Because ``J`` and ``g`` are constant, the Levi-Civita connection is the plain
coordinate derivative and ``J`` is automatically parallel, so every valid
structure here is para Kaehler.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateError, InputError

AXIOM_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class AmbientStructure:
    name: str
    J: np.ndarray
    g: np.ndarray

    def __post_init__(self):
        J = np.array(self.J, dtype=float)
        g = np.array(self.g, dtype=float)
        if J.ndim != 2 or J.shape[0] != J.shape[1] or g.shape != J.shape:
            raise InputError(f"J and g must be square matrices of equal size, got {J.shape} and {g.shape}")
        if J.shape[0] % 2:
            raise InputError(f"ambient dimension must be even, got {J.shape[0]}")
        J.setflags(write=False)
        g.setflags(write=False)
        object.__setattr__(self, "J", J)
        object.__setattr__(self, "g", g)

    @property
    def dim(self) -> int:
        return self.J.shape[0]

    def inner(self, x, y) -> float:
        return float(np.asarray(x) @ self.g @ np.asarray(y))

    def to_dict(self) -> dict:
        return {"name": self.name, "J": self.J.tolist(), "g": self.g.tolist()}


@dataclass(frozen=True)
class Violation:
    axiom: str
    residual: float


@dataclass(frozen=True)
class ValidationReport:
    structure: str
    violations: tuple[Violation, ...] = field(default_factory=tuple)
    residuals: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_structure(s: AmbientStructure, tol: float = AXIOM_TOL) -> ValidationReport:
    """Check ``J^2 = I``, ``J^T g + g J = 0``, symmetry and nondegeneracy of ``g``."""
    J, g = s.J, s.g
    n = s.dim
    r_inv = float(np.max(np.abs(J @ J - np.eye(n))))
    r_compat = float(np.max(np.abs(J.T @ g + g @ J)))
    r_sym = float(np.max(np.abs(g - g.T)))
    det = float(np.linalg.det(g))
    violations = []
    if r_inv > tol:
        violations.append(Violation("J^2 = I", r_inv))
    if r_compat > tol:
        violations.append(Violation("Jᵀg+gJ ≠ 0", r_compat))
    if r_sym > tol:
        violations.append(Violation("g symmetric", r_sym))
    if not abs(det) > tol:
        violations.append(Violation("g nondegenerate", abs(det)))
    return ValidationReport(
        s.name,
        tuple(violations),
        {"involution": r_inv, "compatibility": r_compat, "symmetry": r_sym, "det": det},
    )


def signature(g, tol: float = AXIOM_TOL) -> tuple[int, int]:
    """Counts of positive and negative eigenvalues of the symmetric matrix ``g``."""
    ev = np.linalg.eigvalsh(np.asarray(g, dtype=float))
    if np.any(np.abs(ev) < tol):
        raise DegenerateError("metric has a (numerically) zero eigenvalue", "degenerate-metric")
    return int(np.sum(ev > 0)), int(np.sum(ev < 0))


def block_diag(*structures: AmbientStructure, name: str | None = None) -> AmbientStructure:
    """Orthogonal product of ambient structures."""
    n = sum(s.dim for s in structures)
    J = np.zeros((n, n))
    g = np.zeros((n, n))
    i = 0
    for s in structures:
        k = s.dim
        J[i:i + k, i:i + k] = s.J
        g[i:i + k, i:i + k] = s.g
        i += k
    return AmbientStructure(name or "x".join(s.name for s in structures), J, g)


_J = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
_G = [[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]]
_J1 = [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]
_G1 = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]]


def _build_gallery() -> dict[str, AmbientStructure]:
    base = AmbientStructure("J-g-R4", _J, _G)
    base1 = AmbientStructure("J1-g1-R4", _J1, _G1)
    plane = AmbientStructure("R2", [[0, 1], [1, 0]], [[1, 0], [0, -1]])
    return {
        "J-g-R4": base,
        "J1-g1-R4": base1,
        "J2-g2-R8": block_diag(base, base, name="J2-g2-R8"),
        "J3-g3-R8": block_diag(base1, base, name="J3-g3-R8"),
        "J4-g4-R8": block_diag(base1, base1, name="J4-g4-R8"),
        "J5-g5-R6": block_diag(base, plane, name="J5-g5-R6"),
    }


_GALLERY = _build_gallery()
GALLERY_NAMES = tuple(_GALLERY)


def gallery_lookup(name: str) -> AmbientStructure:
    try:
        return _GALLERY[name]
    except KeyError:
        raise InputError(f"unknown ambient {name!r}; valid names: {', '.join(GALLERY_NAMES)}") from None
