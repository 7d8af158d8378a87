"""Slant, bi-slant, semi-slant, hemi-slant and CR structure of submanifolds
of flat para Kaehler spaces, checked numerically at sampled points.

The pipeline is: an :class:`~paraslant.ambient.AmbientStructure` ``(J, g)``,
an :class:`~paraslant.frame.ImmersionChart` written in a small expression
language, tangent frames evaluated with order-3 jets, and the slant and
extrinsic analyses in :mod:`paraslant.slant` and :mod:`paraslant.geo`.
"""

__version__ = "0.1.0"

from .ambient import AmbientStructure, gallery_lookup, validate_structure
from .errors import DegenerateError, InputError, NoAdmissibleSamples, ParaslantError
from .frame import ImmersionChart, Sampling, evaluate_frame, sample_frames
from .slant import DistributionSpec, Tolerances, classify_slant, decompose_bislant

__all__ = [
    "__version__",
    "AmbientStructure",
    "DegenerateError",
    "DistributionSpec",
    "ImmersionChart",
    "InputError",
    "NoAdmissibleSamples",
    "ParaslantError",
    "Sampling",
    "Tolerances",
    "classify_slant",
    "decompose_bislant",
    "evaluate_frame",
    "gallery_lookup",
    "sample_frames",
    "validate_structure",
]
