"""Emitter chain, detector angles and the optical phases between them.

Emitter ``l`` (1-based) sits at ``x = l * d`` on the x-axis. A photon emitted
there and detected in the far field at polar angle ``theta`` in the x-z plane
picks up the phase ``-l * kd * sin(theta)`` relative to one emitted at the
origin. All detectors are taken to be at the same distance.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InputDomainError

HALF_PI = math.pi / 2


class WeakSpacingWarning(UserWarning):
    """kd <= 1: emitters are close enough that dipole-dipole coupling is not negligible."""


@dataclass(frozen=True)
class EmitterChain:
    """N equally spaced emitters with dimensionless spacing ``kd``."""

    n_emitters: int
    kd: float

    def __post_init__(self):
        if isinstance(self.n_emitters, bool) or int(self.n_emitters) != self.n_emitters:
            raise InputDomainError(f"n_emitters must be an integer, got {self.n_emitters!r}")
        if self.n_emitters < 1:
            raise InputDomainError(f"n_emitters must be >= 1, got {self.n_emitters}")
        if not math.isfinite(self.kd) or self.kd <= 0:
            raise InputDomainError(f"kd must be positive and finite, got {self.kd}")
        object.__setattr__(self, "n_emitters", int(self.n_emitters))
        object.__setattr__(self, "kd", float(self.kd))
        if self.kd <= 1:
            warnings.warn(
                f"kd = {self.kd:g} <= 1; dipole-dipole coupling is neglected by this model",
                WeakSpacingWarning,
                stacklevel=3,
            )


def _check_angle(theta: float) -> float:
    theta = float(theta)
    if not -HALF_PI <= theta <= HALF_PI:
        raise InputDomainError(f"angle {theta} outside [-pi/2, pi/2]")
    return theta


@dataclass(frozen=True)
class DetectionConfig:
    """Ordered detector polar angles (radians), one detector per detected photon."""

    angles: tuple[float, ...]

    def __post_init__(self):
        angles = tuple(_check_angle(t) for t in self.angles)
        if not angles:
            raise InputDomainError("at least one detector is required")
        object.__setattr__(self, "angles", angles)

    @property
    def m(self) -> int:
        return len(self.angles)

    @classmethod
    def split(cls, m: int, theta1: float, theta2: float) -> "DetectionConfig":
        """``m - 1`` detectors at ``theta1`` and the last one at ``theta2``."""
        if m < 1:
            raise InputDomainError(f"m must be >= 1, got {m}")
        return cls((theta1,) * (m - 1) + (theta2,))


@dataclass(frozen=True)
class PhaseMatrix:
    """``entries[l-1, j] = exp(-i * phases[l-1, j])``, shape (N, m)."""

    entries: np.ndarray
    phases: np.ndarray

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape


def _phase(l: float, theta: float, kd: float) -> float:
    return -l * kd * math.sin(theta)


def phase(l: int, theta: float, kd: float) -> float:
    """Optical phase of a photon from emitter ``l`` detected at ``theta``.

    >>> phase(3, 0.0, math.pi)
    -0.0
    >>> phase(1, math.pi / 2, math.pi) == -math.pi
    True
    """
    if isinstance(l, bool) or int(l) != l or l < 1:
        raise InputDomainError(f"emitter index must be a positive integer, got {l!r}")
    return _phase(int(l), _check_angle(theta), kd)


def phase_matrix(
    chain: EmitterChain, detectors: DetectionConfig | Sequence[float], index_offset: int = 0
) -> PhaseMatrix:
    """Phase factors for every (emitter, detector) pair.

    ``index_offset`` relabels emitter ``l`` as ``l + index_offset``; observables
    must not depend on it.
    """
    if not isinstance(detectors, DetectionConfig):
        detectors = DetectionConfig(tuple(detectors))
    n, m = chain.n_emitters, detectors.m
    phases = np.empty((n, m))
    for j, theta in enumerate(detectors.angles):
        for l in range(1, n + 1):
            phases[l - 1, j] = _phase(l + index_offset, theta, chain.kd)
    return PhaseMatrix(entries=np.exp(-1j * phases), phases=phases)
