"""Equal-time m-th order correlation functions G^(m) for the fully excited chain.

Three independent routes are provided:

``paths``
    Coherent sum over quantum paths. For each set of m emitting atoms the m!
    path amplitudes sum to the permanent of the m x m phase submatrix; the
    C(N, m) final atomic states add incoherently.
``operator``
    Squared norm of ``E+(theta_m) ... E+(theta_1) |S_N>`` on the sparse register.
``closed_form``
    Analytic result for m - 1 detectors at theta_1 and one at theta_2, a
    constant floor plus an N-slit grating (Dirichlet) term.

All values are dimensionless.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InputDomainError
from .geometry import DetectionConfig, EmitterChain, _check_angle, phase_matrix
from .quantum_state import PureState, apply_field, fully_excited, norm_sq

MAX_PERMANENT_SIZE = 30
MAX_NAIVE_SIZE = 9
NEG_TOL = 1e-12
DIRICHLET_EPS = 1e-8


class Route(str, enum.Enum):
    PATHS = "paths"
    OPERATOR = "operator"
    CLOSED_FORM = "closed_form"


@dataclass(frozen=True)
class CorrelationResult:
    value: float
    route: Route
    n: int
    m: int
    angles: tuple[float, ...]
    kd: float

    def __float__(self) -> float:
        return self.value


def _clamp(value: float) -> float:
    if not math.isfinite(value):
        raise ArithmeticError(f"non-finite correlation value {value}")
    if value < 0:
        if value < -NEG_TOL:
            raise ArithmeticError(f"negative correlation value {value}")
        return 0.0
    return value


def _square(matrix) -> np.ndarray:
    a = np.asarray(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InputDomainError(f"permanent needs a square matrix, got shape {a.shape}")
    return a


def permanent(matrix) -> complex:
    """Permanent by Ryser's inclusion-exclusion formula, columns visited in Gray-code order.

    Each step toggles one column in or out of the running row sums, so the
    cost is O(2**m * m).
    """
    a = _square(matrix)
    m = a.shape[0]
    if m == 0:
        return 1 + 0j
    if m > MAX_PERMANENT_SIZE:
        raise InputDomainError(f"matrix size {m} exceeds {MAX_PERMANENT_SIZE}")
    cols = [a[:, j].tolist() for j in range(m)]
    row_sums = [0j] * m
    total = 0j
    in_set = [False] * m
    size = 0
    for k in range(1, 1 << m):
        j = (k & -k).bit_length() - 1
        col = cols[j]
        if in_set[j]:
            in_set[j] = False
            size -= 1
            for i in range(m):
                row_sums[i] -= col[i]
        else:
            in_set[j] = True
            size += 1
            for i in range(m):
                row_sums[i] += col[i]
        prod = 1 + 0j
        for s in row_sums:
            prod *= s
        total += -prod if size & 1 else prod
    return -total if m & 1 else total


def permanent_naive(matrix) -> complex:
    """Sum over all m! permutations of prod_j matrix[sigma(j), j]."""
    a = _square(matrix)
    m = a.shape[0]
    if m > MAX_NAIVE_SIZE:
        raise InputDomainError(f"naive permanent limited to m <= {MAX_NAIVE_SIZE}, got {m}")
    total = 0j
    cols = range(m)
    for sigma in itertools.permutations(range(m)):
        total += np.prod(a[list(sigma), cols])
    return complex(total)


def path_sum(entries, naive: bool = False) -> float:
    """Sum over atom subsets of |permanent of the selected rows|^2.

    ``entries`` is an N x m matrix of path phase factors (rows: emitters,
    columns: detectors).
    """
    u = np.asarray(entries, dtype=complex)
    n, m = u.shape
    if m > n:
        raise InputDomainError(f"{m} detected photons but only {n} emitters")
    perm = permanent_naive if naive else permanent
    total = math.fsum(abs(perm(u[list(rows), :])) ** 2 for rows in itertools.combinations(range(n), m))
    return _clamp(total)


def _detectors(detectors) -> DetectionConfig:
    return detectors if isinstance(detectors, DetectionConfig) else DetectionConfig(tuple(detectors))


def g_m_paths(chain: EmitterChain, detectors, naive: bool = False) -> CorrelationResult:
    """G^(m) from the quantum-path sum.

    Parameters
    ----------
    chain : EmitterChain
    detectors : DetectionConfig or sequence of float
        Detector angles in radians; m = number of detectors, m <= N.
    naive : bool
        Use brute-force permutation enumeration instead of Ryser (m <= 9).
    """
    det = _detectors(detectors)
    if det.m > chain.n_emitters:
        raise InputDomainError(f"m = {det.m} exceeds N = {chain.n_emitters}")
    value = path_sum(phase_matrix(chain, det).entries, naive=naive)
    return CorrelationResult(value, Route.PATHS, chain.n_emitters, det.m, det.angles, chain.kd)


def emitted_state(chain: EmitterChain, detectors) -> PureState:
    """Unnormalized ``E+(theta_m) ... E+(theta_1) |S_N>``."""
    det = _detectors(detectors)
    state = fully_excited(chain.n_emitters)
    for theta in det.angles:
        if not state.amplitudes:
            break
        state = apply_field(state, theta, chain)
    return state


def g_m_operator(chain: EmitterChain, detectors) -> CorrelationResult:
    """G^(m) as a squared norm; exactly 0 when m > N."""
    det = _detectors(detectors)
    if det.m > chain.n_emitters:
        value = 0.0
    else:
        value = _clamp(norm_sq(emitted_state(chain, det)))
    return CorrelationResult(value, Route.OPERATOR, chain.n_emitters, det.m, det.angles, chain.kd)


def dirichlet_ratio(n: int, delta: float) -> float:
    """sin^2(n*delta/2) / sin^2(delta/2), with the limit n^2 at delta = 0 mod 2pi."""
    x = math.remainder(delta / 2, math.pi)
    s = math.sin(x)
    if abs(s) < DIRICHLET_EPS:
        return float(n * n)
    return (math.sin(n * x) / s) ** 2


def g_m_closed_form(n: int, m: int, theta1: float, theta2: float, kd: float) -> CorrelationResult:
    """G^(m) for m - 1 detectors at ``theta1`` and one at ``theta2``.

    ``N!(m-1)!/(N-m)! * [(N-m)/(N-1) + (m-1)/(N(N-1)) * D(delta)]`` with D the
    Dirichlet ratio and ``delta = kd * (sin theta2 - sin theta1)``. For m = 1
    the pattern is the constant N.
    """
    if m < 1 or m > n:
        raise InputDomainError(f"need 1 <= m <= n, got m={m}, n={n}")
    if n < 2 and m >= 2:
        raise InputDomainError(f"closed form needs n >= 2 for m >= 2, got n={n}")
    if kd <= 0:
        raise InputDomainError(f"kd must be positive, got {kd}")
    theta1, theta2 = _check_angle(theta1), _check_angle(theta2)
    angles = (theta1,) * (m - 1) + (theta2,)
    if m == 1:
        return CorrelationResult(float(n), Route.CLOSED_FORM, n, m, angles, kd)
    delta = kd * (math.sin(theta2) - math.sin(theta1))
    prefactor = math.factorial(n) * math.factorial(m - 1) / math.factorial(n - m)
    bracket = (n - m) / (n - 1) + (m - 1) / (n * (n - 1)) * dirichlet_ratio(n, delta)
    return CorrelationResult(_clamp(prefactor * bracket), Route.CLOSED_FORM, n, m, angles, kd)


def visibility_closed_form(n: int, m: int) -> float:
    """(m - 1) / (m + 1 - 2m/n)."""
    if n < 2 or not 1 <= m <= n:
        raise InputDomainError(f"need n >= 2 and 1 <= m <= n, got n={n}, m={m}")
    return (m - 1) / (m + 1 - 2 * m / n)


def fwhm_predicted(n: int, kd: float) -> float:
    """Approximate angular FWHM 2pi/(n kd) of the central peak around theta_1 = 0."""
    if n < 2 or not kd > 0:
        raise InputDomainError(f"need n >= 2 and kd > 0, got n={n}, kd={kd}")
    return 2 * math.pi / (n * kd)


def g1_conditional(state: PureState, theta2: float, chain: EmitterChain) -> float:
    """Mean intensity at ``theta2`` radiated by a normalized (e.g. heralded) state."""
    if not state.is_normalized:
        raise InputDomainError(f"state must be normalized, norm^2 = {norm_sq(state)}")
    return _clamp(norm_sq(apply_field(state, theta2, chain)))


def g_m(chain: EmitterChain, detectors: Sequence[float], route: Route | str = Route.PATHS) -> CorrelationResult:
    """Dispatch on ``route``; the closed form requires the (m-1, 1) detector split."""
    route = Route(route)
    if route is Route.PATHS:
        return g_m_paths(chain, detectors)
    if route is Route.OPERATOR:
        return g_m_operator(chain, detectors)
    det = _detectors(detectors)
    if len(set(det.angles[:-1])) > 1:
        raise InputDomainError("closed form needs the first m - 1 detectors at one angle")
    theta1 = det.angles[0] if det.m > 1 else 0.0
    return g_m_closed_form(chain.n_emitters, det.m, theta1, det.angles[-1], chain.kd)
