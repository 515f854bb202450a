"""Angle sweeps, numeric FWHM/visibility estimators and cross-route verification."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from .correlations import (
    Route,
    g_m_closed_form,
    g_m_operator,
    g_m_paths,
    path_sum,
)
from .errors import EstimationError, InputDomainError
from .geometry import HALF_PI, DetectionConfig, EmitterChain, phase_matrix

DEFAULT_POINTS = 2001
VERIFY_TOL = 1e-8
ABS_FLOOR = 1e-12


@dataclass
class SweepResult:
    angles: np.ndarray
    values: np.ndarray
    normalized: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.angles) != len(self.values):
            raise InputDomainError("angles and values differ in length")
        if np.any(np.diff(self.angles) <= 0):
            raise InputDomainError("sweep angles must be strictly increasing")


def angle_grid(points: int = DEFAULT_POINTS, lo: float = -HALF_PI, hi: float = HALF_PI) -> np.ndarray:
    if points < 2:
        raise InputDomainError(f"grid needs at least 2 points, got {points}")
    grid = np.linspace(lo, hi, points)
    if lo == -hi:
        # exact mirror symmetry, with 0 on the grid for odd point counts
        grid = (grid - grid[::-1]) / 2
    # linspace can overshoot the closed interval by one ulp
    return np.clip(grid, -HALF_PI, HALF_PI)


def pattern_zeros(n: int, kd: float, theta1: float = 0.0) -> np.ndarray:
    """Visible angles where the N-slit term vanishes: kd (sin t - sin t1) = 2 pi q / N, N does not divide q."""
    s1 = math.sin(theta1)
    q_max = math.ceil(n * kd / math.pi) + 1
    out = []
    for q in range(-q_max, q_max + 1):
        if q % n == 0:
            continue
        s = s1 + 2 * math.pi * q / (n * kd)
        if -1.0 <= s <= 1.0:
            out.append(math.asin(s))
    return np.array(sorted(out))


def augmented_grid(
    points: int, n: int, kd: float, theta1: float = 0.0, lo: float = -HALF_PI, hi: float = HALF_PI
) -> np.ndarray:
    """Uniform grid plus the exact pattern zeros and ``theta1`` itself."""
    extra = [z for z in pattern_zeros(n, kd, theta1) if lo <= z <= hi]
    if lo <= theta1 <= hi:
        extra.append(theta1)
    return np.unique(np.concatenate([angle_grid(points, lo, hi), extra]))


def _point(args) -> float:
    n, kd, m, theta1, theta2, route = args
    if route is Route.CLOSED_FORM:
        return g_m_closed_form(n, m, theta1, theta2, kd).value
    chain = EmitterChain(n, kd)
    det = DetectionConfig.split(m, theta1, theta2)
    if route is Route.OPERATOR:
        return g_m_operator(chain, det).value
    return g_m_paths(chain, det).value


def resolve_route(route: Route | str, n: int, m: int) -> Route:
    """``auto`` picks the closed form, which always applies to the (m-1, 1) split of a sweep."""
    if route == "auto":
        return Route.CLOSED_FORM
    return Route(route)


def sweep(
    chain: EmitterChain,
    m: int,
    theta1: float = 0.0,
    grid: Sequence[float] | None = None,
    route: Route | str = "auto",
    workers: int | None = None,
) -> SweepResult:
    """G^(m)(theta1, ..., theta1, theta2) over a grid of theta2.

    ``workers > 1`` spreads the grid over a process pool; results are
    assembled in grid order, so output does not depend on the worker count.
    """
    n = chain.n_emitters
    if not 1 <= m <= n:
        raise InputDomainError(f"need 1 <= m <= N, got m={m}, N={n}")
    angles = angle_grid() if grid is None else np.asarray(grid, dtype=float)
    if angles.size == 0:
        raise InputDomainError("empty grid")
    r = resolve_route(route, n, m)
    tasks = [(n, chain.kd, m, theta1, float(t), r) for t in angles]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            values = np.fromiter(pool.map(_point, tasks, chunksize=max(1, len(tasks) // (4 * workers))), float)
    else:
        values = np.fromiter(map(_point, tasks), float)
    peak = values.max()
    normalized = values / peak if peak > 0 else np.zeros_like(values)
    meta = {"n": n, "m": m, "theta1": float(theta1), "kd": chain.kd, "route": r.value}
    return SweepResult(angles, values, normalized, meta)


def _crossing(x0, y0, x1, y1, level):
    return x0 + (level - y0) * (x1 - x0) / (y1 - y0)


def estimate_fwhm(result: SweepResult) -> float:
    """Full width at half maximum of the peak nearest ``meta['theta1']``.

    Climbs from the grid point nearest theta1 to the local maximum, then
    linearly interpolates the half-maximum crossing on each side.
    """
    x, y = np.asarray(result.angles), np.asarray(result.values)
    if len(x) < 3:
        raise EstimationError("need at least three grid points")
    i = int(np.argmin(np.abs(x - result.meta.get("theta1", 0.0))))
    while True:
        if i > 0 and y[i - 1] > y[i]:
            i -= 1
        elif i < len(y) - 1 and y[i + 1] > y[i]:
            i += 1
        else:
            break
    if i == 0 or i == len(y) - 1:
        raise EstimationError("central maximum lies on the grid boundary")
    half = y[i] / 2
    if half <= 0:
        raise EstimationError("peak value is zero")
    lft = i
    while lft > 0 and y[lft] >= half:
        lft -= 1
    rgt = i
    while rgt < len(y) - 1 and y[rgt] >= half:
        rgt += 1
    if y[lft] >= half or y[rgt] >= half:
        raise EstimationError("half maximum not bracketed within the grid")
    left = _crossing(x[lft], y[lft], x[lft + 1], y[lft + 1], half)
    right = _crossing(x[rgt - 1], y[rgt - 1], x[rgt], y[rgt], half)
    return float(right - left)


def estimate_visibility(result: SweepResult) -> float:
    """(max - min) / (max + min) over the sampled values."""
    y = np.asarray(result.values)
    if y.size == 0:
        raise EstimationError("empty sweep")
    hi, lo = float(y.max()), float(y.min())
    if hi + lo <= 0:
        raise EstimationError("all-zero sweep has no visibility")
    return (hi - lo) / (hi + lo)


@dataclass
class VerifyReport:
    passed: bool
    max_discrepancy: float
    worst_case: dict
    trials: int
    n_max: int
    seed: int
    checks: dict = field(default_factory=dict)
    tolerance: float = VERIFY_TOL

    def to_dict(self) -> dict:
        return asdict(self)


def discrepancy(a: float, b: float) -> float:
    """Relative difference, compared absolutely when both values are below 1e-12."""
    scale = max(abs(a), abs(b))
    if scale < ABS_FLOOR:
        return abs(a - b)
    return abs(a - b) / scale


def verify_routes(n_max: int = 8, trials: int = 100, seed: int = 42) -> VerifyReport:
    """Seeded random comparison of all G^(m) routes and the naive-permanent oracle.

    Half of the tuples use the (m-1, 1) detector split so the closed form is
    also exercised. Failures are reported, never raised.
    """
    if not 1 <= n_max <= 8:
        raise InputDomainError(f"n_max must be in 1..8, got {n_max}")
    rng = np.random.default_rng(seed)
    worst, worst_case = 0.0, {}
    checks: dict[str, int] = {}
    for trial in range(trials):
        n = int(rng.integers(1, n_max + 1))
        m = int(rng.integers(1, n + 1))
        kd = float(rng.uniform(1.0, 2 * math.pi))
        split = bool(rng.integers(0, 2))
        if split:
            t1, t2 = rng.uniform(-HALF_PI, HALF_PI, 2)
            angles = [float(t1)] * (m - 1) + [float(t2)]
        else:
            angles = [float(t) for t in rng.uniform(-HALF_PI, HALF_PI, m)]
        chain = EmitterChain(n, kd)
        u = phase_matrix(chain, angles).entries
        values = {
            "paths": g_m_paths(chain, angles).value,
            "operator": g_m_operator(chain, angles).value,
            "naive": path_sum(u, naive=True),
        }
        if split:
            values["closed_form"] = g_m_closed_form(n, m, angles[0], angles[-1], kd).value
        ref = values["paths"]
        for name, v in values.items():
            checks[name] = checks.get(name, 0) + 1
            d = discrepancy(ref, v)
            if d > worst or not worst_case:
                worst = max(worst, d)
                worst_case = {
                    "trial": trial,
                    "n": n,
                    "m": m,
                    "kd": kd,
                    "angles": angles,
                    "route": name,
                    "values": values,
                }
    return VerifyReport(worst < VERIFY_TOL, worst, worst_case, trials, n_max, seed, checks)
