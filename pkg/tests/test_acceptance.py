"""Exit criteria. Run with ``pytest tests/test_acceptance.py``; a PASS/FAIL line per
criterion is printed in the terminal summary."""

import itertools
import math
import time

import numpy as np
import pytest

from multiphoton import (
    EmitterChain,
    apply_field,
    conditional_state,
    estimate_fwhm,
    estimate_visibility,
    fully_excited,
    g_m_closed_form,
    g_m_operator,
    g_m_paths,
    heralded_w_state,
    overlap,
    permanent,
    permanent_naive,
    phase_matrix,
    sweep,
    verify_routes,
    visibility_closed_form,
    w_state,
)
from multiphoton.analysis import angle_grid, augmented_grid
from multiphoton.correlations import path_sum

PI = math.pi
PROPERTY_TOL = 1e-12


def close(a, b, rel):
    return abs(a - b) <= rel * max(abs(a), abs(b), 1e-12 / rel)


def test_ac1_focussing_curves(criterion):
    """AC1 normalized G^(N) curves peak at 1 at theta2 = 0, FWHM decreases with N, FWHM(N=10) = 0.2 rad +- 15%, < 10 s"""
    start = time.perf_counter()
    grid = angle_grid()
    zero = int(np.flatnonzero(grid == 0.0)[0])
    widths = {}
    for n in (2, 3, 5, 10):
        res = sweep(EmitterChain(n, PI), n, 0.0, grid)
        assert res.normalized[zero] == 1.0
        assert res.normalized.max() == 1.0
        widths[n] = estimate_fwhm(res)
    elapsed = time.perf_counter() - start
    ordered = [widths[n] for n in (2, 3, 5, 10)]
    assert all(a > b for a, b in zip(ordered, ordered[1:])), widths
    assert abs(widths[10] - 0.2) <= 0.15 * 0.2, widths[10]
    assert elapsed < 10.0


def test_ac2_route_equivalence(criterion):
    """AC2 paths, operator, closed form agree within 1e-8 over 100 seeded tuples; Ryser = naive within 1e-10 up to 8x8, < 60 s"""
    start = time.perf_counter()
    report = verify_routes(n_max=8, trials=100, seed=42)
    assert report.passed and report.max_discrepancy < 1e-8, report.worst_case
    assert report.checks["operator"] == report.checks["naive"] == 100
    assert report.checks["closed_form"] >= 30

    rng = np.random.default_rng(2024)
    for m in range(1, 9):
        for _ in range(5):
            a = rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))
            ryser, naive = permanent(a), permanent_naive(a)
            assert abs(ryser - naive) <= 1e-10 * abs(naive), (m, ryser, naive)
    assert time.perf_counter() - start < 60.0


def test_ac3_visibility_law(criterion):
    """AC3 measured visibility = (m-1)/(m+1-2m/N) within 1e-3 for N <= 8; V(m=1) = 0, V(m=N) = 1, V(m=2) -> 1/3"""
    for n in range(2, 9):
        chain = EmitterChain(n, PI)
        grid = augmented_grid(2001, n, PI)
        for m in range(1, n + 1):
            v = estimate_visibility(sweep(chain, m, 0.0, grid))
            assert abs(v - visibility_closed_form(n, m)) <= 1e-3, (n, m, v)
            if m == 1:
                assert abs(v) <= 1e-12
            if m == n:
                assert abs(v - 1) <= 1e-6

    series = []
    for n in (3, 5, 10, 50):
        grid = augmented_grid(2001, n, PI)
        series.append(estimate_visibility(sweep(EmitterChain(n, PI), 2, 0.0, grid)))
    gaps = [v - 1 / 3 for v in series]
    assert all(g > 0 for g in gaps)
    assert all(a > b for a, b in zip(gaps, gaps[1:])), series


def test_ac4_w_state_heralding(criterion):
    """AC4 N-1 detections project |S_N> onto the W state (theta1 = 0) or its phased form (theta1 != 0), overlap^2 = 1 +- 1e-10"""
    for n in range(2, 9):
        for kd in (1.0, 2.0, PI, 4.5, 2 * PI):
            chain = EmitterChain(n, kd)
            cond = conditional_state(chain, [0.0] * (n - 1))
            assert abs(abs(overlap(w_state(n), cond)) ** 2 - 1) <= 1e-10
            for theta1 in (-0.9, 0.3, 1.2):
                cond = conditional_state(chain, [theta1] * (n - 1))
                target = heralded_w_state(chain, theta1)
                assert abs(abs(overlap(target, cond)) ** 2 - 1) <= 1e-10


def test_ac5_coincident_peak(criterion):
    """AC5 all N = m detectors at theta1: every route returns (N!)^2 within 1e-9"""
    for n in range(1, 9):
        expected = math.factorial(n) ** 2
        for kd, theta1 in ((PI, 0.0), (2.3, 0.7), (5.1, -1.3)):
            chain = EmitterChain(n, kd)
            values = [
                g_m_paths(chain, [theta1] * n).value,
                g_m_operator(chain, [theta1] * n).value,
                g_m_closed_form(n, n, theta1, theta1, kd).value,
            ]
            assert all(close(v, expected, 1e-9) for v in values), (n, values)


def test_ac6_property_suite(criterion):
    """AC6 detector permutation, index shift, mirror symmetry, sector preservation, commutation, nilpotency within 1e-12"""
    rng = np.random.default_rng(7)
    for _ in range(60):
        n = int(rng.integers(1, 8))
        m = int(rng.integers(1, n + 1))
        kd = float(rng.uniform(1.0, 2 * PI))
        thetas = [float(t) for t in rng.uniform(-PI / 2, PI / 2, m)]
        chain = EmitterChain(n, kd)
        base = g_m_paths(chain, thetas).value

        for perm in itertools.islice(itertools.permutations(thetas), 24):
            assert close(g_m_paths(chain, list(perm)).value, base, PROPERTY_TOL)

        offset = int(rng.integers(1, 50))
        shifted = path_sum(phase_matrix(chain, thetas, index_offset=offset).entries)
        assert close(shifted, base, PROPERTY_TOL)

        if n >= 2 and m >= 2:
            t2 = thetas[-1]
            assert g_m_closed_form(n, m, 0.0, t2, kd).value == g_m_closed_form(n, m, 0.0, -t2, kd).value

        state = fully_excited(n)
        for k, t in enumerate(thetas, start=1):
            state = apply_field(state, t, chain)
            assert all(bin(mask).count("1") == k for mask in state.amplitudes)

        if m >= 2:
            prefix = fully_excited(n)
            for t in thetas[:-2]:
                prefix = apply_field(prefix, t, chain)
            ta, tb = thetas[-2], thetas[-1]
            ab = apply_field(apply_field(prefix, ta, chain), tb, chain)
            ba = apply_field(apply_field(prefix, tb, chain), ta, chain)
            assert ab.amplitudes.keys() == ba.amplitudes.keys()
            for key, amp in ab.amplitudes.items():
                assert abs(amp - ba.amplitudes[key]) <= PROPERTY_TOL * max(1.0, abs(amp))

        extra = [float(t) for t in rng.uniform(-PI / 2, PI / 2, n + 1)]
        assert g_m_operator(chain, extra).value == 0.0


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
