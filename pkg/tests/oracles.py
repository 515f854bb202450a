"""Independent brute-force references. Nothing here imports the package."""

import itertools
import math

import numpy as np

# single atom basis: index 0 = |e>, 1 = |g>
_LOWER = np.array([[0, 0], [1, 0]], dtype=complex)


def _embed(op, site, n):
    out = np.array([[1.0 + 0j]])
    for k in range(n):
        out = np.kron(out, op if k == site else np.eye(2))
    return out


def dense_field(n, kd, theta):
    """Dense 2**n x 2**n matrix of sum_l exp(i l kd sin theta) s^-_l."""
    return sum(
        np.exp(1j * (l + 1) * kd * math.sin(theta)) * _embed(_LOWER, l, n) for l in range(n)
    )


def dense_excited(n):
    v = np.zeros(2**n, dtype=complex)
    v[0] = 1.0
    return v


def dense_g(n, kd, angles):
    """||E+(theta_m) ... E+(theta_1) |e...e>||^2 on the full Hilbert space."""
    v = dense_excited(n)
    for t in angles:
        v = dense_field(n, kd, t) @ v
    return float(np.vdot(v, v).real)


def dense_state(n, kd, angles):
    v = dense_excited(n)
    for t in angles:
        v = dense_field(n, kd, t) @ v
    return v


def dense_index(ground, n):
    """Basis index of the product state with atoms in ``ground`` (1-based) in |g>."""
    idx = 0
    for l in range(1, n + 1):
        idx = 2 * idx + (1 if l in ground else 0)
    return idx


def ordered_path_sum(n, kd, angles):
    """Sum over ordered distinct emitter tuples, grouped by final atomic state."""
    amps = {}
    for sigma in itertools.permutations(range(1, n + 1), len(angles)):
        a = 1 + 0j
        for l, t in zip(sigma, angles):
            a *= np.exp(1j * l * kd * math.sin(t))
        key = frozenset(sigma)
        amps[key] = amps.get(key, 0) + a
    return math.fsum(abs(a) ** 2 for a in amps.values())


def brute_permanent(a):
    a = np.asarray(a)
    m = a.shape[0]
    return sum(
        math.prod(a[sigma[j], j] for j in range(m)) for sigma in itertools.permutations(range(m))
    )
