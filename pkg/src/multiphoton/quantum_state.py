"""Sparse pure states of an N-atom register and the far-field lowering operator.

A basis state is identified by the set of atoms in the ground state, stored as
a bitmask: bit ``l - 1`` set means atom ``l`` is in ``|g>``. The fully excited
state is the empty mask. Applying the field operator k times to it only ever
populates masks with k bits set, so a state after k detections holds at most
C(N, k) amplitudes instead of 2**N.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .errors import DegenerateStateError, InputDomainError
from .geometry import EmitterChain, _check_angle, _phase

PRUNE_TOL = 1e-15
NORM_TOL = 1e-10


@dataclass(frozen=True)
class PureState:
    """Immutable map from ground-state bitmask to complex amplitude."""

    n_atoms: int
    amplitudes: Mapping[int, complex] = field(default_factory=dict)

    def __post_init__(self):
        if self.n_atoms < 1:
            raise InputDomainError(f"n_atoms must be >= 1, got {self.n_atoms}")
        full = 1 << self.n_atoms
        amps = {}
        for mask, amp in self.amplitudes.items():
            if not 0 <= mask < full:
                raise InputDomainError(f"subset mask {mask:#b} refers to atoms beyond {self.n_atoms}")
            amps[int(mask)] = complex(amp)
        object.__setattr__(self, "amplitudes", MappingProxyType(amps))

    @classmethod
    def from_subsets(cls, n_atoms: int, terms: Mapping[Iterable[int], complex]) -> "PureState":
        """Build from ``{(1, 3): amp, ...}`` with 1-based ground-atom indices."""
        amps: dict[int, complex] = {}
        for subset, amp in terms.items():
            mask = subset_to_mask(subset, n_atoms)
            amps[mask] = amps.get(mask, 0j) + amp
        return cls(n_atoms, amps)

    @property
    def is_normalized(self) -> bool:
        return abs(norm_sq(self) - 1.0) <= NORM_TOL

    def subsets(self) -> dict[tuple[int, ...], complex]:
        """Amplitudes keyed by sorted tuples of 1-based ground-atom indices."""
        return {mask_to_subset(k): v for k, v in sorted(self.amplitudes.items())}

    def to_json(self) -> dict:
        """``{"n_atoms": N, "amplitudes": {"{1,3}": [re, im], ...}}``."""
        amps = {}
        for subset, amp in self.subsets().items():
            amps["{" + ",".join(map(str, subset)) + "}"] = [amp.real, amp.imag]
        return {"n_atoms": self.n_atoms, "amplitudes": amps}

    @classmethod
    def from_json(cls, data: Mapping) -> "PureState":
        n = int(data["n_atoms"])
        terms = {}
        for key, (re, im) in data["amplitudes"].items():
            inner = key.strip().strip("{}").strip()
            subset = tuple(int(s) for s in inner.split(",")) if inner else ()
            terms[subset] = complex(re, im)
        return cls.from_subsets(n, terms)


def subset_to_mask(subset: Iterable[int], n_atoms: int) -> int:
    mask = 0
    for l in subset:
        if not 1 <= l <= n_atoms:
            raise InputDomainError(f"atom index {l} outside 1..{n_atoms}")
        mask |= 1 << (l - 1)
    return mask


def mask_to_subset(mask: int) -> tuple[int, ...]:
    out = []
    l = 1
    while mask:
        if mask & 1:
            out.append(l)
        mask >>= 1
        l += 1
    return tuple(out)


def fully_excited(n: int) -> PureState:
    """Every atom in its upper level."""
    if n < 1:
        raise InputDomainError(f"need at least one atom, got {n}")
    return PureState(n, {0: 1.0 + 0j})


def w_state(n: int) -> PureState:
    """Symmetric single-excitation state: exactly one atom excited, amplitudes 1/sqrt(n)."""
    if n < 2:
        raise InputDomainError(f"W state needs n >= 2, got {n}")
    full = (1 << n) - 1
    amp = 1 / math.sqrt(n)
    return PureState(n, {full ^ (1 << r): amp for r in range(n)})


def heralded_w_state(chain: EmitterChain, theta: float) -> PureState:
    """Normalized state left after N - 1 detections, all at ``theta``.

    Every ordering of the N - 1 emitting atoms contributes the same phase
    product, so the term with atom r still excited carries ``exp(+i phi_r)``
    up to a global phase. At ``theta = 0`` this is ``w_state(N)``.
    """
    n = chain.n_emitters
    if n < 2:
        raise InputDomainError(f"heralding needs n >= 2, got {n}")
    theta = _check_angle(theta)
    full = (1 << n) - 1
    amp = 1 / math.sqrt(n)
    return PureState(
        n, {full ^ (1 << r): amp * cmath.exp(1j * _phase(r + 1, theta, chain.kd)) for r in range(n)}
    )


def apply_field(state: PureState, theta: float, chain: EmitterChain) -> PureState:
    """Apply ``sum_l exp(-i phi_l(theta)) s^-_l`` to ``state`` (unnormalized result)."""
    n = chain.n_emitters
    if state.n_atoms != n:
        raise InputDomainError(f"state has {state.n_atoms} atoms, chain has {n}")
    theta = _check_angle(theta)
    factors = [cmath.exp(-1j * _phase(l, theta, chain.kd)) for l in range(1, n + 1)]
    out: dict[int, complex] = {}
    for mask, amp in state.amplitudes.items():
        for i in range(n):
            bit = 1 << i
            if mask & bit:
                continue
            key = mask | bit
            out[key] = out.get(key, 0j) + amp * factors[i]
    return PureState(n, {k: v for k, v in out.items() if abs(v) >= PRUNE_TOL})


def norm_sq(state: PureState) -> float:
    return math.fsum(abs(a) ** 2 for a in state.amplitudes.values())


def normalize(state: PureState) -> PureState:
    nrm = norm_sq(state)
    if nrm <= 0:
        raise DegenerateStateError("cannot normalize the zero state")
    scale = 1 / math.sqrt(nrm)
    return PureState(state.n_atoms, {k: v * scale for k, v in state.amplitudes.items()})


def overlap(a: PureState, b: PureState) -> complex:
    """Inner product <a|b>."""
    if a.n_atoms != b.n_atoms:
        raise InputDomainError(f"atom counts differ: {a.n_atoms} vs {b.n_atoms}")
    small, large = (a, b) if len(a.amplitudes) <= len(b.amplitudes) else (b, a)
    total = 0j
    for k in small.amplitudes:
        if k in large.amplitudes:
            total += a.amplitudes[k].conjugate() * b.amplitudes[k]
    return total


def conditional_state(chain: EmitterChain, detection_angles: Sequence[float]) -> PureState:
    """Atomic state after photons were detected at ``detection_angles`` (in order)."""
    k = len(detection_angles)
    if k >= chain.n_emitters:
        raise InputDomainError(
            f"{k} detections would leave no excitation among {chain.n_emitters} atoms"
        )
    state = fully_excited(chain.n_emitters)
    for theta in detection_angles:
        state = apply_field(state, theta, chain)
    return normalize(state)
