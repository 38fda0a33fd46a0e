"""State vectors and the start/target states of both evolution variants.

Basis convention: index i is the integer value of the bit string x, for
every module in the package. All amplitudes are stored complex even
though the constructed states are real, because the dynamics makes them
complex anyway.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

import numpy as np

from .errors import DimensionMismatchError, PromiseViolationError, ValidationError
from .oracle import BooleanOracle, OracleKind, mu_nu

NORM_ATOL = 1e-12


class Variant(Enum):
    """Which target-state construction (and measurement rule) is in play."""

    ORIGINAL = "original"
    MODIFIED = "modified"


@dataclass(frozen=True)
class StateVector:
    """Complex amplitude vector. States built by this module's factories are
    unit-norm to 1e-12; `renormalized` marks the non-physical states that
    only exist because a non-promise oracle was forced through."""

    amplitudes: np.ndarray
    renormalized: bool = field(default=False, compare=False)

    def __post_init__(self):
        amps = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


def _unit(amps: np.ndarray, renormalized: bool = False) -> StateVector:
    state = StateVector(amps, renormalized=renormalized)
    if abs(state.norm() - 1.0) > NORM_ATOL:
        raise ValidationError(f"state norm {state.norm()} deviates from 1 by more than {NORM_ATOL}")
    return state


def alpha_state(n: int) -> StateVector:
    """Uniform superposition over all N = 2**n basis states."""
    if n < 1:
        raise ValidationError(f"need n >= 1, got {n}")
    N = 1 << n
    return _unit(np.full(N, 1.0 / np.sqrt(N), dtype=np.complex128))


def _promise_amplitudes(oracle: BooleanOracle, renormalize: bool) -> tuple[float, float]:
    mu, nu = mu_nu(oracle)
    if oracle.kind is OracleKind.INVALID and not renormalize:
        raise PromiseViolationError(
            f"oracle is neither constant nor balanced (mu={mu}); the target state "
            "would have norm sqrt(mu^2 + nu^2) != 1. Pass renormalize=True to force "
            "a normalized but non-physical state."
        )
    return mu, nu


def beta_original(oracle: BooleanOracle, renormalize: bool = False) -> StateVector:
    """Target state with amplitude mu on |0> and nu/sqrt(N-1) on each other
    basis state. Exactly |0> for constant oracles, uniform over 1..N-1 for
    balanced ones."""
    mu, nu = _promise_amplitudes(oracle, renormalize)
    N = oracle.N
    amps = np.empty(N, dtype=np.complex128)
    amps[0] = mu
    amps[1:] = nu / np.sqrt(N - 1)
    if renormalize and oracle.kind is OracleKind.INVALID:
        return _unit(amps / np.linalg.norm(amps), renormalized=True)
    return _unit(amps)


def beta_modified(oracle: BooleanOracle, renormalize: bool = False) -> StateVector:
    """Target state with amplitude mu/sqrt(N/2) on every even index and
    nu/sqrt(N/2) on every odd index; under the promise exactly one parity
    carries all the weight."""
    mu, nu = _promise_amplitudes(oracle, renormalize)
    N = oracle.N
    half = np.sqrt(N / 2)
    amps = np.empty(N, dtype=np.complex128)
    amps[0::2] = mu / half
    amps[1::2] = nu / half
    if renormalize and oracle.kind is OracleKind.INVALID:
        return _unit(amps / np.linalg.norm(amps), renormalized=True)
    return _unit(amps)


def beta_state(oracle: BooleanOracle, variant: Variant, renormalize: bool = False) -> StateVector:
    if variant is Variant.ORIGINAL:
        return beta_original(oracle, renormalize)
    return beta_modified(oracle, renormalize)


def overlap(a: StateVector, b: StateVector) -> complex:
    """Inner product <a|b>, conjugate-linear in the first argument."""
    if a.dim != b.dim:
        raise DimensionMismatchError(f"dimension mismatch: {a.dim} vs {b.dim}")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def to_pairs(state: StateVector) -> list[list[float]]:
    """JSON-friendly form: one [re, im] pair per amplitude."""
    return [[float(z.real), float(z.imag)] for z in state.amplitudes]


def from_pairs(pairs: Iterable[Iterable[float]]) -> StateVector:
    amps = np.array([complex(re, im) for re, im in pairs], dtype=np.complex128)
    return StateVector(amps)
