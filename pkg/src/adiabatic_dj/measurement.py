"""Computational-basis sampling and the two verdict rules.

Sampling is inverse-CDF over |amplitude|^2 with a seeded PCG64 stream, so a
(state, shots, seed) triple yields the same histogram on every platform.
The modified rule votes on outcome parity (even => constant); the original
rule votes outcome 0 against everything else.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, NamedTuple

import numpy as np

from .errors import MajorityTieError, ValidationError
from .oracle import OracleKind
from .states import StateVector, Variant


class Classification(NamedTuple):
    verdict: OracleKind
    confidence: float  # fraction of shots agreeing with the verdict


@dataclass(frozen=True)
class MeasurementRecord:
    shots: int
    histogram: dict[int, int]
    verdict: OracleKind
    confidence: float


def sample(state: StateVector, shots: int, seed: int) -> dict[int, int]:
    """Histogram of `shots` i.i.d. basis-index draws with P(i) = |amp_i|^2."""
    if shots < 1:
        raise ValidationError(f"need at least one shot, got {shots}")
    norm = state.norm()
    if abs(norm - 1.0) > 1e-6:
        raise ValidationError(f"cannot sample a non-normalized state (norm {norm})")
    probs = np.abs(state.amplitudes) ** 2
    cdf = np.cumsum(probs / probs.sum())
    rng = np.random.Generator(np.random.PCG64(seed))
    draws = np.searchsorted(cdf, rng.random(shots), side="right")
    draws = np.minimum(draws, state.dim - 1)
    counts = np.bincount(draws, minlength=state.dim)
    return {int(i): int(counts[i]) for i in np.flatnonzero(counts)}


def _split_majority(hist: Mapping[int, int], in_first_class) -> tuple[int, int]:
    if not hist or sum(hist.values()) == 0:
        raise ValidationError("cannot classify an empty histogram")
    first = sum(count for idx, count in hist.items() if in_first_class(idx))
    return first, sum(hist.values()) - first


def classify_modified(hist: Mapping[int, int]) -> Classification:
    """Constant when even outcomes hold the majority, balanced when odd do."""
    even, odd = _split_majority(hist, lambda i: i % 2 == 0)
    if even == odd:
        raise MajorityTieError(f"even/odd outcomes tied at {even} shots each; re-sample")
    total = even + odd
    if even > odd:
        return Classification(OracleKind.CONSTANT, even / total)
    return Classification(OracleKind.BALANCED, odd / total)


def classify_original(hist: Mapping[int, int]) -> Classification:
    """Constant when outcome 0 beats all nonzero outcomes combined."""
    zero, nonzero = _split_majority(hist, lambda i: i == 0)
    if zero == nonzero:
        raise MajorityTieError(f"zero/nonzero outcomes tied at {zero} shots each; re-sample")
    total = zero + nonzero
    if zero > nonzero:
        return Classification(OracleKind.CONSTANT, zero / total)
    return Classification(OracleKind.BALANCED, nonzero / total)


def classify(hist: Mapping[int, int], variant: Variant) -> Classification:
    if variant is Variant.ORIGINAL:
        return classify_original(hist)
    return classify_modified(hist)


def measure(state: StateVector, shots: int, seed: int, variant: Variant) -> MeasurementRecord:
    """Sample then classify under the variant's rule."""
    hist = sample(state, shots, seed)
    verdict, confidence = classify(hist, variant)
    return MeasurementRecord(shots=shots, histogram=hist, verdict=verdict, confidence=confidence)
