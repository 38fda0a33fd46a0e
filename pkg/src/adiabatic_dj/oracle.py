"""Promise functions f: {0,1}^n -> {0,1} as explicit truth tables.

A table is constant (all outputs equal) or balanced (exactly half ones);
anything else is representable but flagged Invalid so downstream code can
exercise its rejection paths. The signed amplitude pair (mu, nu) encodes
the class: mu = |sum_x (-1)^f(x)| / N, nu = 1 - mu, so mu is exactly 1
for constant tables and exactly 0 for balanced ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Sequence

import numpy as np

from .errors import ValidationError

# Truth tables are dense, so cap the register size; the CLI imposes the
# tighter n <= 12 limit for anything that touches full-space numerics.
MAX_QUBITS = 16


class OracleKind(Enum):
    CONSTANT = "constant"
    BALANCED = "balanced"
    INVALID = "invalid"


@dataclass(frozen=True)
class BooleanOracle:
    """Immutable truth table of length N = 2**n with its promise class."""

    n: int
    truth_table: np.ndarray
    kind: OracleKind

    @property
    def N(self) -> int:
        return 1 << self.n


class AmplitudePair(NamedTuple):
    mu: float
    nu: float


def _check_n(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise ValidationError(f"qubit count must be an integer, got {n!r}")
    if not 1 <= n <= MAX_QUBITS:
        raise ValidationError(f"qubit count n={n} outside supported range 1..{MAX_QUBITS}")


def classify_table(table: np.ndarray) -> OracleKind:
    """Promise class of a 0/1 table: all-equal, exactly half ones, or neither."""
    ones = int(table.sum())
    if ones == 0 or ones == table.size:
        return OracleKind.CONSTANT
    if 2 * ones == table.size:
        return OracleKind.BALANCED
    return OracleKind.INVALID


def _freeze(table: np.ndarray, n: int) -> BooleanOracle:
    table = np.ascontiguousarray(table, dtype=np.uint8)
    table.setflags(write=False)
    return BooleanOracle(n=int(n), truth_table=table, kind=classify_table(table))


def make_constant(n: int, value: int) -> BooleanOracle:
    """Constant oracle: f(x) = value for every x."""
    _check_n(n)
    if value not in (0, 1):
        raise ValidationError(f"constant value must be 0 or 1, got {value!r}")
    return _freeze(np.full(1 << n, value, dtype=np.uint8), n)


def make_balanced(n: int, seed: int) -> BooleanOracle:
    """Balanced oracle with the N/2 ones placed by a seeded PCG64 shuffle.

    The same (n, seed) always yields the same table, on any platform.
    """
    _check_n(n)
    N = 1 << n
    table = np.zeros(N, dtype=np.uint8)
    rng = np.random.Generator(np.random.PCG64(seed))
    table[rng.permutation(N)[: N // 2]] = 1
    return _freeze(table, n)


def from_truth_table(bits: Sequence[int]) -> BooleanOracle:
    """Wrap an explicit bit sequence; length must be 2**n with n >= 1."""
    table = np.asarray(bits, dtype=np.uint8)
    if table.ndim != 1:
        raise ValidationError("truth table must be one-dimensional")
    size = table.size
    if size < 2 or size & (size - 1):
        raise ValidationError(f"truth table length {size} is not a power of two >= 2")
    if np.any(table > 1):
        raise ValidationError("truth table entries must be bits (0 or 1)")
    n = size.bit_length() - 1
    _check_n(n)
    return _freeze(table, n)


def mu_nu(oracle: BooleanOracle) -> AmplitudePair:
    """Amplitude pair (mu, nu) of a table, computed in integer arithmetic.

    The signed sum over (-1)^f(x) is N - 2*popcount, so mu = |N - 2k|/N is
    a dyadic rational and converts to float exactly; it is exactly 1.0 for
    constant and 0.0 for balanced tables, with no rounding.
    """
    N = oracle.N
    ones = int(oracle.truth_table.sum())
    mu = abs(N - 2 * ones) / N
    return AmplitudePair(mu=mu, nu=1.0 - mu)


def to_string(oracle: BooleanOracle) -> str:
    """Serialize as "n=<n>:<hex>"; hex digit k holds bits 4k..4k+3, with
    bit 4k in the digit's least-significant position."""
    digits = []
    table = oracle.truth_table
    for k in range(0, oracle.N, 4):
        chunk = table[k : k + 4]
        val = sum(int(b) << i for i, b in enumerate(chunk))
        digits.append(f"{val:x}")
    return f"n={oracle.n}:{''.join(digits)}"


def from_string(text: str) -> BooleanOracle:
    """Parse the "n=<n>:<hex>" serialization produced by to_string."""
    text = text.strip()
    if not text.startswith("n=") or ":" not in text:
        raise ValidationError(f"malformed oracle string {text!r}, expected 'n=<n>:<hex>'")
    head, _, hexpart = text.partition(":")
    try:
        n = int(head[2:])
    except ValueError:
        raise ValidationError(f"malformed qubit count in oracle string {text!r}") from None
    _check_n(n)
    N = 1 << n
    ndigits = (N + 3) // 4
    if len(hexpart) != ndigits:
        raise ValidationError(
            f"oracle string for n={n} needs {ndigits} hex digits, got {len(hexpart)}"
        )
    table = np.zeros(N, dtype=np.uint8)
    for k, ch in enumerate(hexpart):
        try:
            val = int(ch, 16)
        except ValueError:
            raise ValidationError(f"invalid hex digit {ch!r} in oracle string") from None
        for i in range(4):
            bit = (val >> i) & 1
            if 4 * k + i < N:
                table[4 * k + i] = bit
            elif bit:
                raise ValidationError("oracle string sets bits beyond table length")
    return _freeze(table, n)
