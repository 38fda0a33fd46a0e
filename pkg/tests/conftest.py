import numpy as np

from adiabatic_dj import OracleKind, make_balanced, make_constant


def random_promise_oracle(rng: np.random.Generator, n: int):
    """Constant or balanced oracle, chosen and parameterized by rng."""
    if rng.random() < 0.5:
        return make_constant(n, int(rng.integers(2)))
    return make_balanced(n, int(rng.integers(2**31)))


def brute_force_kind(table) -> OracleKind:
    """Classification by direct counting, independent of the package logic."""
    ones = sum(int(b) for b in table)
    if ones == 0 or ones == len(table):
        return OracleKind.CONSTANT
    if ones * 2 == len(table):
        return OracleKind.BALANCED
    return OracleKind.INVALID
