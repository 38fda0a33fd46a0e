"""Start/target state construction and overlap laws."""

import math

import numpy as np
import pytest

from adiabatic_dj import (
    DimensionMismatchError,
    OracleKind,
    PromiseViolationError,
    StateVector,
    Variant,
    alpha_state,
    beta_modified,
    beta_original,
    beta_state,
    from_truth_table,
    make_balanced,
    make_constant,
    overlap,
)
from adiabatic_dj.states import from_pairs, to_pairs
from conftest import random_promise_oracle

INV_SQRT2 = 1.0 / math.sqrt(2.0)


def test_alpha_examples():
    np.testing.assert_allclose(alpha_state(1).amplitudes, [INV_SQRT2, INV_SQRT2], atol=1e-15)
    np.testing.assert_allclose(alpha_state(2).amplitudes, [0.5, 0.5, 0.5, 0.5], atol=1e-15)


def test_alpha_unit_norm_all_n():
    for n in range(1, 13):
        assert abs(alpha_state(n).norm() - 1.0) < 1e-12


def test_beta_original_constant_is_zero_ket():
    b = beta_original(make_constant(2, 0))
    np.testing.assert_allclose(b.amplitudes, [1, 0, 0, 0], atol=1e-15)


def test_beta_original_balanced_uniform_tail():
    b = beta_original(make_balanced(2, seed=1))
    np.testing.assert_allclose(b.amplitudes, [0] + [1 / math.sqrt(3)] * 3, atol=1e-15)


def test_beta_original_overlap_laws():
    # constant: overlap 1/sqrt(N); balanced: sqrt((N-1)/N)
    assert abs(overlap(alpha_state(2), beta_original(make_constant(2, 0))) - 0.5) < 1e-12
    for n in range(1, 13):
        N = 2**n
        c_const = abs(overlap(alpha_state(n), beta_original(make_constant(n, 1))))
        assert abs(c_const - 1 / math.sqrt(N)) < 1e-12
        c_bal = abs(overlap(alpha_state(n), beta_original(make_balanced(n, seed=n))))
        assert abs(c_bal - math.sqrt((N - 1) / N)) < 1e-12


def test_beta_modified_examples():
    bc = beta_modified(make_constant(2, 0))
    np.testing.assert_allclose(bc.amplitudes, [INV_SQRT2, 0, INV_SQRT2, 0], atol=1e-15)
    bb = beta_modified(make_balanced(2, seed=0))
    np.testing.assert_allclose(bb.amplitudes, [0, INV_SQRT2, 0, INV_SQRT2], atol=1e-15)


def test_beta_modified_overlap_is_inv_sqrt2():
    rng = np.random.default_rng(0)
    for n in range(1, 13):
        for _ in range(4):
            o = random_promise_oracle(rng, n)
            c = abs(overlap(alpha_state(n), beta_modified(o)))
            assert abs(c - INV_SQRT2) < 1e-12


def test_beta_modified_support_parity_matches_kind():
    rng = np.random.default_rng(3)
    for n in range(1, 9):
        o = random_promise_oracle(rng, n)
        amps = beta_modified(o).amplitudes
        even_weight = np.abs(amps[0::2]).sum()
        odd_weight = np.abs(amps[1::2]).sum()
        if o.kind is OracleKind.CONSTANT:
            assert even_weight > 0 and odd_weight == 0
        else:
            assert odd_weight > 0 and even_weight == 0


def test_all_factory_states_unit_norm():
    rng = np.random.default_rng(11)
    for n in range(1, 11):
        o = random_promise_oracle(rng, n)
        for state in (alpha_state(n), beta_original(o), beta_modified(o)):
            assert abs(state.norm() - 1.0) < 1e-12


def test_overlap_self_and_conjugate_symmetry():
    rng = np.random.default_rng(5)
    raw = rng.normal(size=8) + 1j * rng.normal(size=8)
    v = StateVector(raw / np.linalg.norm(raw))
    assert abs(overlap(v, v) - 1.0) < 1e-12
    raw2 = rng.normal(size=8) + 1j * rng.normal(size=8)
    u = StateVector(raw2 / np.linalg.norm(raw2))
    assert abs(overlap(u, v) - np.conj(overlap(v, u))) < 1e-14


def test_overlap_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        overlap(alpha_state(1), alpha_state(2))


def test_promise_violation_raises():
    invalid = from_truth_table([1, 0, 0, 0])
    with pytest.raises(PromiseViolationError):
        beta_original(invalid)
    with pytest.raises(PromiseViolationError):
        beta_modified(invalid)


def test_promise_violation_renormalize_escape_hatch():
    invalid = from_truth_table([1, 0, 0, 0])
    for builder in (beta_original, beta_modified):
        st = builder(invalid, renormalize=True)
        assert st.renormalized
        assert abs(st.norm() - 1.0) < 1e-12


def test_beta_state_dispatch():
    o = make_constant(3, 0)
    assert np.array_equal(
        beta_state(o, Variant.ORIGINAL).amplitudes, beta_original(o).amplitudes
    )
    assert np.array_equal(
        beta_state(o, Variant.MODIFIED).amplitudes, beta_modified(o).amplitudes
    )


def test_json_pairs_round_trip():
    rng = np.random.default_rng(9)
    raw = rng.normal(size=4) + 1j * rng.normal(size=4)
    v = StateVector(raw / np.linalg.norm(raw))
    w = from_pairs(to_pairs(v))
    np.testing.assert_allclose(w.amplitudes, v.amplitudes, atol=0, rtol=0)


def test_amplitudes_immutable():
    s = alpha_state(2)
    with pytest.raises(ValueError):
        s.amplitudes[0] = 1.0
