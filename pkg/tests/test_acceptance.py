"""Acceptance suite: one test per criterion, each printing a summary line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines alongside the pytest verdicts. Every tolerance is fixed here, not
calibrated elsewhere.
"""

import itertools
import math

import numpy as np

from adiabatic_dj import (
    OracleKind,
    Variant,
    alpha_state,
    beta_modified,
    build_local_schedule,
    dmax_linear,
    driver_norm,
    evolve_effective,
    evolve_full,
    from_truth_table,
    g_min,
    gap_analytic,
    gap_numeric,
    linear_schedule,
    make_balanced,
    make_constant,
    measure,
    minimal_time,
    overlap,
    sample,
    variant_interpolation,
)
from conftest import brute_force_kind, random_promise_oracle

INV_SQRT2 = 1.0 / math.sqrt(2.0)


def test_criterion_1_overlap_law():
    """|<alpha|beta_modified>| = 1/sqrt(2) for 200 random promise oracles."""
    rng = np.random.default_rng(2026)
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(1, 13))
        o = random_promise_oracle(rng, n)
        c = abs(overlap(alpha_state(n), beta_modified(o)))
        worst = max(worst, abs(c - INV_SQRT2))
    assert worst < 1e-12
    print(f"\n[criterion 1] PASS: 200 oracles, max |c - 1/sqrt(2)| = {worst:.3e}")


def test_criterion_2_minimum_gap():
    """Numeric g_min = 0.70710678 +- 1e-8 at s = 0.5 +- 1e-3, n <= 8; curves agree."""
    rng = np.random.default_rng(7)
    worst_gap_err = 0.0
    worst_curve_err = 0.0
    grid = np.linspace(0.0, 1.0, 1001)
    for n in range(1, 9):
        h = variant_interpolation(random_promise_oracle(rng, n), Variant.MODIFIED)
        numeric = np.empty(grid.size)
        analytic = np.empty(grid.size)
        for i, s in enumerate(grid):
            numeric[i] = gap_numeric(h, s).gap
            analytic[i] = gap_analytic(h, s).gap
        worst_curve_err = max(worst_curve_err, float(np.abs(numeric - analytic).max()))
        k = int(np.argmin(numeric))
        assert abs(grid[k] - 0.5) <= 1e-3, f"n={n}: minimum at s={grid[k]}"
        assert abs(numeric[k] - 0.70710678) <= 1e-8, f"n={n}: g_min={numeric[k]}"
        worst_gap_err = max(worst_gap_err, abs(numeric[k] - 0.70710678))
    assert worst_curve_err < 1e-10
    print(
        f"\n[criterion 2] PASS: n<=8, g_min err <= {worst_gap_err:.3e}, "
        f"curve mismatch <= {worst_curve_err:.3e}"
    )


def test_criterion_3_driver_bound():
    """||H_T - H_0|| <= 2 always; = sqrt(1/2) +- 1e-10 for modified; D_max <= 2/T."""
    rng = np.random.default_rng(12)
    checked = 0
    for n in range(1, 9):
        for variant in Variant:
            for make in (lambda n=n: make_constant(n, 1), lambda n=n: make_balanced(n, n)):
                h = variant_interpolation(make(), variant)
                norm = driver_norm(h)
                assert norm <= 2.0
                if variant is Variant.MODIFIED:
                    assert abs(norm - INV_SQRT2) < 1e-10
                checked += 1
    h_mod = variant_interpolation(make_constant(4, 0), Variant.MODIFIED)
    for T in (1.0, 40.0, 123.4):
        assert dmax_linear(h_mod, T) <= 2.0 / T + 1e-12
    assert dmax_linear(h_mod, 40.0) <= 0.05
    print(f"\n[criterion 3] PASS: {checked} constructions bounded; modified norm = 1/sqrt(2)")


def test_criterion_4_constant_time_claim():
    """T = 40 (eps = 0.1) gives fidelity >= 0.99 for n in 1..10, both kinds;
    minimal_time(0.99) is n-independent to well under 10 percent."""
    sch = linear_schedule(40.0)
    worst_fid = 1.0
    for n in range(1, 11):
        for o in (make_constant(n, 0), make_balanced(n, seed=n)):
            h = variant_interpolation(o, Variant.MODIFIED)
            fid = evolve_full(h, sch).fidelity
            assert fid >= 0.99, f"n={n} kind={o.kind}: fidelity {fid}"
            worst_fid = min(worst_fid, fid)
    stars = []
    for n in range(2, 11):
        h = variant_interpolation(make_constant(n, 0), Variant.MODIFIED)
        stars.append(minimal_time(h, 0.99, tol=1e-3, t_max=60.0))
    spread = max(stars) / min(stars) - 1.0
    assert spread < 0.10
    print(
        f"\n[criterion 4] PASS: min fidelity {worst_fid:.6f} at T=40; "
        f"T* in [{min(stars):.4f}, {max(stars):.4f}], spread {spread:.2e}"
    )


def test_criterion_5_original_variant_scaling():
    """Original beta, constant oracles: g_min = 1/sqrt(N) to 1e-10 and the
    local-adiabatic runtime doubles with each n += 2, within 15 percent."""
    times = {}
    for n in range(2, 11):
        h = variant_interpolation(make_constant(n, 0), Variant.ORIGINAL)
        assert abs(g_min(h) - 1.0 / math.sqrt(2**n)) < 1e-10
        times[n] = build_local_schedule(h, 0.1).T
    ratios = [times[n + 2] / times[n] for n in range(2, 9)]
    assert all(abs(r / 2.0 - 1.0) < 0.15 for r in ratios)
    print(
        f"\n[criterion 5] PASS: g_min = 1/sqrt(N) for n=2..10; "
        f"T ratios {['%.3f' % r for r in ratios]}"
    )


def test_criterion_6_engine_equivalence():
    """Full-space vs effective-2D fidelity within 1e-8 on a 30-config grid."""
    grid = itertools.product(
        (2, 4, 6), ("constant", "balanced"), Variant, (1.0, 10.0, 40.0)
    )
    worst = 0.0
    count = 0
    for n, kind, variant, T in itertools.islice(grid, 30):
        o = make_constant(n, 0) if kind == "constant" else make_balanced(n, seed=count)
        h = variant_interpolation(o, variant)
        sch = linear_schedule(T)
        diff = abs(evolve_full(h, sch).fidelity - evolve_effective(h, sch).fidelity)
        worst = max(worst, diff)
        count += 1
    assert count == 30
    assert worst < 1e-8
    print(f"\n[criterion 6] PASS: 30 configs, max engine disagreement {worst:.3e}")


def test_criterion_7_classification():
    """At T = 4/eps (eps = 0.1), 1e4 shots: per-shot misclassification within
    0.01 + 3 sigma, and the majority verdict is right in 100/100 trials."""
    shots = 10**4
    eps_sq = 0.01
    tolerance = eps_sq + 3.0 * math.sqrt(eps_sq * (1.0 - eps_sq) / shots)
    sch = linear_schedule(40.0)
    trials = 0
    worst_rate = 0.0
    for o in (make_constant(4, 0), make_balanced(4, seed=99)):
        h = variant_interpolation(o, Variant.MODIFIED)
        final = evolve_effective(h, sch).final_state
        wrong_parity = 1 if o.kind is OracleKind.CONSTANT else 0
        for seed in range(50):
            hist = sample(final, shots, seed=seed)
            wrong = sum(cnt for idx, cnt in hist.items() if idx % 2 == wrong_parity)
            rate = wrong / shots
            worst_rate = max(worst_rate, rate)
            assert rate <= tolerance, f"seed={seed}: misclassification rate {rate}"
            record = measure(final, shots, seed, Variant.MODIFIED)
            assert record.verdict is o.kind
            trials += 1
    assert trials == 100
    print(
        f"\n[criterion 7] PASS: 100/100 verdicts correct; worst per-shot "
        f"rate {worst_rate:.5f} <= {tolerance:.5f}"
    )


def test_criterion_8_exhaustive_n2_classification():
    """All 16 two-qubit tables classified in agreement with direct counting."""
    agree = 0
    for bits in itertools.product((0, 1), repeat=4):
        o = from_truth_table(bits)
        assert o.kind is brute_force_kind(bits)
        agree += 1
    assert agree == 16
    print("\n[criterion 8] PASS: 16/16 tables match the brute-force counter")
