"""The interpolating Hamiltonian H(s) = (1-s)(I - |a><a|) + s(I - |b><b|).

Everything nontrivial about H(s) happens inside span{|a>, |b>}: the rest
of the space sits at energy 1 and never mixes in. TwoLevelReduction
captures that 2D block in the orthonormal basis {u1 = a, u2 = Gram-Schmidt
remainder of b}, where, with c = |<a|b>| and w = sqrt(1 - c^2),

    M(s) = [[ s w^2,   -s c w ],
            [ -s c w,  1 - s w^2 ]]

whose eigenvalues are (1 -+ g(s))/2 with gap g(s) = sqrt(1 - 4 s (1-s) w^2).
The minimum gap over s in [0,1] is g(1/2) = c.

Dense materialization exists only to verify the closed forms against a
direct eigensolver, so its dimension is capped.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import (
    DegenerateInterpolationError,
    DimensionMismatchError,
    EigensolverError,
    NumericalError,
    ValidationError,
)
from .oracle import BooleanOracle
from .states import StateVector, Variant, alpha_state, beta_state, overlap

DENSE_MAX_DIM = 4096
# below this distance from c = 0 or c = 1 the coupled pair is treated as degenerate
DEGENERACY_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class ProjectorInterpolation:
    """The pair of unit states defining H(s), with the cached overlap
    magnitude c = |<alpha|beta>| that controls the whole spectrum."""

    alpha: StateVector
    beta: StateVector
    c: float

    def __post_init__(self):
        if self.alpha.dim != self.beta.dim:
            raise DimensionMismatchError(
                f"alpha has dim {self.alpha.dim}, beta has dim {self.beta.dim}"
            )
        expected = abs(overlap(self.alpha, self.beta))
        if abs(self.c - expected) > 1e-12:
            raise ValidationError(f"cached overlap {self.c} != |<alpha|beta>| = {expected}")

    @property
    def dim(self) -> int:
        return self.alpha.dim


def from_states(alpha: StateVector, beta: StateVector) -> ProjectorInterpolation:
    return ProjectorInterpolation(alpha=alpha, beta=beta, c=abs(overlap(alpha, beta)))


def variant_interpolation(
    oracle: BooleanOracle, variant: Variant, renormalize: bool = False
) -> ProjectorInterpolation:
    """Interpolation from the uniform start state to the variant's target."""
    return from_states(alpha_state(oracle.n), beta_state(oracle, variant, renormalize))


@dataclass(frozen=True)
class SpectrumPoint:
    """Two lowest energies of H(s) at one interpolation parameter."""

    s: float
    e0: float
    e1: float

    @property
    def gap(self) -> float:
        return self.e1 - self.e0


def gap_values(c: float, s: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """Closed-form gap g(s) = sqrt(1 - 4 s (1-s) (1-c^2)), vectorized over s."""
    disc = 1.0 - 4.0 * np.asarray(s) * (1.0 - np.asarray(s)) * (1.0 - c * c)
    out = np.sqrt(np.maximum(disc, 0.0))
    return float(out) if out.ndim == 0 else out


def _sym22_eigensystem(a: float, b: float, d: float):
    """Eigen-decomposition of the real symmetric matrix [[a, b], [b, d]].

    Returns (e0, e1, v0, v1) with e0 <= e1 and real unit eigenvectors.
    """
    mean = 0.5 * (a + d)
    rho = np.hypot(0.5 * (a - d), b)
    e0, e1 = mean - rho, mean + rho
    if abs(b) < 1e-300:
        if a <= d:
            return e0, e1, np.array([1.0, 0.0]), np.array([0.0, 1.0])
        return e0, e1, np.array([0.0, 1.0]), np.array([1.0, 0.0])
    v0 = np.array([b, e0 - a])
    v0 /= np.hypot(v0[0], v0[1])
    v1 = np.array([-v0[1], v0[0]])
    return e0, e1, v0, v1


class TwoLevelReduction:
    """The invariant 2D subspace of an interpolation, with H(s)'s block.

    beta is phase-rotated so <u1|beta> is real and nonnegative; that leaves
    both projectors (hence H) unchanged and makes the block real symmetric.
    When c is within DEGENERACY_TOL of 1 the subspace collapses to the ray
    through alpha and `degenerate` is set; u2 is then None.
    """

    def __init__(self, h: ProjectorInterpolation):
        a = h.alpha.amplitudes
        b = h.beta.amplitudes
        self.c = h.c
        self.w = float(np.sqrt(max(0.0, 1.0 - self.c * self.c)))
        self.u1 = a
        self.degenerate = self.c >= 1.0 - DEGENERACY_TOL
        if self.degenerate:
            self.u2 = None
            return
        om = np.vdot(a, b)
        b_aligned = b * (om.conjugate() / abs(om)) if abs(om) > 0 else b
        residual = b_aligned - self.c * a
        self.u2 = residual / np.linalg.norm(residual)

    def block(self, s: float) -> tuple[float, float, float]:
        """Entries (m11, m12, m22) of the real symmetric 2x2 block of H(s)."""
        a = s * self.w * self.w
        return a, -s * self.c * self.w, 1.0 - a

    def eigensystem(self, s: float):
        return _sym22_eigensystem(*self.block(s))

    def driver_block(self) -> np.ndarray:
        """2x2 block of dH/ds = |a><a| - |b><b| in the {u1, u2} basis."""
        cw = self.c * self.w
        ww = self.w * self.w
        return np.array([[ww, -cw], [-cw, -ww]])

    def coupling(self, s: float) -> float:
        """|<upper level| dH/ds |lower level>| inside the 2D block."""
        _, _, v0, v1 = self.eigensystem(s)
        return float(abs(v1 @ self.driver_block() @ v0))

    def project(self, psi: np.ndarray) -> tuple[complex, complex]:
        a1 = complex(np.vdot(self.u1, psi))
        a2 = complex(np.vdot(self.u2, psi)) if self.u2 is not None else 0.0j
        return a1, a2

    def lift(self, p: complex, q: complex) -> np.ndarray:
        out = p * self.u1
        if self.u2 is not None:
            out = out + q * self.u2
        return out


def _check_s(s: float) -> None:
    if not 0.0 <= s <= 1.0:
        raise ValidationError(f"interpolation parameter s={s} outside [0, 1]")


def apply(h: ProjectorInterpolation, s: float, psi: StateVector) -> StateVector:
    """H(s)|psi> without materializing the matrix: two inner products and
    two rank-1 updates, O(N). The result is generally not unit-norm."""
    _check_s(s)
    if psi.dim != h.dim:
        raise DimensionMismatchError(f"state dim {psi.dim} != interpolation dim {h.dim}")
    a = h.alpha.amplitudes
    b = h.beta.amplitudes
    v = psi.amplitudes
    out = v - (1.0 - s) * np.vdot(a, v) * a - s * np.vdot(b, v) * b
    return StateVector(out)


def dense(h: ProjectorInterpolation, s: float) -> np.ndarray:
    """Explicit N x N Hermitian matrix of H(s), for verification only."""
    _check_s(s)
    N = h.dim
    if N > DENSE_MAX_DIM:
        raise ValidationError(f"dense materialization capped at N <= {DENSE_MAX_DIM}, got N={N}")
    a = h.alpha.amplitudes
    b = h.beta.amplitudes
    return (
        np.eye(N, dtype=np.complex128)
        - (1.0 - s) * np.outer(a, a.conj())
        - s * np.outer(b, b.conj())
    )


def gap_analytic(h: ProjectorInterpolation, s: float) -> SpectrumPoint:
    """Closed-form coupled-pair energies (1 -+ g(s))/2."""
    _check_s(s)
    g = gap_values(h.c, s)
    return SpectrumPoint(s=s, e0=0.5 * (1.0 - g), e1=0.5 * (1.0 + g))


def gap_numeric(h: ProjectorInterpolation, s: float) -> SpectrumPoint:
    """Two smallest eigenvalues of the dense matrix, from the eigensolver."""
    m = dense(h, s)
    try:
        w = np.linalg.eigvalsh(m)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(f"eigensolver failed at s={s}: {exc}") from exc
    return SpectrumPoint(s=s, e0=float(w[0]), e1=float(w[1]))


def g_min(h: ProjectorInterpolation) -> float:
    """Minimum of the closed-form gap over s in [0, 1].

    g(s)^2 = 1 - 4 s (1-s) (1-c^2) is minimized exactly at s = 1/2 where it
    equals c^2, so the minimum gap is c itself.
    """
    return h.c


def _require_coupled_pair(h: ProjectorInterpolation) -> TwoLevelReduction:
    if h.c <= DEGENERACY_TOL or h.c >= 1.0 - DEGENERACY_TOL:
        raise DegenerateInterpolationError(
            f"|<alpha|beta>| = {h.c}; the coupled pair is degenerate at c in {{0, 1}}"
        )
    return TwoLevelReduction(h)


def coupling_element(h: ProjectorInterpolation, s: float) -> float:
    """Magnitude of the dH/ds matrix element between the two coupled levels."""
    _check_s(s)
    return _require_coupled_pair(h).coupling(s)


def coupled_eigenvectors(h: ProjectorInterpolation, s: float) -> tuple[StateVector, StateVector]:
    """Ground and first excited eigenvectors of H(s), lifted to full space."""
    _check_s(s)
    tl = _require_coupled_pair(h)
    _, _, v0, v1 = tl.eigensystem(s)
    ground = tl.lift(complex(v0[0]), complex(v0[1]))
    excited = tl.lift(complex(v1[0]), complex(v1[1]))
    return (
        StateVector(ground / np.linalg.norm(ground)),
        StateVector(excited / np.linalg.norm(excited)),
    )


def dmax_linear(h: ProjectorInterpolation, T: float, grid_points: int = 1001) -> float:
    """Largest |<dH/dt>| between the coupled levels under s = t/T.

    dH/dt = (H_T - H_0)/T for the linear schedule, so this is the grid
    maximum of the coupling element divided by T. Always <= 2/T because
    ||H_T - H_0|| <= 2; that bound is re-checked here.
    """
    if T <= 0:
        raise ValidationError(f"need T > 0, got {T}")
    tl = _require_coupled_pair(h)
    peak = max(tl.coupling(s) for s in np.linspace(0.0, 1.0, grid_points))
    value = peak / T
    if value > 2.0 / T + 1e-12:
        raise NumericalError(f"coupling maximum {peak} exceeds the operator-norm bound 2")
    return value


def driver_norm(h: ProjectorInterpolation) -> float:
    """Spectral norm of H_T - H_0 = |alpha><alpha| - |beta><beta|.

    The driver vanishes outside the 2D subspace, where its block has
    eigenvalues +-sqrt(1 - c^2); degenerate (c = 1) interpolations have a
    zero driver. The result never exceeds 2.
    """
    tl = TwoLevelReduction(h)
    if tl.degenerate:
        return 0.0
    blk = tl.driver_block()
    e0, e1, _, _ = _sym22_eigensystem(blk[0, 0], blk[0, 1], blk[1, 1])
    value = max(abs(e0), abs(e1))
    if value > 2.0:
        raise NumericalError(f"driver norm {value} exceeds 2")
    return value
