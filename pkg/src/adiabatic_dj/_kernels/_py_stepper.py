"""Pure-Python/numpy stepping loops, the fallback for the compiled core.

Both functions advance a state through len(s_mid) piecewise-constant steps
of the interpolated Hamiltonian; each step applies the exact unitary
exp(-i H(s_k) dt). The full-space version builds the 2x2 step unitary by
explicit symmetric eigendecomposition and applies it through projections
onto {u1, u2}, phasing the orthogonal complement by exp(-i dt). The 2D
version uses the Pauli-rotation closed form on reduced coordinates. Keeping
the two derivations separate lets the engines cross-check each other.
"""

from math import cos, hypot, sin, sqrt

import numpy as np


def _step_unitary_spectral(s: float, c: float, w: float, dt: float):
    """exp(-i M(s) dt) for the 2x2 block, via its eigendecomposition."""
    a = s * w * w
    b = -s * c * w
    d = 1.0 - a
    mean = 0.5 * (a + d)
    rho = hypot(0.5 * (a - d), b)
    e0, e1 = mean - rho, mean + rho
    if abs(b) < 1e-300:
        if a <= d:
            v0x, v0y = 1.0, 0.0
        else:
            v0x, v0y = 0.0, 1.0
    else:
        v0x, v0y = b, e0 - a
        nv = hypot(v0x, v0y)
        v0x, v0y = v0x / nv, v0y / nv
    v1x, v1y = -v0y, v0x
    f0 = complex(cos(e0 * dt), -sin(e0 * dt))
    f1 = complex(cos(e1 * dt), -sin(e1 * dt))
    u00 = f0 * v0x * v0x + f1 * v1x * v1x
    u01 = f0 * v0x * v0y + f1 * v1x * v1y
    u11 = f0 * v0y * v0y + f1 * v1y * v1y
    return u00, u01, u11


def run_full_steps(
    psi: np.ndarray,
    u1: np.ndarray,
    u2: np.ndarray,
    c: float,
    s_mid: np.ndarray,
    dt: float,
) -> None:
    """Advance the full N-vector psi in place, one step per s_mid entry."""
    w = sqrt(max(0.0, 1.0 - c * c))
    ph = complex(cos(dt), -sin(dt))
    for s in s_mid:
        u00, u01, u11 = _step_unitary_spectral(float(s), c, w, dt)
        a1 = np.vdot(u1, psi)
        a2 = np.vdot(u2, psi)
        b1 = u00 * a1 + u01 * a2
        b2 = u01 * a1 + u11 * a2
        psi *= ph
        psi += (b1 - ph * a1) * u1
        psi += (b2 - ph * a2) * u2


def run_2d_steps(pq: np.ndarray, c: float, s_mid: np.ndarray, dt: float) -> None:
    """Advance the reduced coordinates (p, q) in place, one step per entry.

    M(s) = I/2 + vz*sigma_z + vx*sigma_x with vz = s w^2 - 1/2, vx = -s c w,
    so the step unitary is exp(-i dt/2) (cos(phi) I - i sin(phi) n.sigma)
    with phi = |v| dt.
    """
    w = sqrt(max(0.0, 1.0 - c * c))
    base = complex(cos(0.5 * dt), -sin(0.5 * dt))
    p = complex(pq[0])
    q = complex(pq[1])
    for s in s_mid:
        vz = float(s) * w * w - 0.5
        vx = -float(s) * c * w
        rho = hypot(vz, vx)
        if rho < 1e-300:
            p *= base
            q *= base
            continue
        phi = rho * dt
        cp, sp = cos(phi), sin(phi)
        nz, nx = vz / rho, vx / rho
        u00 = base * complex(cp, -sp * nz)
        u11 = base * complex(cp, sp * nz)
        u01 = base * complex(0.0, -sp * nx)
        p, q = u00 * p + u01 * q, u01 * p + u11 * q
    pq[0] = p
    pq[1] = q
