# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled stepping loops; semantics mirror _py_stepper exactly.

The full-space stepper uses the spectral route for the 2x2 step unitary,
the 2D stepper the Pauli-rotation route, as in the Python fallback. The
N-vector passes are written in explicit real/imag double arithmetic so the
compiler can vectorize them.
"""

from libc.math cimport cos, sin, sqrt, hypot, fabs


cdef inline void _step_unitary_spectral(
    double s, double c, double w, double dt,
    double complex* u00, double complex* u01, double complex* u11,
) noexcept:
    """exp(-i M(s) dt) for the 2x2 block, via its eigendecomposition."""
    cdef double a = s * w * w
    cdef double b = -s * c * w
    cdef double d = 1.0 - a
    cdef double mean = 0.5 * (a + d)
    cdef double rho = hypot(0.5 * (a - d), b)
    cdef double e0 = mean - rho
    cdef double e1 = mean + rho
    cdef double v0x, v0y, nv
    if fabs(b) < 1e-300:
        if a <= d:
            v0x = 1.0; v0y = 0.0
        else:
            v0x = 0.0; v0y = 1.0
    else:
        v0x = b
        v0y = e0 - a
        nv = hypot(v0x, v0y)
        v0x = v0x / nv
        v0y = v0y / nv
    cdef double v1x = -v0y
    cdef double v1y = v0x
    cdef double complex f0 = cos(e0 * dt) - 1j * sin(e0 * dt)
    cdef double complex f1 = cos(e1 * dt) - 1j * sin(e1 * dt)
    u00[0] = f0 * v0x * v0x + f1 * v1x * v1x
    u01[0] = f0 * v0x * v0y + f1 * v1x * v1y
    u11[0] = f0 * v0y * v0y + f1 * v1y * v1y


def run_full_steps(
    double complex[::1] psi,
    const double complex[::1] u1,
    const double complex[::1] u2,
    double c,
    const double[::1] s_mid,
    double dt,
):
    """Advance the full N-vector psi in place, one step per s_mid entry."""
    cdef Py_ssize_t n = psi.shape[0]
    cdef Py_ssize_t nsteps = s_mid.shape[0]
    cdef double w = sqrt(max(0.0, 1.0 - c * c))
    cdef double phr = cos(dt)
    cdef double phi = -sin(dt)
    cdef double complex u00, u01, u11, a1c, a2c, b1, b2, d1, d2
    cdef double a1r, a1i, a2r, a2i
    cdef double d1r, d1i, d2r, d2i, xr, xi
    cdef double* pv = <double*> &psi[0]
    cdef const double* v1 = <const double*> &u1[0]
    cdef const double* v2 = <const double*> &u2[0]
    cdef Py_ssize_t k, i
    for k in range(nsteps):
        _step_unitary_spectral(s_mid[k], c, w, dt, &u00, &u01, &u11)
        a1r = 0.0; a1i = 0.0; a2r = 0.0; a2i = 0.0
        for i in range(n):
            xr = pv[2 * i]
            xi = pv[2 * i + 1]
            a1r += v1[2 * i] * xr + v1[2 * i + 1] * xi
            a1i += v1[2 * i] * xi - v1[2 * i + 1] * xr
            a2r += v2[2 * i] * xr + v2[2 * i + 1] * xi
            a2i += v2[2 * i] * xi - v2[2 * i + 1] * xr
        a1c = a1r + 1j * a1i
        a2c = a2r + 1j * a2i
        b1 = u00 * a1c + u01 * a2c
        b2 = u01 * a1c + u11 * a2c
        d1 = b1 - (phr + 1j * phi) * a1c
        d2 = b2 - (phr + 1j * phi) * a2c
        d1r = d1.real; d1i = d1.imag
        d2r = d2.real; d2i = d2.imag
        for i in range(n):
            xr = pv[2 * i]
            xi = pv[2 * i + 1]
            pv[2 * i] = (phr * xr - phi * xi) + (d1r * v1[2 * i] - d1i * v1[2 * i + 1]) \
                + (d2r * v2[2 * i] - d2i * v2[2 * i + 1])
            pv[2 * i + 1] = (phr * xi + phi * xr) + (d1r * v1[2 * i + 1] + d1i * v1[2 * i]) \
                + (d2r * v2[2 * i + 1] + d2i * v2[2 * i])


def run_2d_steps(double complex[::1] pq, double c, const double[::1] s_mid, double dt):
    """Advance the reduced coordinates (p, q) in place, one step per entry."""
    cdef Py_ssize_t nsteps = s_mid.shape[0]
    cdef double w = sqrt(max(0.0, 1.0 - c * c))
    cdef double complex base = cos(0.5 * dt) - 1j * sin(0.5 * dt)
    cdef double complex p = pq[0]
    cdef double complex q = pq[1]
    cdef double s, vz, vx, rho, phi, cp, sp, nz, nx
    cdef double complex u00, u01, u11, pn, qn
    cdef Py_ssize_t k
    for k in range(nsteps):
        s = s_mid[k]
        vz = s * w * w - 0.5
        vx = -s * c * w
        rho = hypot(vz, vx)
        if rho < 1e-300:
            p = p * base
            q = q * base
            continue
        phi = rho * dt
        cp = cos(phi)
        sp = sin(phi)
        nz = vz / rho
        nx = vx / rho
        u00 = base * (cp - 1j * sp * nz)
        u11 = base * (cp + 1j * sp * nz)
        u01 = base * (-1j * sp * nx)
        pn = u00 * p + u01 * q
        qn = u01 * p + u11 * q
        p = pn
        q = qn
    pq[0] = p
    pq[1] = q
