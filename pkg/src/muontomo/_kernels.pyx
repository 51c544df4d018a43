# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: sinogram sample generation and ray clipping.

Mirrors kernels/pure.py; both backends must agree to roundoff.
"""
import numpy as np

cimport numpy as cnp
from libc.math cimport atan2, floor, fabs, hypot, INFINITY

cnp.import_array()

cdef double HALF_PI = np.pi / 2
cdef double PI = np.pi

BACKEND = "cython"


cdef inline void _fold(double* phi, double* xi) nogil:
    cdef double k = floor((phi[0] + HALF_PI) / PI)
    phi[0] = phi[0] - k * PI
    if fabs(k) % 2.0 == 1.0:
        xi[0] = -xi[0]
    if phi[0] <= -HALF_PI:
        phi[0] += PI
        xi[0] = -xi[0]


def normalize_line(phi, xi):
    """Fold (phi, xi) into phi in (-pi/2, pi/2] under (phi+pi, -xi) ~ (phi, xi)."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] p = np.ascontiguousarray(
        np.atleast_1d(np.asarray(phi, dtype=np.float64)).ravel())
    cdef cnp.ndarray[cnp.float64_t, ndim=1] x = np.ascontiguousarray(
        np.atleast_1d(np.asarray(xi, dtype=np.float64)).ravel())
    cdef Py_ssize_t i, n = p.shape[0]
    cdef double pv, xv
    out_p = np.empty(n)
    out_x = np.empty(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] op = out_p
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ox = out_x
    for i in range(n):
        pv = p[i]
        xv = x[i]
        _fold(&pv, &xv)
        op[i] = pv
        ox[i] = xv
    if np.isscalar(phi) or np.asarray(phi).ndim == 0:
        return float(out_p[0]), float(out_x[0])
    return out_p, out_x


def sinogram_row(cnp.ndarray[cnp.float64_t, ndim=2] front_xy,
                 cnp.ndarray[cnp.float64_t, ndim=2] back_xy):
    """Sinogram points of every front/back column pair in one detector row."""
    cdef Py_ssize_t nf = front_xy.shape[0]
    cdef Py_ssize_t nb = back_xy.shape[0]
    phi_out = np.empty(nf * nb)
    xi_out = np.empty(nf * nb)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] po = phi_out
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xo = xi_out
    cdef Py_ssize_t a, b, k = 0
    cdef double fx, fy, dx, dy, phi, xi
    for a in range(nf):
        fx = front_xy[a, 0]
        fy = front_xy[a, 1]
        for b in range(nb):
            dx = fx - back_xy[b, 0]
            dy = fy - back_xy[b, 1]
            phi = atan2(dy, dx) - HALF_PI
            # x cos(phi) + y sin(phi) via the cross product with the line
            # direction: identical value, no second round of trig
            xi = (fx * dy - fy * dx) / hypot(dx, dy)
            _fold(&phi, &xi)
            po[k] = phi
            xo[k] = xi
            k += 1
    return phi_out, xi_out


def path_lengths(cnp.ndarray[cnp.float64_t, ndim=2] origins,
                 cnp.ndarray[cnp.float64_t, ndim=2] directions,
                 double base_side, double height):
    """Clip forward rays against the 5 pyramid half-spaces; lengths in m."""
    cdef double half = base_side / 2
    cdef double[5][3] normals
    cdef double[5] offsets
    normals[0][0] = 0.0;     normals[0][1] = 0.0;     normals[0][2] = -1.0
    normals[1][0] = height;  normals[1][1] = 0.0;     normals[1][2] = half
    normals[2][0] = -height; normals[2][1] = 0.0;     normals[2][2] = half
    normals[3][0] = 0.0;     normals[3][1] = height;  normals[3][2] = half
    normals[4][0] = 0.0;     normals[4][1] = -height; normals[4][2] = half
    offsets[0] = 0.0
    offsets[1] = offsets[2] = offsets[3] = offsets[4] = half * height

    cdef Py_ssize_t n = origins.shape[0]
    out = np.empty(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] lengths = out
    cdef Py_ssize_t i, c
    cdef double denom, num, t_lo, t_hi, length
    cdef bint blocked
    for i in range(n):
        t_lo = 0.0
        t_hi = INFINITY
        blocked = False
        for c in range(5):
            denom = (directions[i, 0] * normals[c][0]
                     + directions[i, 1] * normals[c][1]
                     + directions[i, 2] * normals[c][2])
            num = offsets[c] - (origins[i, 0] * normals[c][0]
                                + origins[i, 1] * normals[c][1]
                                + origins[i, 2] * normals[c][2])
            if denom > 0:
                if num / denom < t_hi:
                    t_hi = num / denom
            elif denom < 0:
                if num / denom > t_lo:
                    t_lo = num / denom
            elif num < 0:
                blocked = True
        length = t_hi - t_lo
        if blocked or length < 0:
            length = 0.0
        lengths[i] = length
    return out
