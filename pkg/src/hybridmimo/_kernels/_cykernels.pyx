# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot kernels.

Same algorithms and tie-break rules as ``_pykernels``; plain loops over
typed memoryviews, tuned for the many-small-matrices workload of the
Monte-Carlo engine.
"""

import numpy as np

from libc.math cimport M_PI, ceil, fabs, floor, fmod, sqrt

DEF PIVOT_RTOL = 1e-12


cdef inline double _cabs(double complex z) noexcept:
    return sqrt(z.real * z.real + z.imag * z.imag)


def quantize_phases(theta, int bits):
    """Snap angles onto the uniform grid {2*pi*n / 2**bits}.

    Nearest grid point modulo 2*pi; exact half-step ties go to the
    smaller codebook index (index 0 wins the wraparound tie).
    """
    cdef long size = 1 << bits
    cdef double step = 2.0 * M_PI / size
    arr = np.ascontiguousarray(np.asarray(theta, dtype=np.float64))
    out = np.empty(arr.shape, dtype=np.float64)
    cdef double[::1] src = arr.reshape(-1)
    cdef double[::1] dst = out.reshape(-1)
    cdef Py_ssize_t i, n = src.shape[0]
    cdef double r, nn, frac, up
    for i in range(n):
        r = src[i] / step
        nn = floor(r)
        frac = r - nn
        if frac > 0.5:
            nn += 1.0
        elif frac == 0.5:
            up = fmod(nn + 1.0, <double> size)
            if up < 0:
                up += size
            if up < nn:
                nn = up
        nn = fmod(nn, <double> size)
        if nn < 0:
            nn += size
        dst[i] = nn * step
    return out


def gauss_inverse(a):
    """Invert a square complex matrix by Gauss-Jordan elimination.

    Partial pivoting on the largest remaining |entry| per column; a pivot
    below PIVOT_RTOL * max|a| raises ValueError.
    """
    am = np.array(a, dtype=np.complex128, order="C")
    cdef Py_ssize_t k = am.shape[0]
    if am.ndim != 2 or am.shape[1] != k:
        raise ValueError("square matrix required")
    inv_m = np.eye(k, dtype=np.complex128)
    cdef double complex[:, ::1] m = am
    cdef double complex[:, ::1] inv = inv_m
    cdef Py_ssize_t col, row, j, p
    cdef double scale = 0.0, mag
    cdef double complex piv, f, tmp
    for row in range(k):
        for j in range(k):
            mag = _cabs(m[row, j])
            if mag > scale:
                scale = mag
    if scale == 0.0:
        raise ValueError("zero matrix")
    for col in range(k):
        p = col
        mag = _cabs(m[col, col])
        for row in range(col + 1, k):
            if _cabs(m[row, col]) > mag:
                mag = _cabs(m[row, col])
                p = row
        if mag < PIVOT_RTOL * scale:
            raise ValueError("singular pivot")
        if p != col:
            for j in range(k):
                tmp = m[col, j]
                m[col, j] = m[p, j]
                m[p, j] = tmp
                tmp = inv[col, j]
                inv[col, j] = inv[p, j]
                inv[p, j] = tmp
        piv = m[col, col]
        for j in range(k):
            m[col, j] = m[col, j] / piv
            inv[col, j] = inv[col, j] / piv
        for row in range(k):
            if row != col:
                f = m[row, col]
                if f != 0:
                    for j in range(k):
                        m[row, j] = m[row, j] - f * m[col, j]
                        inv[row, j] = inv[row, j] - f * inv[col, j]
    return inv_m


def jacobi_eigh(a, double tol=1e-13, int max_sweeps=60):
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns (eigenvalues ascending, eigenvector columns).
    """
    am = np.array(a, dtype=np.complex128, order="C")
    cdef Py_ssize_t k = am.shape[0]
    vm = np.eye(k, dtype=np.complex128)
    cdef double complex[:, ::1] m = am
    cdef double complex[:, ::1] v = vm
    cdef Py_ssize_t p, q, i, sweep
    cdef double scale = 0.0, off, gamma, tau, t, c, s, mag
    cdef double complex apq, phase, cphase, xp, xq
    for p in range(k):
        for q in range(k):
            mag = _cabs(m[p, q])
            if mag > scale:
                scale = mag
    if k <= 1 or scale == 0.0:
        w0 = np.real(np.diagonal(am)).copy()
        return w0, vm
    for sweep in range(max_sweeps):
        off = 0.0
        for p in range(k - 1):
            for q in range(p + 1, k):
                mag = _cabs(m[p, q])
                if mag > off:
                    off = mag
        if off <= tol * scale:
            break
        for p in range(k - 1):
            for q in range(p + 1, k):
                apq = m[p, q]
                gamma = _cabs(apq)
                if gamma <= tol * scale:
                    continue
                phase = apq / gamma
                cphase = phase.conjugate()
                tau = (m[q, q].real - m[p, p].real) / (2.0 * gamma)
                t = (1.0 if tau >= 0 else -1.0) / (fabs(tau) + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                for i in range(k):
                    xp = m[i, p]
                    xq = m[i, q]
                    m[i, p] = c * xp - s * cphase * xq
                    m[i, q] = s * phase * xp + c * xq
                for i in range(k):
                    xp = m[p, i]
                    xq = m[q, i]
                    m[p, i] = c * xp - s * phase * xq
                    m[q, i] = s * cphase * xp + c * xq
                m[p, q] = 0.0
                m[q, p] = 0.0
                for i in range(k):
                    xp = v[i, p]
                    xq = v[i, q]
                    v[i, p] = c * xp - s * cphase * xq
                    v[i, q] = s * phase * xp + c * xq
    w = np.real(np.diagonal(am)).copy()
    order = np.argsort(w, kind="stable")
    return w[order], vm[:, order]


def best_match(codebook, g):
    """Index of the codeword maximizing |c^H g| (first maximum wins)."""
    cb = np.ascontiguousarray(codebook, dtype=np.complex128)
    gv = np.ascontiguousarray(g, dtype=np.complex128)
    cdef double complex[:, ::1] c = cb
    cdef double complex[::1] x = gv
    cdef Py_ssize_t n = c.shape[0], k = c.shape[1], i, j, best = 0
    cdef double score, best_score = -1.0
    cdef double complex acc
    for i in range(n):
        acc = 0.0
        for j in range(k):
            acc = acc + c[i, j].conjugate() * x[j]
        score = acc.real * acc.real + acc.imag * acc.imag
        if score > best_score:
            best_score = score
            best = i
    return best
