"""Pure-numpy implementations of the hot kernels.

Mirrors ``_cykernels``: same algorithms, same pivoting and tie-break
rules, so either backend can serve the rest of the package.
"""

import numpy as np

PIVOT_RTOL = 1e-12


def quantize_phases(theta, bits):
    """Snap angles onto the uniform grid {2*pi*n / 2**bits}.

    Nearest grid point modulo 2*pi; exact half-step ties go to the
    smaller codebook index (index 0 wins the wraparound tie).
    """
    size = 1 << bits
    step = 2.0 * np.pi / size
    r = np.asarray(theta, dtype=np.float64) / step
    n = np.floor(r)
    frac = r - n
    n = np.where(frac > 0.5, n + 1.0, n)
    tie = frac == 0.5
    if np.any(tie):
        up = np.mod(n + 1.0, size)
        n = np.where(tie & (up < n), up, n)
    return np.mod(n, size) * step


def gauss_inverse(a):
    """Invert a square complex matrix by Gauss-Jordan elimination.

    Partial pivoting on the largest remaining |entry| per column; a pivot
    below PIVOT_RTOL * max|a| raises ValueError.  Same elimination path as
    the compiled backend.
    """
    a = np.array(a, dtype=np.complex128, order="C")
    k = a.shape[0]
    if a.shape != (k, k):
        raise ValueError("square matrix required")
    scale = np.abs(a).max() if k else 0.0
    if scale == 0.0:
        raise ValueError("zero matrix")
    inv = np.eye(k, dtype=np.complex128)
    for col in range(k):
        p = col + np.argmax(np.abs(a[col:, col]))
        if np.abs(a[p, col]) < PIVOT_RTOL * scale:
            raise ValueError("singular pivot")
        if p != col:
            a[[col, p]] = a[[p, col]]
            inv[[col, p]] = inv[[p, col]]
        piv = a[col, col]
        a[col] /= piv
        inv[col] /= piv
        for row in range(k):
            if row != col:
                f = a[row, col]
                if f != 0:
                    a[row] -= f * a[col]
                    inv[row] -= f * inv[col]
    return inv


def jacobi_eigh(a, tol=1e-13, max_sweeps=60):
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns (eigenvalues ascending, eigenvector columns).
    """
    a = np.array(a, dtype=np.complex128, order="C")
    k = a.shape[0]
    v = np.eye(k, dtype=np.complex128)
    scale = np.abs(a).max() if k else 0.0
    if k == 1 or scale == 0.0:
        return a.real.diagonal().copy(), v
    iu = np.triu_indices(k, 1)
    for _ in range(max_sweeps):
        if np.abs(a[iu]).max() <= tol * scale:
            break
        for p in range(k - 1):
            for q in range(p + 1, k):
                apq = a[p, q]
                gamma = abs(apq)
                if gamma <= tol * scale:
                    continue
                phase = apq / gamma
                tau = (a[q, q].real - a[p, p].real) / (2.0 * gamma)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # column rotation: [vp, vq] <- [c*vp - s*conj(phase)*vq, s*phase*vp + c*vq]
                vp = a[:, p].copy()
                vq = a[:, q].copy()
                a[:, p] = c * vp - s * np.conj(phase) * vq
                a[:, q] = s * phase * vp + c * vq
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * phase * rq
                a[q, :] = s * np.conj(phase) * rp + c * rq
                a[p, q] = 0.0
                a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * np.conj(phase) * vq
                v[:, q] = s * phase * vp + c * vq
    w = a.real.diagonal().copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def best_match(codebook, g):
    """Index of the codeword maximizing |c^H g| (first maximum wins)."""
    scores = np.abs(codebook.conj() @ g)
    return int(np.argmax(scores))
