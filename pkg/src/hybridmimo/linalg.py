"""Small dense complex linear algebra used by the precoding pipeline.

Everything here operates on K x K matrices (K <= 64), so the kernels are
plain Gauss-Jordan elimination and cyclic Jacobi rotations rather than
blocked LAPACK calls.
"""

import numpy as np

from . import _kernels
from .errors import DimensionMismatch, NegativeEigenvalue, NotHermitian, SingularMatrix

COND_LIMIT = 1e12
HERMITIAN_ATOL = 1e-10
EIG_REJECT = -1e-6


def _as_square(a, name):
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DimensionMismatch(f"{name} contains non-finite entries")
    return a


def gram_inverse(g):
    """Inverse of the Gram matrix G^H G.

    Accepts any tall or square G (the Gram matrix is square either way).
    Raises SingularMatrix when elimination hits a negligible pivot or the
    1-norm condition estimate of G^H G exceeds COND_LIMIT.
    """
    g = np.asarray(g, dtype=np.complex128)
    if g.ndim != 2 or g.shape[0] < g.shape[1]:
        raise DimensionMismatch(f"G must be square or tall, got shape {g.shape}")
    if not np.all(np.isfinite(g)):
        raise DimensionMismatch("G contains non-finite entries")
    gram = g.conj().T @ g
    try:
        x = _kernels.gauss_inverse(gram)
    except ValueError as exc:
        raise SingularMatrix(str(exc)) from exc
    norms = np.abs(gram).sum(axis=0)
    inv_norms = np.abs(x).sum(axis=0)
    cond = norms.max() * inv_norms.max() if gram.shape[0] else 0.0
    if cond > COND_LIMIT:
        raise SingularMatrix(f"condition estimate {cond:.3e} exceeds {COND_LIMIT:.0e}")
    return x


def hermitian_eigh(r):
    """Jacobi eigendecomposition of a Hermitian matrix.

    Returns (eigenvalues ascending, eigenvector columns); raises
    NotHermitian when the entrywise symmetry tolerance is violated.
    """
    r = _as_square(r, "R")
    asym = np.abs(r - r.conj().T).max() if r.size else 0.0
    if asym > HERMITIAN_ATOL:
        raise NotHermitian(f"asymmetry {asym:.3e} exceeds {HERMITIAN_ATOL:.0e}")
    return _kernels.jacobi_eigh(r)


def psd_sqrt(r):
    """Hermitian PSD square root S with S @ S ~= R.

    Eigenvalues in [EIG_REJECT, 0) are clamped to zero; anything below
    EIG_REJECT raises NegativeEigenvalue.  Diagonal input short-circuits
    to an exact elementwise square root.
    """
    r = _as_square(r, "R")
    k = r.shape[0]
    diag = np.diagonal(r)
    if np.count_nonzero(r - np.diag(diag)) == 0:
        if np.abs(diag.imag).max(initial=0.0) > HERMITIAN_ATOL:
            raise NotHermitian("diagonal entries must be real")
        d = diag.real.copy()
        if d.min(initial=0.0) < EIG_REJECT:
            raise NegativeEigenvalue(f"eigenvalue {d.min():.3e} below {EIG_REJECT:.0e}")
        d[d < 0.0] = 0.0
        return np.diag(np.sqrt(d)).astype(np.complex128)
    w, v = hermitian_eigh(r)
    if w.min(initial=0.0) < EIG_REJECT:
        raise NegativeEigenvalue(f"eigenvalue {w.min():.3e} below {EIG_REJECT:.0e}")
    w = np.where(w < 0.0, 0.0, w)
    s = (v * np.sqrt(w)) @ v.conj().T
    # symmetrize away last-ulp drift from the rotation products
    return 0.5 * (s + s.conj().T)
