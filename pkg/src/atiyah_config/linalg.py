"""Small dense complex linear algebra.

Determinants, permanents, Hadamard products and a cyclic Jacobi
eigensolver for hermitian matrices of dimension at most 8 or so. Heavy
lifting is delegated to :mod:`atiyah_config.kernels`; this module owns
validation, error reporting and the positive (semi)definiteness verdicts.
"""
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from . import kernels
from .errors import NoConvergence, NonSquare, NotHermitian, ShapeMismatch

JACOBI_REL_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100
HERMITIAN_TOL = 1e-10
PSD_REL_TOL = 1e-9


@dataclass(frozen=True)
class Spectrum:
    """Eigen-decomposition of a hermitian matrix.

    ``eigenvalues`` are ascending; column ``k`` of ``vectors`` belongs to
    ``eigenvalues[k]``.
    """

    eigenvalues: np.ndarray
    vectors: np.ndarray
    sweeps: int

    @property
    def min(self):
        return float(self.eigenvalues[0])

    @property
    def max(self):
        return float(self.eigenvalues[-1])


def as_matrix(m):
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise ShapeMismatch(f"expected a non-empty 2-d matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def _square(m):
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise NonSquare(f"matrix is {a.shape[0]}x{a.shape[1]}")
    return a


def determinant(m):
    """Determinant by LU factorization with partial pivoting."""
    return complex(kernels.det(_square(m)))


def permanent(m):
    """Permanent via Ryser's formula (Gray-code ordered subsets)."""
    return complex(kernels.permanent(_square(m)))


def permanent_naive(m):
    """Permanent as the explicit sum over all permutations.

    Kept as the reference the Ryser path is checked against; only sensible
    for dimensions up to about 8.
    """
    a = _square(m)
    n = a.shape[0]
    rows = np.arange(n)
    return complex(sum(np.prod(a[rows, list(p)]) for p in permutations(range(n))))


def hadamard(a, b):
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise ShapeMismatch(f"shapes {a.shape} and {b.shape} differ")
    return a * b


def hermitian_defect(m):
    a = _square(m)
    return float(np.max(np.abs(a - a.conj().T)))


def eig_hermitian(m, rel_tol=JACOBI_REL_TOL, max_sweeps=JACOBI_MAX_SWEEPS):
    """Eigenvalues and eigenvectors of a hermitian matrix by cyclic Jacobi.

    Iterates full sweeps until the off-diagonal Frobenius norm drops below
    ``rel_tol * ||m||_F``. Raises :class:`NotHermitian` if ``m`` is not
    hermitian to within ``1e-10`` (relative to its largest entry, when that
    exceeds one) and :class:`NoConvergence` if ``max_sweeps`` is exhausted.
    """
    a = _square(m)
    scale = max(1.0, float(np.max(np.abs(a))))
    if hermitian_defect(a) > HERMITIAN_TOL * scale:
        raise NotHermitian(f"asymmetry {hermitian_defect(a):.3e} exceeds tolerance")
    a = 0.5 * (a + a.conj().T)
    w, v, sweeps, converged = kernels.jacobi_eigh(a, rel_tol, max_sweeps)
    if not converged:
        raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps")
    return Spectrum(np.asarray(w), np.asarray(v), int(sweeps))


def min_eigenvalue(m):
    return eig_hermitian(m).min


def default_psd_tol(m):
    return PSD_REL_TOL * float(np.linalg.norm(as_matrix(m)))


def is_psd(m, tol=None):
    """True iff the smallest eigenvalue is at least ``-tol``.

    ``tol`` defaults to ``1e-9 * ||m||_F``.
    """
    if tol is None:
        tol = default_psd_tol(m)
    return min_eigenvalue(m) >= -tol


def is_pd(m, tol=None):
    """True iff the smallest eigenvalue exceeds ``+tol``."""
    if tol is None:
        tol = default_psd_tol(m)
    return min_eigenvalue(m) > tol
