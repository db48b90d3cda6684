"""2-spinor calculus on C^2.

Spinors are arrays whose last axis holds the two complex components
``(u, v)``; directions are real arrays whose last axis holds ``(x, y, z)``.
All functions broadcast over leading axes.

The Hopf map used throughout is the Pauli-matrix one: a unit spinor ``w``
is sent to the unit vector ``(x, y, z)`` with

    w w^* = (1 - x*sigma_1 - y*sigma_2 - z*sigma_3) / 2,

so ``(0, 1)`` sits over the north pole and ``(1, 0)`` over the south pole.
"""
import numpy as np

from .errors import NotUnit

UNIT_TOL = 1e-9

SIGMA = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=np.complex128,
)
"""Pauli matrices ``SIGMA[0]`` (identity) through ``SIGMA[3]``."""

OMEGA = np.array([[0.0, 1.0], [-1.0, 0.0]])
"""Matrix of the complex symplectic form on C^2 in the standard basis."""


def pauli_coefficients(m):
    """Real coefficients ``c`` with ``m = sum_k c[k] * SIGMA[k]`` for hermitian 2x2 ``m``."""
    m = np.asarray(m, dtype=np.complex128)
    return 0.5 * np.einsum("kij,...ji->...k", SIGMA, m).real


def symplectic(a, b):
    """``omega(a, b) = a^T OMEGA b``."""
    a = np.asarray(a)
    b = np.asarray(b)
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


def spinor_norm(w):
    w = np.asarray(w)
    return np.sqrt(np.abs(w[..., 0]) ** 2 + np.abs(w[..., 1]) ** 2)


def _check_unit(w):
    if np.any(np.abs(spinor_norm(w) - 1.0) > UNIT_TOL):
        raise NotUnit("spinor is not of unit norm")


def modified_hopf(w):
    """Direction ``(x, y, z)`` of the unit spinor ``w``; phase invariant."""
    w = np.asarray(w, dtype=np.complex128)
    _check_unit(w)
    u, v = w[..., 0], w[..., 1]
    zeta = -2.0 * np.conj(u) * v
    z = np.abs(v) ** 2 - np.abs(u) ** 2
    return np.stack([zeta.real, zeta.imag, z], axis=-1)


def classic_hopf(w):
    """The textbook Hopf map ``(u, v) -> (2 conj(u) v, |v|^2 - |u|^2)`` as a point of R^3."""
    w = np.asarray(w, dtype=np.complex128)
    _check_unit(w)
    u, v = w[..., 0], w[..., 1]
    zeta = 2.0 * np.conj(u) * v
    z = np.abs(v) ** 2 - np.abs(u) ** 2
    return np.stack([zeta.real, zeta.imag, z], axis=-1)


def _lift(zeta, x, y, z):
    # 1 - z is recomputed from x, y when z > 0, which keeps the lift accurate
    # right up to the north pole.
    rho2 = x * x + y * y
    pole = rho2 == 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(z > 0.0, rho2 / (1.0 + z), 1.0 - z)
        s = np.sqrt(2.0 * t)
        u = (t / s).astype(np.complex128)
        v = zeta / s
    u = np.where(pole, np.where(z > 0.0, 0.0, 1.0), u)
    v = np.where(pole, np.where(z > 0.0, 1.0, 0.0), v)
    return np.stack([u, v], axis=-1)


def hopf_lift(d):
    """A unit spinor over the direction ``d`` for :func:`modified_hopf`.

    The phase is fixed so the first component is real and nonnegative;
    over the north pole the lift is ``(0, 1)``.
    """
    d = np.asarray(d, dtype=np.float64)
    x, y, z = d[..., 0], d[..., 1], d[..., 2]
    return _lift(-(x + 1j * y), x, y, z)


def classic_hopf_lift(d):
    """Unit spinor over ``d`` for :func:`classic_hopf`, same phase convention."""
    d = np.asarray(d, dtype=np.float64)
    x, y, z = d[..., 0], d[..., 1], d[..., 2]
    return _lift(x + 1j * y, x, y, z)


def quaternionic(w):
    """The anti-linear map ``(u, v) -> (-conj(v), conj(u))``.

    Squares to minus the identity and covers the antipodal map of S^2.
    """
    w = np.asarray(w, dtype=np.complex128)
    return np.stack([-np.conj(w[..., 1]), np.conj(w[..., 0])], axis=-1)


def dualize(w):
    """Coefficients ``(a, b)`` of the linear form ``omega(w, .) = a*u + b*v``."""
    w = np.asarray(w, dtype=np.complex128)
    return np.stack([-w[..., 1], w[..., 0]], axis=-1)


def herm(w1, w2):
    """Hermitian inner product, linear in the first slot: ``u1 conj(u2) + v1 conj(v2)``."""
    w1 = np.asarray(w1, dtype=np.complex128)
    w2 = np.asarray(w2, dtype=np.complex128)
    return w1[..., 0] * np.conj(w2[..., 0]) + w1[..., 1] * np.conj(w2[..., 1])


def rho(d1, d2):
    """Squared overlap ``(1 + d1.d2) / 2`` of two directions, clipped to [0, 1]."""
    d1 = np.asarray(d1, dtype=np.float64)
    d2 = np.asarray(d2, dtype=np.float64)
    return np.clip(0.5 * (1.0 + np.sum(d1 * d2, axis=-1)), 0.0, 1.0)


def three_cycle(w1, w2, w3):
    """Closed form of ``<w1,w2><w2,w3><w3,w1>`` in terms of the Hopf images.

    Returns ``(rho12 + rho13 + rho23 - 1)/2 + i/4 * det(x1, x2, x3)``.
    """
    x1, x2, x3 = (modified_hopf(w) for w in (w1, w2, w3))
    real = 0.5 * (-1.0 + rho(x1, x2) + rho(x1, x3) + rho(x2, x3))
    vol = np.sum(x1 * np.cross(x2, x3), axis=-1)
    return real + 0.25j * vol


def three_cycle_direct(w1, w2, w3):
    return herm(w1, w2) * herm(w2, w3) * herm(w3, w1)


def pair_matrix(w1, w2):
    """2x2 matrix with columns ``w1`` and ``w2``."""
    return np.stack([np.asarray(w1), np.asarray(w2)], axis=-1)
