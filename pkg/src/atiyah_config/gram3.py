"""Three points: the Gram matrix H_3 in terms of squared spinor overlaps.

With ``h(ij, kl) = <w_ij, w_kl>`` and 0-based point labels, the scalars are

    mu_0 = |h(01, 02)|^2,  mu_1 = |h(10, 12)|^2,  mu_2 = |h(20, 21)|^2,

and ``mu_i = cos^2(a_i / 2)`` where ``a_i`` is the interior angle at vertex
``i``. Their sum ``S`` lies in ``[2, 9/4]`` (collinear to equilateral),
``det H_3 = S^2``, ``D = S / 2`` and ``det(H_3 - 1) = (S - 2)(S - 1)``.
"""
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .atiyah import Configuration, assign_lifts, directions, gram_matrix
from .errors import DegenerateConfiguration
from .linalg import determinant, eig_hermitian
from .spinor import herm, rho

MU_CROSS_TOL = 1e-9


@dataclass(frozen=True)
class TriangleScalars:
    mu1: float
    mu2: float
    mu3: float

    @property
    def mu(self):
        return np.array([self.mu1, self.mu2, self.mu3])

    @property
    def S(self):
        return self.mu1 + self.mu2 + self.mu3


def _require3(c):
    if not isinstance(c, Configuration):
        c = Configuration(c)
    if c.n != 3:
        raise DegenerateConfiguration(f"expected 3 points, got {c.n}")
    return c


def interior_angles(c):
    c = _require3(c)
    nu = directions(c)
    return np.array(
        [np.arccos(np.clip(np.dot(nu[i, (i + 1) % 3], nu[i, (i + 2) % 3]), -1.0, 1.0)) for i in range(3)]
    )


def triangle_scalars(c):
    """``mu_i`` from spinor overlaps, cross-checked against ``rho`` of the edge directions."""
    c = _require3(c)
    w = assign_lifts(c)
    mu = np.array(
        [
            abs(herm(w[0, 1], w[0, 2])) ** 2,
            abs(herm(w[1, 0], w[1, 2])) ** 2,
            abs(herm(w[2, 0], w[2, 1])) ** 2,
        ]
    )
    nu = directions(c)
    mu_geom = np.array([rho(nu[0, 1], nu[0, 2]), rho(nu[1, 0], nu[1, 2]), rho(nu[2, 0], nu[2, 1])])
    if np.max(np.abs(mu - mu_geom)) > MU_CROSS_TOL:
        raise RuntimeError(f"spinor and geometric overlaps disagree: {mu} vs {mu_geom}")
    return TriangleScalars(*mu.tolist())


def h3_from_scalars(t, lifts):
    """H_3 assembled entry by entry from the overlap products."""
    w = lifts
    h = lambda a, b: herm(w[a], w[b])  # noqa: E731
    m = np.empty((3, 3), dtype=np.complex128)
    m[0, 0] = 1 + t.mu1
    m[1, 1] = 1 + t.mu2
    m[2, 2] = 1 + t.mu3
    m[0, 1] = h((0, 1), (1, 2)) * h((0, 2), (1, 0))
    m[0, 2] = h((0, 1), (2, 0)) * h((0, 2), (2, 1))
    m[1, 2] = h((1, 0), (2, 1)) * h((1, 2), (2, 0))
    m[1, 0] = np.conj(m[0, 1])
    m[2, 0] = np.conj(m[0, 2])
    m[2, 1] = np.conj(m[1, 2])
    return m


def h3_closed_form(t):
    """``det H_3 = S^2``."""
    return t.S**2


def det_h3_expanded(t):
    """``4 (mu1 mu2 + mu1 mu3 + mu2 mu3) - 4 mu1 mu2 mu3``, before the coplanarity identity is used."""
    m1, m2, m3 = t.mu
    return 4.0 * (m1 * m2 + m1 * m3 + m2 * m3) - 4.0 * m1 * m2 * m3


def identity_residual(t):
    """Residual of ``-4 mu1 mu2 mu3 = sum mu^2 - 2 sum_{i<j} mu_i mu_j``."""
    m1, m2, m3 = t.mu
    lhs = -4.0 * m1 * m2 * m3
    rhs = m1**2 + m2**2 + m3**2 - 2.0 * (m1 * m2 + m1 * m3 + m2 * m3)
    return lhs - rhs


def identity2_residual(t):
    """Residual of ``4 (1-mu1)(1-mu2)(1-mu3) = (S - 2)^2``."""
    m1, m2, m3 = t.mu
    return 4.0 * (1 - m1) * (1 - m2) * (1 - m3) - (t.S - 2.0) ** 2


def edge_gram(t):
    """Gram matrix of ``nu_12, nu_20, nu_01`` written through the ``mu_i``."""
    m1, m2, m3 = t.mu
    return np.array(
        [
            [1.0, 1 - 2 * m3, 1 - 2 * m2],
            [1 - 2 * m3, 1.0, 1 - 2 * m1],
            [1 - 2 * m2, 1 - 2 * m1, 1.0],
        ]
    )


def coplanarity_check(c):
    """Determinant of :func:`edge_gram`; zero since the three edge vectors are coplanar."""
    return float(np.linalg.det(edge_gram(triangle_scalars(c))))


def s_minus_2_trig(angles):
    """``2 sin(a/2) sin(b/2) cos((a+b)/2)`` from two interior angles."""
    a, b = angles[0], angles[1]
    return 2.0 * np.sin(a / 2) * np.sin(b / 2) * np.cos((a + b) / 2)


class LemmaCheck(NamedTuple):
    det: float
    closed_form: float
    psd: bool
    min_eig: float
    minors: tuple


def lemma_h3_minus_identity(c, h3=None, tol=1e-9):
    """Check that ``H_3 - 1`` is positive semidefinite.

    Returns its determinant next to ``(S - 2)(S - 1)``, the verdict, the
    smallest eigenvalue, and the principal 2x2 minors ``mu_i + mu_j - 1``
    (ordered ``m01, m02, m12``).
    """
    c = _require3(c)
    t = triangle_scalars(c)
    if h3 is None:
        h3 = gram_matrix(c)
    m = h3 - np.eye(3)
    min_eig = eig_hermitian(m).min
    minors = tuple(
        float((m[i, i] * m[j, j] - m[i, j] * m[j, i]).real) for i, j in ((0, 1), (0, 2), (1, 2))
    )
    return LemmaCheck(
        det=determinant(m).real,
        closed_form=(t.S - 2.0) * (t.S - 1.0),
        psd=min_eig >= -tol,
        min_eig=min_eig,
        minors=minors,
    )


def sign_relations_residual(c):
    """Largest violation of the three conjugation relations forced by the lift convention."""
    c = _require3(c)
    w = assign_lifts(c)
    h = lambda a, b: herm(w[a], w[b])  # noqa: E731
    r1 = h((1, 0), (2, 1)) - np.conj(h((0, 1), (1, 2)))
    r2 = h((0, 2), (1, 0)) + np.conj(h((2, 0), (0, 1)))
    r3 = h((2, 1), (0, 2)) + np.conj(h((1, 2), (2, 0)))
    return float(max(abs(r1), abs(r2), abs(r3)))


def sign_relations_check(c, tol=1e-12):
    return sign_relations_residual(c) <= tol
