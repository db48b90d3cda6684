"""Atiyah's construction for a configuration of n distinct points in R^3.

For each ordered pair ``i != j`` the unit direction ``nu_ij`` from ``x_i``
to ``x_j`` is lifted to a unit spinor ``w_ij``. For ``i < j`` the lift is
:func:`~atiyah_config.spinor.hopf_lift`; the reverse lift is fixed to
``w_ji = quaternionic(w_ij)``, which makes every 2x2 normalizing
determinant ``det(w_ij, w_ji)`` equal to one. The vector ``p_i`` is the
symmetric product of ``w_ij`` over ``j != i``.

``D`` is the determinant of the matrix whose column ``i`` holds the
coordinates of ``p_i``, rows ordered by decreasing ``e1`` count. ``H_n`` is
the Gram matrix of the ``p_i`` and satisfies ``det H_n = c_n |D|^2``.
"""
from dataclasses import dataclass
from math import isfinite

import numpy as np

from . import kernels
from .errors import ConfigurationFormatError, DegenerateConfiguration
from .linalg import determinant, eig_hermitian
from .spinor import classic_hopf_lift, dualize
from .symtensor import SymTensor, classic_poly_product, gram_constant

DISTINCT_REL_TOL = 1e-12


def pairwise_distances(points):
    diff = points[:, None, :] - points[None, :, :]
    return np.sqrt(np.sum(diff * diff, axis=-1))


@dataclass(frozen=True, eq=False)
class Configuration:
    """An ordered tuple of ``n >= 2`` pairwise-distinct points in R^3."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.array(self.points, dtype=np.float64)
        if pts.ndim != 2 or pts.shape[1] != 3:
            raise ValueError(f"points must have shape (n, 3), got {pts.shape}")
        if pts.shape[0] < 2:
            raise ValueError("a configuration needs at least two points")
        if not np.all(np.isfinite(pts)):
            raise ValueError("points must be finite")
        dist = pairwise_distances(pts)
        diameter = dist.max()
        off = dist[~np.eye(len(pts), dtype=bool)]
        if diameter == 0.0 or off.min() < DISTINCT_REL_TOL * diameter:
            i, j = _closest_pair(dist)
            raise DegenerateConfiguration(f"points {i} and {j} coincide")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def n(self):
        return self.points.shape[0]

    def __len__(self):
        return self.n

    def subset(self, indices):
        return Configuration(self.points[list(indices)])

    @classmethod
    def from_json(cls, obj):
        """Build from ``{"points": [[x, y, z], ...]}``.

        Raises :class:`ConfigurationFormatError` whose ``index`` names the
        first offending point.
        """
        if not isinstance(obj, dict) or "points" not in obj:
            raise ConfigurationFormatError('expected an object with a "points" array')
        pts = obj["points"]
        if not isinstance(pts, list):
            raise ConfigurationFormatError('"points" must be an array')
        for idx, p in enumerate(pts):
            if not isinstance(p, list) or len(p) != 3:
                raise ConfigurationFormatError(f"point {idx}: expected [x, y, z]", idx)
            for v in p:
                if isinstance(v, bool) or not isinstance(v, (int, float)) or not isfinite(v):
                    raise ConfigurationFormatError(f"point {idx}: coordinates must be finite numbers", idx)
        if len(pts) < 2:
            raise ConfigurationFormatError("a configuration needs at least two points")
        try:
            return cls(np.array(pts, dtype=np.float64))
        except DegenerateConfiguration as exc:
            raise ConfigurationFormatError(str(exc), _first_duplicate(pts)) from exc

    def to_json(self):
        return {"points": self.points.tolist()}


def _closest_pair(dist):
    """Indices ``i < j`` of the closest pair."""
    masked = np.where(np.eye(len(dist), dtype=bool), np.inf, dist)
    i, j = np.unravel_index(np.argmin(masked), masked.shape)
    return int(min(i, j)), int(max(i, j))


def _first_duplicate(pts):
    return _closest_pair(pairwise_distances(np.array(pts, dtype=np.float64)))[1]


def directions(c):
    """Array ``nu[i, j]`` of unit vectors from point i towards point j (zero on the diagonal)."""
    pts = c.points
    n = c.n
    nu = np.zeros((n, n, 3))
    iu, ju = np.triu_indices(n, 1)
    diff = pts[ju] - pts[iu]
    unit = diff / np.linalg.norm(diff, axis=1)[:, None]
    nu[iu, ju] = unit
    nu[ju, iu] = -unit
    return nu


@dataclass(frozen=True, eq=False)
class LiftAssignment:
    """Spinors ``table[i, j] = w_ij`` for every ordered pair ``i != j``."""

    table: np.ndarray

    @property
    def n(self):
        return self.table.shape[0]

    def __getitem__(self, ij):
        i, j = ij
        return self.table[i, j]

    def regauged(self, i, j, theta):
        """Multiply ``w_ij`` by ``exp(i theta)``; ``w_ji`` picks up the conjugate phase."""
        t = self.table.copy()
        t[i, j] *= np.exp(1j * theta)
        t[j, i] *= np.exp(-1j * theta)
        return LiftAssignment(t)


def assign_lifts(c):
    return LiftAssignment(kernels.lift_table(np.ascontiguousarray(c.points)))


def polynomials(c, lifts=None):
    """The ``n`` vectors ``p_i`` in Sym^(n-1)(C^2)."""
    lifts = assign_lifts(c) if lifts is None else lifts
    cm = coefficient_matrix(lifts)
    return [SymTensor(cm[::-1, i]) for i in range(lifts.n)]


def coefficient_matrix(lifts):
    """Column ``i`` holds ``p_i``; row ``r`` is the coefficient of ``e1^(n-1-r) e2^r``."""
    return kernels.coefficient_matrix(np.ascontiguousarray(lifts.table))


def determinant_from_lifts(lifts):
    return determinant(coefficient_matrix(lifts))


def gram_from_lifts(lifts):
    return kernels.gram_from_coeffs(coefficient_matrix(lifts))


def atiyah_D(c):
    """Atiyah's normalized determinant (the normalizing denominator is 1 by the lift convention)."""
    cm, _ = kernels.config_matrices(np.ascontiguousarray(c.points))
    return determinant(cm)


def gram_matrix(c):
    _, h = kernels.config_matrices(np.ascontiguousarray(c.points))
    return h


def classic_D(c):
    """D from the original recipe, as an independent cross-check of :func:`atiyah_D`.

    Uses the textbook Hopf map with independently chosen lifts for both
    ``(i, j)`` and ``(j, i)``, dualizes each lift with the symplectic form,
    multiplies the resulting linear forms as polynomials, and divides by the
    product of the 2x2 determinants ``det(p_ij, p_ji)`` over ``i < j``.
    Agrees with :func:`atiyah_D` in absolute value.
    """
    n = c.n
    forms = dualize(classic_hopf_lift(directions(c)))
    num = np.empty((n, n), dtype=np.complex128)
    for i in range(n):
        poly = classic_poly_product([forms[i, j] for j in range(n) if j != i])
        num[:, i] = poly.coeffs[::-1]
    den = 1.0 + 0.0j
    for i in range(n):
        for j in range(i + 1, n):
            den *= forms[i, j, 0] * forms[j, i, 1] - forms[j, i, 0] * forms[i, j, 1]
    return determinant(num) / den


@dataclass(frozen=True)
class AnalysisReport:
    n: int
    D: complex
    absD: float
    detH: float
    minEig: float
    c_n: float
    conjecture1_margin: float
    conjecture2_margin: float

    def to_dict(self):
        return {
            "n": self.n,
            "D": [self.D.real, self.D.imag],
            "absD": self.absD,
            "detH": self.detH,
            "minEig": self.minEig,
            "cn": self.c_n,
            "conj1_margin": self.conjecture1_margin,
            "conj2_margin": self.conjecture2_margin,
        }


def analyze(c):
    """All derived scalars for one configuration.

    ``conjecture1_margin`` is the smallest eigenvalue of ``H_n`` (positive
    means the ``p_i`` are independent); ``conjecture2_margin`` is ``|D| - 1``.
    """
    cm, h = kernels.config_matrices(np.ascontiguousarray(c.points))
    d = determinant(cm)
    min_eig = eig_hermitian(h).min
    abs_d = abs(d)
    return AnalysisReport(
        n=c.n,
        D=d,
        absD=abs_d,
        detH=determinant(h).real,
        minEig=min_eig,
        c_n=float(gram_constant(c.n)),
        conjecture1_margin=min_eig,
        conjecture2_margin=abs_d - 1.0,
    )
