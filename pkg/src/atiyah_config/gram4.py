"""Four points: positive definiteness of H_4 through a sum of Hadamard products.

Point labels are 0-based. For each point ``l`` let ``(a, b, c)`` be the
other three in increasing order. Then

    At_l = 2 (H_abc - 1) * H(w_al, w_bl, w_cl)

where ``H_abc`` is the Gram matrix of the sub-configuration ``(a, b, c)``,
``H(...)`` the 3x3 Gram matrix of the listed spinors and ``*`` the Hadamard
product. Embedding ``At_l`` on rows/columns ``(a, b, c)`` of a 4x4 zero
matrix gives ``A_l``, and ``H_4 = A_0 + A_1 + A_2 + A_3``. Each ``A_l`` is
PSD (Schur product of two PSD factors) and ``At_l`` is definite exactly when
``a, b, c`` are not collinear.
"""
from dataclasses import dataclass
from itertools import combinations, permutations

import numpy as np

from .atiyah import Configuration, assign_lifts, gram_matrix
from .errors import DegenerateConfiguration, IndexOutOfRange
from .linalg import determinant, eig_hermitian, hadamard, is_pd, permanent
from .spinor import herm
from .symtensor import factored_inner

COLLINEAR_REL_TOL = 1e-8


def _require4(c):
    if not isinstance(c, Configuration):
        c = Configuration(c)
    if c.n != 4:
        raise DegenerateConfiguration(f"expected 4 points, got {c.n}")
    return c


def _others(i, n=4):
    return [k for k in range(n) if k != i]


def mixed_gram(lifts, i, j):
    """``T_ij``: overlaps of ``(w_ik)_{k != i}`` (rows) with ``(w_jl)_{l != j}`` (columns)."""
    n = lifts.n
    if not (0 <= i < n and 0 <= j < n):
        raise IndexOutOfRange(f"indices ({i}, {j}) outside 0..{n - 1}")
    rows = lifts.table[i, _others(i, n)]
    cols = lifts.table[j, _others(j, n)]
    return herm(rows[:, None, :], cols[None, :, :])


def gram_entry_via_permanent(c, i, j, lifts=None):
    """``<p_i, p_j> = perm(T_ij)``."""
    c = _require4(c)
    lifts = assign_lifts(c) if lifts is None else lifts
    return permanent(mixed_gram(lifts, i, j))


_ODD = [p for p in permutations(range(3)) if sum(p[a] > p[b] for a in range(3) for b in range(a + 1, 3)) % 2]


def gram_entry_closed_form(lifts, i, j):
    """Twice the odd-permutation half of ``perm(T_ij)``.

    Equal to the permanent because ``T_ij`` is singular (its rows are
    overlaps with three vectors of C^2). For ``i == j`` this is
    ``2 (|h(ij,ik)|^2 + |h(ij,il)|^2 + |h(ik,il)|^2)``.
    """
    t = mixed_gram(lifts, i, j)
    return 2.0 * sum(t[0, p[0]] * t[1, p[1]] * t[2, p[2]] for p in _ODD)


def sub_gram(lifts, triple):
    """Gram matrix of the sub-configuration on ``triple``, built from the full lift table."""
    triple = list(triple)
    m = np.empty((3, 3), dtype=np.complex128)
    for r, a in enumerate(triple):
        fa = [lifts[a, k] for k in triple if k != a]
        for s, b in enumerate(triple):
            fb = [lifts[b, k] for k in triple if k != b]
            m[r, s] = factored_inner(fa, fb)
    return m


def spinor_gram(spinors):
    s = np.asarray(spinors, dtype=np.complex128)
    return herm(s[:, None, :], s[None, :, :])


@dataclass(frozen=True, eq=False)
class Decomposition4:
    A: np.ndarray
    Atilde: np.ndarray
    H4: np.ndarray

    @property
    def residual(self):
        return float(np.max(np.abs(self.A.sum(axis=0) - self.H4)))

    def min_eigenvalues(self):
        return np.array([eig_hermitian(a).min for a in self.A])


def build_decomposition(c, lifts=None):
    c = _require4(c)
    lifts = assign_lifts(c) if lifts is None else lifts
    A = np.zeros((4, 4, 4), dtype=np.complex128)
    At = np.empty((4, 3, 3), dtype=np.complex128)
    for l in range(4):
        tri = _others(l)
        At[l] = 2.0 * hadamard(sub_gram(lifts, tri) - np.eye(3), spinor_gram([lifts[a, l] for a in tri]))
        A[l][np.ix_(tri, tri)] = At[l]
    return Decomposition4(A=A, Atilde=At, H4=gram_matrix(c))


@dataclass(frozen=True)
class Gram4Scalars:
    """Overlap bookkeeping for ``At_3`` (the block that omits the last point).

    ``mu`` are the triangle scalars of points 0, 1, 2; ``rho`` the squared
    overlaps ``|h(13,23)|^2, |h(23,03)|^2, |h(03,13)|^2``.
    """

    mu: tuple
    rho: tuple

    @property
    def S(self):
        return sum(self.mu)

    @property
    def T(self):
        return sum(self.rho)

    @property
    def Stilde(self):
        return self.S - 2.0

    @property
    def Ttilde(self):
        return 3.0 - self.T

    @property
    def R(self):
        m1, m2, m3 = self.mu
        r1, r2, r3 = self.rho
        mt1, mt2, mt3 = 1 - m1, 1 - m2, 1 - m3
        cross = mt1 * mt2 * m3 * (1 - r3) + mt1 * m2 * mt3 * (1 - r2) + m1 * mt2 * mt3 * (1 - r1)
        return (self.S - 2.0) ** 2 * self.T + 4.0 * cross


def gram4_scalars(c, lifts=None):
    c = _require4(c)
    w = assign_lifts(c) if lifts is None else lifts
    sq = lambda a, b: float(abs(herm(w[a], w[b])) ** 2)  # noqa: E731
    mu = (sq((0, 1), (0, 2)), sq((1, 0), (1, 2)), sq((2, 0), (2, 1)))
    rho = (sq((1, 3), (2, 3)), sq((2, 3), (0, 3)), sq((0, 3), (1, 3)))
    return Gram4Scalars(mu=mu, rho=rho)


def three_cycle_last(lifts):
    """``h(03,13) h(13,23) h(23,03)``; its real part is ``(T - 1) / 2``."""
    w = lifts
    return herm(w[0, 3], w[1, 3]) * herm(w[1, 3], w[2, 3]) * herm(w[2, 3], w[0, 3])


def det_A4_closed_form(s):
    """``det At_3 = 2 ((S - 2)(S + 2) + R)``."""
    return 2.0 * ((s.S - 2.0) * (s.S + 2.0) + s.R)


def det_A4_expanded(s):
    """``det At_3`` from the raw expansion in ``mu``, ``rho`` and ``T``."""
    m1, m2, m3 = s.mu
    r1, r2, r3 = s.rho
    mt1, mt2, mt3 = 1 - m1, 1 - m2, 1 - m3
    half_cubed = (
        m1 * m2 * m3
        + mt1 * mt2 * mt3 * (s.T - 1.0)
        - mt1 * mt2 * m3 * r3
        - mt1 * m2 * mt3 * r2
        - m1 * mt2 * mt3 * r1
    )
    return 8.0 * half_cubed


def collinearity_ratio(points):
    """Smallest altitude of the triangle over its longest side (0 when collinear)."""
    p = np.asarray(points, dtype=np.float64)
    e1 = p[1] - p[0]
    e2 = p[2] - p[0]
    longest2 = max(np.dot(e1, e1), np.dot(e2, e2), np.dot(p[2] - p[1], p[2] - p[1]))
    return float(np.linalg.norm(np.cross(e1, e2)) / longest2)


@dataclass(frozen=True)
class Certificate:
    collinear4: bool
    tripleA: tuple
    tripleB: tuple
    detA_tripleA: float
    detA_tripleB: float
    minEigH4: float
    verdictPD: bool

    @property
    def decomposition_certifies(self):
        """Both selected blocks are definite, which forces ``H_4`` to be definite."""
        if self.collinear4:
            return False
        return self.detA_tripleA > 0 and self.detA_tripleB > 0

    def to_dict(self):
        return {
            "collinear4": self.collinear4,
            "tripleA": None if self.tripleA is None else list(self.tripleA),
            "tripleB": None if self.tripleB is None else list(self.tripleB),
            "detA_tripleA": self.detA_tripleA,
            "detA_tripleB": self.detA_tripleB,
            "minEigH4": self.minEigH4,
            "verdictPD": self.verdictPD,
        }


def pd_certificate(c, tol=None):
    """Record the two-block argument for definiteness of ``H_4``.

    Picks the first non-collinear triple in lexicographic order (A), then the
    first other triple containing the point A leaves out (B). If ``At`` is
    definite on both, any null vector of ``H_4`` vanishes on A and on B,
    hence everywhere. When all four points are collinear only the direct
    eigenvalue check is recorded. ``verdictPD`` always comes from the
    eigenvalues of ``H_4`` so branch selection cannot affect it.
    """
    c = _require4(c)
    h4 = gram_matrix(c)
    min_eig = eig_hermitian(h4).min
    verdict = bool(is_pd(h4, tol))
    triples = list(combinations(range(4), 3))
    good = [t for t in triples if collinearity_ratio(c.points[list(t)]) > COLLINEAR_REL_TOL]
    if not good:
        return Certificate(True, None, None, None, None, min_eig, verdict)
    first = good[0]
    left_out = next(k for k in range(4) if k not in first)
    second = next(t for t in good if t != first and left_out in t)
    dec = build_decomposition(c)

    def block_det(triple):
        omitted = next(k for k in range(4) if k not in triple)
        return determinant(dec.Atilde[omitted]).real

    return Certificate(False, first, second, block_det(first), block_det(second), min_eig, verdict)
