"""Pure-numpy versions of the kernels in ``_numba``.

Same names, signatures and return conventions. These vectorize over rows,
subsets or pairs instead of looping over scalars, so they stay usable
without a JIT, just slower on tiny matrices.
"""
import math

import numpy as np

__all__ = [
    "det",
    "permanent",
    "jacobi_eigh",
    "lift_table",
    "sym_coeffs",
    "coefficient_matrix",
    "gram_from_coeffs",
    "config_matrices",
]


def det(a):
    lu = np.array(a, dtype=np.complex128)
    n = lu.shape[0]
    result = 1.0 + 0.0j
    for k in range(n):
        piv = k + int(np.argmax(np.abs(lu[k:, k])))
        if lu[piv, k] == 0:
            return 0.0 + 0.0j
        if piv != k:
            lu[[k, piv]] = lu[[piv, k]]
            result = -result
        result *= lu[k, k]
        f = lu[k + 1:, k] / lu[k, k]
        lu[k + 1:, k + 1:] -= np.outer(f, lu[k, k + 1:])
    return complex(result)


def _subset_bits(n):
    return ((np.arange(1 << n)[:, None] >> np.arange(n)) & 1).astype(bool)


def permanent(a):
    a = np.asarray(a, dtype=np.complex128)
    n = a.shape[0]
    bits = _subset_bits(n)[1:]
    rowsums = bits.astype(np.complex128) @ a.T
    signs = np.where(bits.sum(axis=1) % 2 == n % 2, 1.0, -1.0)
    return complex(np.sum(signs * np.prod(rowsums, axis=1)))


def jacobi_eigh(a_in, rel_tol, max_sweeps):
    a = np.array(a_in, dtype=np.complex128)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    thresh = rel_tol * np.linalg.norm(a)
    offmask = ~np.eye(n, dtype=bool)
    sweeps = 0
    converged = False
    while True:
        if np.sqrt(np.sum(np.abs(a[offmask]) ** 2)) <= thresh:
            converged = True
            break
        if sweeps == max_sweeps:
            break
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                cph = np.conj(apq / mag)
                tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                t = 1.0 / (abs(tau) + math.sqrt(1.0 + tau * tau))
                if tau < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                u = np.array([[c, s], [-s * cph, c * cph]])
                a[:, [p, q]] = a[:, [p, q]] @ u
                v[:, [p, q]] = v[:, [p, q]] @ u
                a[[p, q], :] = u.conj().T @ a[[p, q], :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
    w = a.diagonal().real.copy()
    order = np.argsort(w)
    return w[order], v[:, order], sweeps, converged


def _lift_many(d):
    x, y, z = d[..., 0], d[..., 1], d[..., 2]
    rho2 = x * x + y * y
    pole = rho2 == 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(z > 0.0, rho2 / (1.0 + z), 1.0 - z)
        s = np.sqrt(2.0 * t)
        u = (t / s).astype(np.complex128)
        v = -(x + 1j * y) / s
    u = np.where(pole, np.where(z > 0.0, 0.0, 1.0), u)
    v = np.where(pole, np.where(z > 0.0, 1.0, 0.0), v)
    return np.stack([u, v], axis=-1)


def lift_table(points):
    points = np.asarray(points, dtype=np.float64)
    n = points.shape[0]
    iu, ju = np.triu_indices(n, 1)
    diff = points[ju] - points[iu]
    r = np.sqrt(np.sum(diff * diff, axis=1))
    lifts = _lift_many(diff / r[:, None])
    w = np.zeros((n, n, 2), dtype=np.complex128)
    w[iu, ju] = lifts
    w[ju, iu, 0] = -np.conj(lifts[:, 1])
    w[ju, iu, 1] = np.conj(lifts[:, 0])
    return w


def sym_coeffs(ws):
    ws = np.asarray(ws, dtype=np.complex128)
    m = ws.shape[0]
    bits = _subset_bits(m)
    prods = np.prod(np.where(bits, ws[:, 0], ws[:, 1]), axis=1)
    return np.bincount(bits.sum(axis=1), weights=prods.real, minlength=m + 1) + 1j * np.bincount(
        bits.sum(axis=1), weights=prods.imag, minlength=m + 1
    )


def coefficient_matrix(w):
    n = w.shape[0]
    m = n - 1
    c = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        coeffs = sym_coeffs(np.delete(w[i], i, axis=0))
        c[:, i] = coeffs[m - np.arange(n)]
    return c


def gram_from_coeffs(c):
    n = c.shape[0]
    fact = np.array([math.factorial(k) for k in range(n)], dtype=np.float64)
    weights = fact * fact[::-1]
    h = c.T @ (weights[:, None] * c.conj())
    h = np.triu(h) + np.triu(h, 1).conj().T
    h[np.diag_indices(n)] = h.diagonal().real
    return h


def config_matrices(points):
    c = coefficient_matrix(lift_table(points))
    return c, gram_from_coeffs(c)
