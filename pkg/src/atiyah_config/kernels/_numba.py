"""Scalar-loop kernels compiled with numba.

Every function here has a twin of the same name and signature in
``_numpy``; the two are compared against each other in the test suite.
"""
import math

import numba
import numpy as np

jit = numba.njit(cache=True)

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


@jit
def det(a):
    n = a.shape[0]
    lu = a.astype(np.complex128).copy()
    result = 1.0 + 0.0j
    for k in range(n):
        piv = k
        best = abs(lu[k, k])
        for r in range(k + 1, n):
            if abs(lu[r, k]) > best:
                best = abs(lu[r, k])
                piv = r
        if best == 0.0:
            return 0.0 + 0.0j
        if piv != k:
            for c in range(n):
                tmp = lu[k, c]
                lu[k, c] = lu[piv, c]
                lu[piv, c] = tmp
            result = -result
        pivot = lu[k, k]
        result *= pivot
        for r in range(k + 1, n):
            f = lu[r, k] / pivot
            if f != 0.0:
                for c in range(k + 1, n):
                    lu[r, c] -= f * lu[k, c]
    return result


@jit
def permanent(a):
    # Ryser's formula, subsets visited in Gray-code order.
    n = a.shape[0]
    rowsum = np.zeros(n, dtype=np.complex128)
    total = 0.0 + 0.0j
    gray = 0
    sign = 1.0
    for k in range(1, 1 << n):
        j = 0
        while not (k >> j) & 1:
            j += 1
        bit = 1 << j
        if gray & bit:
            for i in range(n):
                rowsum[i] -= a[i, j]
        else:
            for i in range(n):
                rowsum[i] += a[i, j]
        gray ^= bit
        sign = -sign
        prod = 1.0 + 0.0j
        for i in range(n):
            prod *= rowsum[i]
        total += sign * prod
    if n % 2 == 1:
        return -total
    return total


@jit
def jacobi_eigh(a_in, rel_tol, max_sweeps):
    n = a_in.shape[0]
    a = a_in.astype(np.complex128).copy()
    v = np.eye(n, dtype=np.complex128)
    norm = 0.0
    for i in range(n):
        for j in range(n):
            norm += abs(a[i, j]) ** 2
    thresh = rel_tol * math.sqrt(norm)
    sweeps = 0
    converged = False
    while True:
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += abs(a[i, j]) ** 2
        if math.sqrt(off) <= thresh:
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
                upp = c + 0.0j
                upq = s + 0.0j
                uqp = -s * cph
                uqq = c * cph
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = akp * upp + akq * uqp
                    a[k, q] = akp * upq + akq * uqq
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = vkp * upp + vkq * uqp
                    v[k, q] = vkp * upq + vkq * uqq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = np.conj(upp) * apk + np.conj(uqp) * aqk
                    a[q, k] = np.conj(upq) * apk + np.conj(uqq) * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
    w = np.empty(n)
    for i in range(n):
        w[i] = a[i, i].real
    order = np.argsort(w)
    return w[order], v[:, order], sweeps, converged


@jit
def _lift(x, y, z):
    rho2 = x * x + y * y
    if rho2 == 0.0:
        if z > 0.0:
            return 0.0 + 0.0j, 1.0 + 0.0j
        return 1.0 + 0.0j, 0.0 + 0.0j
    if z > 0.0:
        t = rho2 / (1.0 + z)
    else:
        t = 1.0 - z
    s = math.sqrt(2.0 * t)
    return (t / s) + 0.0j, -(x + 1j * y) / s


@jit
def lift_table(points):
    n = points.shape[0]
    w = np.zeros((n, n, 2), dtype=np.complex128)
    for i in range(n):
        for j in range(i + 1, n):
            dx = points[j, 0] - points[i, 0]
            dy = points[j, 1] - points[i, 1]
            dz = points[j, 2] - points[i, 2]
            r = math.sqrt(dx * dx + dy * dy + dz * dz)
            u, vv = _lift(dx / r, dy / r, dz / r)
            w[i, j, 0] = u
            w[i, j, 1] = vv
            w[j, i, 0] = -np.conj(vv)
            w[j, i, 1] = np.conj(u)
    return w


@jit
def sym_coeffs(ws):
    m = ws.shape[0]
    out = np.zeros(m + 1, dtype=np.complex128)
    for mask in range(1 << m):
        prod = 1.0 + 0.0j
        k = 0
        for j in range(m):
            if (mask >> j) & 1:
                prod *= ws[j, 0]
                k += 1
            else:
                prod *= ws[j, 1]
        out[k] += prod
    return out


@jit
def coefficient_matrix(w):
    n = w.shape[0]
    m = n - 1
    c = np.zeros((n, n), dtype=np.complex128)
    factors = np.empty((m, 2), dtype=np.complex128)
    for i in range(n):
        f = 0
        for j in range(n):
            if j != i:
                factors[f, 0] = w[i, j, 0]
                factors[f, 1] = w[i, j, 1]
                f += 1
        coeffs = sym_coeffs(factors)
        for r in range(n):
            c[r, i] = coeffs[m - r]
    return c


@jit
def gram_from_coeffs(c):
    n = c.shape[0]
    m = n - 1
    fact = np.ones(n)
    for r in range(1, n):
        fact[r] = fact[r - 1] * r
    weights = np.empty(n)
    for r in range(n):
        weights[r] = fact[r] * fact[m - r]
    h = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        for j in range(i, n):
            acc = 0.0 + 0.0j
            for r in range(n):
                acc += c[r, i] * np.conj(c[r, j]) * weights[r]
            h[i, j] = acc
            h[j, i] = np.conj(acc)
        h[i, i] = h[i, i].real
    return h


@jit
def config_matrices(points):
    w = lift_table(points)
    c = coefficient_matrix(w)
    return c, gram_from_coeffs(c)
