"""Symmetric tensor powers of C^2.

An element of Sym^m(C^2) is stored by its coordinates in the monomial
basis ``e1^k . e2^(m-k)`` (``.`` the symmetric product), ``k = 0..m``.
Equivalently, via ``e1 -> u`` and ``e2 -> v``, it is a binary form of degree
``m`` whose ``u^k v^(m-k)`` coefficient is ``coeffs[k]``.

The hermitian inner product is the one induced from C^2 with no 1/m!
normalization: for products of vectors it is the permanent of the mixed
Gram matrix, and the basis monomials are orthogonal with squared norms
``k! (m-k)!``.
"""
from dataclasses import dataclass
from math import factorial

import numpy as np

from . import kernels
from .errors import DegreeMismatch, EmptyFactorList
from .linalg import permanent
from .spinor import herm


@dataclass(frozen=True)
class SymTensor:
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=np.complex128)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coefficients must be a non-empty vector")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self):
        return self.coeffs.size - 1

    def __add__(self, other):
        _same_degree(self, other)
        return SymTensor(self.coeffs + other.coeffs)

    def __mul__(self, scalar):
        return SymTensor(self.coeffs * scalar)

    __rmul__ = __mul__

    @classmethod
    def basis(cls, m, k):
        """The monomial ``e1^k . e2^(m-k)``."""
        c = np.zeros(m + 1, dtype=np.complex128)
        c[k] = 1.0
        return cls(c)


def _same_degree(p, q):
    if p.degree != q.degree:
        raise DegreeMismatch(f"degrees {p.degree} and {q.degree} differ")


def _factor_array(factors):
    arr = np.asarray(factors, dtype=np.complex128)
    if arr.size == 0:
        raise EmptyFactorList("need at least one factor")
    return np.ascontiguousarray(arr.reshape(-1, 2))


def sym_product(spinors):
    """Symmetric product of ``m`` vectors of C^2.

    ``coeffs[k]`` sums, over the k-subsets S of the factors, the product of
    first components over S times second components off S.
    """
    return SymTensor(kernels.sym_coeffs(_factor_array(spinors)))


def classic_poly_product(linear_forms):
    """Multiply linear forms ``a*u + b*v`` given as pairs ``(a, b)``.

    Coefficients come back in the same layout as :class:`SymTensor`
    (``coeffs[k]`` multiplies ``u^k v^(m-k)``). Implemented as repeated
    polynomial convolution, independently of :func:`sym_product`.
    """
    forms = _factor_array(linear_forms)
    # poly[k] is the coefficient of u^k v^(deg-k)
    poly = np.array([1.0 + 0.0j])
    for a, b in forms:
        nxt = np.zeros(poly.size + 1, dtype=np.complex128)
        nxt[1:] += a * poly
        nxt[:-1] += b * poly
        poly = nxt
    return SymTensor(poly)


def basis_norms(m):
    """Squared norms ``k! (m-k)!`` of the monomial basis of Sym^m(C^2)."""
    return np.array([factorial(k) * factorial(m - k) for k in range(m + 1)], dtype=np.float64)


def gram_constant(n):
    """``prod_{k<n} (k!)^2``: the product of :func:`basis_norms` at degree ``n - 1``."""
    out = 1
    for k in range(n):
        out *= factorial(k) ** 2
    return out


def induced_inner(p, q):
    _same_degree(p, q)
    return complex(np.sum(p.coeffs * np.conj(q.coeffs) * basis_norms(p.degree)))


def factored_inner(ws, ws_prime):
    """Inner product of ``sym_product(ws)`` and ``sym_product(ws_prime)`` as a permanent."""
    a = _factor_array(ws)
    b = _factor_array(ws_prime)
    if a.shape[0] != b.shape[0]:
        raise DegreeMismatch(f"degrees {a.shape[0]} and {b.shape[0]} differ")
    return permanent(mixed_gram(a, b))


def mixed_gram(ws, ws_prime):
    """Matrix of ``<ws[i], ws_prime[j]>``."""
    a = np.asarray(ws, dtype=np.complex128)
    b = np.asarray(ws_prime, dtype=np.complex128)
    return herm(a[:, None, :], b[None, :, :])
