"""Circulant matrices: layout, product-formula determinant and DFT solves.

A circulant is described by its first column ``c``; entry ``(r, s)`` of the
realized matrix is ``c[(r - s) mod N]``, so column ``s`` is the first column
shifted down by ``s``. Its eigenvalues are the factors

    lambda_j = c_0 + c_1 w_j + ... + c_{N-1} w_j^{N-1},   w_j = exp(2 pi i j / N),

with eigenvector ``(w_j^{-n})_n``, and the determinant is their product.
"""

from dataclasses import dataclass
from math import gcd

import numpy as np

from .complex_core import as_vector, dft, idft
from .errors import SingularCirculantError

SINGULAR_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class CirculantSpec:
    first_column: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "first_column", as_vector(self.first_column, "first_column"))

    @property
    def n(self):
        return self.first_column.size

    @classmethod
    def binary(cls, N, n):
        """Ones in positions ``0..n-1`` of the first column, zeros after."""
        if not 0 < n < N:
            raise ValueError(f"need 0 < n < N, got n={n}, N={N}")
        c = np.zeros(N)
        c[:n] = 1.0
        return cls(c)

    @classmethod
    def from_row(cls, row):
        """Circulant whose first row is ``row`` (and each row shifts right)."""
        row = as_vector(row, "row")
        return cls(row[(-np.arange(row.size)) % row.size])


def realize(spec):
    c = spec.first_column
    n = c.size
    idx = (np.arange(n)[:, None] - np.arange(n)[None, :]) % n
    return c[idx]


def factors(spec):
    """Eigenvalues ``lambda_j`` for ``j = 0..N-1``, by direct polynomial evaluation."""
    c = spec.first_column
    n = c.size
    w = np.exp(2j * np.pi * np.arange(n) / n)
    powers = w[:, None] ** np.arange(n)[None, :]
    return powers @ c


def determinant(spec):
    return complex(np.prod(factors(spec)))


def _scale(spec):
    return max(1.0, float(np.sum(np.abs(spec.first_column))))


def vanishing_factors(spec, tol=SINGULAR_TOL):
    """Indices ``j`` whose factor is zero relative to the row l1 norm."""
    lam = factors(spec)
    return [int(j) for j in np.flatnonzero(np.abs(lam) <= tol * _scale(spec))]


def is_singular(spec, tol=SINGULAR_TOL):
    return bool(vanishing_factors(spec, tol))


def is_singular_binary(N, n):
    """Whether the binary circulant with ``n`` leading ones in C^{N x N} is singular.

    Singular exactly when ``N`` divides ``j n`` for some ``1 <= j <= N-1``.
    """
    if not 0 < n < N:
        raise ValueError(f"need 0 < n < N, got n={n}, N={N}")
    return any((j * n) % N == 0 for j in range(1, N))


def gcd_criterion(N, n):
    return gcd(n, N) > 1


def solve(spec, b, tol=SINGULAR_TOL):
    """Solve ``realize(spec) v = b`` through the DFT diagonalization.

    ``realize(spec) v`` is the cyclic convolution ``c * v``, so
    ``dft(v)(m) = dft(b)(m) / dft(c)(m)``, and ``dft(c)(m)`` is the factor
    ``lambda_{-m mod N}``.
    """
    b = as_vector(b, "b")
    if b.size != spec.n:
        raise ValueError(f"b has length {b.size}, matrix is {spec.n}x{spec.n}")
    bad = vanishing_factors(spec, tol)
    if bad:
        raise SingularCirculantError(
            f"singular circulant: factor lambda_{bad[0]} vanishes", factor_index=bad[0]
        )
    return idft(dft(b) / dft(spec.first_column))
