"""Complex vector and matrix primitives on Z_N.

Vectors are 1-D ``complex128`` arrays indexed by ``0..N-1``; matrices are 2-D
``complex128`` arrays. Two Fourier conventions live side by side:

* :func:`dft` / :func:`idft` are unnormalized forward, ``1/N`` inverse, with
  ``x_hat(m) = sum_n x(n) exp(-2 pi i m n / N)``.
* :func:`gaborfusion.matrix_gabor.matrix_dft` uses the unitary ``1/sqrt(N)``
  normalization, applied row by row.
"""

import numpy as np

RTOL = 1e-10


def as_vector(x, name="x"):
    """Coerce ``x`` to a finite, non-empty complex vector."""
    v = np.asarray(x, dtype=np.complex128)
    if v.ndim != 1 or v.size == 0:
        raise ValueError(f"{name} must be a non-empty 1-D vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} has non-finite entries")
    return v


def as_matrix(X, name="X", square=False):
    M = np.asarray(X, dtype=np.complex128)
    if M.ndim != 2 or M.size == 0:
        raise ValueError(f"{name} must be a non-empty 2-D matrix, got shape {M.shape}")
    if square and M.shape[0] != M.shape[1]:
        raise ValueError(f"{name} must be square, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError(f"{name} has non-finite entries")
    return M


def basis_vector(n, i):
    """The unit vector delta_i in C^n."""
    e = np.zeros(n, dtype=np.complex128)
    e[i % n] = 1.0
    return e


def indicator(n, support):
    """Indicator vector of ``support`` (0-based positions) in C^n."""
    v = np.zeros(n, dtype=np.complex128)
    v[[s % n for s in support]] = 1.0
    return v


def _dft_matrix(n, sign):
    idx = np.arange(n)
    return np.exp(sign * 2j * np.pi * np.outer(idx, idx) / n)


def dft(x):
    """Unnormalized DFT, ``x_hat(m) = sum_n x(n) exp(-2 pi i m n / N)``.

    Evaluated as a dense O(N^2) sum; sizes here are small.
    """
    x = as_vector(x)
    return _dft_matrix(x.size, -1) @ x


def idft(x_hat):
    """Inverse of :func:`dft`, ``x(n) = (1/N) sum_m x_hat(m) exp(2 pi i m n / N)``."""
    x_hat = as_vector(x_hat, "x_hat")
    n = x_hat.size
    return (_dft_matrix(n, 1) @ x_hat) / n


def inner(x, y):
    """``<x, y> = sum_n x(n) conj(y(n))``, linear in the first slot."""
    x = as_vector(x)
    y = as_vector(y, "y")
    if x.size != y.size:
        raise ValueError(f"dimension mismatch: {x.size} vs {y.size}")
    return complex(np.sum(x * np.conj(y)))


def norm(x):
    return float(np.sqrt(max(inner(x, x).real, 0.0)))


def matrix_inner(X, Y):
    """Matrix-valued inner product ``<X, Y> = X Y^*`` on C^{N x N}."""
    X = as_matrix(X, square=True)
    Y = as_matrix(Y, "Y", square=True)
    if X.shape != Y.shape:
        raise ValueError(f"dimension mismatch: {X.shape} vs {Y.shape}")
    return X @ Y.conj().T


def frobenius_norm(X):
    X = as_matrix(X)
    return float(np.sqrt(np.sum(np.abs(X) ** 2)))
