"""Matrix-valued Gabor formalism on C^{N x N}.

A matrix is read as a stack of rows ``x_0, ..., x_{N-1}`` in C^N, and the
vector operators act row by row. The circular convolution treats a matrix as
a function on Z_N x Z_N (row index first) and convolves over both
coordinates, so row ``j`` of ``X * Y`` is ``sum_i x_i * y_{j-i}``.

Two transforms are provided:

``matrix_dft``
    unitary ``1/sqrt(N)`` DFT of every row. Intertwines the row-wise
    translation, modulation and involution.
``group_dft``
    unnormalized Fourier transform on Z_N x Z_N. This is the transform under
    which ``group_dft(X * Y) == group_dft(X) * group_dft(Y)`` entrywise. The
    row-wise transform alone only satisfies
    ``matrix_dft(X * Y)[j] = sqrt(N) sum_i matrix_dft(X)[i] matrix_dft(Y)[j-i]``.
"""

import numpy as np

from .complex_core import as_matrix, as_vector
from .gabor import stft


def _square(X, name="X"):
    return as_matrix(X, name, square=True)


def tilde_translate(X, l):
    """Cyclically shift every row of ``X`` by ``l``."""
    X = _square(X)
    return np.roll(X, l % X.shape[1], axis=1)


def tilde_modulate(X, l):
    X = _square(X)
    n = X.shape[1]
    return X * np.exp(-2j * np.pi * (l % n) * np.arange(n) / n)[None, :]


def tilde_tf_shift(X, k, l):
    return tilde_modulate(tilde_translate(X, k), l)


def cyclic_convolve(x, y):
    """``(x * y)(n) = sum_m x(m) y(n - m)`` on Z_N, evaluated directly."""
    x = as_vector(x)
    y = as_vector(y, "y")
    if x.size != y.size:
        raise ValueError(f"dimension mismatch: {x.size} vs {y.size}")
    n = x.size
    idx = (np.arange(n)[:, None] - np.arange(n)[None, :]) % n
    return y[idx] @ x


def matrix_convolve(X, Y):
    X = _square(X)
    Y = _square(Y, "Y")
    if X.shape != Y.shape:
        raise ValueError(f"dimension mismatch: {X.shape} vs {Y.shape}")
    n = X.shape[0]
    out = np.zeros_like(X)
    for j in range(n):
        for i in range(n):
            out[j] += cyclic_convolve(X[i], Y[(j - i) % n])
    return out


def delta_matrix(n):
    """Unit of the convolution algebra: ``delta_0`` in row 0, zeros elsewhere."""
    D = np.zeros((n, n), dtype=np.complex128)
    D[0, 0] = 1.0
    return D


def matrix_involution(X):
    """Row-wise circular adjoint, ``x_i^*(l) = conj(x_i(-l mod N))``."""
    X = _square(X)
    n = X.shape[1]
    return np.conj(X[:, (-np.arange(n)) % n])


def _fourier_matrix(n):
    idx = np.arange(n)
    return np.exp(-2j * np.pi * np.outer(idx, idx) / n)


def matrix_dft(X):
    X = _square(X)
    n = X.shape[1]
    return X @ _fourier_matrix(n).T / np.sqrt(n)


def matrix_idft(X_hat):
    X_hat = _square(X_hat)
    n = X_hat.shape[1]
    return X_hat @ _fourier_matrix(n).conj().T / np.sqrt(n)


def group_dft(X):
    """Unnormalized DFT of ``X`` as a function on Z_N x Z_N."""
    X = _square(X)
    F = _fourier_matrix(X.shape[0])
    return F @ X @ F.T


def gabor_fusion_transform(x, Y):
    """Row-wise STFT of ``x`` against the window stack ``Y``.

    Returns an ``(N, N, R)`` array whose ``[k, l]`` entry is the vector
    ``(V_{y_0} x(k, l), ..., V_{y_{R-1}} x(k, l))``. Zero rows of ``Y`` give
    zero components. ``Y`` may have any number of rows ``R``.
    """
    x = as_vector(x)
    Y = as_matrix(Y, "Y")
    n = x.size
    if Y.shape[1] != n:
        raise ValueError(f"window rows have length {Y.shape[1]}, signal has length {n}")
    out = np.zeros((n, n, Y.shape[0]), dtype=np.complex128)
    for j, y in enumerate(Y):
        if np.any(y):
            out[:, :, j] = stft(x, y)
    return out
