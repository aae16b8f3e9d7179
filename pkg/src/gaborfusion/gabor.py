"""Time-frequency shifts, the STFT and full-lattice Gabor frames on C^N.

Conventions follow the cyclic-group setting:

* ``(T_k x)(n) = x(n - k mod N)``
* ``(M_l x)(n) = exp(-2 pi i l n / N) x(n)`` (negative exponent; libraries
  using ``+`` differ from these values by complex conjugation)
* ``pi(k, l) = M_l T_k``

Writing the shift the other way round, ``T_k M_l = exp(2 pi i k l / N) M_l T_k``,
only changes atoms by a unimodular factor, so spans and magnitudes agree.
"""

from dataclasses import dataclass, field

import numpy as np

from .complex_core import as_matrix, as_vector
from .errors import NotTightError


def full_lattice(n):
    """All ``(k, l)`` in Z_N x Z_N, row-major in ``k``."""
    return [(k, l) for k in range(n) for l in range(n)]


@dataclass(frozen=True, eq=False)
class GaborSystem:
    window: np.ndarray
    lattice: list = field(default=None)

    def __post_init__(self):
        w = as_vector(self.window, "window")
        if not np.any(w):
            raise ValueError("window must be nonzero")
        n = w.size
        lattice = full_lattice(n) if self.lattice is None else [tuple(p) for p in self.lattice]
        if len(set(lattice)) != len(lattice):
            raise ValueError("lattice points must be unique")
        for k, l in lattice:
            if not (0 <= k < n and 0 <= l < n):
                raise ValueError(f"lattice point {(k, l)} outside Z_{n} x Z_{n}")
        object.__setattr__(self, "window", w)
        object.__setattr__(self, "lattice", lattice)

    @property
    def n(self):
        return self.window.size

    def atoms(self):
        """Array of shape ``(len(lattice), N)`` holding ``pi(k, l) window``."""
        return np.array([tf_shift(self.window, k, l) for k, l in self.lattice])

    def frame_operator(self):
        G = self.atoms()
        return G.T @ G.conj()


def translate(x, k):
    x = as_vector(x)
    return np.roll(x, k % x.size)


def modulate(x, l):
    x = as_vector(x)
    n = x.size
    return np.exp(-2j * np.pi * (l % n) * np.arange(n) / n) * x


def tf_shift(x, k, l):
    """``pi(k, l) x = M_l T_k x``."""
    return modulate(translate(x, k), l)


def _atom_cube(phi):
    # cube[k, l, :] = pi(k, l) phi
    n = phi.size
    shifts = np.array([np.roll(phi, k) for k in range(n)])
    idx = np.arange(n)
    chirps = np.exp(-2j * np.pi * np.outer(idx, idx) / n)
    return shifts[:, None, :] * chirps[None, :, :]


def _check_window(phi):
    phi = as_vector(phi, "window")
    if not np.any(phi):
        raise ValueError("window must be nonzero")
    return phi


def stft(x, phi):
    """Short-time Fourier transform ``V[k, l] = <x, pi(k, l) phi>``.

    Returns an ``(N, N)`` array indexed by translation ``k`` then
    modulation ``l``.
    """
    x = as_vector(x)
    phi = _check_window(phi)
    if x.size != phi.size:
        raise ValueError(f"dimension mismatch: {x.size} vs {phi.size}")
    return _atom_cube(phi).conj() @ x


def stft_inverse(V, phi):
    """Synthesis ``x = (1 / (N |phi|^2)) sum_{k,l} V[k, l] pi(k, l) phi``."""
    phi = _check_window(phi)
    n = phi.size
    V = as_matrix(V, "V", square=True)
    if V.shape[0] != n:
        raise ValueError(f"V must be {n}x{n}, got {V.shape}")
    energy = np.vdot(phi, phi).real
    return np.einsum("kl,kln->n", V, _atom_cube(phi)) / (n * energy)


def gabor_frame_constant(phi, tol=1e-9):
    """Assemble the full-lattice Gabor frame operator and return its bound.

    The operator ``S = sum_{k,l} g_{kl} g_{kl}^*`` is checked against
    ``A I`` with ``A = trace(S) / N``; a relative Frobenius deviation above
    ``tol`` raises :class:`NotTightError`. For any nonzero window the result
    is ``N |phi|^2``.
    """
    phi = _check_window(phi)
    n = phi.size
    G = _atom_cube(phi).reshape(n * n, n)
    S = G.T @ G.conj()
    A = np.trace(S).real / n
    dev = np.linalg.norm(S - A * np.eye(n)) / (A * np.sqrt(n))
    if dev > tol:
        raise NotTightError(f"frame operator deviates from {A:g} I by {dev:.3e} (relative)", dev)
    return float(A)
