"""Phaseless measurements, injectivity certificates and recovery modulo phase.

Reconstruction lifts ``x`` to the Hermitian matrix ``X = x x^*``; every
measurement ``nu_i^2 |P_i x|^2 = tr(nu_i^2 P_i X)`` is then linear in ``X``.
When the lifted map has full rank ``N^2`` on Hermitian matrices it is
injective, and ``x`` is read off the top eigenpair of the least-squares
solution.
"""

import hashlib
import warnings
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .circulant import CirculantSpec, is_singular_binary, solve
from .complex_core import as_vector
from .errors import (
    InconsistentMeasurementsError,
    ModelMismatchError,
    SingularCirculantError,
    UncertifiedFrameError,
)
from .fusion import fusion_analysis, projection
from .gabor import tf_shift

RANK_TOL = 1e-10
RESIDUAL_TOL = 5e-2
NEGATIVE_TOL = 1e-6


def frame_id(F):
    """Short digest of the frame's projections and weights."""
    h = hashlib.sha256()
    h.update(np.round(F.projections(), 9).tobytes())
    h.update(np.asarray(F.weights).tobytes())
    return h.hexdigest()[:16]


def _labels(F):
    lattice = getattr(F, "lattice", ())
    return tuple(lattice) if lattice else tuple(range(len(F)))


@dataclass(frozen=True, eq=False)
class MeasurementSet:
    """Fusion frame measurements, one value per subspace.

    ``values`` holds ``|P_i x|`` when ``squared`` is False and ``|P_i x|^2``
    otherwise. ``index`` labels each value, ``(k, l)`` for Gabor fusion frames.
    """

    values: np.ndarray
    index: tuple
    squared: bool = False
    frame_id: str = ""

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1 or v.size != len(self.index):
            raise ValueError("one measurement per index label is required")
        if not np.all(np.isfinite(v)) or np.any(v < 0):
            raise ValueError("measurements must be finite and nonnegative")
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "index", tuple(self.index))

    def magnitudes(self):
        return np.sqrt(self.values) if self.squared else self.values

    def energies(self):
        return self.values if self.squared else self.values ** 2

    def as_lattice(self, n):
        """Squared values arranged as an ``(N, N)`` array indexed by ``(k, l)``."""
        grid = np.full((n, n), np.nan)
        for (k, l), e in zip(self.index, self.energies()):
            grid[k, l] = e
        if np.isnan(grid).any():
            raise ValueError("measurements do not cover the full lattice")
        return grid


def canonical_phase(x):
    """Rotate ``x`` so its first largest-modulus entry is real and nonnegative.

    Moduli within a relative ``1e-12`` of the maximum count as ties, so the
    choice survives rounding from a prior rotation.
    """
    x = as_vector(x)
    if not np.any(x):
        return x.copy()
    a = np.abs(x)
    i = int(np.argmax(a >= a.max() * (1 - 1e-12)))
    return x * (np.conj(x[i]) / abs(x[i]))


@dataclass(frozen=True, eq=False)
class PhaseClass:
    representative: np.ndarray = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "representative", canonical_phase(self.representative))

    @property
    def is_zero(self):
        return not np.any(self.representative)


def measure(x, F, squared=False):
    m = fusion_analysis(x, F)
    return MeasurementSet(m ** 2 if squared else m, _labels(F), squared, frame_id(F))


def mod_phase_distance(x, y):
    """``min_{|c|=1} |x - c y|``.

    Equals ``sqrt(|x|^2 + |y|^2 - 2 |<x, y>|)``; evaluated by aligning ``y``
    with the optimal phase ``c = <x, y> / |<x, y>|`` instead, which avoids
    cancellation when the classes nearly coincide.
    """
    x = as_vector(x)
    y = as_vector(y, "y")
    if x.size != y.size:
        raise ValueError(f"dimension mismatch: {x.size} vs {y.size}")
    ip = np.vdot(y, x)
    c = ip / abs(ip) if ip != 0 else 1.0
    return float(np.linalg.norm(x - c * y))


def divisibility_condition(N, n0):
    """True when ``N`` divides no ``j n0`` with ``1 <= j <= N-1``."""
    return not is_singular_binary(N, n0)


def _hermitian_coordinates(n):
    # real coordinates of a Hermitian matrix: diagonal, then (Re, Im) of the upper triangle
    iu = np.triu_indices(n, 1)
    return np.arange(n), iu


def lifted_matrix(F):
    """Real ``L x N^2`` matrix of ``X -> (tr(nu_i^2 P_i X))_i`` on Hermitian ``X``."""
    n = F.ambient_dim
    P = F.projections() * (np.asarray(F.weights) ** 2)[:, None, None]
    diag, (r, c) = _hermitian_coordinates(n)
    upper = P[:, r, c]
    return np.hstack([P[:, diag, diag].real, 2 * upper.real, 2 * upper.imag])


def hermitian_from_coordinates(t, n):
    diag, (r, c) = _hermitian_coordinates(n)
    k = r.size
    X = np.zeros((n, n), dtype=np.complex128)
    X[diag, diag] = t[:n]
    # tr(P X) pairs P[r, c] with X[c, r]; the Im coordinate enters as +2 Im(P[r, c])
    X[c, r] = t[n:n + k] - 1j * t[n + k:]
    X[r, c] = t[n:n + k] + 1j * t[n + k:]
    return X


class Certificate(NamedTuple):
    rank: int
    dimension: int
    certified: bool
    condition: float

    @property
    def verdict(self):
        return "certified" if self.certified else "inconclusive"


def injectivity_certificate(F, tol=RANK_TOL):
    """Rank of the lifted measurement map over Hermitian N x N matrices.

    Rank ``N^2`` certifies that the measurements determine ``x x^*`` and so
    ``x`` up to phase. A smaller rank is reported as inconclusive, never as
    a proof that phase retrieval fails.
    """
    A = lifted_matrix(F)
    s = np.linalg.svd(A, compute_uv=False)
    rank = int(np.sum(s > tol * s[0])) if s.size and s[0] > 0 else 0
    dim = F.ambient_dim ** 2
    cond = float(s[0] / s[dim - 1]) if rank == dim else float("inf")
    return Certificate(rank, dim, rank == dim, cond)


class MagnitudeRecovery(NamedTuple):
    values: np.ndarray
    clamped: float


def _model_row(pattern, n):
    c = np.zeros(n)
    c[:len(pattern)] = pattern
    return c


def check_diagonal_model(F, pattern, reference, tol=1e-8):
    """Check ``P_{k,l} = sum_i c_i g g^*`` with ``g = pi(k+i, l) reference``.

    This is the structure under which squared fusion measurements are a
    circulant combination of the Gabor measurements of ``reference``. Raises
    :class:`ModelMismatchError` at the first lattice point where it fails.
    """
    e = as_vector(reference, "reference")
    n = e.size
    for (k, l), W in zip(F.lattice, F.subspaces):
        model = np.zeros((n, n), dtype=np.complex128)
        for i, ci in enumerate(pattern):
            g = tf_shift(e, k + i, l)
            model += ci * np.outer(g, g.conj())
        P = projection(W)
        if np.linalg.norm(P - model) > tol * max(1.0, np.linalg.norm(P)):
            raise ModelMismatchError(f"model mismatch: projection at {(k, l)} is not "
                                     f"the circulant combination of shifted reference atoms")


def recover_magnitudes(m, pattern, *, diagonal_model=False, frame=None, reference=None):
    """Invert the circulant relation between fusion and Gabor measurements.

    For each modulation index ``l`` the squared measurements satisfy
    ``|P_{k,l} x|^2 = sum_i c_i v[(k+i) mod N, l]`` where
    ``v[k, l] = |<x, pi(k, l) e>|^2``. This holds when the window rows are
    the translates ``T_i e`` of a vector with orthonormal translates; pass
    ``diagonal_model=True`` to assert it, and ``frame``/``reference`` to have
    it checked numerically first.

    Returns ``v`` as an ``(N, N)`` array and the largest negative value
    clamped to zero.
    """
    if not diagonal_model:
        raise ValueError("recover_magnitudes needs diagonal_model=True: the circulant "
                         "relation only holds for translate-structured windows")
    pattern = np.asarray(pattern, dtype=float)
    if isinstance(m, MeasurementSet):
        n = int(round(np.sqrt(len(m.index))))
        b = m.as_lattice(n)
    else:
        b = np.asarray(m, dtype=float)
        n = b.shape[0]
    n0 = pattern.size
    if not 0 < n0 < n:
        raise ValueError(f"pattern length must lie in 1..{n - 1}, got {n0}")
    if frame is not None:
        if reference is None:
            raise ValueError("checking the model needs the reference vector")
        check_diagonal_model(frame, pattern, reference)
    if np.all(pattern == 1) and not divisibility_condition(n, n0):
        j = next(j for j in range(1, n) if (j * n0) % n == 0)
        raise SingularCirculantError(f"singular S: condition({n},{n0}) fails, "
                                     f"{n} divides {j}*{n0}", factor_index=j)
    S = CirculantSpec.from_row(_model_row(pattern, n))
    v = np.empty((n, n))
    for l in range(n):
        try:
            sol = solve(S, b[:, l])
        except SingularCirculantError as err:
            raise SingularCirculantError(f"singular S: {err}", err.factor_index) from err
        v[:, l] = sol.real
    floor = -NEGATIVE_TOL * max(1.0, float(np.max(b)))
    if np.min(v) < floor:
        raise ModelMismatchError(f"model mismatch: recovered value {np.min(v):.3e} is negative")
    clamped = float(max(0.0, -np.min(v)))
    return MagnitudeRecovery(np.maximum(v, 0.0), clamped)


def reconstruct(m, F, tol=RESIDUAL_TOL):
    """Recover ``x`` modulo phase from measurements on a certified frame.

    Solves the lifted linear system for Hermitian ``X`` in the least-squares
    sense and keeps the nearest rank-one PSD matrix ``lambda_1 u_1 u_1^*``.
    The relative residual of the re-measured estimate must not exceed
    ``tol``.
    """
    n = F.ambient_dim
    if len(m.values) != len(F):
        raise ValueError(f"{len(m.values)} measurements for {len(F)} subspaces")
    e = m.energies()
    if not np.any(e):
        return PhaseClass(np.zeros(n, dtype=np.complex128))
    cert = injectivity_certificate(F)
    if not cert.certified:
        raise UncertifiedFrameError(f"frame is not certified (lifted rank {cert.rank}/{cert.dimension})")

    A = lifted_matrix(F)
    t, *_ = np.linalg.lstsq(A, e, rcond=None)
    X = hermitian_from_coordinates(t, n)
    lam, U = np.linalg.eigh(X)
    top = max(lam[-1], 0.0)
    x_hat = np.sqrt(top) * U[:, -1]
    if n > 1 and lam[-1] > 0 and lam[-2] / lam[-1] > 0.5:
        warnings.warn(f"lifted solution is far from rank-one "
                      f"(lambda2/lambda1 = {lam[-2] / lam[-1]:.3f})", RuntimeWarning)

    fitted = fusion_analysis(x_hat, F) ** 2
    residual = float(np.linalg.norm(fitted - e) / np.linalg.norm(e))
    if residual > tol:
        raise InconsistentMeasurementsError(f"inconsistent measurements: relative residual "
                                            f"{residual:.3e} exceeds {tol:g}", residual)
    return PhaseClass(x_hat)
