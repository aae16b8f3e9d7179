"""Fusion frames: subspaces, projections, bounds and tight constructions."""

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .complex_core import as_matrix, as_vector
from .errors import HypothesisError
from .gabor import full_lattice, tf_shift

DROP_TOL = 1e-10
HYPOTHESIS_TOL = 1e-8
SUBSPACE_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of C^N stored as a matrix with orthonormal rows."""

    basis: np.ndarray

    def __post_init__(self):
        B = as_matrix(self.basis, "basis")
        m, n = B.shape
        if m > n:
            raise ValueError(f"{m} basis rows cannot be orthonormal in C^{n}")
        err = np.linalg.norm(B @ B.conj().T - np.eye(m))
        if err > 1e-10 * max(1.0, np.sqrt(m)):
            raise ValueError(f"basis rows are not orthonormal (error {err:.2e})")
        B = B.copy()
        B.setflags(write=False)
        object.__setattr__(self, "basis", B)

    @property
    def ambient_dim(self):
        return self.basis.shape[1]

    @property
    def dim(self):
        return self.basis.shape[0]

    def same_as(self, other, tol=SUBSPACE_TOL):
        return bool(np.linalg.norm(projection(self) - projection(other)) <= tol)

    def contains(self, x, tol=SUBSPACE_TOL):
        x = as_vector(x)
        return bool(np.linalg.norm(projection(self) @ x - x) <= tol * max(1.0, np.linalg.norm(x)))


def orthonormalize(vectors, drop_tol=DROP_TOL):
    """Modified Gram-Schmidt with one re-orthogonalization pass.

    A vector whose residual after both passes falls below ``drop_tol`` times
    its own norm is treated as dependent and discarded.
    """
    vecs = [as_vector(v, "vector") for v in vectors]
    if not vecs:
        raise ValueError("need at least one vector")
    n = vecs[0].size
    if any(v.size != n for v in vecs):
        raise ValueError("vectors have different lengths")
    basis = []
    for v in vecs:
        scale = np.linalg.norm(v)
        if scale == 0:
            continue
        w = v.copy()
        for _ in range(2):
            for q in basis:
                w -= np.vdot(q, w) * q
        r = np.linalg.norm(w)
        if r <= drop_tol * scale:
            continue
        basis.append(w / r)
    if not basis:
        raise ValueError("all input vectors are zero")
    return Subspace(np.array(basis))


def projection(W):
    """Orthogonal projection ``sum_i q_i q_i^*`` onto ``W``, ``q_i`` the basis rows."""
    B = W.basis
    return B.T @ B.conj()


@dataclass(frozen=True, eq=False)
class FusionFrame:
    subspaces: tuple
    weights: tuple = field(default=None)

    def __post_init__(self):
        subs = tuple(self.subspaces)
        if not subs:
            raise ValueError("a fusion frame needs at least one subspace")
        n = subs[0].ambient_dim
        if any(W.ambient_dim != n for W in subs):
            raise ValueError("subspaces live in different ambient dimensions")
        w = (1.0,) * len(subs) if self.weights is None else tuple(float(v) for v in self.weights)
        if len(w) != len(subs):
            raise ValueError("one weight per subspace is required")
        if any(v <= 0 for v in w):
            raise ValueError("weights must be positive")
        object.__setattr__(self, "subspaces", subs)
        object.__setattr__(self, "weights", w)

    def __len__(self):
        return len(self.subspaces)

    @property
    def ambient_dim(self):
        return self.subspaces[0].ambient_dim

    def projections(self):
        return np.array([projection(W) for W in self.subspaces])

    def frame_operator(self):
        """``sum_i nu_i^2 P_i``."""
        nu2 = np.asarray(self.weights) ** 2
        return np.einsum("i,iab->ab", nu2, self.projections())


@dataclass(frozen=True, eq=False)
class GaborFusionFrame(FusionFrame):
    """Fusion frame ``W_{k,l} = span{pi(k,l) y_j}`` with its generating data.

    ``subspaces`` follow the order of ``lattice``.
    """

    window: np.ndarray = None
    lattice: tuple = ()
    tight_bound: float = None

    def index(self, k, l):
        return self.lattice.index((k, l))


class FrameBounds(NamedTuple):
    lower: float
    upper: float
    is_fusion_frame: bool


def fusion_analysis(x, F):
    """Weighted measurements ``nu_i |P_i x|`` in subspace order."""
    x = as_vector(x)
    if x.size != F.ambient_dim:
        raise ValueError(f"signal has length {x.size}, frame lives in C^{F.ambient_dim}")
    # |P x| is the norm of the coefficients <x, q_i> since the rows q_i are orthonormal
    vals = np.array([np.linalg.norm(W.basis.conj() @ x) for W in F.subspaces])
    return np.asarray(F.weights) * vals


def frame_bounds(F, tol=1e-10):
    """Extreme eigenvalues of the fusion frame operator.

    When the smallest eigenvalue is below ``tol`` times the largest the
    family does not span, and the lower bound is reported as exactly 0.
    """
    ev = np.linalg.eigvalsh(F.frame_operator())
    lo, hi = float(ev[0]), float(ev[-1])
    if lo <= tol * max(hi, 1.0):
        return FrameBounds(0.0, hi, False)
    return FrameBounds(lo, hi, True)


def is_tight(F, tol=1e-10):
    """Tight constant of ``F``, or ``None`` if ``F`` is not tight.

    The candidate constant comes from the trace identity
    ``A = sum_i nu_i^2 dim W_i / N`` and is then checked against the frame
    operator in relative Frobenius norm.
    """
    n = F.ambient_dim
    nu2 = np.asarray(F.weights) ** 2
    A = float(np.dot(nu2, [W.dim for W in F.subspaces])) / n
    dev = np.linalg.norm(F.frame_operator() - A * np.eye(n))
    if dev <= tol * A * np.sqrt(n):
        return A
    return None


def _tight_constant_on_span(vectors, tol):
    """Return ``B`` if ``vectors`` form a B-tight frame for their span, else ``None``."""
    V = np.array(vectors)
    S = V.T @ V.conj()
    P = projection(orthonormalize(V))
    B = np.trace(S).real / np.trace(P).real
    if np.linalg.norm(S - B * P) <= tol * max(B, 1.0):
        return B
    return None


def build_from_coisometries(seed, U, B, tol=HYPOTHESIS_TOL):
    """Fusion frame ``{span_j U_i f_j}_i`` from a tight seed and coisometries.

    Hypotheses, each checked numerically at ``tol``:

    * ``seed`` is a ``B``-tight frame for its span;
    * every ``U_i`` satisfies ``U_i U_i^* = I``;
    * every image family ``{U_i f_j}_j`` is ``B``-tight for its span (the
      adjoint must act isometrically on ``W_i``, which does not follow from
      the coisometry property alone);
    * for each ``j`` the orbit ``{U_i f_j}_i`` is a tight frame for C^N.

    The result has unit weights and tight constant ``sum_j A_j / B``.
    """
    seed = [as_vector(f, "seed") for f in seed]
    if not seed:
        raise HypothesisError("empty seed", "seed tightness")
    n = seed[0].size
    U = [as_matrix(u, "U", square=True) for u in U]
    if not U:
        raise HypothesisError("no coisometries given", "coisometry")
    if not all(np.any(f) for f in seed):
        raise HypothesisError("seed contains a zero vector", "seed tightness",
                              index=next(j for j, f in enumerate(seed) if not np.any(f)))
    B_seed = _tight_constant_on_span(seed, tol)
    if B_seed is None or abs(B_seed - B) > tol * max(B, 1.0):
        raise HypothesisError(f"seed is not a {B:g}-tight frame for its span", "seed tightness")
    for i, u in enumerate(U):
        if u.shape[0] != n:
            raise ValueError(f"U[{i}] has shape {u.shape}, expected {n}x{n}")
        if np.linalg.norm(u @ u.conj().T - np.eye(n)) > tol * np.sqrt(n):
            raise HypothesisError(f"coisometry violated by U[{i}]", "coisometry", index=i)

    images = [[u @ f for f in seed] for u in U]
    for i, fam in enumerate(images):
        Bi = _tight_constant_on_span(fam, tol)
        if Bi is None or abs(Bi - B) > tol * max(B, 1.0):
            raise HypothesisError(f"image family {i} is not {B:g}-tight for its span",
                                  "image tightness", index=i)
    for j in range(len(seed)):
        orbit = np.array([fam[j] for fam in images])
        S = orbit.T @ orbit.conj()
        A_j = np.trace(S).real / n
        if np.linalg.norm(S - A_j * np.eye(n)) > tol * max(A_j, 1.0) * np.sqrt(n):
            raise HypothesisError(f"orbit of seed {j} is not a tight frame for C^{n}",
                                  "orbit tightness", index=j)
    return FusionFrame(tuple(orthonormalize(fam) for fam in images))


def window_rows(Y):
    """Nonzero rows of a window stack."""
    Y = as_matrix(Y, "Y")
    rows = [y for y in Y if np.any(y)]
    if not rows:
        raise HypothesisError("window stack has no nonzero rows", "window tightness")
    return np.array(rows)


def build_gabor_fusion(Y, B=1.0, tol=HYPOTHESIS_TOL):
    """Gabor fusion frame ``W_{k,l} = span{pi(k,l) y_j}`` over the full lattice.

    The nonzero rows of ``Y`` must form a ``B``-tight frame for their span.
    The resulting frame is tight with constant ``N |Y|_F^2 / B``, which is
    stored as ``tight_bound``.
    """
    rows = window_rows(Y)
    n = rows.shape[1]
    Bw = _tight_constant_on_span(rows, tol)
    if Bw is None or abs(Bw - B) > tol * max(B, 1.0):
        found = "not tight" if Bw is None else f"{Bw:.12g}-tight"
        raise HypothesisError(f"window rows are {found} on their span, expected B = {B:g}",
                              "window tightness")
    lattice = tuple(full_lattice(n))
    subspaces = tuple(orthonormalize([tf_shift(y, k, l) for y in rows]) for k, l in lattice)
    bound = n * float(np.sum(np.abs(rows) ** 2)) / B
    return GaborFusionFrame(subspaces, None, window=rows, lattice=lattice, tight_bound=bound)
