from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gaborfusion.complex_core import basis_vector, idft
from gaborfusion.errors import (
    InconsistentMeasurementsError,
    ModelMismatchError,
    SingularCirculantError,
    UncertifiedFrameError,
)
from gaborfusion.fusion import FusionFrame, build_gabor_fusion, orthonormalize
from gaborfusion.gabor import stft, translate
from gaborfusion.phase_retrieval import (
    MeasurementSet,
    PhaseClass,
    canonical_phase,
    check_diagonal_model,
    divisibility_condition,
    hermitian_from_coordinates,
    injectivity_certificate,
    lifted_matrix,
    measure,
    mod_phase_distance,
    reconstruct,
    recover_magnitudes,
)

from conftest import complex_vectors, crandn, example_rows, vector_pairs


def flat_spectrum_vector(rng, n):
    """Unit vector whose translates are orthonormal (unimodular DFT)."""
    return idft(np.exp(2j * np.pi * rng.random(n)))


def forward_model(v, pattern):
    n = v.shape[0]
    b = np.zeros_like(v)
    for k in range(n):
        for i, c in enumerate(pattern):
            b[k] += c * v[(k + i) % n]
    return b


# ---- measure ----

def test_measure_examples(rng, example_frame):
    m = measure(np.zeros(7), example_frame)
    np.testing.assert_array_equal(m.values, np.zeros(49))
    assert not m.squared and m.index == example_frame.lattice
    x = crandn(rng, 7)
    a = measure(x, example_frame)
    b = measure(np.exp(0.7j) * x, example_frame)
    assert a.index == b.index and a.frame_id == b.frame_id
    np.testing.assert_allclose(a.values, b.values, rtol=1e-12)
    assert np.sum(a.values ** 2) == pytest.approx(14 * np.linalg.norm(x) ** 2, rel=1e-10)


def test_measure_squared_flag(rng, example_frame):
    x = crandn(rng, 7)
    a, b = measure(x, example_frame), measure(x, example_frame, squared=True)
    assert b.squared
    np.testing.assert_allclose(a.energies(), b.energies())
    np.testing.assert_allclose(a.magnitudes(), b.magnitudes())


def test_measurement_set_validation():
    with pytest.raises(ValueError):
        MeasurementSet([1.0, -0.1], ((0, 0), (0, 1)))
    with pytest.raises(ValueError):
        MeasurementSet([1.0], ((0, 0), (0, 1)))


# ---- mod-phase distance and phase classes ----

def test_mod_phase_distance_examples(rng):
    x = crandn(rng, 5)
    assert mod_phase_distance(x, np.exp(2.1j) * x) == pytest.approx(0, abs=1e-14)
    assert mod_phase_distance(basis_vector(3, 0), basis_vector(3, 1)) == pytest.approx(np.sqrt(2))


def test_mod_phase_distance_grid_oracle(rng):
    x, y = crandn(rng, 6), crandn(rng, 6)
    thetas = np.linspace(0, 2 * np.pi, 10_000, endpoint=False)
    grid = min(np.linalg.norm(x - np.exp(1j * t) * y) for t in thetas)
    closed = np.sqrt(np.linalg.norm(x) ** 2 + np.linalg.norm(y) ** 2 - 2 * abs(np.vdot(y, x)))
    assert mod_phase_distance(x, y) == pytest.approx(closed, abs=1e-12)
    assert abs(mod_phase_distance(x, y) - grid) <= 1e-6


def test_canonical_phase():
    x = np.array([1j, -2j, 2, 0.5])
    c = canonical_phase(x)
    # first largest entry (index 1, value -2j) rotated onto +2 by multiplying with i
    np.testing.assert_allclose(c, [-1, 2, 2j, 0.5j])
    np.testing.assert_array_equal(canonical_phase(c), c)
    assert PhaseClass(np.zeros(3)).is_zero


@given(complex_vectors(max_size=8), st.floats(0, 2 * np.pi))
def test_canonical_phase_idempotent(x, theta):
    c = canonical_phase(np.exp(1j * theta) * x)
    np.testing.assert_allclose(canonical_phase(c), c, atol=1e-12 * (1 + np.abs(x).max()))


@given(vector_pairs(max_size=6))
def test_distance_symmetry(pair):
    x, y = pair
    scale = 1 + np.linalg.norm(x) + np.linalg.norm(y)
    assert abs(mod_phase_distance(x, y) - mod_phase_distance(y, x)) <= 1e-9 * scale


@settings(max_examples=50)
@given(st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_distance_triangle(n, seed):
    rng = np.random.default_rng(seed)
    x, y, z = crandn(rng, n), crandn(rng, n), crandn(rng, n)
    assert mod_phase_distance(x, z) <= mod_phase_distance(x, y) + mod_phase_distance(y, z) + 1e-12


# ---- divisibility ----

def test_divisibility_examples():
    assert divisibility_condition(7, 3) is True
    assert divisibility_condition(6, 2) is False
    for N in range(2, 30):
        assert divisibility_condition(N, 1) is True
    with pytest.raises(ValueError):
        divisibility_condition(6, 6)


def test_divisibility_matches_gcd_exhaustive():
    for N in range(2, 65):
        for n0 in range(1, N):
            brute = not any((j * n0) % N == 0 for j in range(1, N))
            assert divisibility_condition(N, n0) == brute == (gcd(n0, N) == 1)


# ---- injectivity certificate ----

def test_lifted_matrix_matches_trace(rng, example_frame):
    A = lifted_matrix(example_frame)
    t = rng.standard_normal(49)
    X = hermitian_from_coordinates(t, 7)
    np.testing.assert_allclose(X, X.conj().T)
    direct = [np.trace(P @ X).real for P in example_frame.projections()]
    np.testing.assert_allclose(A @ t, direct, atol=1e-12)


def test_certificate_examples(rng, example_frame):
    full = FusionFrame((orthonormalize(list(np.eye(4))),))
    c = injectivity_certificate(full)
    assert c.rank == 1 and not c.certified and c.verdict == "inconclusive"
    c = injectivity_certificate(example_frame)
    assert c.rank == 49 and c.dimension == 49 and c.certified
    extra = FusionFrame(example_frame.subspaces + (orthonormalize([crandn(rng, 7)]),))
    assert injectivity_certificate(extra).certified


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_certificate_monotone(seed):
    rng = np.random.default_rng(seed)
    n = 3
    subs = [orthonormalize(list(crandn(rng, int(rng.integers(1, 3)), n))) for _ in range(6)]
    ranks = [injectivity_certificate(FusionFrame(tuple(subs[:i]))).rank for i in range(1, 7)]
    assert ranks == sorted(ranks)


# ---- magnitude recovery ----

def test_recover_requires_flag():
    with pytest.raises(ValueError, match="diagonal_model"):
        recover_magnitudes(np.ones((3, 3)), [1])


def test_recover_identity_pattern(rng):
    m2 = rng.random((5, 5))
    out = recover_magnitudes(m2, [1.0], diagonal_model=True)
    np.testing.assert_allclose(out.values, m2, atol=1e-14)


def test_recover_synthetic_forward_model(rng):
    v = rng.random((7, 7))
    for pattern in ([1, 1, 1], [0.5, 2.0, 1.0]):
        b = forward_model(v, pattern)
        out = recover_magnitudes(b, pattern, diagonal_model=True)
        assert np.abs(out.values - v).max() <= 1e-9
        assert out.clamped <= 1e-12


def test_recover_singular():
    with pytest.raises(SingularCirculantError, match="singular S"):
        recover_magnitudes(np.ones((6, 6)), [1, 1, 1], diagonal_model=True)


def test_recover_model_mismatch_negative(rng):
    b = np.zeros((7, 7))
    b[0, 0] = 1.0  # not the image of any nonnegative v
    with pytest.raises(ModelMismatchError):
        recover_magnitudes(b, [1, 1, 1], diagonal_model=True)


def test_recover_on_translate_frame(rng):
    n = 7
    e = flat_spectrum_vector(rng, n)
    rows = np.array([translate(e, i) for i in range(3)])
    F = build_gabor_fusion(rows, 1.0)
    check_diagonal_model(F, [1, 1, 1], e)
    x = crandn(rng, n)
    out = recover_magnitudes(measure(x, F), [1, 1, 1], diagonal_model=True, frame=F, reference=e)
    np.testing.assert_allclose(out.values, np.abs(stft(x, e)) ** 2, atol=1e-9 * np.linalg.norm(x) ** 2)


def test_recover_rejects_example_frame(rng, example_frame):
    e1 = example_rows()[0]
    with pytest.raises(ModelMismatchError):
        recover_magnitudes(measure(crandn(rng, 7), example_frame), [1, 1, 1],
                           diagonal_model=True, frame=example_frame, reference=e1)


# ---- reconstruction ----

def test_reconstruct_round_trip(rng, example_frame):
    for _ in range(100):
        x = crandn(rng, 7)
        x_hat = reconstruct(measure(x, example_frame), example_frame).representative
        assert mod_phase_distance(x, x_hat) <= 1e-6 * np.linalg.norm(x)


def test_reconstruct_zero(example_frame):
    assert reconstruct(measure(np.zeros(7), example_frame), example_frame).is_zero


def test_reconstruct_noisy(rng, example_frame):
    dists = []
    for _ in range(20):
        x = crandn(rng, 7)
        m = measure(x, example_frame)
        noisy = MeasurementSet(m.values * (1 + 1e-3 * rng.standard_normal(49)), m.index)
        dists.append(mod_phase_distance(x, reconstruct(noisy, example_frame).representative) / np.linalg.norm(x))
    assert np.median(dists) <= 5e-2


def test_reconstruct_uncertified(rng):
    F = build_gabor_fusion(basis_vector(4, 0)[None, :], 1.0)
    with pytest.raises(UncertifiedFrameError):
        reconstruct(measure(crandn(rng, 4), F), F)


def test_reconstruct_inconsistent(rng, example_frame):
    y = crandn(rng, 7)
    other = build_gabor_fusion((y / np.linalg.norm(y))[None, :], 1.0)
    m = measure(crandn(rng, 7), other)
    with pytest.raises(InconsistentMeasurementsError) as err, pytest.warns(RuntimeWarning):
        reconstruct(MeasurementSet(m.values, example_frame.lattice), example_frame)
    assert err.value.residual > 5e-2


def test_reconstruct_wrong_count(example_frame):
    with pytest.raises(ValueError):
        reconstruct(MeasurementSet([1.0], ((0, 0),)), example_frame)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(0, 2 * np.pi))
def test_reconstruct_measure_identity(seed, theta):
    rng = np.random.default_rng(seed)
    F = build_gabor_fusion(example_rows(), 1.0)
    x = crandn(rng, 7)
    a = reconstruct(measure(x, F), F).representative
    b = reconstruct(measure(np.exp(1j * theta) * x, F), F).representative
    assert mod_phase_distance(a, b) <= 1e-6 * np.linalg.norm(x)
    assert mod_phase_distance(x, a) <= 1e-6 * np.linalg.norm(x)
