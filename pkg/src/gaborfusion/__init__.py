"""Finite Gabor frames, Gabor tight fusion frames and phase retrieval on C^N."""

from .circulant import CirculantSpec, determinant, is_singular_binary, realize, solve
from .complex_core import dft, frobenius_norm, idft, inner, matrix_inner
from .errors import (
    GaborFusionError,
    HypothesisError,
    InconsistentMeasurementsError,
    ModelMismatchError,
    NotTightError,
    SingularCirculantError,
    UncertifiedFrameError,
)
from .fusion import (
    FusionFrame,
    GaborFusionFrame,
    Subspace,
    build_from_coisometries,
    build_gabor_fusion,
    frame_bounds,
    fusion_analysis,
    is_tight,
    orthonormalize,
    projection,
)
from .gabor import GaborSystem, gabor_frame_constant, modulate, stft, stft_inverse, tf_shift, translate
from .phase_retrieval import (
    MeasurementSet,
    PhaseClass,
    divisibility_condition,
    injectivity_certificate,
    measure,
    mod_phase_distance,
    reconstruct,
    recover_magnitudes,
)

__version__ = "0.1.0"
