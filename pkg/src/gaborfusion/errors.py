class GaborFusionError(Exception):
    pass


class NotTightError(GaborFusionError):
    """A frame operator failed to be a scalar multiple of the identity."""

    def __init__(self, message, deviation=None):
        super().__init__(message)
        self.deviation = deviation


class HypothesisError(GaborFusionError):
    """A construction hypothesis failed numerically.

    ``hypothesis`` names the failed condition (e.g. ``"coisometry"``) and
    ``index`` points at the offending operator, seed or row when there is one.
    """

    def __init__(self, message, hypothesis, index=None):
        super().__init__(message)
        self.hypothesis = hypothesis
        self.index = index


class SingularCirculantError(GaborFusionError):
    def __init__(self, message, factor_index):
        super().__init__(message)
        self.factor_index = factor_index


class ModelMismatchError(GaborFusionError):
    pass


class UncertifiedFrameError(GaborFusionError):
    pass


class InconsistentMeasurementsError(GaborFusionError):
    def __init__(self, message, residual):
        super().__init__(message)
        self.residual = residual
