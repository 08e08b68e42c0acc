"""
Custom Exceptions for the surrogacy engine
"""


class SurrogacyError(Exception):
    """Base exception for the surrogacy engine"""
    exit_code: int = 1

    def __init__(self, message: str = "An error occurred in the surrogacy engine"):
        self.message = message
        super().__init__(self.message)


class UserInputError(SurrogacyError):
    """Errors caused by configuration, input files or arguments (exit code 2)"""
    exit_code = 2

    def __init__(self, message: str = "Invalid input"):
        super().__init__(message)


class NumericalError(SurrogacyError):
    """Errors raised by the numerical layer or the samplers (exit code 3)"""
    exit_code = 3

    def __init__(self, message: str = "Numerical failure"):
        super().__init__(message)


class ConfigurationError(UserInputError):
    """Exception raised when a run configuration is invalid"""
    def __init__(self, message: str = "Invalid configuration"):
        super().__init__(message)


class DataFormatError(UserInputError):
    """Exception raised when a data or draws file is malformed"""
    def __init__(self, message: str = "Malformed data file"):
        super().__init__(message)


class MissingBaseline(UserInputError):
    """Exception raised when a difference-from-baseline endpoint has no baseline covariate"""
    def __init__(self, message: str = "Baseline covariate required for difference endpoint"):
        super().__init__(message)


class IndexOutOfRange(UserInputError):
    """Exception raised when an index set does not fit the Gaussian dimension"""
    def __init__(self, message: str = "Index out of range"):
        super().__init__(message)


class IncompleteConfig(UserInputError):
    """Exception raised when a scenario configuration lacks coefficients"""
    def __init__(self, message: str = "Scenario configuration is incomplete"):
        super().__init__(message)


class RankDeficient(UserInputError):
    """Exception raised when a regression design matrix is rank deficient"""
    def __init__(self, message: str = "Design matrix is rank deficient"):
        super().__init__(message)


class NotPositiveDefinite(NumericalError):
    """Exception raised when a covariance or correlation matrix is not positive definite"""
    def __init__(self, message: str = "Matrix is not positive definite"):
        super().__init__(message)


class DegenerateVariance(NumericalError):
    """Exception raised when Var(S(1)) is not strictly positive"""
    def __init__(self, message: str = "Surrogate variance is degenerate"):
        super().__init__(message)


class QuadratureFailure(NumericalError):
    """Exception raised when marginalization weights degenerate"""
    def __init__(self, message: str = "Quadrature weights are degenerate"):
        super().__init__(message)


class AllMassAtBoundary(NumericalError):
    """Exception raised when a griddy Gibbs target piles up in the outermost cells"""
    def __init__(self, message: str = "Posterior mass concentrated at the support boundary"):
        super().__init__(message)


class NonFiniteTarget(NumericalError):
    """Exception raised when a log-target is NaN or +inf on the grid"""
    def __init__(self, message: str = "Log-target is not finite on the grid"):
        super().__init__(message)


class ChainDiverged(NumericalError):
    """Exception raised when the completed-data likelihood becomes non-finite"""
    def __init__(self, message: str = "Markov chain diverged"):
        super().__init__(message)


class RejectionStarvation(NumericalError):
    """Exception raised when positive-definite rejection sampling makes no progress"""
    def __init__(self, message: str = "Too many consecutive positive-definite rejections"):
        super().__init__(message)


class TooFewDraws(NumericalError):
    """Exception raised when a convergence report is requested on a short chain"""
    def __init__(self, message: str = "Not enough retained draws"):
        super().__init__(message)
