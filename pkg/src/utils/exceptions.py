"""Custom exceptions for the gausscap numerics library and CLI."""


class GaussCapError(Exception):
    """Base exception for gausscap."""

    def __init__(self, message: str, error_code: str | None = None) -> None:
        self.message = message
        self.error_code = error_code
        super().__init__(self.message)


class InvalidArgumentError(GaussCapError, ValueError):
    """Exception raised for malformed or out-of-range arguments."""

    def __init__(self, message: str = "Invalid argument") -> None:
        super().__init__(message, "INVALID_ARGUMENT")


class NumericFailureError(GaussCapError):
    """Exception raised when a numerical routine cannot deliver a trustworthy result.

    ``condition`` carries a condition estimate when one is available and
    ``best`` the best iterate reached by an iterative routine.
    """

    def __init__(
        self,
        message: str = "Numerical routine failed",
        condition: float | None = None,
        best: object | None = None,
    ) -> None:
        self.condition = condition
        self.best = best
        super().__init__(message, "NUMERIC_FAILURE")


class InvalidDilationError(GaussCapError):
    """Exception raised when a dilation violates the commutation-matrix relation."""

    def __init__(self, message: str = "Dilation is inconsistent with the output form") -> None:
        super().__init__(message, "INVALID_DILATION")


class UnsupportedChannelError(GaussCapError):
    """Exception raised when a channel falls outside the noise-decomposition path."""

    def __init__(self, message: str = "Channel is not supported") -> None:
        super().__init__(message, "UNSUPPORTED_CHANNEL")


class CutoffTooSmallError(GaussCapError):
    """Exception raised when a Fock truncation leaks too much probability."""

    def __init__(
        self,
        message: str = "Fock cutoff too small",
        required_cutoff: int | None = None,
        leak: float | None = None,
    ) -> None:
        self.required_cutoff = required_cutoff
        self.leak = leak
        super().__init__(message, "CUTOFF_TOO_SMALL")


class PerturbationRejectedError(GaussCapError):
    """Exception raised when a moment-preserving perturbation cannot be fitted."""

    def __init__(self, message: str = "Perturbation rejected", seed: int | None = None) -> None:
        self.seed = seed
        super().__init__(message, "PERTURBATION_REJECTED")


class ConfigurationError(GaussCapError):
    """Exception raised for configuration issues."""

    def __init__(self, message: str = "Configuration error") -> None:
        super().__init__(message, "CONFIG_ERROR")
