"""Exception types shared across the package."""


class QpeLabError(Exception):
    """Base class for all package-specific errors."""


class ConfigurationError(QpeLabError):
    """Invalid run configuration or out-of-range argument. CLI exit code 2."""


class InvalidGateError(QpeLabError):
    """Gate matrix is not unitary, or a circuit instruction is malformed."""


class NumericalError(QpeLabError):
    """State became numerically corrupt (e.g. vanished norm at a measurement)."""


class EstimationError(QpeLabError):
    """Phase post-processing cannot proceed (degenerate statistics)."""


class QasmParseError(QpeLabError):
    """Malformed QASM text. CLI exit code 3."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno
